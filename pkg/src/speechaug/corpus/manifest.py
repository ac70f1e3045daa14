"""Utterance records and JSON-lines manifests."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from ..errors import MalformedManifest


@dataclass(frozen=True)
class Utterance:
    utt_id: str
    speaker_id: str
    audio_path: str
    duration_sec: float = 0.0
    transcript: str = ""
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.utt_id or any(c.isspace() for c in self.utt_id):
            raise MalformedManifest(f"utterance id {self.utt_id!r} is empty or contains whitespace")
        if self.duration_sec < 0:
            raise MalformedManifest(f"{self.utt_id}: negative duration")
        object.__setattr__(self, "provenance", tuple(self.provenance))

    def to_json(self) -> str:
        d = asdict(self)
        d["provenance"] = list(self.provenance)
        return json.dumps(d, ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Utterance":
        try:
            return cls(
                utt_id=d["utt_id"],
                speaker_id=d["speaker_id"],
                audio_path=d["audio_path"],
                duration_sec=float(d.get("duration_sec", 0.0)),
                transcript=d.get("transcript", ""),
                provenance=tuple(d.get("provenance", ())),
            )
        except KeyError as exc:
            raise MalformedManifest(f"missing field {exc}") from None


@dataclass
class Manifest:
    name: str
    utterances: list[Utterance] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for u in self.utterances:
            if u.utt_id in seen:
                raise MalformedManifest(f"duplicate utterance id {u.utt_id!r} in {self.name!r}")
            seen.add(u.utt_id)

    def __len__(self):
        return len(self.utterances)

    def __iter__(self):
        return iter(self.utterances)

    @property
    def speakers(self) -> set[str]:
        return {u.speaker_id for u in self.utterances}

    @property
    def total_hours(self) -> float:
        return sum(u.duration_sec for u in self.utterances) / 3600.0

    def dumps(self) -> str:
        return "".join(u.to_json() + "\n" for u in self.utterances)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.dumps())

    @classmethod
    def load(cls, path, name: str | None = None) -> "Manifest":
        utts = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    utts.append(Utterance.from_dict(json.loads(line)))
                except json.JSONDecodeError as exc:
                    raise MalformedManifest(f"{path}:{lineno}: {exc}") from None
        if name is None:
            from pathlib import Path

            name = Path(path).stem
        return cls(name, utts)
