"""Kaldi-style data directories (wav.scp, text, utt2spk, spk2utt)."""
from __future__ import annotations

from collections import defaultdict
from pathlib import Path

from ..audio_io import wav_info
from ..errors import MalformedScpLine, MissingFile, SpeechAugError
from .manifest import Manifest, Utterance

REQUIRED = ("wav.scp", "text", "utt2spk")


def _read_table(path: Path, allow_empty_value: bool) -> dict[str, str]:
    table = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(maxsplit=1)
            if len(parts) < 2 and not allow_empty_value:
                raise MalformedScpLine(f"{path}:{lineno}: expected '<utt_id> <value>'")
            key = parts[0]
            if key in table:
                raise MalformedScpLine(f"{path}:{lineno}: duplicate id {key!r}")
            table[key] = " ".join(parts[1].split()) if len(parts) > 1 else ""
    return table


def _duration(path: str) -> float:
    try:
        rate, frames = wav_info(path)
    except (OSError, SpeechAugError):
        return 0.0
    return frames / rate


def import_kaldi_dir(directory, name: str | None = None) -> Manifest:
    """Build a manifest from a Kaldi data dir; durations come from WAV headers when readable."""
    d = Path(directory)
    for fname in REQUIRED:
        if not (d / fname).is_file():
            raise MissingFile(f"{d / fname} not found")
    wavs = _read_table(d / "wav.scp", allow_empty_value=False)
    texts = _read_table(d / "text", allow_empty_value=True)
    spk = _read_table(d / "utt2spk", allow_empty_value=False)
    for fname, table in (("text", texts), ("utt2spk", spk)):
        missing = set(wavs) - set(table)
        if missing:
            raise MalformedScpLine(f"{fname} lacks {len(missing)} ids from wav.scp, e.g. {min(missing)!r}")
    utts = [
        Utterance(utt_id=u, speaker_id=spk[u], audio_path=wavs[u],
                  duration_sec=_duration(wavs[u]), transcript=texts[u])
        for u in sorted(wavs)
    ]
    return Manifest(name or d.name, utts)


def export_kaldi_dir(m: Manifest, directory) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    utts = sorted(m, key=lambda u: u.utt_id)
    for u in utts:
        if any(c.isspace() for c in u.speaker_id) or not u.speaker_id:
            raise MalformedScpLine(f"{u.utt_id}: speaker id {u.speaker_id!r} is not a single token")
        if any(c.isspace() for c in u.audio_path):
            raise MalformedScpLine(f"{u.utt_id}: audio path contains whitespace")
    spk2utt = defaultdict(list)
    for u in utts:
        spk2utt[u.speaker_id].append(u.utt_id)

    def write(fname, lines):
        with open(d / fname, "w", encoding="utf-8", newline="\n") as fh:
            fh.writelines(line.rstrip() + "\n" for line in lines)

    write("wav.scp", (f"{u.utt_id} {u.audio_path}" for u in utts))
    write("text", (f"{u.utt_id} {' '.join(u.transcript.split())}" for u in utts))
    write("utt2spk", (f"{u.utt_id} {u.speaker_id}" for u in utts))
    write("spk2utt", (f"{s} {' '.join(ids)}" for s, ids in sorted(spk2utt.items())))
