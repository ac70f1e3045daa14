"""Character error rate via minimum edit distance."""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ._backend import kernels
from .errors import EmptyReference, UnmatchedUtterances


@dataclass(frozen=True)
class AlignmentCounts:
    substitutions: int = 0
    deletions: int = 0
    insertions: int = 0
    correct: int = 0

    @property
    def ref_len(self) -> int:
        return self.correct + self.substitutions + self.deletions

    @property
    def errors(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    def __add__(self, other: "AlignmentCounts") -> "AlignmentCounts":
        return AlignmentCounts(
            self.substitutions + other.substitutions,
            self.deletions + other.deletions,
            self.insertions + other.insertions,
            self.correct + other.correct,
        )


def prepare(text: str) -> str:
    """NFC-normalize and drop all whitespace."""
    return "".join(unicodedata.normalize("NFC", text).split())


def _codes(s: str) -> np.ndarray:
    return np.fromiter((ord(c) for c in s), dtype=np.int32, count=len(s))


def align_chars(ref: str, hyp: str) -> AlignmentCounts:
    """Counts from one minimum-edit alignment of ``ref`` against ``hyp``.

    On equal-cost paths the backtrace prefers a diagonal step (match or
    substitution), then an insertion, then a deletion.
    """
    sub, dele, ins, cor = kernels.align_counts(_codes(prepare(ref)), _codes(prepare(hyp)))
    return AlignmentCounts(sub, dele, ins, cor)


def edit_distance(ref: str, hyp: str) -> int:
    return align_chars(ref, hyp).errors


def pooled_counts(pairs: Iterable[tuple[str, str]]) -> AlignmentCounts:
    total = AlignmentCounts()
    for ref, hyp in pairs:
        total = total + align_chars(ref, hyp)
    return total


def cer(pairs: Iterable[tuple[str, str]]) -> float:
    """Corpus-level CER: total errors over total reference characters."""
    total = pooled_counts(pairs)
    if total.ref_len == 0:
        raise EmptyReference("total reference length is zero")
    return total.errors / total.ref_len


def read_transcripts(path) -> dict[str, str]:
    """``utt_id transcript`` lines; the transcript may be empty."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            utt, _, text = line.partition(" ")
            out[utt] = text.strip()
    return out


def join_transcripts(ref: dict[str, str], hyp: dict[str, str], allow_unmatched: bool = False):
    """Pair transcripts by utterance id.

    Unmatched ids raise :class:`UnmatchedUtterances` unless ``allow_unmatched``,
    in which case a missing hypothesis scores as all deletions and a missing
    reference as all insertions.
    """
    missing_hyp = set(ref) - set(hyp)
    missing_ref = set(hyp) - set(ref)
    if (missing_hyp or missing_ref) and not allow_unmatched:
        raise UnmatchedUtterances(missing_hyp, missing_ref)
    ids = sorted(set(ref) | set(hyp))
    return [(ref.get(u, ""), hyp.get(u, "")) for u in ids]
