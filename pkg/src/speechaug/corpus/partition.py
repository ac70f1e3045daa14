"""Speaker-disjoint dev/train splits."""
from __future__ import annotations

from ..errors import TooManySpeakers
from .manifest import Manifest
from .seeding import SplitMix64


def choose_speakers(speakers, n_speakers: int, seed: int) -> list[str]:
    pool = sorted(speakers)
    if not 0 <= n_speakers <= len(pool):
        raise TooManySpeakers(f"asked for {n_speakers} of {len(pool)} speakers")
    SplitMix64(seed).shuffle(pool)
    return sorted(pool[:n_speakers])


def partition_by_speaker(m: Manifest, n_speakers: int, seed: int) -> tuple[Manifest, Manifest]:
    """Move every utterance of ``n_speakers`` randomly chosen speakers to dev.

    Utterance order within each part follows ``m``.
    """
    dev_spk = set(choose_speakers(m.speakers, n_speakers, seed))
    dev = [u for u in m if u.speaker_id in dev_spk]
    train = [u for u in m if u.speaker_id not in dev_spk]
    return Manifest(f"{m.name}-dev", dev), Manifest(f"{m.name}-train", train)
