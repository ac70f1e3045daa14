"""SpecAugment: time warp plus frequency and time masking."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..corpus.seeding import SplitMix64
from ..errors import ConfigShapeMismatch
from .fbank import FeatureMatrix


class Fill(str, Enum):
    MATRIX_MEAN = "matrix_mean"
    ZERO = "zero"


@dataclass(frozen=True)
class SpecAugmentConfig:
    n_freq_masks: int = 2
    max_freq_width: int = 27
    n_time_masks: int = 2
    max_time_width: int = 100
    time_warp_enabled: bool = False
    max_warp: int = 80
    fill: Fill = Fill.MATRIX_MEAN

    def __post_init__(self):
        object.__setattr__(self, "fill", Fill(self.fill))
        for name in ("n_freq_masks", "max_freq_width", "n_time_masks", "max_time_width", "max_warp"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def check_shape(self, rows: int, cols: int) -> None:
        if self.time_warp_enabled and self.max_warp >= rows:
            raise ConfigShapeMismatch(f"max_warp {self.max_warp} needs more than {rows} frames")
        if self.max_freq_width > cols:
            raise ConfigShapeMismatch(f"max_freq_width {self.max_freq_width} exceeds {cols} bins")


def time_warp(data: np.ndarray, center: int, shift: int) -> np.ndarray:
    """Move frame ``center`` to ``center + shift``, linearly stretching both sides."""
    rows = data.shape[0]
    dest = center + shift
    if shift == 0 or rows < 3:
        return data.copy()
    out_t = np.arange(rows, dtype=np.float64)
    src_t = np.where(
        out_t < dest,
        out_t * center / dest,
        center + (out_t - dest) * (rows - 1 - center) / (rows - 1 - dest),
    )
    lo = np.clip(np.floor(src_t).astype(np.int64), 0, rows - 1)
    hi = np.minimum(lo + 1, rows - 1)
    w = (src_t - lo)[:, None]
    return data[lo] * (1.0 - w) + data[hi] * w


@dataclass(frozen=True)
class MaskPlan:
    """Random draws for one SpecAugment application.

    ``freq_masks`` and ``time_masks`` hold ``(start, width)`` pairs; ``warp`` is
    ``(center, shift)`` or ``None``.
    """

    warp: tuple[int, int] | None
    freq_masks: tuple[tuple[int, int], ...]
    time_masks: tuple[tuple[int, int], ...]


def draw_masks(rows: int, cols: int, cfg: SpecAugmentConfig, seed: int) -> MaskPlan:
    """Draw order: warp (center, shift) when enabled, then (width, start)
    per frequency mask, then per time mask.  Widths are clipped to the matrix.
    """
    cfg.check_shape(rows, cols)
    rng = SplitMix64(seed)
    warp = None
    if cfg.time_warp_enabled and cfg.max_warp > 0 and rows >= 3:
        center = rng.randint(1, rows - 2)
        shift = rng.randint(-cfg.max_warp, cfg.max_warp)
        warp = (center, min(max(center + shift, 1), rows - 2) - center)
    freq = []
    for _ in range(cfg.n_freq_masks):
        w = min(rng.randint(0, cfg.max_freq_width), cols)
        freq.append((rng.randint(0, cols - w), w))
    time = []
    for _ in range(cfg.n_time_masks):
        w = min(rng.randint(0, cfg.max_time_width), rows)
        time.append((rng.randint(0, rows - w), w))
    return MaskPlan(warp, tuple(freq), tuple(time))


def apply_masks(m: FeatureMatrix, plan: MaskPlan, fill: Fill = Fill.MATRIX_MEAN) -> FeatureMatrix:
    data = m.data.copy()
    if plan.warp is not None:
        data = time_warp(data, *plan.warp)
    value = float(data.mean()) if Fill(fill) is Fill.MATRIX_MEAN and data.size else 0.0
    for start, w in plan.freq_masks:
        data[:, start:start + w] = value
    for start, w in plan.time_masks:
        data[start:start + w, :] = value
    return FeatureMatrix(data)


def spec_augment(m: FeatureMatrix, cfg: SpecAugmentConfig, seed: int) -> FeatureMatrix:
    """Mask random frequency bands and time spans with the fill value.

    Cells outside the masks are left bit-identical unless time warping is on.
    The fill is the mean of the (warped) input, or zero.
    """
    return apply_masks(m, draw_masks(m.rows, m.cols, cfg, seed), cfg.fill)
