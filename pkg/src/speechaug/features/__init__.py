from .fbank import FbankConfig, FeatureMatrix, compute_fbank, hz_to_mel, mel_edges_hz, mel_filterbank, mel_to_hz, num_frames
from .io import decode_fbm, encode_fbm, read_fbm, write_csv, write_fbm
from .specaugment import Fill, MaskPlan, SpecAugmentConfig, apply_masks, draw_masks, spec_augment, time_warp

__all__ = [
    "FbankConfig", "FeatureMatrix", "Fill", "MaskPlan", "apply_masks", "draw_masks", "SpecAugmentConfig",
    "compute_fbank", "decode_fbm", "encode_fbm", "hz_to_mel", "mel_edges_hz",
    "mel_filterbank", "mel_to_hz", "num_frames", "read_fbm", "spec_augment",
    "time_warp", "write_csv", "write_fbm",
]
