"""Corpus tooling: manifests, seeding, partitioning, recipes and execution."""
from .kaldi import export_kaldi_dir, import_kaldi_dir
from .manifest import Manifest, Utterance
from .partition import choose_speakers, partition_by_speaker
from .recipe import (
    AugmentationRecipe,
    HoursRow,
    HoursTable,
    Job,
    JobPlan,
    Op,
    RecipeRule,
    builtin_recipe,
    estimate_hours,
    expand_recipe,
)
from .runner import JobResult, RunReport, run_plan
from .seeding import SplitMix64, derive_seed, fnv1a64, splitmix64_mix
from .text import DEFAULT_SYMBOLS, normalize_text

# Dev sets held out from the child reading / conversational sets.
PARTITION_PRESETS = {
    "dev-011": {"speakers": 20},
    "dev-018": {"speakers": 5},
}

__all__ = [
    "AugmentationRecipe", "DEFAULT_SYMBOLS", "HoursRow", "HoursTable", "Job",
    "JobPlan", "JobResult", "Manifest", "Op", "PARTITION_PRESETS", "RecipeRule",
    "RunReport", "SplitMix64", "Utterance", "builtin_recipe", "choose_speakers",
    "derive_seed", "estimate_hours", "expand_recipe", "export_kaldi_dir",
    "fnv1a64", "import_kaldi_dir", "normalize_text", "partition_by_speaker",
    "run_plan", "splitmix64_mix",
]
