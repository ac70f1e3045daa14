"""Augmentation recipes: job planning and hour accounting."""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from ..dsp import MAX_CENTS
from ..dsp.resample import MAX_FACTOR, MIN_FACTOR
from ..errors import DuplicateOutputId, InvalidRecipe, UnknownSourceSet
from .manifest import Manifest, Utterance
from .seeding import SplitMix64, derive_seed

VOLUME_RANGE = (0.125, 2.0)
DEFAULT_PITCH_CENTS = (250.0, 370.0)


class Op(str, Enum):
    PITCH = "pitch"
    SPEED = "speed"
    TEMPO = "tempo"
    REVERB = "reverb"
    COPY = "copy"


TAGS = {Op.PITCH: "pp", Op.SPEED: "sp", Op.TEMPO: "tp", Op.REVERB: "rp", Op.COPY: "cp"}


def format_number(x: float) -> str:
    return f"{x:g}"


@dataclass(frozen=True)
class RecipeRule:
    sources: tuple[str, ...]
    op: Op
    params: tuple[float, ...] = ()
    volume: bool = False

    def __post_init__(self):
        try:
            op = Op(self.op)
        except ValueError:
            raise InvalidRecipe(f"unknown op {self.op!r}") from None
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "sources", tuple(self.sources))
        params = tuple(float(p) for p in self.params)
        if not self.sources:
            raise InvalidRecipe("rule has no source sets")
        if op in (Op.SPEED, Op.TEMPO):
            if not params:
                raise InvalidRecipe(f"{op.value} rule needs at least one factor")
            for f in params:
                if not MIN_FACTOR <= f <= MAX_FACTOR:
                    raise InvalidRecipe(f"{op.value} factor {f} outside [{MIN_FACTOR}, {MAX_FACTOR}]")
            if len(set(params)) != len(params):
                raise InvalidRecipe(f"repeated factor in {op.value} rule")
        elif op is Op.PITCH:
            if not params:
                params = DEFAULT_PITCH_CENTS
            if len(params) != 2 or params[0] > params[1]:
                raise InvalidRecipe("pitch params must be a cents range [lo, hi]")
            if not -MAX_CENTS <= params[0] <= params[1] <= MAX_CENTS:
                raise InvalidRecipe("pitch range must lie within [-1200, 1200] cents")
            if math.ceil(params[0]) > math.floor(params[1]):
                raise InvalidRecipe("pitch range contains no whole cent value")
        elif params:
            raise InvalidRecipe(f"{op.value} rule takes no params")
        object.__setattr__(self, "params", params)

    @property
    def label(self) -> str:
        parts = ["{" + ", ".join(self.sources) + "}", TAGS[self.op]]
        if self.op in (Op.SPEED, Op.TEMPO):
            parts[-1] += "@{" + ",".join(format_number(p) for p in self.params) + "}"
        elif self.op is Op.PITCH:
            parts[-1] += "@[" + ",".join(format_number(p) for p in self.params) + "]"
        label = " + ".join(parts)
        return label + " + vp" if self.volume else label

    def to_dict(self) -> dict:
        return {"sources": list(self.sources), "op": self.op.value,
                "params": list(self.params), "volume": self.volume}


@dataclass(frozen=True)
class AugmentationRecipe:
    rules: tuple[RecipeRule, ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping) -> "AugmentationRecipe":
        if not isinstance(d, Mapping) or not isinstance(d.get("rules"), list):
            raise InvalidRecipe('recipe must be an object with a "rules" list')
        rules = []
        for i, r in enumerate(d["rules"]):
            extra = set(r) - {"sources", "op", "params", "volume"}
            if extra:
                raise InvalidRecipe(f"rule {i}: unknown keys {sorted(extra)}")
            try:
                rules.append(RecipeRule(tuple(r["sources"]), r["op"],
                                        tuple(r.get("params", ())), bool(r.get("volume", False))))
            except KeyError as exc:
                raise InvalidRecipe(f"rule {i}: missing {exc}") from None
        return cls(tuple(rules))

    @classmethod
    def load(cls, path) -> "AugmentationRecipe":
        with open(path, encoding="utf-8") as fh:
            try:
                return cls.from_dict(json.load(fh))
            except json.JSONDecodeError as exc:
                raise InvalidRecipe(f"{path}: {exc}") from None

    def to_dict(self) -> dict:
        return {"rules": [r.to_dict() for r in self.rules]}

    @property
    def source_sets(self) -> set[str]:
        return {s for r in self.rules for s in r.sources}


BUILTIN_RECIPES = ("challenge", "challenge-openslr")


def builtin_recipe(name: str) -> AugmentationRecipe:
    """Load a bundled recipe by name (see ``BUILTIN_RECIPES``).

    ``challenge`` perturbs the adult set A and the combined child set C;
    ``challenge-openslr`` adds speed perturbation of an extra ``OpenSLR`` set.
    """
    if name not in BUILTIN_RECIPES:
        raise InvalidRecipe(f"no built-in recipe {name!r}")
    from importlib import resources

    text = resources.files("speechaug.recipes").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return AugmentationRecipe.from_dict(json.loads(text))


# --- planning -------------------------------------------------------------

@dataclass(frozen=True)
class Job:
    source: Utterance
    op: Op
    resolved_params: dict
    output_utt_id: str
    output_path: str
    derived_seed: int
    tags: tuple[str, ...] = ()

    @property
    def source_utt_id(self) -> str:
        return self.source.utt_id


@dataclass
class JobPlan:
    jobs: list[Job] = field(default_factory=list)

    def __len__(self):
        return len(self.jobs)

    def __iter__(self):
        return iter(self.jobs)


def draw_cents(global_seed: int, utt_id: str, lo: float, hi: float) -> int:
    rng = SplitMix64(derive_seed(global_seed, f"{utt_id}-pp"))
    return rng.randint(math.ceil(lo), math.floor(hi))


def draw_gain(derived_seed: int) -> float:
    return SplitMix64(derived_seed).log_uniform(*VOLUME_RANGE)


def _rule_variants(rule: RecipeRule, utt: Utterance, global_seed: int):
    if rule.op in (Op.SPEED, Op.TEMPO):
        for f in rule.params:
            yield f"{TAGS[rule.op]}{format_number(f)}", {"factor": f}
    elif rule.op is Op.PITCH:
        cents = draw_cents(global_seed, utt.utt_id, *rule.params)
        yield f"pp{cents}", {"cents": cents}
    else:
        yield TAGS[rule.op], {}


def expand_recipe(sources: Mapping[str, Manifest], recipe: AugmentationRecipe,
                  global_seed: int, out_dir) -> JobPlan:
    """One job per (source utterance, rule parameter), sorted by output id."""
    missing = recipe.source_sets - set(sources)
    if missing:
        raise UnknownSourceSet(f"recipe names unknown source sets: {sorted(missing)}")
    jobs: dict[str, Job] = {}
    for rule in recipe.rules:
        for set_name in rule.sources:
            for utt in sources[set_name]:
                for tag, params in _rule_variants(rule, utt, global_seed):
                    tags = [tag]
                    if rule.volume:
                        tags.append("vp")
                    out_id = "-".join([utt.utt_id, *tags])
                    seed = derive_seed(global_seed, out_id)
                    params = dict(params)
                    if rule.volume:
                        params["gain"] = draw_gain(seed)
                    if out_id in jobs:
                        raise DuplicateOutputId(f"output id {out_id!r} produced twice")
                    jobs[out_id] = Job(
                        source=utt, op=rule.op, resolved_params=params,
                        output_utt_id=out_id,
                        output_path=os.path.join(os.fspath(out_dir), f"{out_id}.wav"),
                        derived_seed=seed, tags=tuple(tags),
                    )
    return JobPlan([jobs[k] for k in sorted(jobs)])


# --- hour accounting ------------------------------------------------------

@dataclass(frozen=True)
class HoursRow:
    label: str
    hours: float


@dataclass(frozen=True)
class HoursTable:
    base: tuple[HoursRow, ...]
    rules: tuple[HoursRow, ...]

    @property
    def base_total(self) -> float:
        return sum(r.hours for r in self.base)

    @property
    def total(self) -> float:
        return self.base_total + sum(r.hours for r in self.rules)

    def format(self) -> str:
        rows = [*self.base, *self.rules]
        width = max([len(r.label) for r in rows] + [len("Total")])
        lines = [f"{r.label:<{width}}  {r.hours:10.1f}" for r in self.base]
        lines.append("-" * (width + 12))
        lines += [f"{r.label:<{width}}  {r.hours:10.1f}" for r in self.rules]
        lines.append("-" * (width + 12))
        lines.append(f"{'Total':<{width}}  {self.total:10.1f}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "base": [{"label": r.label, "hours": r.hours} for r in self.base],
            "rules": [{"label": r.label, "hours": r.hours} for r in self.rules],
            "total": self.total,
        }


def rule_hours(rule: RecipeRule, base_hours: Mapping[str, float]) -> float:
    src = 0.0
    for s in rule.sources:
        if s not in base_hours:
            raise UnknownSourceSet(f"no base hours for source set {s!r}")
        src += base_hours[s]
    if rule.op in (Op.SPEED, Op.TEMPO):
        return sum(src / f for f in rule.params)
    return src


def estimate_hours(recipe: AugmentationRecipe, base_hours: Mapping[str, float]) -> HoursTable:
    """Hours added by each rule; speed/tempo at factor f scale duration by 1/f.

    Volume perturbation never changes duration.
    """
    base = tuple(HoursRow(name, float(h)) for name, h in base_hours.items())
    rules = tuple(HoursRow(r.label, rule_hours(r, base_hours)) for r in recipe.rules)
    return HoursTable(base, rules)


def parse_assignments(items: Sequence[str], kind=str) -> dict:
    """Parse repeated ``name=value`` options into a dict."""
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ValueError(f"expected name=value, got {item!r}")
        if name in out:
            raise ValueError(f"{name!r} given twice")
        out[name] = kind(value)
    return out
