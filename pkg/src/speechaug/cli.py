"""Command-line entry point: ``speechaug <subcommand> [flags]``.

Exit codes: 0 success, 1 job or data failure, 2 usage error.  Logs and
diagnostics go to stderr; data goes to files (``hours`` and ``cer`` also
print their result table to stdout).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .audio_io import read_wav
from .corpus import (
    DEFAULT_SYMBOLS,
    PARTITION_PRESETS,
    AugmentationRecipe,
    Manifest,
    builtin_recipe,
    estimate_hours,
    expand_recipe,
    export_kaldi_dir,
    import_kaldi_dir,
    normalize_text,
    partition_by_speaker,
    run_plan,
)
from .corpus.recipe import BUILTIN_RECIPES, parse_assignments
from .corpus.text import load_mapping
from .errors import SpeechAugError, UnmatchedUtterances
from .features import FbankConfig, SpecAugmentConfig, compute_fbank, read_fbm, spec_augment, write_csv, write_fbm
from .scoring import join_transcripts, pooled_counts, read_transcripts

log = logging.getLogger("speechaug")


class UsageError(Exception):
    pass


def seed_type(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def load_recipe(source: str) -> AugmentationRecipe:
    if os.path.exists(source):
        return AugmentationRecipe.load(source)
    if source in BUILTIN_RECIPES:
        return builtin_recipe(source)
    raise UsageError(f"recipe {source!r} is neither a file nor a built-in ({', '.join(BUILTIN_RECIPES)})")


def assignments(items, kind=str):
    try:
        return parse_assignments(items or [], kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- subcommands ------------------------------------------------------------

def cmd_augment(args) -> int:
    recipe = load_recipe(args.recipe)
    paths = assignments(args.manifest)
    if not paths:
        raise UsageError("augment needs at least one --manifest name=path")
    sources = {name: Manifest.load(p, name) for name, p in paths.items()}
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    wav_dir = out / "wav"
    wav_dir.mkdir(exist_ok=True)
    plan = expand_recipe(sources, recipe, args.seed, wav_dir)
    log.info("planned %d jobs", len(plan))
    report = run_plan(plan, workers=args.workers, name=out.name)
    report.manifest.save(out / "manifest.jsonl")
    report.save(out / "report.json")
    log.info("%d ok, %d failed, %.3f h written", len(report.results) - len(report.failures),
             len(report.failures), report.manifest.total_hours)
    return 0 if report.ok else 1


def cmd_hours(args) -> int:
    recipe = load_recipe(args.recipe)
    base = assignments(args.base, float)
    table = estimate_hours(recipe, base)
    if args.json:
        print(json.dumps(table.to_dict(), indent=2))
    else:
        print(table.format())
    return 0


def cmd_fbank(args) -> int:
    buf = read_wav(args.wav)
    cfg = FbankConfig(sample_rate_hz=buf.sample_rate, n_mels=args.n_mels,
                      f_max_hz=min(7600.0, buf.sample_rate / 2))
    m = compute_fbank(buf, cfg)
    write_fbm(m, args.out)
    if args.csv:
        write_csv(m, args.csv)
    log.info("%s: %d x %d", args.wav, m.rows, m.cols)
    return 0


def cmd_specaug(args) -> int:
    cfg = SpecAugmentConfig(
        n_freq_masks=args.freq_masks, max_freq_width=args.max_freq_width,
        n_time_masks=args.time_masks, max_time_width=args.max_time_width,
        time_warp_enabled=args.time_warp, max_warp=args.max_warp, fill=args.fill,
    )
    write_fbm(spec_augment(read_fbm(args.input), cfg, args.seed), args.out)
    return 0


def cmd_partition(args) -> int:
    if args.speakers is None and args.preset is None:
        raise UsageError("partition needs --speakers or --preset")
    n = args.speakers if args.speakers is not None else PARTITION_PRESETS[args.preset]["speakers"]
    m = Manifest.load(args.manifest)
    dev, train = partition_by_speaker(m, n, args.seed)
    dev.save(args.dev_out)
    train.save(args.train_out)
    log.info("dev: %d speakers / %d utts; train: %d speakers / %d utts",
             len(dev.speakers), len(dev), len(train.speakers), len(train))
    return 0


def cmd_normalize(args) -> int:
    mapping = load_mapping(args.mapping) if args.mapping else DEFAULT_SYMBOLS
    with open(args.input, encoding="utf-8") as fin, open(args.output, "w", encoding="utf-8") as fout:
        for line in fin:
            line = line.rstrip("\n")
            if args.with_ids:
                utt, sep, text = line.partition(" ")
                fout.write(utt + sep + normalize_text(text, mapping) + "\n")
            else:
                fout.write(normalize_text(line, mapping) + "\n")
    return 0


def cmd_cer(args) -> int:
    ref = read_transcripts(args.ref)
    hyp = read_transcripts(args.hyp)
    try:
        pairs = join_transcripts(ref, hyp, allow_unmatched=args.allow_unmatched)
    except UnmatchedUtterances as exc:
        for u in exc.missing_in_hyp:
            print(f"missing hypothesis: {u}", file=sys.stderr)
        for u in exc.missing_in_ref:
            print(f"missing reference: {u}", file=sys.stderr)
        raise
    c = pooled_counts(pairs)
    if c.ref_len == 0:
        raise SpeechAugError("total reference length is zero")
    rate = c.errors / c.ref_len
    print(f"CER {100 * rate:.2f} % [ {c.errors} / {c.ref_len}, "
          f"{c.insertions} ins, {c.deletions} del, {c.substitutions} sub ]")
    return 0


def cmd_import_kaldi(args) -> int:
    m = import_kaldi_dir(args.dir)
    m.save(args.out)
    log.info("imported %d utterances", len(m))
    return 0


def cmd_export_kaldi(args) -> int:
    export_kaldi_dir(Manifest.load(args.manifest), args.dir)
    return 0


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="speechaug", description="Speech data augmentation, features and scoring.",
                                epilog="exit status: 0 success, 1 job or data failure, 2 usage error")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", metavar="SUBCOMMAND", required=True)

    s = sub.add_parser("augment", help="expand a recipe over manifests and render the audio")
    s.add_argument("--recipe", required=True, help="recipe JSON file, or a built-in name: " + ", ".join(BUILTIN_RECIPES))
    s.add_argument("--manifest", action="append", required=True, metavar="NAME=PATH",
                   help="source manifest (repeatable)")
    s.add_argument("--out", required=True, help="output directory")
    s.add_argument("--seed", type=seed_type, required=True)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_augment)

    s = sub.add_parser("hours", help="hour accounting for a recipe")
    s.add_argument("--recipe", required=True)
    s.add_argument("--base", action="append", required=True, metavar="NAME=HOURS")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_hours)

    s = sub.add_parser("fbank", help="log mel filterbank features to an FBM1 file")
    s.add_argument("--wav", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--csv", help="also write a CSV copy")
    s.add_argument("--n-mels", type=int, default=80)
    s.set_defaults(func=cmd_fbank)

    s = sub.add_parser("specaug", help="SpecAugment an FBM1 file")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--seed", type=seed_type, required=True)
    s.add_argument("--freq-masks", type=int, default=2)
    s.add_argument("--max-freq-width", type=int, default=27)
    s.add_argument("--time-masks", type=int, default=2)
    s.add_argument("--max-time-width", type=int, default=100)
    s.add_argument("--time-warp", action="store_true")
    s.add_argument("--max-warp", type=int, default=80)
    s.add_argument("--fill", choices=["matrix_mean", "zero"], default="matrix_mean")
    s.set_defaults(func=cmd_specaug)

    s = sub.add_parser("partition", help="speaker-disjoint dev/train split")
    s.add_argument("--manifest", required=True)
    s.add_argument("--speakers", type=int)
    s.add_argument("--preset", choices=sorted(PARTITION_PRESETS))
    s.add_argument("--seed", type=seed_type, required=True)
    s.add_argument("--dev-out", required=True)
    s.add_argument("--train-out", required=True)
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("normalize", help="map symbols in transcripts to words")
    s.add_argument("--input", required=True)
    s.add_argument("--output", required=True)
    s.add_argument("--mapping", help="JSON object or TSV file; default: built-in symbol table")
    s.add_argument("--with-ids", action="store_true", help="lines start with an utterance id")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("cer", help="character error rate of hyp against ref")
    s.add_argument("--ref", required=True)
    s.add_argument("--hyp", required=True)
    s.add_argument("--allow-unmatched", action="store_true",
                   help="score unmatched ids as full deletions/insertions instead of failing")
    s.set_defaults(func=cmd_cer)

    s = sub.add_parser("import-kaldi", help="Kaldi data dir to JSONL manifest")
    s.add_argument("--dir", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_import_kaldi)

    s = sub.add_parser("export-kaldi", help="JSONL manifest to Kaldi data dir")
    s.add_argument("--manifest", required=True)
    s.add_argument("--dir", required=True)
    s.set_defaults(func=cmd_export_kaldi)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (SpeechAugError, OSError, ValueError) as exc:
        print(f"speechaug {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
