"""Parallel, schedule-independent execution of a job plan."""
from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .. import dsp
from ..audio_io import AudioBuffer, read_wav, write_wav
from .manifest import Manifest, Utterance
from .recipe import Job, JobPlan, Op

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class JobResult:
    output_utt_id: str
    ok: bool
    utterance: Utterance | None = None
    error_type: str = ""
    message: str = ""


@dataclass
class RunReport:
    results: list[JobResult] = field(default_factory=list)
    manifest: Manifest = field(default_factory=lambda: Manifest("augmented"))

    @property
    def failures(self) -> list[JobResult]:
        return [r for r in self.results if not r.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "jobs": len(self.results),
            "succeeded": len(self.results) - len(self.failures),
            "failed": len(self.failures),
            "output_hours": self.manifest.total_hours,
            "failures": [
                {"utt_id": r.output_utt_id, "error": r.error_type, "message": r.message}
                for r in self.failures
            ],
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True, ensure_ascii=False)
            fh.write("\n")


def apply_job(buf: AudioBuffer, job: Job) -> AudioBuffer:
    p = job.resolved_params
    if job.op is Op.SPEED:
        out = dsp.speed_perturb(buf, p["factor"])
    elif job.op is Op.TEMPO:
        out = dsp.tempo_perturb(buf, p["factor"])
    elif job.op is Op.PITCH:
        out = dsp.pitch_shift_cents(buf, p["cents"])
    elif job.op is Op.REVERB:
        out = dsp.reverberate(buf)
    else:
        out = buf
    if "gain" in p:
        out = dsp.volume_scale(out, p["gain"])
    return out


def provenance_tags(job: Job) -> tuple[str, ...]:
    tags = [t for t in job.tags if t != "vp"]
    if "gain" in job.resolved_params:
        tags.append(f"vp{job.resolved_params['gain']:.6g}")
    return tags


def run_job(job: Job) -> JobResult:
    try:
        out = apply_job(read_wav(job.source.audio_path), job)
        os.makedirs(os.path.dirname(os.path.abspath(job.output_path)), exist_ok=True)
        write_wav(out, job.output_path)
    except Exception as exc:  # isolated per job; reported, never raised
        return JobResult(job.output_utt_id, False, error_type=type(exc).__name__, message=str(exc))
    src = job.source
    utt = Utterance(
        utt_id=job.output_utt_id,
        speaker_id=src.speaker_id,
        audio_path=job.output_path,
        duration_sec=out.duration_seconds,
        transcript=src.transcript,
        provenance=(*src.provenance, *provenance_tags(job)),
    )
    return JobResult(job.output_utt_id, True, utterance=utt)


def run_plan(plan: JobPlan, workers: int = 1, name: str = "augmented") -> RunReport:
    """Execute every job; failures are collected, not raised.

    The output manifest is sorted by utterance id, so it is identical for
    any worker count.
    """
    if workers < 1:
        raise ValueError("workers must be at least 1")
    jobs = list(plan)
    if workers == 1 or len(jobs) <= 1:
        results = [run_job(j) for j in jobs]
    else:
        chunk = max(1, len(jobs) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_job, jobs, chunksize=chunk))
    results.sort(key=lambda r: r.output_utt_id)
    for r in results:
        if not r.ok:
            log.warning("job %s failed: %s: %s", r.output_utt_id, r.error_type, r.message)
    manifest = Manifest(name, [r.utterance for r in results if r.ok])
    return RunReport(results, manifest)
