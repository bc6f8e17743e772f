"""Deterministic data-parallel pipeline and scaling benchmarks.

Trajectories are independent, so the build+evaluate pipeline is a fork-join
over contiguous trajectory chunks: the input set is inherited by forked
workers (no serialization of inputs), each worker writes its trajectories'
samples into a disjoint slice of one shared output buffer, and per-chunk
results never overlap. Because each trajectory's arithmetic is identical in
any chunking, outputs are bitwise identical for every worker count.

Benchmarks time the whole pipeline: strong scaling holds the problem fixed
while workers increase; weak scaling grows the problem proportionally to the
workers and checks that wall time stays flat.
"""

from __future__ import annotations

import ctypes
import multiprocessing
import os
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, TypeVar

import numpy as np
import psutil

from . import builder, evaluator, io
from .builder import BlendParams, GroupingMode, SeedMode
from .model import TrajectorySet

T = TypeVar("T")

try:
    _FORK_CONTEXT: Optional[multiprocessing.context.BaseContext] = multiprocessing.get_context(
        "fork"
    )
except ValueError:  # pragma: no cover - non-forking platforms fall back to serial
    _FORK_CONTEXT = None


class InsufficientCoresWarning(UserWarning):
    """Benchmark ran with more workers than physical cores."""


@dataclass(frozen=True)
class Partition:
    """Balanced contiguous chunks over ``total`` items."""

    worker_count: int
    chunks: tuple[tuple[int, int], ...]

    @property
    def total(self) -> int:
        return self.chunks[-1][1] if self.chunks else 0


def physical_core_count() -> int:
    cores = psutil.cpu_count(logical=False)
    if cores is None:
        cores = os.cpu_count()
    return max(1, cores or 1)


def partition(total: int, worker_count: int) -> Partition:
    """Split [0, total) into balanced contiguous ranges, one per worker.

    The first total % workers chunks get the ceiling size. Worker counts
    above ``total`` are clamped so no chunk is empty.
    """
    if total < 1:
        raise ValueError(f"total must be >= 1, got {total}")
    if worker_count < 1:
        raise ValueError(f"worker count must be >= 1, got {worker_count}")
    worker_count = min(worker_count, total)
    base, extra = divmod(total, worker_count)
    chunks = []
    start = 0
    for i in range(worker_count):
        stop = start + base + (1 if i < extra else 0)
        chunks.append((start, stop))
        start = stop
    return Partition(worker_count, tuple(chunks))


# Job payload inherited by forked workers; set only while a job is running.
_ACTIVE_JOB: Optional[tuple[Callable, tuple]] = None


def _run_job_chunk(index: int):
    assert _ACTIVE_JOB is not None
    work, chunks = _ACTIVE_JOB
    return work(chunks[index])


def run_parallel(work: Callable[[tuple[int, int]], T], part: Partition) -> list[T]:
    """Apply ``work`` to every chunk; results merged in chunk order.

    ``work`` must be pure per chunk. The first failing chunk's error is
    raised and remaining workers are cancelled. Output is identical to
    running the chunks serially.
    """
    if part.worker_count == 1 or _FORK_CONTEXT is None:
        return [work(chunk) for chunk in part.chunks]
    global _ACTIVE_JOB
    _ACTIVE_JOB = (work, part.chunks)
    try:
        with _FORK_CONTEXT.Pool(processes=part.worker_count) as pool:
            return pool.map(_run_job_chunk, range(len(part.chunks)))
    finally:
        _ACTIVE_JOB = None


# ---------------------------------------------------------------------------
# build + evaluate pipeline


@dataclass(frozen=True)
class PipelineJob:
    """Synthetic benchmark problem: size, sampling resolution, build options."""

    trajectory_count: int = 2000
    point_count: int = 13
    tick_count: int = 200
    grouping: GroupingMode = GroupingMode.OVERLAP
    seed_mode: SeedMode = SeedMode.CHAINED
    blend: BlendParams = field(default_factory=BlendParams)
    seed: int = 0


_PIPE: Optional[dict] = None


def _pipeline_chunk(index: int) -> tuple[int, int]:
    assert _PIPE is not None
    p = _PIPE
    start, stop = p["chunks"][index]
    out = np.frombuffer(p["buffer"], dtype=np.float64).reshape(p["shape"])
    build_before = builder.BUILD_MADDS.value
    eval_before = evaluator.MADDS.value
    trajectories = p["set"].trajectories
    for i in range(start, stop):
        curves = builder.build_trajectory(trajectories[i], p["grouping"], p["mode"], p["blend"])
        out[i] = evaluator.sample_polyline([c.v for c in curves], p["ticks"])
    return (
        builder.BUILD_MADDS.value - build_before,
        evaluator.MADDS.value - eval_before,
    )


def smooth_and_sample(
    trajectory_set: TrajectorySet,
    grouping: GroupingMode = GroupingMode.OVERLAP,
    mode: SeedMode = SeedMode.CHAINED,
    blend: Optional[BlendParams] = None,
    tick_count: int = 100,
    workers: int = 1,
) -> np.ndarray:
    """Build and sample every trajectory; returns (M, K*V + 1, 3) samples.

    Worker processes inherit the input set at fork time and fill disjoint
    row ranges of a shared output buffer, so results are bitwise identical
    across worker counts.
    """
    if blend is None:
        blend = BlendParams()
    m = trajectory_set.trajectory_count
    k = builder.segment_count(trajectory_set.point_count, grouping)
    width = k * tick_count + 1
    part = partition(m, workers)
    buffer = multiprocessing.RawArray(ctypes.c_double, m * width * 3)
    global _PIPE
    _PIPE = {
        "set": trajectory_set,
        "grouping": grouping,
        "mode": mode,
        "blend": blend,
        "ticks": tick_count,
        "chunks": part.chunks,
        "buffer": buffer,
        "shape": (m, width, 3),
    }
    try:
        if part.worker_count == 1 or _FORK_CONTEXT is None:
            for i in range(len(part.chunks)):
                _pipeline_chunk(i)
        else:
            with _FORK_CONTEXT.Pool(processes=part.worker_count) as pool:
                deltas = pool.map(_pipeline_chunk, range(len(part.chunks)))
            # counters grew in the workers' copies; fold them back here
            builder.BUILD_MADDS.add(sum(d[0] for d in deltas))
            evaluator.MADDS.add(sum(d[1] for d in deltas))
    finally:
        _PIPE = None
    return np.frombuffer(buffer, dtype=np.float64).reshape(m, width, 3).copy()


# ---------------------------------------------------------------------------
# scaling benchmarks


@dataclass(frozen=True)
class ScalingRow:
    mode: str
    worker_count: int
    trajectory_count: int
    segment_count: int
    tick_count: int
    wall_time_s: float
    speedup: float
    efficiency: float
    #: workers exceeded the machine's physical cores when this row was timed
    over_subscribed: bool = False


@dataclass(frozen=True)
class ScalingReport:
    mode: str
    rows: tuple[ScalingRow, ...]

    def wall_time_ratio(self) -> float:
        """max/min wall time across rows (weak-scaling flatness measure)."""
        times = [row.wall_time_s for row in self.rows]
        return max(times) / min(times)

    def is_flat(self, threshold: float = 1.5) -> bool:
        return self.wall_time_ratio() <= threshold


def _check_worker_list(worker_counts: Sequence[int]) -> None:
    if not worker_counts or worker_counts[0] != 1:
        raise ValueError("worker list must start at 1")
    if list(worker_counts) != sorted(worker_counts):
        raise ValueError("worker list must be ascending")


def _timed_pipeline(
    trajectory_set: TrajectorySet, job: PipelineJob, workers: int, repeats: int
) -> float:
    def run() -> None:
        smooth_and_sample(
            trajectory_set,
            grouping=job.grouping,
            mode=job.seed_mode,
            blend=job.blend,
            tick_count=job.tick_count,
            workers=workers,
        )

    run()  # warmup: page in inputs, prime the power-matrix cache
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        run()
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def _flag_over_subscription(workers: int) -> bool:
    if workers > physical_core_count():
        warnings.warn(
            f"{workers} workers exceed {physical_core_count()} physical cores; "
            "timings will understate scaling",
            InsufficientCoresWarning,
            stacklevel=3,
        )
        return True
    return False


def bench_strong(
    job: PipelineJob,
    worker_counts: Sequence[int] = (1, 2, 4),
    repeats: int = 3,
) -> ScalingReport:
    """Fixed problem, increasing workers; speedup relative to one worker."""
    _check_worker_list(worker_counts)
    trajectory_set = io.make_synthetic_set(job.trajectory_count, job.point_count, seed=job.seed)
    segments = builder.segment_count(job.point_count, job.grouping) * job.trajectory_count
    rows = []
    serial_time = None
    for workers in worker_counts:
        flagged = _flag_over_subscription(workers)
        wall = _timed_pipeline(trajectory_set, job, workers, repeats)
        if serial_time is None:
            serial_time = wall
        speedup = serial_time / wall
        rows.append(
            ScalingRow(
                mode="strong",
                worker_count=workers,
                trajectory_count=job.trajectory_count,
                segment_count=segments,
                tick_count=job.tick_count,
                wall_time_s=wall,
                speedup=speedup,
                efficiency=speedup / workers,
                over_subscribed=flagged,
            )
        )
    return ScalingReport("strong", tuple(rows))


def bench_weak(
    worker_counts: Sequence[int] = (1, 2, 4),
    segments_per_worker: int = 1050,
    job: Optional[PipelineJob] = None,
    repeats: int = 3,
) -> ScalingReport:
    """Problem size grows with the worker count; flat wall time is ideal.

    The trajectory count is chosen so total segments equal
    segments_per_worker * workers; segments_per_worker must therefore be a
    multiple of the per-trajectory segment count (3 for the default 4-point
    trajectories).
    """
    _check_worker_list(worker_counts)
    if job is None:
        job = PipelineJob(point_count=4)
    per_trajectory = builder.segment_count(job.point_count, job.grouping)
    if segments_per_worker % per_trajectory:
        raise ValueError(
            f"segments_per_worker must be a multiple of {per_trajectory} "
            f"(segments per {job.point_count}-point trajectory)"
        )
    rows = []
    serial_time = None
    for workers in worker_counts:
        flagged = _flag_over_subscription(workers)
        trajectory_count = segments_per_worker * workers // per_trajectory
        trajectory_set = io.make_synthetic_set(trajectory_count, job.point_count, seed=job.seed)
        wall = _timed_pipeline(trajectory_set, job, workers, repeats)
        if serial_time is None:
            serial_time = wall
        speedup = serial_time / wall
        rows.append(
            ScalingRow(
                mode="weak",
                worker_count=workers,
                trajectory_count=trajectory_count,
                segment_count=segments_per_worker * workers,
                tick_count=job.tick_count,
                wall_time_s=wall,
                speedup=speedup,
                efficiency=speedup / workers,
                over_subscribed=flagged,
            )
        )
    return ScalingReport("weak", tuple(rows))
