"""Command-line pipeline: ingest, build, evaluate, export, benchmark.

Exit codes: 0 success; 2 bad flags or configuration; 3 dataset validation
failure; 4 malformed input file; 5 file-system error; 6 point count
incompatible with the chosen grouping.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import io, parallel, sparse
from .builder import (
    BlendParams,
    GroupingMode,
    IncompatibleLengthError,
    SeedMode,
    build_set,
    group_count,
    segment_count,
)
from .model import ValidationError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VALIDATION = 3
EXIT_PARSE = 4
EXIT_IO = 5
EXIT_GROUPING = 6

_EXIT_CODE_HELP = """exit codes:
  0  success
  2  invalid flags or configuration (e.g. alpha outside (0,1))
  3  dataset failed validation (ragged, too short, non-finite, empty)
  4  malformed input file (bad header/magic, gaps in point indices)
  5  file-system error
  6  point count incompatible with the chosen grouping
"""


class ConfigError(ValueError):
    """Invalid option combination or value."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Optional[str] = None
    input_format: str = "csv"
    output: Optional[str] = None
    output_format: str = "csv"
    alpha: float = 0.5
    beta: float = 0.5
    seed_mode: SeedMode = SeedMode.CHAINED
    grouping: GroupingMode = GroupingMode.OVERLAP
    tick_count: int = 100
    workers: int = 0  # 0: use detected physical cores
    dense_cap: int = sparse.DEFAULT_DENSE_CAP
    bench_mode: str = "strong"
    worker_list: tuple[int, ...] = (1, 2, 4)
    bench_trajectories: int = 2000
    bench_points: int = 13
    segments_per_worker: int = 1050
    block_counts: tuple[int, ...] = (10, 100, 1000)
    repeats: int = 3

    def __post_init__(self) -> None:
        for name, w in (("alpha", self.alpha), ("beta", self.beta)):
            if not 0.0 < w < 1.0:
                raise ConfigError(f"--{name} must lie strictly inside (0, 1), got {w}")
        if self.tick_count < 1:
            raise ConfigError(f"--ticks must be >= 1, got {self.tick_count}")
        if self.workers < 0:
            raise ConfigError(f"--workers must be >= 1, got {self.workers}")

    def resolved_workers(self) -> int:
        return self.workers if self.workers > 0 else parallel.physical_core_count()

    def blend(self) -> BlendParams:
        return BlendParams(self.alpha, self.beta)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trajsmooth",
        description="Smooth particle trajectories into blended cubic curves and "
        "benchmark the batched evaluation pipeline.",
        epilog=_EXIT_CODE_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_input: bool) -> None:
        if needs_input:
            p.add_argument("--input", required=True, help="input dataset path")
            p.add_argument(
                "--input-format", choices=["csv", "binary"], default="csv", help="dataset encoding"
            )
        p.add_argument("--alpha", type=float, default=0.5, help="Bezier weight in the blend")
        p.add_argument("--beta", type=float, default=0.5, help="spline weight in the blend")
        p.add_argument(
            "--seed-mode",
            choices=[m.value for m in SeedMode],
            default=SeedMode.CHAINED.value,
            help="where segments take their start slope/curvature from",
        )
        p.add_argument(
            "--grouping",
            choices=[g.value for g in GroupingMode],
            default=GroupingMode.OVERLAP.value,
            help="how points are grouped into Bezier groups",
        )
        p.add_argument("--ticks", type=int, default=100, help="samples per segment (V)")
        p.add_argument(
            "--workers", type=int, default=0, help="worker processes (default: physical cores)"
        )

    p_smooth = sub.add_parser("smooth", help="write blended per-segment cubic coefficients")
    add_common(p_smooth, needs_input=True)
    p_smooth.add_argument("--output", required=True, help="coefficient CSV path")

    p_eval = sub.add_parser("eval", help="write stitched curve samples")
    add_common(p_eval, needs_input=True)
    p_eval.add_argument("--output", required=True, help="samples path")
    p_eval.add_argument(
        "--output-format", choices=["csv", "vtk"], default="csv", help="samples encoding"
    )

    p_info = sub.add_parser("info", help="print dataset and pipeline figures")
    add_common(p_info, needs_input=True)

    p_scaling = sub.add_parser("bench-scaling", help="run the scaling benchmark")
    add_common(p_scaling, needs_input=False)
    p_scaling.add_argument("--output", required=True, help="report CSV path")
    p_scaling.add_argument("--bench-mode", choices=["strong", "weak"], default="strong")
    p_scaling.add_argument(
        "--worker-list", type=_int_list, default=(1, 2, 4), help="ascending, starting at 1"
    )
    p_scaling.add_argument("--bench-trajectories", type=int, default=2000)
    p_scaling.add_argument("--bench-points", type=int, default=13)
    p_scaling.add_argument("--segments-per-worker", type=int, default=1050)
    p_scaling.add_argument("--repeats", type=int, default=3)

    p_sparse = sub.add_parser("bench-sparse", help="time block vs dense matrix-vector products")
    p_sparse.add_argument("--output", required=True, help="report CSV path")
    p_sparse.add_argument("--m-list", type=_int_list, default=(10, 100, 1000))
    p_sparse.add_argument("--dense-cap", type=int, default=sparse.DEFAULT_DENSE_CAP)
    p_sparse.add_argument("--repeats", type=int, default=5)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        input_format=getattr(args, "input_format", "csv"),
        output=getattr(args, "output", None),
        output_format=getattr(args, "output_format", "csv"),
        alpha=getattr(args, "alpha", 0.5),
        beta=getattr(args, "beta", 0.5),
        seed_mode=SeedMode(getattr(args, "seed_mode", SeedMode.CHAINED.value)),
        grouping=GroupingMode(getattr(args, "grouping", GroupingMode.OVERLAP.value)),
        tick_count=getattr(args, "ticks", 100),
        workers=getattr(args, "workers", 0),
        dense_cap=getattr(args, "dense_cap", sparse.DEFAULT_DENSE_CAP),
        bench_mode=getattr(args, "bench_mode", "strong"),
        worker_list=tuple(getattr(args, "worker_list", (1, 2, 4))),
        bench_trajectories=getattr(args, "bench_trajectories", 2000),
        bench_points=getattr(args, "bench_points", 13),
        segments_per_worker=getattr(args, "segments_per_worker", 1050),
        block_counts=tuple(getattr(args, "m_list", (10, 100, 1000))),
        repeats=getattr(args, "repeats", 3),
    )


def _cmd_smooth(config: RunConfig) -> int:
    trajectory_set = io.read_trajectories(config.input, config.input_format)
    built = build_set(trajectory_set, config.grouping, config.seed_mode, config.blend())
    with open(config.output, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["trajectory_id", "segment_index", "axis", "a", "b", "c", "d"])
        for curves in built.trajectories:
            for ordinal, curve in enumerate(curves):
                for axis_index, axis_name in enumerate("xyz"):
                    a, b, c, d = curve.v.axis(axis_index)
                    writer.writerow(
                        [curve.spec.trajectory_id, ordinal, axis_name]
                        + [repr(v) for v in (a, b, c, d)]
                    )
    return EXIT_OK


def _cmd_eval(config: RunConfig) -> int:
    trajectory_set = io.read_trajectories(config.input, config.input_format)
    samples = parallel.smooth_and_sample(
        trajectory_set,
        grouping=config.grouping,
        mode=config.seed_mode,
        blend=config.blend(),
        tick_count=config.tick_count,
        workers=config.resolved_workers(),
    )
    ids = [tr.id for tr in trajectory_set.trajectories]
    io.write_samples(config.output, list(samples), config.output_format, trajectory_ids=ids)
    return EXIT_OK


def _cmd_info(config: RunConfig) -> int:
    trajectory_set = io.read_trajectories(config.input, config.input_format)
    m = trajectory_set.trajectory_count
    s = trajectory_set.point_count
    groups = group_count(s, config.grouping)
    segments = segment_count(s, config.grouping)
    matrix = sparse.assemble_global(block_count=m)
    v = config.tick_count
    print(f"trajectories (M): {m}")
    print(f"points per trajectory (S): {s}")
    print(f"groups per trajectory: {groups}")
    print(f"segments per trajectory: {segments}")
    print(f"global matrix shape: {matrix.shape[0]} x {matrix.shape[1]}")
    print(f"density of global matrix (<= 1/M): {sparse.footprint_density(matrix)!r}")
    print(f"nonzero density: {sparse.density(matrix)!r}")
    print(f"predicted build multiply-adds (~ M*groups): {m * groups}")
    print(f"predicted eval multiply-adds (~ M*segments*(V+1)): {m * segments * (v + 1)}")
    return EXIT_OK


def _cmd_bench_scaling(config: RunConfig) -> int:
    job = parallel.PipelineJob(
        trajectory_count=config.bench_trajectories,
        point_count=config.bench_points,
        tick_count=config.tick_count,
        grouping=config.grouping,
        seed_mode=config.seed_mode,
        blend=config.blend(),
    )
    if config.bench_mode == "strong":
        report = parallel.bench_strong(job, config.worker_list, repeats=config.repeats)
    else:
        report = parallel.bench_weak(
            config.worker_list,
            segments_per_worker=config.segments_per_worker,
            job=parallel.PipelineJob(
                point_count=4,
                tick_count=config.tick_count,
                grouping=config.grouping,
                seed_mode=config.seed_mode,
                blend=config.blend(),
            ),
            repeats=config.repeats,
        )
    io.write_report(config.output, report)
    for row in report.rows:
        print(
            f"{row.mode} P={row.worker_count} M={row.trajectory_count} "
            f"time={row.wall_time_s:.4f}s speedup={row.speedup:.2f} "
            f"efficiency={row.efficiency:.2f}"
        )
    return EXIT_OK


def _cmd_bench_sparse(config: RunConfig) -> int:
    rows = sparse.bench_block_vs_dense(
        config.block_counts, repeats=config.repeats, dense_cap=config.dense_cap
    )
    io.write_report(config.output, rows)
    for row in rows:
        print(f"M={row['M']} {row['method']}: {row['wall_time_s']:.6f}s ({row['flops']} madds)")
    return EXIT_OK


_COMMANDS = {
    "smooth": _cmd_smooth,
    "eval": _cmd_eval,
    "info": _cmd_info,
    "bench-scaling": _cmd_bench_scaling,
    "bench-sparse": _cmd_bench_sparse,
}


def run(config: RunConfig) -> int:
    return _COMMANDS[config.command](config)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        return run(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (io.ParseError, io.GapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except IncompatibleLengthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GROUPING
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
