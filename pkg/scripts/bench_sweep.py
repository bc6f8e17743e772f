#!/usr/bin/env python3
"""Run the sparse-matvec and parallel-scaling benchmarks, writing report CSVs.

Example:
    python3 scripts/bench_sweep.py --outdir bench_out \
        --m-list 100,500,1000 --worker-list 1,2,4
"""

import argparse
from pathlib import Path

from trajsmooth import bench_block_vs_dense, bench_strong, bench_weak
from trajsmooth.io import write_report
from trajsmooth.parallel import PipelineJob, physical_core_count


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("bench_out"))
    parser.add_argument("--m-list", default="100,500,1000",
                        help="comma-separated block counts for the matvec benchmark")
    parser.add_argument("--worker-list", default="1,2,4")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--trajectories", type=int, default=2000,
                        help="strong-scaling problem size (M)")
    parser.add_argument("--points", type=int, default=13)
    parser.add_argument("--ticks", type=int, default=200)
    parser.add_argument("--segments-per-worker", type=int, default=1050,
                        help="weak-scaling per-worker load")
    parser.add_argument("--skip-weak", action="store_true")
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    workers = tuple(int(p) for p in args.worker_list.split(","))
    print(f"physical cores detected: {physical_core_count()}")

    m_list = [int(m) for m in args.m_list.split(",")]
    sparse_rows = bench_block_vs_dense(m_list, repeats=args.repeats)
    sparse_path = args.outdir / "sparse_bench.csv"
    write_report(sparse_path, sparse_rows)
    for row in sparse_rows:
        print(f"  M={row['M']:>6} {row['method']:<6} {row['wall_time_s']:.3e} s")
    print(f"sparse benchmark -> {sparse_path}")

    job = PipelineJob(
        trajectory_count=args.trajectories,
        point_count=args.points,
        tick_count=args.ticks,
    )
    strong = bench_strong(job, workers, repeats=args.repeats)
    strong_path = args.outdir / "strong_scaling.csv"
    write_report(strong_path, strong)
    for row in strong.rows:
        flag = " (over-subscribed)" if row.over_subscribed else ""
        print(f"  P={row.worker_count} {row.wall_time_s:.3f} s "
              f"speedup={row.speedup:.2f} efficiency={row.efficiency:.2f}{flag}")
    print(f"strong scaling -> {strong_path}")

    if not args.skip_weak:
        weak = bench_weak(
            workers,
            segments_per_worker=args.segments_per_worker,
            job=PipelineJob(point_count=4, tick_count=args.ticks),
            repeats=args.repeats,
        )
        weak_path = args.outdir / "weak_scaling.csv"
        write_report(weak_path, weak)
        for row in weak.rows:
            print(f"  P={row.worker_count} M={row.trajectory_count} "
                  f"{row.wall_time_s:.3f} s")
        print(f"weak scaling (ratio {weak.wall_time_ratio():.2f}) -> {weak_path}")


if __name__ == "__main__":
    main()
