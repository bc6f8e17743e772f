#!/usr/bin/env python3
"""End-to-end demo: generate, smooth, sample, and export a small dataset.

Produces, inside --outdir:
    demo.csv        raw synthetic dataset
    demo_coeffs.csv blended per-segment cubic coefficients
    demo_samples.csv sampled polylines, one row per (trajectory, tick)
    demo.vtk        legacy-VTK polylines for a viewer such as ParaView
"""

import argparse
from pathlib import Path

from trajsmooth import (
    BlendParams,
    GroupingMode,
    SeedMode,
    make_synthetic_set,
    smooth_and_sample,
    write_samples,
    write_trajectories,
)
from trajsmooth.cli import main as cli_main
from trajsmooth.io import check_vtk_polyline


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trajectories", type=int, default=50)
    parser.add_argument("--points", type=int, default=13)
    parser.add_argument("--ticks", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--grouping", choices=[g.value for g in GroupingMode],
                        default=GroupingMode.OVERLAP.value)
    parser.add_argument("--seed-mode", choices=[m.value for m in SeedMode],
                        default=SeedMode.CHAINED.value)
    parser.add_argument("--outdir", type=Path, default=Path("demo_out"))
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    dataset_path = args.outdir / "demo.csv"

    dataset = make_synthetic_set(args.trajectories, args.points, seed=args.seed)
    write_trajectories(dataset_path, dataset, "csv")
    print(f"[1/4] dataset: {dataset_path}")

    print("[2/4] dataset summary:")
    cli_main(["info", "--input", str(dataset_path)])

    coeff_path = args.outdir / "demo_coeffs.csv"
    cli_main([
        "smooth", "--input", str(dataset_path), "--output", str(coeff_path),
        "--grouping", args.grouping, "--seed-mode", args.seed_mode,
    ])
    print(f"[3/4] blended coefficients: {coeff_path}")

    samples = smooth_and_sample(
        dataset,
        grouping=GroupingMode(args.grouping),
        mode=SeedMode(args.seed_mode),
        blend=BlendParams(),
        tick_count=args.ticks,
    )
    csv_path = args.outdir / "demo_samples.csv"
    vtk_path = args.outdir / "demo.vtk"
    write_samples(csv_path, list(samples), "csv")
    write_samples(vtk_path, list(samples), "vtk")
    info = check_vtk_polyline(vtk_path)
    print(f"[4/4] samples: {csv_path} and {vtk_path} "
          f"({info['points']} points in {len(info['line_lengths'])} polylines)")


if __name__ == "__main__":
    main()
