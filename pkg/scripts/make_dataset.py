#!/usr/bin/env python3
"""Generate a synthetic trajectory dataset and write it to disk.

Example:
    python3 scripts/make_dataset.py --trajectories 500 --points 13 \
        --seed 7 --output data/run500.csv
"""

import argparse
from pathlib import Path

from trajsmooth import make_synthetic_set, write_trajectories


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trajectories", type=int, default=100, help="number of paths (M)")
    parser.add_argument("--points", type=int, default=13, help="points per path (S)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--step-scale", type=float, default=0.25,
                        help="std-dev of the random walk increments")
    parser.add_argument("--format", choices=("csv", "binary"), default="csv")
    parser.add_argument("--output", type=Path, required=True)
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    dataset = make_synthetic_set(
        args.trajectories, args.points, seed=args.seed, step_scale=args.step_scale
    )
    args.output.parent.mkdir(parents=True, exist_ok=True)
    write_trajectories(args.output, dataset, args.format)
    print(f"wrote {dataset.trajectory_count} trajectories x {dataset.point_count} points "
          f"to {args.output} ({args.format})")


if __name__ == "__main__":
    main()
