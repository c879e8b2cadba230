#!/usr/bin/env python3
"""Regenerate the CSV data behind the three standard entanglement figures.

Writes figure_cpe_compare.csv, figure_cpe_3d.csv and figure_cpe_entangled.csv
into --outdir (default: ./figures). Thin wrapper over ``coinwalk fig``; runs
are byte-deterministic for a given resolution.
"""

import argparse
import pathlib

from coinwalk.cli import main as coinwalk_main


def run(outdir: pathlib.Path, theta_points: int, alpha_points: int) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = [
        ("cpe-compare", "figure_cpe_compare.csv", ["--theta-points", str(theta_points)]),
        (
            "cpe-3d",
            "figure_cpe_3d.csv",
            ["--theta-points", str(theta_points), "--alpha-points", str(alpha_points)],
        ),
        ("cpe-entangled", "figure_cpe_entangled.csv", ["--theta-points", str(4 * theta_points)]),
    ]
    for which, name, extra in jobs:
        path = outdir / name
        code = coinwalk_main(["fig", which, "--output", str(path), *extra])
        if code != 0:
            raise SystemExit(code)
        print(f"wrote {path}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=pathlib.Path, default=pathlib.Path("figures"))
    parser.add_argument("--theta-points", type=int, default=99)
    parser.add_argument("--alpha-points", type=int, default=33)
    args = parser.parse_args()
    run(args.outdir, args.theta_points, args.alpha_points)
