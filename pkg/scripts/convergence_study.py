#!/usr/bin/env python3
"""Convergence of the two numeric routes to the exact asymptotic coin state.

For the balanced coin (theta=pi/4, alpha=beta=pi/2) started in |0> at the
origin, prints the max-entry residual against the closed-form density matrix

  * of Brillouin-zone quadrature, as the grid is refined (spectral: the
    error floor is reached almost immediately), and
  * of the Cesaro-averaged simulator, as the time horizon grows (roughly
    like 1/t).
"""

import argparse

import numpy as np

from coinwalk import (
    LocalState,
    QuadratureGrid,
    U2Params,
    cesaro_rho,
    line_walk,
    rho_asymptotic,
    rho_local_closed,
)


def run(grid_sizes: list[int], horizons: list[int]) -> None:
    p = U2Params(np.pi / 4, np.pi / 2, np.pi / 2)
    spec = line_walk(p)
    state = LocalState(position=0, chi=[1, 0])
    exact = rho_local_closed(p, state.chi).rho.matrix

    print("quadrature grid refinement")
    print(f"{'N':>8}{'residual':>14}")
    for n in grid_sizes:
        got = rho_asymptotic(spec, state, QuadratureGrid(n, 1)).rho.matrix
        print(f"{n:>8}{np.max(np.abs(got - exact)):>14.3e}")

    print()
    print("time-averaged simulator")
    print(f"{'t_max':>8}{'residual':>14}")
    for t in horizons:
        got = cesaro_rho(spec, state, t).matrix
        print(f"{t:>8}{np.max(np.abs(got - exact)):>14.3e}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--grid-sizes", type=int, nargs="+", default=[8, 16, 32, 64, 128, 512, 4096]
    )
    parser.add_argument(
        "--horizons", type=int, nargs="+", default=[50, 100, 250, 500, 1000, 2000, 4000]
    )
    args = parser.parse_args()
    run(args.grid_sizes, args.horizons)
