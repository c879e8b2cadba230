"""Command-line interface.

Subcommands:

* ``rho``       asymptotic coin state, eigenvalues and entanglement entropy
* ``fig``       CSV data behind the three standard entanglement figures
* ``verify``    cross-check suite (closed form vs numeric vs simulator)
* ``simulate``  finite-time coin-state series as CSV

Figure commands emit data, not images. All floats are written with 17
significant digits and every reduction runs in a fixed order, so identical
configurations produce byte-identical output files.

Exit codes: 0 ok, 1 verify failure, 2 parse error, 3 degenerate coin,
4 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    CoinWalkError,
    DegenerateCoin,
    DegenerateDispersion,
    FormatError,
)

_THREAD_ENV = "COINWALK_THREADS"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _angle(text: str) -> float:
    from .grammar import parse_angle

    try:
        return parse_angle(text)
    except FormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _open_out(path: str):
    if path in ("-", ""):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _write_csv(path: str, cfg: str, header: list[str], rows) -> None:
    out, close = _open_out(path)
    try:
        out.write(f"# cfg: {cfg}\n")
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
    finally:
        if close:
            out.close()


def _walk_and_params(args):
    """Resolve --walk-file / angle flags to (WalkSpec, U2Params or None)."""
    from .grammar import parse_walk_config
    from .walk import U2Params, line_walk

    if getattr(args, "walk_file", None):
        with open(args.walk_file, encoding="utf-8") as fh:
            return parse_walk_config(fh.read()), None
    p = U2Params(theta=args.theta, alpha=args.alpha, beta=args.beta)
    return line_walk(p), p


def cmd_rho(args) -> int:
    from .asymptotics import rho_asymptotic, rho_local_closed
    from .characteristic import QuadratureGrid
    from .grammar import parse_state
    from .states import LocalState

    spec, params = _walk_and_params(args)
    state = parse_state(args.state)
    if args.closed_form:
        if params is None or not isinstance(state, LocalState):
            raise FormatError("--closed-form requires angle parameters and a local state")
        result = rho_local_closed(params, state.chi)
    else:
        grid = QuadratureGrid(points_per_axis=args.grid_n, dim=spec.lattice_dim)
        result = rho_asymptotic(spec, state, grid)

    rho = result.rho.matrix
    if args.format == "json":
        doc = {
            "state": args.state,
            "grid_n": args.grid_n,
            "method": result.method,
            "rho_re": [[float(v.real) for v in row] for row in rho],
            "rho_im": [[float(v.imag) for v in row] for row in rho],
            "eigenvalues": [float(v) for v in result.eigenvalues],
            "cpe": float(result.cpe),
        }
        if params is not None:
            doc.update(theta=params.theta, alpha=params.alpha, beta=params.beta)
        out, close = _open_out(args.output)
        try:
            json.dump(doc, out, sort_keys=True, indent=2)
            out.write("\n")
        finally:
            if close:
                out.close()
    else:
        n = rho.shape[0]
        rows = [("cpe", result.cpe)]
        rows += [(f"eigenvalue_{i}", v) for i, v in enumerate(result.eigenvalues)]
        rows += [(f"rho_re_{i}_{j}", rho[i, j].real) for i in range(n) for j in range(n)]
        rows += [(f"rho_im_{i}_{j}", rho[i, j].imag) for i in range(n) for j in range(n)]
        cfg = f"rho state={args.state!r} grid_n={args.grid_n} method={result.method}"
        out, close = _open_out(args.output)
        try:
            out.write(f"# cfg: {cfg}\n")
            out.write("name,value\n")
            for name, value in rows:
                out.write(f"{name},{_fmt(value)}\n")
        finally:
            if close:
                out.close()
    return 0


def cmd_fig(args) -> int:
    import numpy as np

    from .asymptotics import (
        entropy_of_pair,
        eigenvalues_distributed_example,
        eigenvalues_entangled_example,
        eigenvalues_local_general,
    )
    from .states import BlochCoin
    from .walk import U2Params

    chi0 = BlochCoin(xi=0.0, eta=0.0)
    if args.which == "cpe-compare":
        thetas = [i * (np.pi / 2) / (args.theta_points + 1) for i in range(1, args.theta_points + 1)]
        alphas = [0.0, np.pi / 4, np.pi / 2]
        rows = []
        for th in thetas:
            local = entropy_of_pair(*eigenvalues_local_general(U2Params(th, 0.0, 0.0), chi0))
            dists = [
                entropy_of_pair(*eigenvalues_distributed_example(U2Params(th, a, 0.0)))
                for a in alphas
            ]
            rows.append((th, local, *dists))
        header = ["theta", "cpe_local", "cpe_dist_alpha0", "cpe_dist_alphaPi4", "cpe_dist_alphaPi2"]
        _write_csv(args.output, f"fig cpe-compare theta_points={args.theta_points}", header, rows)
    elif args.which == "cpe-3d":
        thetas = [i * (np.pi / 2) / (args.theta_points + 1) for i in range(1, args.theta_points + 1)]
        alphas = [j * (np.pi / 2) / (args.alpha_points - 1) for j in range(args.alpha_points)]
        rows = [
            (th, a, entropy_of_pair(*eigenvalues_distributed_example(U2Params(th, a, 0.0))))
            for th in thetas
            for a in alphas
        ]
        _write_csv(
            args.output,
            f"fig cpe-3d theta_points={args.theta_points} alpha_points={args.alpha_points}",
            ["theta", "alpha", "cpe"],
            rows,
        )
    else:  # cpe-entangled
        thetas = [i * np.pi / (args.theta_points + 1) for i in range(1, args.theta_points + 1)]
        rows = [(th, entropy_of_pair(*eigenvalues_entangled_example(th))) for th in thetas]
        _write_csv(
            args.output,
            f"fig cpe-entangled theta_points={args.theta_points}",
            ["theta", "cpe"],
            rows,
        )
    return 0


def cmd_verify(args) -> int:
    import numpy as np

    from .asymptotics import rho_local_closed
    from .characteristic import (
        QuadratureGrid,
        _c_of_k_u2_entries,
        c_local,
        c_local_u2,
        characteristic_at_k,
    )
    from .simulate import cesaro_rho
    from .states import LocalState
    from .walk import U2Params, line_walk

    rng = np.random.default_rng(args.seed)
    hadamard = U2Params(np.pi / 4, np.pi / 2, np.pi / 2)
    f_sign = -1.0 if args.inject_f_sign_error else 1.0

    residual_ck = 0.0
    for _ in range(args.draws):
        p = U2Params(
            theta=rng.uniform(0.05, np.pi / 2 - 0.05),
            alpha=rng.uniform(-np.pi, np.pi),
            beta=rng.uniform(-np.pi, np.pi),
        )
        k = rng.uniform(-np.pi, np.pi)
        closed = _c_of_k_u2_entries(p, k, f_sign=f_sign)
        numeric = characteristic_at_k(line_walk(p), k).matrix
        residual_ck = max(residual_ck, float(np.max(np.abs(closed - numeric))))

    grid = QuadratureGrid(points_per_axis=args.grid_n, dim=1)
    residual_cl = float(
        np.max(np.abs(c_local(line_walk(hadamard), grid).matrix - c_local_u2(hadamard).matrix))
    )

    state = LocalState(position=0, chi=[1.0, 0.0])
    reference = rho_local_closed(hadamard, state.chi).rho.matrix
    averaged = cesaro_rho(line_walk(hadamard), state, t_max=args.t_max, burn_in=args.burn_in)
    residual_oracle = float(np.max(np.abs(averaged.matrix - reference)))

    checks = [
        ("closed-form C(k) vs numeric eigenprojectors", residual_ck, 1e-10),
        ("k-integrated constant vs quadrature", residual_cl, 1e-8),
        (f"time-averaged simulator at t_max={args.t_max}", residual_oracle, 0.02),
    ]
    print(f"{'check':<46}{'residual':>14}{'budget':>12}  status")
    ok = True
    for name, res, budget in checks:
        status = "PASS" if res <= budget else "FAIL"
        ok = ok and status == "PASS"
        print(f"{name:<46}{res:>14.3e}{budget:>12.1e}  {status}")
    return 0 if ok else 1


def cmd_simulate(args) -> int:
    from .grammar import parse_state
    from .simulate import rho_series

    spec, _ = _walk_and_params(args)
    state = parse_state(args.state)
    rhos = rho_series(spec, state, args.t_max)
    n = spec.coin_dim
    header = ["t"]
    header += [f"rho_re_{i}_{j}" for i in range(n) for j in range(n)]
    header += [f"rho_im_{i}_{j}" for i in range(n) for j in range(n)]
    rows = []
    for t in range(0, args.t_max + 1, args.stride):
        r = rhos[t]
        rows.append(
            [t]
            + [r[i, j].real for i in range(n) for j in range(n)]
            + [r[i, j].imag for i in range(n) for j in range(n)]
        )
    cfg = f"simulate state={args.state!r} t_max={args.t_max} stride={args.stride}"
    _write_csv(args.output, cfg, header, rows)
    return 0


def _add_walk_args(sub) -> None:
    sub.add_argument("--theta", type=_angle, default=0.0, help="coin angle (radians or pi literal)")
    sub.add_argument("--alpha", type=_angle, default=0.0, help="upper coin phase")
    sub.add_argument("--beta", type=_angle, default=0.0, help="lower coin phase")
    sub.add_argument("--walk-file", help="walk config file (overrides the angle flags)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coinwalk", description="Asymptotic coin states of discrete-time coined walks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rho = sub.add_parser("rho", help="asymptotic coin state for a walk and initial state")
    _add_walk_args(rho)
    rho.add_argument("--state", required=True, help='initial state, e.g. \'local v=0 chi=(1,0)\'')
    rho.add_argument("--grid-n", type=int, default=4096, help="quadrature points per axis")
    rho.add_argument(
        "--closed-form", action="store_true", help="use the exact U(2) local-state formula"
    )
    rho.add_argument("--format", choices=("json", "csv"), default="json")
    rho.add_argument("--output", default="-", help="output path ('-' for stdout)")
    rho.set_defaults(func=cmd_rho)

    fig = sub.add_parser("fig", help="CSV data for the standard entanglement figures")
    fig.add_argument("which", choices=("cpe-compare", "cpe-3d", "cpe-entangled"))
    fig.add_argument("--theta-points", type=int, default=None)
    fig.add_argument("--alpha-points", type=int, default=33)
    fig.add_argument("--output", default="-")
    fig.set_defaults(func=cmd_fig)

    verify = sub.add_parser("verify", help="run the cross-check suite")
    verify.add_argument("--draws", type=int, default=100)
    verify.add_argument("--grid-n", type=int, default=4096)
    verify.add_argument("--t-max", type=int, default=2000)
    verify.add_argument("--burn-in", type=int, default=None)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument(
        "--inject-f-sign-error",
        action="store_true",
        help="negative control: flip the sign of the off-diagonal closed-form entry",
    )
    verify.set_defaults(func=cmd_verify)

    sim = sub.add_parser("simulate", help="finite-time coin-state series as CSV")
    _add_walk_args(sim)
    sim.add_argument("--state", required=True)
    sim.add_argument("--t-max", type=int, required=True)
    sim.add_argument("--stride", type=int, default=1)
    sim.add_argument("--output", default="-")
    sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    threads = os.environ.get(_THREAD_ENV)
    if threads:
        # cap BLAS pools before numpy is first imported by a subcommand
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)
    args = build_parser().parse_args(argv)
    if args.command == "fig" and args.theta_points is None:
        args.theta_points = 399 if args.which == "cpe-entangled" else 99
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DegenerateCoin, DegenerateDispersion) as exc:
        print(f"error: degenerate coin/dispersion: {exc}", file=sys.stderr)
        return 3
    except CoinWalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def main_entry() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
