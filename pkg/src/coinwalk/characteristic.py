"""Characteristic matrices of a walk.

For each wavenumber k the characteristic matrix is
``C(k) = sum_w P_w (x) P_w`` over eigenspace projectors of the step operator
U_k. Contracting C(k) with any initial projector gives the long-time coin
state, so its k-integrals (uniform for local states, |Q(k)|^2-weighted for
distributed ones) are constant matrices that fully characterize the walk.

Summing over eigenspace projectors (rather than individual eigenvectors)
makes C basis-independent also at isolated degenerate k-points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateCoin, DegenerateDispersion, NormalizationError
from .linalg import DEGENERACY_TOL, Array, eig_unitary
from .walk import U2Params, WalkSpec, as_kpoint, build_uk, dispersion_gamma

#: sin^2(gamma) below this is treated as a degenerate dispersion point
DEGENERATE_SIN2 = 1e-14


@dataclass(frozen=True)
class QuadratureGrid:
    """Uniform grid on the periodic Brillouin zone [-pi, pi)^d.

    The duplicate periodic endpoint is excluded, so the rectangle rule here
    is the trapezoidal rule on the torus: spectrally accurate for smooth
    periodic integrands. All nodes carry equal weight 1/N^d and the weights
    sum to one (the 1/(2pi)^d measure is folded in).
    """

    points_per_axis: int
    dim: int = 1

    def __post_init__(self):
        if self.points_per_axis < 1 or self.dim < 1:
            raise ValueError("points_per_axis and dim must be >= 1")

    @classmethod
    def default(cls, dim: int) -> "QuadratureGrid":
        return cls(points_per_axis=4096 if dim == 1 else 256, dim=dim)

    @property
    def node_count(self) -> int:
        return self.points_per_axis**self.dim

    @property
    def weight(self) -> float:
        return 1.0 / self.node_count

    @property
    def nodes(self) -> Array:
        """All nodes as a (N^d, d) array, lexicographic order."""
        axis = -np.pi + 2 * np.pi * np.arange(self.points_per_axis) / self.points_per_axis
        if self.dim == 1:
            return axis[:, None]
        grids = np.meshgrid(*([axis] * self.dim), indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1)


@dataclass(frozen=True)
class CharacteristicMatrix:
    """An n^2 x n^2 characteristic matrix and how it was obtained."""

    coin_dim: int
    matrix: Array
    kind: str  # "pointwise" | "integrated_local" | "integrated_separable"


def swap_matrix(n: int) -> Array:
    """Permutation exchanging the two tensor factors of C^n (x) C^n."""
    s = np.zeros((n * n, n * n))
    for i, j in itertools.product(range(n), range(n)):
        s[i * n + j, j * n + i] = 1.0
    return s


def _batch_kron(a: Array, b: Array) -> Array:
    """Kronecker product over a leading batch axis: (M,n,n) x (M,n,n)."""
    m, n = a.shape[0], a.shape[1]
    return np.einsum("mij,mab->miajb", a, b).reshape(m, n * b.shape[1], n * b.shape[1])


def is_pauli_type(spec: WalkSpec) -> bool:
    """True for 2x2 coins with vanishing diagonal or off-diagonal.

    These are the theta in {0, pi/2} coins (up to phases), for which the
    stationary-phase asymptotics behind the k-integrated pipeline is not
    guaranteed (localization / purely ballistic regimes).
    """
    if spec.coin_dim != 2:
        return False
    c = spec.coin
    return bool(min(abs(c[0, 0]), abs(c[1, 1])) < 1e-12 or min(abs(c[0, 1]), abs(c[1, 0])) < 1e-12)


def _require_nondegenerate_coin(spec: WalkSpec) -> None:
    if is_pauli_type(spec):
        raise DegenerateCoin(
            "Pauli-type coin (theta in {0, pi/2}): the asymptotic quadrature "
            "pipeline is not defined for this walk"
        )


def characteristic_at_k(
    spec: WalkSpec, k, degeneracy_tol: float = DEGENERACY_TOL
) -> CharacteristicMatrix:
    """Pointwise ``C(k) = sum_w P_w (x) P_w`` from the spectrum of U_k."""
    es = eig_unitary(build_uk(spec, k), degeneracy_tol)
    n = spec.coin_dim
    c = np.zeros((n * n, n * n), dtype=np.complex128)
    for g in es.groups:
        p = es.projector(g)
        c += np.kron(p, p)
    return CharacteristicMatrix(coin_dim=n, matrix=c, kind="pointwise")


def characteristic_stack(spec: WalkSpec, ks: Array, degeneracy_tol: float = DEGENERACY_TOL) -> Array:
    """C(k) for every row of a (M, d) k-array, returned as (M, n^2, n^2).

    For two-dimensional coins the eigenproblem is solved in closed form for
    the whole batch at once; other coin dimensions fall back to a per-node
    eigendecomposition.
    """
    if spec.coin_dim == 2:
        return _characteristic_stack_2(spec, ks)
    return np.stack([characteristic_at_k(spec, k, degeneracy_tol).matrix for k in ks])


def _characteristic_stack_2(spec: WalkSpec, ks: Array) -> Array:
    phases = np.exp(-1j * (ks @ spec.shifts.T))  # (M, 2)
    u = phases[:, :, None] * spec.coin[None, :, :]
    tr = u[:, 0, 0] + u[:, 1, 1]
    det = u[:, 0, 0] * u[:, 1, 1] - u[:, 0, 1] * u[:, 1, 0]
    root = np.sqrt(tr * tr - 4.0 * det)
    lam1 = 0.5 * (tr + root)
    lam2 = 0.5 * (tr - root)
    gap = np.abs(lam1 - lam2)
    degenerate = gap < 1e-12
    denom = np.where(degenerate, 1.0, lam1 - lam2)
    eye2 = np.eye(2, dtype=np.complex128)
    p1 = (u - lam2[:, None, None] * eye2) / denom[:, None, None]
    p2 = eye2 - p1
    c = _batch_kron(p1, p1) + _batch_kron(p2, p2)
    # a degenerate 2x2 unitary is scalar: single eigenspace projector I
    c[degenerate] = np.eye(4, dtype=np.complex128)
    return c


def _c_of_k_u2_entries(p: U2Params, k: float, f_sign: float = 1.0) -> Array:
    gamma = dispersion_gamma(p, k)
    sin2 = np.sin(gamma) ** 2
    if sin2 < DEGENERATE_SIN2:
        raise DegenerateDispersion(
            f"sin^2(gamma) = {sin2:.3e} at k = {k!r}; the closed form is singular here"
        )
    ell = np.sin(p.theta) ** 2 / (2 * sin2)
    g = -ell * np.exp(2j * (k - p.beta))
    f = (
        f_sign
        * 1j
        * np.sin(k - p.alpha)
        * np.sin(p.theta)
        * np.cos(p.theta)
        / (2 * sin2)
        * np.exp(1j * (k - p.beta))
    )
    fc, gc = np.conj(f), np.conj(g)
    return np.array(
        [
            [1 - ell, -fc, -fc, gc],
            [-f, ell, ell, fc],
            [-f, ell, ell, fc],
            [g, f, f, 1 - ell],
        ],
        dtype=np.complex128,
    )


def c_of_k_u2(p: U2Params, k: float) -> CharacteristicMatrix:
    """Closed-form C(k) for the line walk with a general 2x2 coin.

    Valid wherever the dispersion is nondegenerate (theta strictly inside
    (0, pi/2), or k != alpha mod pi). Agrees with the numeric
    :func:`characteristic_at_k` route to ~1e-12; the agreement without any
    eigenvector phase fixing is itself a regression check, since the closed
    form is built from gauge-invariant projectors.

    Raises
    ------
    DegenerateDispersion
        When ``sin^2(gamma) < 1e-14`` at this (theta, alpha, k).
    """
    return CharacteristicMatrix(coin_dim=2, matrix=_c_of_k_u2_entries(p, k), kind="pointwise")


def c_local(
    spec: WalkSpec, grid: QuadratureGrid | None = None, degeneracy_tol: float = DEGENERACY_TOL
) -> CharacteristicMatrix:
    """Uniform k-integral of C(k): the constant matrix for local states."""
    _require_nondegenerate_coin(spec)
    grid = grid if grid is not None else QuadratureGrid.default(spec.lattice_dim)
    stack = characteristic_stack(spec, grid.nodes, degeneracy_tol)
    return CharacteristicMatrix(
        coin_dim=spec.coin_dim, matrix=stack.mean(axis=0), kind="integrated_local"
    )


def c_separable(
    spec: WalkSpec,
    q2: Callable[[float | Array], float],
    grid: QuadratureGrid | None = None,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> CharacteristicMatrix:
    """|Q(k)|^2-weighted k-integral of C(k) for separable distributed states.

    ``q2`` maps a k-point (scalar for 1-d walks, vector otherwise) to the
    nonnegative weight |Q(k)|^2; its grid average must equal 1.

    Raises
    ------
    NormalizationError
        If the weight integral deviates from 1 by more than 1e-6.
    """
    _require_nondegenerate_coin(spec)
    grid = grid if grid is not None else QuadratureGrid.default(spec.lattice_dim)
    nodes = grid.nodes
    if spec.lattice_dim == 1:
        weights = np.array([float(q2(float(k[0]))) for k in nodes])
    else:
        weights = np.array([float(q2(k)) for k in nodes])
    if np.min(weights) < -1e-12:
        raise NormalizationError("|Q(k)|^2 weight function takes negative values")
    total = weights.mean()
    if abs(total - 1.0) > 1e-6:
        raise NormalizationError(
            f"weight integral is {total!r}, deviates from 1 by more than 1e-6"
        )
    stack = characteristic_stack(spec, nodes, degeneracy_tol)
    matrix = (weights[:, None, None] * stack).mean(axis=0)
    return CharacteristicMatrix(coin_dim=spec.coin_dim, matrix=matrix, kind="integrated_separable")


def c_local_u2(p: U2Params) -> CharacteristicMatrix:
    """Closed-form k-integrated characteristic matrix of the U(2) line walk.

    Total formula; the quoted derivation regime is theta in (0, pi/2).
    Depends on alpha and beta only through alpha - beta.
    """
    s = np.sin(p.theta)
    f = s * np.cos(p.theta) / (s + 1) * np.exp(1j * (p.alpha - p.beta))
    g = s * (s - 1) / (s + 1) * np.exp(2j * (p.alpha - p.beta))
    fc, gc = np.conj(f), np.conj(g)
    matrix = 0.5 * np.array(
        [
            [2 - s, fc, fc, gc],
            [f, s, s, -fc],
            [f, s, s, -fc],
            [g, -f, -f, 2 - s],
        ],
        dtype=np.complex128,
    )
    return CharacteristicMatrix(coin_dim=2, matrix=matrix, kind="integrated_local")
