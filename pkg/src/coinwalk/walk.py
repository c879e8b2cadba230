"""Walk definitions and the momentum-space step operator.

A walk is a lattice dimension, a shift table (one integer displacement
vector per coin state) and a unitary coin. At wavenumber k the evolution is
the small unitary ``U_k = diag_j(exp(-1j k.s_j)) U_C``; everything downstream
(characteristic matrices, asymptotics) is built from its spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonUnitaryInput
from .linalg import Array, as_matrix, is_unitary


@dataclass(frozen=True)
class U2Params:
    """Parameters (theta, alpha, beta) of a general 2x2 unitary coin.

    The canonical range is theta in [0, pi/2]; other values are accepted
    verbatim (the coin formula is total) but the closed-form results
    elsewhere document their own validity ranges.
    """

    theta: float
    alpha: float
    beta: float


def u2_coin(p: U2Params) -> Array:
    """General 2x2 unitary coin, global phase dropped.

    Returns ``[[e^{ia} cos t, e^{ib} sin t], [-e^{-ib} sin t, e^{-ia} cos t]]``.
    """
    ct, st = np.cos(p.theta), np.sin(p.theta)
    return np.array(
        [
            [np.exp(1j * p.alpha) * ct, np.exp(1j * p.beta) * st],
            [-np.exp(-1j * p.beta) * st, np.exp(-1j * p.alpha) * ct],
        ],
        dtype=np.complex128,
    )


@dataclass(frozen=True)
class WalkSpec:
    """Definition of a coined walk.

    Attributes
    ----------
    lattice_dim : int
        Dimension d of the position lattice.
    coin_dim : int
        Dimension n of the coin space.
    shifts : (n, d) int array
        Displacement vector applied to coin state j each step. Explicit data,
        not convention: non-unit entries define walks with longer steps.
    coin : (n, n) complex array
        Unitary coin operator.
    """

    lattice_dim: int
    coin_dim: int
    shifts: Array
    coin: Array

    def __post_init__(self):
        if self.lattice_dim < 1 or self.coin_dim < 1:
            raise ValueError("lattice_dim and coin_dim must be >= 1")
        shifts = np.asarray(self.shifts, dtype=np.int64).reshape(self.coin_dim, self.lattice_dim)
        object.__setattr__(self, "shifts", shifts)
        coin = as_matrix(self.coin)
        if coin.shape != (self.coin_dim, self.coin_dim):
            raise ValueError(f"coin shape {coin.shape} != ({self.coin_dim}, {self.coin_dim})")
        if not is_unitary(coin, 1e-10):
            raise NonUnitaryInput("coin is not unitary within 1e-10")
        object.__setattr__(self, "coin", coin)


def line_walk(p: U2Params) -> WalkSpec:
    """Standard walk on the line: coin state |0> steps +1, |1> steps -1."""
    return WalkSpec(lattice_dim=1, coin_dim=2, shifts=[[1], [-1]], coin=u2_coin(p))


def as_kpoint(k, dim: int) -> Array:
    """Coerce a scalar or sequence to a (dim,) float wavenumber vector."""
    arr = np.atleast_1d(np.asarray(k, dtype=np.float64))
    if arr.ndim != 1 or arr.shape[0] != dim:
        raise DimensionMismatch(f"k-point has shape {arr.shape}, walk lattice_dim is {dim}")
    return arr


def build_uk(spec: WalkSpec, k) -> Array:
    """Momentum-space step operator ``diag_j(exp(-1j k.s_j)) @ coin``."""
    kv = as_kpoint(k, spec.lattice_dim)
    phases = np.exp(-1j * (spec.shifts @ kv))
    return phases[:, None] * spec.coin


def dispersion_gamma(p: U2Params, k: float) -> float:
    """Dispersion angle gamma in [0, pi]: cos(gamma) = cos(theta) cos(k - alpha).

    The eigenphases of the line-walk step operator at k are exactly
    {+gamma, -gamma}.
    """
    c = np.cos(p.theta) * np.cos(k - p.alpha)
    return float(np.arccos(np.clip(c, -1.0, 1.0)))
