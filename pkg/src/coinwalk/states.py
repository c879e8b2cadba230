"""Initial walker states and their momentum-space projectors.

Three families: a coin state at one site, a coin state spread over several
sites with scalar weights, and fully general (possibly coin-position
entangled) amplitude maps. The momentum component is
``psi_k = sum_r exp(-1j k.r) c_r`` (the sign that pairs with the
``exp(-1j k.s_j)`` phases of the step operator) and the projector is its
outer square.

Positions are sparse integer tuples, so far-apart supports cost O(support).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .linalg import Array
from .walk import as_kpoint


def _as_position(pos) -> tuple[int, ...]:
    if isinstance(pos, (int, np.integer)):
        return (int(pos),)
    return tuple(int(x) for x in pos)


def _as_vector(v) -> Array:
    arr = np.asarray(v, dtype=np.complex128).reshape(-1)
    if arr.size < 1:
        raise ValueError("coin vector must have at least one component")
    return arr


@dataclass(frozen=True)
class LocalState:
    """Unit coin vector ``chi`` localized at one lattice site."""

    position: tuple[int, ...]
    chi: Array

    def __post_init__(self):
        object.__setattr__(self, "position", _as_position(self.position))
        chi = _as_vector(self.chi)
        if abs(np.linalg.norm(chi) - 1.0) > 1e-12:
            raise ValueError("local coin state is not normalized within 1e-12")
        object.__setattr__(self, "chi", chi)


@dataclass(frozen=True)
class DistributedState:
    """Separable state: one coin vector ``chi`` spread over sites with weights."""

    amplitudes: dict[tuple[int, ...], complex]
    chi: Array

    def __post_init__(self):
        amps = {_as_position(r): complex(a) for r, a in self.amplitudes.items()}
        if abs(sum(abs(a) ** 2 for a in amps.values()) - 1.0) > 1e-12:
            raise ValueError("position amplitudes are not normalized within 1e-12")
        object.__setattr__(self, "amplitudes", amps)
        chi = _as_vector(self.chi)
        if abs(np.linalg.norm(chi) - 1.0) > 1e-12:
            raise ValueError("coin state is not normalized within 1e-12")
        object.__setattr__(self, "chi", chi)


@dataclass(frozen=True)
class GeneralState:
    """Arbitrary map site -> coin vector; subsumes the other two variants."""

    amplitudes: dict[tuple[int, ...], Array]

    def __post_init__(self):
        amps = {_as_position(r): _as_vector(c) for r, c in self.amplitudes.items()}
        dims = {c.size for c in amps.values()}
        if len(dims) != 1:
            raise DimensionMismatch("all coin vectors must have the same dimension")
        if abs(sum(np.linalg.norm(c) ** 2 for c in amps.values()) - 1.0) > 1e-12:
            raise ValueError("total amplitude is not normalized within 1e-12")
        object.__setattr__(self, "amplitudes", amps)


InitialState = LocalState | DistributedState | GeneralState


@dataclass(frozen=True)
class BlochCoin:
    """Coin vector on the Bloch sphere: cos(xi/2)|0> + e^{i eta} sin(xi/2)|1>."""

    xi: float
    eta: float


def bloch_coin(b: BlochCoin) -> Array:
    return np.array(
        [np.cos(b.xi / 2), np.exp(1j * b.eta) * np.sin(b.xi / 2)], dtype=np.complex128
    )


def coin_dim(state: InitialState) -> int:
    """Coin dimension of a state."""
    if isinstance(state, GeneralState):
        return next(iter(state.amplitudes.values())).size
    return state.chi.size


def lattice_dim(state: InitialState) -> int:
    """Lattice dimension of a state."""
    if isinstance(state, LocalState):
        return len(state.position)
    return len(next(iter(state.amplitudes.keys())))


def site_table(state: InitialState) -> tuple[Array, Array]:
    """Flatten any state variant to (positions (m, d) int, coeffs (m, n)).

    The state is ``sum_r |r> (x) coeffs[r]`` with positions sorted, so every
    downstream reduction is deterministic.
    """
    if isinstance(state, LocalState):
        items = [(state.position, state.chi)]
    elif isinstance(state, DistributedState):
        items = [(r, a * state.chi) for r, a in sorted(state.amplitudes.items())]
    else:
        items = sorted(state.amplitudes.items())
    positions = np.array([r for r, _ in items], dtype=np.int64)
    coeffs = np.array([c for _, c in items], dtype=np.complex128)
    return positions, coeffs


def psi_k(state: InitialState, k) -> Array:
    """Momentum component ``sum_r exp(-1j k.r) c_r`` of the state."""
    kv = as_kpoint(k, lattice_dim(state))
    positions, coeffs = site_table(state)
    return np.exp(-1j * (positions @ kv)) @ coeffs


def psi_k_many(state: InitialState, ks: Array) -> Array:
    """Vectorized :func:`psi_k` over a (M, d) array of k-points."""
    positions, coeffs = site_table(state)
    if ks.shape[1] != positions.shape[1]:
        raise DimensionMismatch("k-grid dimension does not match the state")
    return np.exp(-1j * (ks @ positions.T)) @ coeffs


def projector_k(state: InitialState, k) -> Array:
    """Rank-<=1 projector ``|psi_k><psi_k|`` of the initial state at k.

    Constant in k for :class:`LocalState`; proportional to ``|Q(k)|^2`` times
    the coin projector for :class:`DistributedState`.
    """
    v = psi_k(state, k)
    return np.outer(v, v.conj())
