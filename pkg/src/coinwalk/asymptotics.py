"""Asymptotic reduced coin state and entanglement observables.

The long-time coin state is ``rho = integral dk/(2pi)^d Tr_1(P0(k) (x) I C(k))``.
This module evaluates it by Brillouin-zone quadrature for any walk/state and
provides the known closed forms for the U(2) line walk: the local-state
density matrix, the general local eigenvalue pair, and the reference
eigenvalues for the two worked non-local examples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characteristic import (
    CharacteristicMatrix,
    QuadratureGrid,
    _batch_kron,
    _require_nondegenerate_coin,
    c_local_u2,
    characteristic_stack,
)
from .errors import DimensionMismatch, NumericalFailure
from .linalg import Array, DensityMatrix, kron, partial_trace, von_neumann_entropy
from .states import BlochCoin, InitialState, coin_dim, lattice_dim, psi_k_many
from .walk import U2Params, WalkSpec


@dataclass(frozen=True)
class AsymptoticResult:
    """Asymptotic coin state with its spectrum and entanglement entropy."""

    rho: DensityMatrix
    eigenvalues: Array  # descending
    cpe: float  # von Neumann entropy of rho, in bits
    method: str  # "numeric_quadrature" | "closed_form_local" | "closed_form_reference"


def _result(matrix: Array, method: str) -> AsymptoticResult:
    rho = DensityMatrix((matrix + matrix.conj().T) / 2)
    return AsymptoticResult(
        rho=rho,
        eigenvalues=rho.eigenvalues(),
        cpe=von_neumann_entropy(rho),
        method=method,
    )


def rho_asymptotic(
    spec: WalkSpec, state: InitialState, grid: QuadratureGrid | None = None
) -> AsymptoticResult:
    """Asymptotic reduced coin state via Brillouin-zone quadrature.

    At every node both contraction forms ``Tr_1(P0 (x) I C)`` and
    ``Tr_2(I (x) P0 C)`` are evaluated; they must agree to 1e-10 (swap
    symmetry of C), which guards the projector construction. The quadrature
    sum runs in a fixed node order, so results are bit-stable across runs.
    """
    _require_nondegenerate_coin(spec)
    if coin_dim(state) != spec.coin_dim:
        raise DimensionMismatch("state coin dimension does not match the walk")
    if lattice_dim(state) != spec.lattice_dim:
        raise DimensionMismatch("state lattice dimension does not match the walk")
    grid = grid if grid is not None else QuadratureGrid.default(spec.lattice_dim)
    n = spec.coin_dim
    nodes = grid.nodes

    cstack = characteristic_stack(spec, nodes)
    psi = psi_k_many(state, nodes)
    p0 = psi[:, :, None] * psi.conj()[:, None, :]
    eye = np.broadcast_to(np.eye(n, dtype=np.complex128), p0.shape)

    m1 = _batch_kron(np.ascontiguousarray(p0), np.ascontiguousarray(eye)) @ cstack
    m2 = _batch_kron(np.ascontiguousarray(eye), np.ascontiguousarray(p0)) @ cstack
    b1 = m1.reshape(-1, n, n, n, n)
    b2 = m2.reshape(-1, n, n, n, n)
    tr1 = np.einsum("miaib->mab", b1)
    tr2 = np.einsum("miaja->mij", b2)
    mismatch = float(np.max(np.abs(tr1 - tr2)))
    if mismatch > 1e-10:
        raise NumericalFailure(
            f"Tr_1/Tr_2 contraction forms disagree by {mismatch:.3e} (> 1e-10)"
        )

    raw = tr1.mean(axis=0)
    asym = float(np.max(np.abs(raw - raw.conj().T)))
    if asym > 1e-10:
        raise NumericalFailure(f"quadrature result non-Hermitian by {asym:.3e}")
    return _result(raw, "numeric_quadrature")


def rho_from_characteristic(chi: Array, c: CharacteristicMatrix, method: str) -> AsymptoticResult:
    """Contract a constant characteristic matrix with a coin projector."""
    chi = np.asarray(chi, dtype=np.complex128).reshape(-1)
    p0 = np.outer(chi, chi.conj())
    raw = partial_trace(kron(p0, np.eye(len(chi))) @ c.matrix, "first")
    return _result(raw, method)


def rho_local_closed(p: U2Params, chi) -> AsymptoticResult:
    """Exact asymptotic coin state of a local initial state on the U(2) line.

    For ``chi = |0>`` this is ``(1/2) [[2 - sin t, f*], [f, sin t]]`` with
    ``f = sin t cos t / (sin t + 1) exp(1j (alpha - beta))``.
    """
    return rho_from_characteristic(chi, c_local_u2(p), "closed_form_local")


def eigenvalues_local_general(p: U2Params, b: BlochCoin) -> tuple[float, float]:
    """Closed-form eigenvalue pair for a general local coin state.

    ``1/2 +- sqrt(1 + cos 2t cos 2xi + sin 2t cos(a - b - eta) sin 2xi)
    / (2 sqrt(2) (sin t + 1))``; reduces at xi = 0 to
    ``1/2 +- |cos t| / (2 sin t + 2)``.
    """
    radical = (
        1.0
        + np.cos(2 * p.theta) * np.cos(2 * b.xi)
        + np.sin(2 * p.theta) * np.cos(p.alpha - p.beta - b.eta) * np.sin(2 * b.xi)
    )
    delta = np.sqrt(max(radical, 0.0)) / (2 * np.sqrt(2.0) * (np.sin(p.theta) + 1))
    return (0.5 + float(delta), 0.5 - float(delta))


def eigenvalues_distributed_example(p: U2Params) -> tuple[float, float]:
    """Eigenvalue pair for chi=|0> spread equally over x = -1 and x = +1.

    ``1/2 +- |cos t| sqrt(4 sin^2 t sin^2 a + 4 sin t sin^2 a + 1)
    / (2 (sin t + 1)^2)``. Collapses to ``1/2 +- |cos t|/(2 (sin t + 1)^2)``
    at alpha = 0. Derivation regime: theta in (0, pi/2).
    """
    s, sa = np.sin(p.theta), np.sin(p.alpha)
    radical = 4 * s**2 * sa**2 + 4 * s * sa**2 + 1
    delta = abs(np.cos(p.theta)) * np.sqrt(radical) / (2 * (s + 1) ** 2)
    return (0.5 + float(delta), 0.5 - float(delta))


def eigenvalues_entangled_example(theta: float) -> tuple[float, float]:
    """Eigenvalue pair for the maximally coin-position-entangled example.

    State ``(|-1>|0> + |+1>|1>)/sqrt(2)``:
    ``1/2 +- sin t (1 - sin t) / (2 (1 + sin t)^2)``, independent of the coin
    phases.
    """
    s = np.sin(theta)
    delta = s * (1 - s) / (2 * (1 + s) ** 2)
    return (0.5 + float(delta), 0.5 - float(delta))


def rho_distributed_example_closed(p: U2Params) -> AsymptoticResult:
    """Reference density matrix for the chi=|0>, x = +-1 distributed example."""
    s, c = np.sin(p.theta), np.cos(p.theta)
    sa, ca = np.sin(p.alpha), np.cos(p.alpha)
    bterm = s * sa**2 + ca**2
    aterm = (
        c
        * (sa**2 + (0.5 - 1j * sa * np.exp(-1j * p.alpha)) / (s + 1))
        * np.exp(1j * (p.beta - p.alpha))
    )
    pref = s / (s + 1)
    matrix = pref * np.array(
        [[(s + 1) / s - bterm, aterm], [np.conj(aterm), bterm]], dtype=np.complex128
    )
    return _result(matrix, "closed_form_reference")


def entropy_of_pair(lam1: float, lam2: float) -> float:
    """Binary von Neumann entropy of a two-eigenvalue spectrum, in bits."""
    e = 0.0
    for lam in (lam1, lam2):
        if lam > 0:
            e -= lam * np.log2(lam)
    return float(e)


def cpe(result: AsymptoticResult) -> float:
    """Coin-position entanglement: von Neumann entropy of the coin state."""
    return von_neumann_entropy(result.rho)
