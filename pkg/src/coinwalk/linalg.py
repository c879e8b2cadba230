"""Dense complex linear algebra for small matrices.

Everything operates on plain ``numpy`` arrays of ``complex128``. The matrices
here are tiny (n <= 64), so the implementations favour exact contracts and
readability over scale: closed-form eigensolve for 2x2 unitaries, complex
Schur reduction otherwise, explicit partial traces over tensor factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, NonUnitaryInput, NotSquareDimension

Array = np.ndarray

#: default tolerance for merging eigenphases into one eigenspace (radians)
DEGENERACY_TOL = 1e-9


def as_matrix(m) -> Array:
    """Coerce input to a 2-d complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def is_unitary(m, tol: float = 1e-10) -> bool:
    """True if ``m`` is square and ``m† m = I`` within ``tol`` (max-entry)."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))) <= tol)


def is_hermitian(m, tol: float = 1e-10) -> bool:
    """True if ``m`` is square and equals its conjugate transpose within ``tol``."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def is_psd(m, tol: float = 1e-10) -> bool:
    """True if ``m`` is Hermitian within ``tol`` and its eigenvalues are >= -tol."""
    if not is_hermitian(m, tol):
        return False
    a = as_matrix(m)
    return bool(np.min(np.linalg.eigvalsh((a + a.conj().T) / 2)) >= -tol)


@dataclass(frozen=True)
class EigenSystem:
    """Spectral data of a unitary matrix.

    Attributes
    ----------
    phases : (n,) float array
        Eigenphases in ``(-pi, pi]``, sorted ascending. ``exp(1j*phases[j])``
        is the eigenvalue paired with column ``j`` of ``vectors``.
    vectors : (n, n) complex array
        Orthonormal eigenvectors as columns.
    groups : tuple of index tuples
        Partition of ``range(n)`` into eigenspaces whose phases agree within
        the degeneracy tolerance used at construction.
    """

    phases: Array
    vectors: Array
    groups: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.phases)

    def projector(self, group: tuple[int, ...]) -> Array:
        """Orthogonal projector onto the eigenspace spanned by ``group``."""
        v = self.vectors[:, list(group)]
        return v @ v.conj().T

    def reconstruct(self) -> Array:
        """Rebuild the source unitary as ``sum_j exp(1j*w_j) |v_j><v_j|``."""
        return (self.vectors * np.exp(1j * self.phases)) @ self.vectors.conj().T


def _principal_phase(values: Array) -> Array:
    """Arguments of complex values mapped into (-pi, pi]."""
    ph = np.angle(values)
    return np.where(ph <= -np.pi, ph + 2 * np.pi, ph)


def _eig_unitary_2x2(u: Array) -> tuple[Array, Array]:
    # closed-form quadratic; a unitary 2x2 with a double eigenvalue is a
    # scalar multiple of I, so the standard basis is a valid eigenbasis there
    tr = u[0, 0] + u[1, 1]
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    root = np.sqrt(tr * tr - 4.0 * det)
    lam1 = 0.5 * (tr + root)
    lam2 = 0.5 * (tr - root)
    if abs(lam1 - lam2) < 1e-13:
        lam = 0.5 * tr
        lam = lam / abs(lam)
        return np.array([lam, lam]), np.eye(2, dtype=np.complex128)
    cols = []
    for lam, other in ((lam1, lam2), (lam2, lam1)):
        p = (u - other * np.eye(2)) / (lam - other)
        col = p[:, int(np.argmax(np.abs(p).sum(axis=0)))]
        cols.append(col / np.linalg.norm(col))
    v1, v2 = cols
    v2 = v2 - (v1.conj() @ v2) * v1
    v2 = v2 / np.linalg.norm(v2)
    return np.array([lam1, lam2]), np.column_stack([v1, v2])


def _group_sorted_phases(phases: Array, tol: float) -> list[list[int]]:
    """Cluster ascending phases, merging the wrap-around at +/-pi."""
    groups: list[list[int]] = [[0]]
    for j in range(1, len(phases)):
        if phases[j] - phases[groups[-1][-1]] <= tol:
            groups[-1].append(j)
        else:
            groups.append([j])
    if len(groups) > 1 and (phases[groups[0][0]] + 2 * np.pi - phases[groups[-1][-1]]) <= tol:
        groups[0] = groups.pop() + groups[0]
    return groups


def _mgs(cols: Array) -> Array:
    """Modified Gram-Schmidt on the columns of ``cols``."""
    q = cols.astype(np.complex128, copy=True)
    for j in range(q.shape[1]):
        for i in range(j):
            q[:, j] -= (q[:, i].conj() @ q[:, j]) * q[:, i]
        q[:, j] /= np.linalg.norm(q[:, j])
    return q


def eig_unitary(u, degeneracy_tol: float = DEGENERACY_TOL) -> EigenSystem:
    """Eigendecompose a unitary matrix.

    Uses the closed-form quadratic for 2x2 input and a complex Schur
    reduction otherwise (unitaries are normal, so the Schur form is diagonal
    and its basis orthonormal). Phases within ``degeneracy_tol`` of each
    other are grouped into one eigenspace and re-orthonormalized so that
    eigenspace projectors are basis-independent.

    Raises
    ------
    NonUnitaryInput
        If ``u`` is not unitary within 1e-10.
    ConvergenceFailure
        If the decomposition fails or violates the residual contract.
    """
    a = as_matrix(u)
    if not is_unitary(a, 1e-10):
        raise NonUnitaryInput("input matrix is not unitary within 1e-10")
    n = a.shape[0]
    if n == 2:
        values, vectors = _eig_unitary_2x2(a)
    else:
        try:
            t, z = scipy.linalg.schur(a, output="complex")
        except (scipy.linalg.LinAlgError, np.linalg.LinAlgError) as exc:
            raise ConvergenceFailure(f"Schur reduction failed: {exc}") from exc
        values, vectors = np.diag(t), z

    phases = _principal_phase(values)
    order = np.argsort(phases, kind="stable")
    phases = phases[order]
    vectors = vectors[:, order]

    groups = _group_sorted_phases(phases, degeneracy_tol)
    for g in groups:
        if len(g) > 1:
            vectors[:, g] = _mgs(vectors[:, g])

    residual = np.max(np.abs(a @ vectors - vectors * np.exp(1j * phases)))
    if residual > 1e-12:
        raise ConvergenceFailure(f"eigenvector residual {residual:.3e} exceeds 1e-12")
    return EigenSystem(phases=phases, vectors=vectors, groups=tuple(tuple(g) for g in groups))


def kron(a, b) -> Array:
    """Tensor product of two matrices."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, which: str = "first") -> Array:
    """Trace out one tensor factor of an (n^2 x n^2) matrix.

    Viewing ``m`` as an n x n grid of n x n blocks, ``which='first'`` sums
    the diagonal blocks (traces out the first factor) and ``which='second'``
    replaces each block by its trace.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NotSquareDimension(f"matrix is {a.shape[0]}x{a.shape[1]}, not square")
    n = round(a.shape[0] ** 0.5)
    if n * n != a.shape[0]:
        raise NotSquareDimension(f"dimension {a.shape[0]} is not a perfect square")
    blocks = a.reshape(n, n, n, n)
    if which == "first":
        return np.einsum("iaib->ab", blocks)
    if which == "second":
        return np.einsum("iaja->ij", blocks)
    raise ValueError(f"which must be 'first' or 'second', got {which!r}")


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix."""

    matrix: Array

    def __post_init__(self):
        a = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", a)
        if not is_hermitian(a, 1e-10):
            raise ValueError("density matrix is not Hermitian within 1e-10")
        if abs(np.trace(a).real - 1.0) > 1e-10 or abs(np.trace(a).imag) > 1e-10:
            raise ValueError("density matrix trace differs from 1 by more than 1e-10")
        if np.min(np.linalg.eigvalsh(a)) < -1e-10:
            raise ValueError("density matrix has an eigenvalue below -1e-10")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> Array:
        """Real eigenvalues, descending."""
        return np.linalg.eigvalsh(self.matrix)[::-1]


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy in bits, ``-sum(l * log2(l))`` with 0*log(0) := 0.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero so that quadrature
    noise cannot produce NaN, and the result is floored at 0 (an eigenvalue
    rounding to slightly above 1 would otherwise make it negative).
    """
    a = rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)
    lam = np.linalg.eigvalsh((a + a.conj().T) / 2)
    lam = np.where((lam < 0) & (lam >= -1e-10), 0.0, lam)
    pos = lam[lam > 0]
    return max(0.0, float(-(pos * np.log2(pos)).sum()))
