"""Asymptotic reduced coin states of discrete-time coined quantum walks.

The long-time coin state of any coined walk is fixed by one constant matrix
per walk (the k-integrated characteristic matrix); this package computes it
by Brillouin-zone quadrature for arbitrary walks and initial states, carries
the known closed forms for the general U(2) line walk, and cross-checks both
against a brute-force time-evolution simulator.
"""

from .asymptotics import (
    AsymptoticResult,
    cpe,
    eigenvalues_distributed_example,
    eigenvalues_entangled_example,
    eigenvalues_local_general,
    entropy_of_pair,
    rho_asymptotic,
    rho_distributed_example_closed,
    rho_from_characteristic,
    rho_local_closed,
)
from .characteristic import (
    CharacteristicMatrix,
    QuadratureGrid,
    c_local,
    c_local_u2,
    c_of_k_u2,
    c_separable,
    characteristic_at_k,
    is_pauli_type,
    swap_matrix,
)
from .errors import (
    CoinWalkError,
    ConvergenceFailure,
    DegenerateCoin,
    DegenerateDispersion,
    DimensionMismatch,
    FormatError,
    NonUnitaryInput,
    NormalizationError,
    NotSquareDimension,
    NumericalFailure,
)
from .grammar import (
    format_complex,
    format_walk_config,
    parse_angle,
    parse_complex,
    parse_state,
    parse_walk_config,
)
from .linalg import (
    DensityMatrix,
    EigenSystem,
    eig_unitary,
    is_hermitian,
    is_psd,
    is_unitary,
    kron,
    partial_trace,
    von_neumann_entropy,
)
from .simulate import LatticeState, cesaro_rho, initial_lattice_state, rho_c_at_t, rho_series, step
from .states import (
    BlochCoin,
    DistributedState,
    GeneralState,
    InitialState,
    LocalState,
    bloch_coin,
    coin_dim,
    lattice_dim,
    projector_k,
    psi_k,
    psi_k_many,
    site_table,
)
from .walk import U2Params, WalkSpec, build_uk, dispersion_gamma, line_walk, u2_coin

__version__ = "0.1.0"
