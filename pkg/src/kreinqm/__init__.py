"""Finite-dimensional quantum mechanics in Krein spaces.

Indefinite inner products fixed by a diagonal fundamental symmetry J,
J-Hermitian Hamiltonians and their spectra, J-unitary time evolution,
and membership tests for the associated symmetry groups.
"""

from .errors import (
    DimensionMismatch,
    KreinError,
    NonConvergence,
    NotDiagonalizable,
    NotJHermitian,
    NotSingular,
    OutOfRegime,
    ParseError,
    UnsupportedDimension,
    ValidationError,
)
from .evolution import (
    EvolutionConfig,
    EvolutionTrace,
    HamiltonianFamily,
    Profile,
    evolve,
    is_dirac_unitary,
    is_j_unitary,
    propagator,
    unitarity_defect,
)
from .krein_space import (
    FundamentalSymmetry,
    KreinSpace,
    NormClass,
    indefinite_inner,
    is_dirac_hermitian,
    is_j_hermitian,
    is_pt_symmetric,
    j_adjoint,
    j_inner,
    norm_class,
    parity,
    time_reversal,
)
from .linalg_core import dagger, determinant, eigen_decompose, matrix_exponential
from .spectral import (
    KreinDiagonalization,
    PhaseClass,
    SpectralReport,
    classify_phase,
    closed_form_eigenvectors_2x2,
    closed_form_spectrum_2x2,
    krein_diagonalize,
    spectral_report,
    traceless_2x2,
    zero_eigenvalue_null_vector,
)
from .symmetry_groups import (
    GroupMembershipReport,
    in_algebra,
    in_indefinite_unitary,
    in_unitary,
    membership_report,
    torus_intersection,
)

__version__ = "0.1.0"
