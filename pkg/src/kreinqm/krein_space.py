"""Krein geometry on C^n: the fundamental symmetry J = diag(+1 x p, -1 x q),
the indefinite product <v, w> = v^dagger J w, the positive J-inner product,
the J-adjoint, and the matrix-class predicates built from them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, ValidationError
from .linalg_core import MAX_DIM, as_matrix, as_vector, max_abs

PREDICATE_TOL = 1e-10


@dataclass(frozen=True)
class FundamentalSymmetry:
    """Diagonal involution with ``p`` entries +1 followed by ``q`` entries -1."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValidationError(f"signature ({self.p}, {self.q}) has a negative count")
        if not 1 <= self.p + self.q <= MAX_DIM:
            raise ValidationError(f"dimension {self.p + self.q} outside 1..{MAX_DIM}")

    @property
    def n(self) -> int:
        return self.p + self.q

    @cached_property
    def signs(self) -> np.ndarray:
        return np.concatenate([np.ones(self.p), -np.ones(self.q)])

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.signs).astype(complex)

    def apply(self, x: np.ndarray) -> np.ndarray:
        """J @ x for a vector or matrix, without forming J."""
        if x.ndim == 1:
            return self.signs * x
        return self.signs[:, None] * x

    def conjugate(self, A: np.ndarray) -> np.ndarray:
        """J A J, i.e. entry (i, j) times s_i s_j."""
        return np.outer(self.signs, self.signs) * A


@dataclass(frozen=True)
class KreinSpace:
    """C^n with the indefinite product fixed by ``j``."""

    j: FundamentalSymmetry

    @property
    def positive_basis(self) -> list[np.ndarray]:
        return [np.eye(self.j.n, dtype=complex)[:, k] for k in range(self.j.p)]

    @property
    def negative_basis(self) -> list[np.ndarray]:
        return [np.eye(self.j.n, dtype=complex)[:, k] for k in range(self.j.p, self.j.n)]

    def inner(self, v, w) -> complex:
        return indefinite_inner(v, w, self.j)


class NormClass(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    NEUTRAL = "Neutral"

    def __str__(self):
        return self.value


def _check_dim(j: FundamentalSymmetry, *arrays: np.ndarray) -> None:
    for a in arrays:
        if a.shape[0] != j.n:
            raise DimensionMismatch(f"operand of size {a.shape[0]} in a space of dimension {j.n}")


def _pair(v, w, j):
    v, w = as_vector(v), as_vector(w)
    _check_dim(j, v, w)
    return v, w


def _matrix_for(A, j):
    M = as_matrix(A)
    _check_dim(j, M)
    return M


def indefinite_inner(v, w, j: FundamentalSymmetry) -> complex:
    """<v, w> = v^dagger J w (conjugate-linear in ``v``)."""
    v, w = _pair(v, w, j)
    return complex(np.vdot(v, j.apply(w)))


def j_inner(v, w, j: FundamentalSymmetry) -> complex:
    """<v, J w>, which collapses to the Dirac bracket v^dagger w."""
    v, w = _pair(v, w, j)
    return indefinite_inner(v, j.apply(w), j)


def j_adjoint(A, j: FundamentalSymmetry) -> np.ndarray:
    """Adjoint with respect to the indefinite product: J A^dagger J."""
    M = _matrix_for(A, j)
    return j.conjugate(M.conj().T)


def is_j_hermitian(H, j: FundamentalSymmetry, tol: float = PREDICATE_TOL) -> bool:
    M = _matrix_for(H, j)
    return max_abs(j.conjugate(M.conj().T) - M) <= tol


def is_pt_symmetric(H, j: FundamentalSymmetry, tol: float = PREDICATE_TOL) -> bool:
    """Parity J composed with time reversal (entrywise conjugation) fixes H."""
    M = _matrix_for(H, j)
    return max_abs(j.conjugate(M.conj()) - M) <= tol


def is_dirac_hermitian(H, tol: float = PREDICATE_TOL) -> bool:
    M = as_matrix(H)
    return max_abs(M.conj().T - M) <= tol


def norm_class(v, j: FundamentalSymmetry, tol: float = PREDICATE_TOL) -> NormClass:
    v = as_vector(v)
    _check_dim(j, v)
    sq = indefinite_inner(v, v, j)
    assert abs(sq.imag) <= 1e-13 * max(1.0, float(np.vdot(v, v).real))
    if sq.real > tol:
        return NormClass.POSITIVE
    if sq.real < -tol:
        return NormClass.NEGATIVE
    return NormClass.NEUTRAL


def time_reversal(A) -> np.ndarray:
    return as_matrix(A).conj()


def parity(A, j: FundamentalSymmetry) -> np.ndarray:
    """P A P^-1 with P = J."""
    return j.conjugate(_matrix_for(A, j))
