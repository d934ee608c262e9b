"""Membership tests for U(p, q), U(n), their det-1 subgroups and Lie
algebras, and extraction of the torus U(1,1) & U(2) = diag(e^{i theta}, e^{i phi}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, UnsupportedDimension
from .krein_space import PREDICATE_TOL, FundamentalSymmetry
from .linalg_core import as_matrix, determinant, max_abs


@dataclass(frozen=True)
class GroupMembershipReport:
    in_indefinite_unitary: bool
    in_unitary: bool
    in_special_variant: bool
    torus_angles: Optional[tuple[float, float]] = None


def _matrix_for(U, j: FundamentalSymmetry) -> np.ndarray:
    M = as_matrix(U)
    if M.shape[0] != j.n:
        raise DimensionMismatch(f"matrix of size {M.shape[0]} against signature of size {j.n}")
    return M


def _unit_det(M: np.ndarray, tol: float) -> bool:
    return abs(determinant(M) - 1) <= tol


def in_indefinite_unitary(
    U, j: FundamentalSymmetry, tol: float = PREDICATE_TOL, special: bool = False
) -> bool:
    M = _matrix_for(U, j)
    ok = max_abs(M.conj().T @ j.apply(M) - j.matrix) <= tol
    return ok and (not special or _unit_det(M, tol))


def in_unitary(U, tol: float = PREDICATE_TOL, special: bool = False) -> bool:
    M = as_matrix(U)
    ok = max_abs(M.conj().T @ M - np.eye(M.shape[0])) <= tol
    return ok and (not special or _unit_det(M, tol))


def in_algebra(X, j: FundamentalSymmetry, tol: float = PREDICATE_TOL, special: bool = False) -> bool:
    """X^dagger J + J X = 0 (u(p, q)), plus tr X = 0 for su(p, q)."""
    M = _matrix_for(X, j)
    ok = max_abs(M.conj().T * j.signs + j.apply(M)) <= tol
    return ok and (not special or abs(np.trace(M)) <= tol)


def _angle(z: complex) -> float:
    theta = math.atan2(z.imag, z.real) % (2 * math.pi)
    return 0.0 if theta >= 2 * math.pi else theta


def torus_intersection(
    U, j: FundamentalSymmetry, tol: float = PREDICATE_TOL
) -> Optional[tuple[float, float]]:
    """Phases (theta, phi) in [0, 2 pi) when U = diag(e^{i theta}, e^{i phi}), else None.

    Membership is decided by the two group predicates; for members the
    diagonal form is then asserted: the intersection is the phase torus.
    """
    M = _matrix_for(U, j)
    if M.shape[0] != 2 or (j.p, j.q) != (1, 1):
        raise UnsupportedDimension("torus extraction needs n = 2 and signature (1, 1)")
    if not (in_indefinite_unitary(M, j, tol) and in_unitary(M, tol)):
        return None
    # both residuals <= tol bound |U12|, |U21| by tol / |U11| and ||U_kk| - 1| by tol
    off = max(abs(M[0, 1]), abs(M[1, 0]))
    assert off <= 2 * tol and abs(abs(M[0, 0]) - 1) <= tol and abs(abs(M[1, 1]) - 1) <= tol
    return _angle(complex(M[0, 0])), _angle(complex(M[1, 1]))


def membership_report(U, j: FundamentalSymmetry, tol: float = PREDICATE_TOL) -> GroupMembershipReport:
    M = _matrix_for(U, j)
    in_ind = in_indefinite_unitary(M, j, tol)
    in_uni = in_unitary(M, tol)
    angles = None
    if M.shape[0] == 2 and (j.p, j.q) == (1, 1):
        angles = torus_intersection(M, j, tol)
    return GroupMembershipReport(in_ind, in_uni, _unit_det(M, tol), angles)
