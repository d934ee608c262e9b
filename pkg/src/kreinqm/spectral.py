"""Spectra of J-Hermitian matrices.

Phase classification, the closed-form eigenpairs of the traceless 2x2 family
``[[a, b], [-conj(b), -a]]`` with their signed squared norms, and
diagonalization by a J-unitary basis change.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotDiagonalizable, NotJHermitian, NotSingular, OutOfRegime
from .krein_space import (
    PREDICATE_TOL,
    FundamentalSymmetry,
    NormClass,
    indefinite_inner,
    is_j_hermitian,
    norm_class,
)
from .linalg_core import as_matrix, determinant, eigen_decompose, max_abs

NEUTRAL_TOL = 1e-8


class PhaseClass(enum.Enum):
    REAL_SPECTRUM = "RealSpectrum"
    BROKEN = "Broken"
    EXCEPTIONAL = "Exceptional"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: list[complex]
    eigenvectors: list[np.ndarray]
    norm_signs: list[NormClass]
    phase: PhaseClass
    positive_subspace: list[int]
    negative_subspace: list[int]
    defective: bool = False


@dataclass(frozen=True)
class KreinDiagonalization:
    """``m`` has J-orthonormal eigenvector columns, positive-norm first."""

    m: np.ndarray
    diagonal: list[float]
    j_residual: float
    diagonal_residual: float


class ClosedFormEigenvectors(NamedTuple):
    v_plus: np.ndarray
    v_minus: np.ndarray
    norms: tuple[float, float]


def traceless_2x2(a: float, b: complex) -> np.ndarray:
    """The traceless J-Hermitian matrix [[a, b], [-conj(b), -a]]."""
    return np.array([[a, b], [-np.conj(b), -a]], dtype=complex)


def _is_traceless_pair(M: np.ndarray, j: FundamentalSymmetry, tol: float) -> bool:
    return M.shape[0] == 2 and j.p == 1 and j.q == 1 and abs(np.trace(M)) <= tol


def _require_j_hermitian(H, j, tol) -> np.ndarray:
    M = as_matrix(H)
    if not is_j_hermitian(M, j, tol):
        raise NotJHermitian("matrix is not J-Hermitian at tolerance %.3g" % tol)
    return M


def _j_orthogonalize_clusters(values, vectors, j, close):
    # within a degenerate, non-defective eigenspace any basis is an eigenbasis;
    # pick the one that diagonalizes the indefinite Gram matrix
    n = len(values)
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        cluster = [k for k in range(i, n) if abs(values[k] - values[i]) <= close]
        seen.update(cluster)
        if len(cluster) < 2:
            continue
        V = vectors[:, cluster]
        gram = V.conj().T @ j.apply(V)
        gram = 0.5 * (gram + gram.conj().T)
        W = eigen_decompose(gram).vectors
        V = V @ W
        vectors[:, cluster] = V / np.linalg.norm(V, axis=0)
    return vectors


def spectral_report(H, j: FundamentalSymmetry, tol: float = PREDICATE_TOL) -> SpectralReport:
    """Eigenpairs, signed norms and phase of a J-Hermitian matrix."""
    M = _require_j_hermitian(H, j, tol)
    scale = max(1.0, max_abs(M))
    close = math.sqrt(tol) * scale
    eig = eigen_decompose(M, tol)
    values = eig.values.copy()
    vectors = eig.vectors.copy()
    if not eig.defective:
        vectors = _j_orthogonalize_clusters(values, vectors, j, close)

    signs = [norm_class(vectors[:, k], j, tol) for k in range(len(values))]
    if _is_traceless_pair(M, j, tol):
        phase = _phase_from_det(M, tol)
    elif np.any(np.abs(values.imag) > close):
        phase = PhaseClass.BROKEN
    elif eig.defective or any(
        abs(indefinite_inner(vectors[:, k], vectors[:, k], j)) <= NEUTRAL_TOL
        for k in range(len(values))
    ):
        phase = PhaseClass.EXCEPTIONAL
    else:
        phase = PhaseClass.REAL_SPECTRUM
    if phase is PhaseClass.REAL_SPECTRUM:
        values = values.real.astype(complex)
    return SpectralReport(
        eigenvalues=[complex(x) for x in values],
        eigenvectors=[vectors[:, k] for k in range(len(values))],
        norm_signs=signs,
        phase=phase,
        positive_subspace=[k for k, s in enumerate(signs) if s is NormClass.POSITIVE],
        negative_subspace=[k for k, s in enumerate(signs) if s is NormClass.NEGATIVE],
        defective=eig.defective,
    )


def _phase_from_det(M: np.ndarray, tol: float) -> PhaseClass:
    # traceless J-Hermitian 2x2: E^2 = -det H; the zero matrix is already
    # diagonal in the canonical basis, not an exceptional point
    if max_abs(M) <= tol:
        return PhaseClass.REAL_SPECTRUM
    det = determinant(M).real
    if det < -tol:
        return PhaseClass.REAL_SPECTRUM
    if det > tol:
        return PhaseClass.BROKEN
    return PhaseClass.EXCEPTIONAL


def classify_phase(H, j: FundamentalSymmetry, tol: float = PREDICATE_TOL) -> PhaseClass:
    """RealSpectrum, Broken or Exceptional.

    Nonzero traceless 2x2 matrices in signature (1, 1) are decided by the
    sign of the determinant; everything else by the computed spectrum: any eigenvalue with
    imaginary part above ``sqrt(tol)`` (relative to the matrix scale) is
    Broken, otherwise a defective or J-neutral eigenvector is Exceptional.
    """
    M = _require_j_hermitian(H, j, tol)
    if _is_traceless_pair(M, j, tol):
        return _phase_from_det(M, tol)
    return spectral_report(M, j, tol).phase


def closed_form_spectrum_2x2(a: float, b: complex) -> tuple[complex, complex]:
    """E = +/- sqrt(a^2 - |b|^2); imaginary pair below the exceptional line."""
    r = a * a - abs(b) ** 2
    if r >= 0:
        e = math.sqrt(r)
        return e, -e
    e = math.sqrt(-r)
    return complex(0, e), complex(0, -e)


def closed_form_eigenvectors_2x2(a: float, b: complex) -> ClosedFormEigenvectors:
    """v+ = (-b, a - E+), v- = (a + E-, -conj(b)) and their indefinite squared norms.

    Valid for a > 0 and 0 < |b| < a. At b = 0 the prescribed v+ is the zero
    vector, so that point is outside the regime as well.
    """
    if not a > 0 or not a * a > abs(b) ** 2:
        raise OutOfRegime(f"(a, b) = ({a}, {b}) needs a > 0 and a^2 > |b|^2")
    if b == 0:
        raise OutOfRegime("b = 0 makes the closed-form v+ vanish")
    e_plus, e_minus = closed_form_spectrum_2x2(a, b)
    # a - E+ = |b|^2 / (a + E+) avoids cancellation for small |b|
    gap = abs(b) ** 2 / (a + e_plus)
    v_plus = np.array([-b, gap], dtype=complex)
    v_minus = np.array([gap, -np.conj(b)], dtype=complex)
    norm_plus = 2.0 * e_plus * gap
    norm_minus = 2.0 * e_minus * gap
    return ClosedFormEigenvectors(v_plus, v_minus, (norm_plus, norm_minus))


def zero_eigenvalue_null_vector(a: float, b: complex, tol: float = PREDICATE_TOL) -> np.ndarray:
    """(-b, a), the J-neutral kernel vector of a singular traceless 2x2."""
    det = abs(b) ** 2 - a * a
    if abs(det) > tol:
        raise NotSingular(f"det H = {det:.6g} is not zero at tolerance {tol:.3g}")
    return np.array([-b, a], dtype=complex)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    big = np.max(np.abs(v))
    k = int(np.argmax(np.abs(v) > 1e-12 * big))
    return v * (abs(v[k]) / v[k])


def krein_diagonalize(H, j: FundamentalSymmetry, tol: float = PREDICATE_TOL) -> KreinDiagonalization:
    """J-unitary ``M`` with ``M^-1 H M`` real diagonal.

    Columns are eigenvectors scaled to indefinite norm +1 or -1, positive
    ones first, each group by decreasing eigenvalue; each column's first
    significant component is made real positive.
    """
    M = _require_j_hermitian(H, j, tol)
    n = M.shape[0]
    phase = classify_phase(M, j, tol)
    if phase is not PhaseClass.REAL_SPECTRUM:
        raise NotDiagonalizable(f"phase is {phase}")

    columns: list[tuple[int, float, np.ndarray]] = []
    a = 0.5 * (M[0, 0] - M[1, 1]).real if n == 2 else 0.0
    b = M[0, 1] if n == 2 else 0
    if j.p == 1 and j.q == 1 and n == 2 and a > 0 and a * a > abs(b) ** 2 and b != 0:
        mid = 0.5 * (M[0, 0] + M[1, 1]).real
        e_plus, e_minus = closed_form_spectrum_2x2(a, b)
        cf = closed_form_eigenvectors_2x2(a, b)
        columns.append((0, mid + e_plus, cf.v_plus / math.sqrt(cf.norms[0])))
        columns.append((1, mid + e_minus, cf.v_minus / math.sqrt(-cf.norms[1])))
    else:
        report = spectral_report(M, j, tol)
        for k, v in enumerate(report.eigenvectors):
            sq = indefinite_inner(v, v, j).real
            group = 0 if sq > 0 else 1
            columns.append((group, report.eigenvalues[k].real, v / math.sqrt(abs(sq))))
    columns.sort(key=lambda c: (c[0], -c[1]))
    if sum(1 for c in columns if c[0] == 0) != j.p:
        raise NotDiagonalizable("eigenvector norm signs do not match the signature")

    basis = np.column_stack([_fix_phase(c[2]) for c in columns])
    inverse = j.conjugate(basis.conj().T)
    j_res = max_abs(basis.conj().T @ j.apply(basis) - j.matrix)
    D = inverse @ M @ basis
    diag_res = max_abs(D - np.diag(np.diag(D)))
    return KreinDiagonalization(basis, [float(c[1]) for c in columns], j_res, diag_res)
