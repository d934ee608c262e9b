"""Dense complex matrix kernels.

Matrices are ``numpy`` ``complex128`` arrays of shape ``(n, n)`` with
``1 <= n <= 32``; vectors are 1-d arrays of length ``n``. The exponential
and the eigensolver are written out here rather than delegated to LAPACK
so that their algorithms and budgets are fixed and inspectable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import NonConvergence, ValidationError

MAX_DIM = 32
EXPM_TOL = 1e-12
EIG_TOL = 1e-10
QR_SWEEP_BUDGET = 1000
TAYLOR_TERM_BUDGET = 60
_EPS = np.finfo(float).eps
# entries this far below the largest one cannot move an eigenvalue at double precision
_FLUSH = 2.0 ** -1000


def as_matrix(A) -> np.ndarray:
    """Coerce ``A`` to a validated square complex matrix (a copy)."""
    M = np.array(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {M.shape}")
    if not 1 <= M.shape[0] <= MAX_DIM:
        raise ValidationError(f"dimension {M.shape[0]} outside 1..{MAX_DIM}")
    if not np.all(np.isfinite(M)):
        raise ValidationError("matrix has non-finite entries")
    return M


def as_vector(v) -> np.ndarray:
    x = np.array(v, dtype=complex)
    if x.ndim != 1 or x.size == 0:
        raise ValidationError(f"expected a non-empty 1-d vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValidationError("vector has non-finite entries")
    return x


def max_abs(A) -> float:
    """Max-entry norm, the deviation measure used by every predicate."""
    A = np.asarray(A)
    return float(np.max(np.abs(A))) if A.size else 0.0


def dagger(A) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(A).conj().T


def determinant(A) -> complex:
    """Cofactor expansion for n <= 3, partially pivoted elimination above."""
    M = as_matrix(A)
    n = M.shape[0]
    if n == 1:
        return complex(M[0, 0])
    if n == 2:
        return complex(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])
    if n == 3:
        return complex(
            M[0, 0] * (M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1])
            - M[0, 1] * (M[1, 0] * M[2, 2] - M[1, 2] * M[2, 0])
            + M[0, 2] * (M[1, 0] * M[2, 1] - M[1, 1] * M[2, 0])
        )
    det = 1.0 + 0.0j
    for k in range(n):
        p = k + int(np.argmax(np.abs(M[k:, k])))
        if M[p, k] == 0:
            return 0j
        if p != k:
            M[[k, p]] = M[[p, k]]
            det = -det
        det *= M[k, k]
        M[k + 1:, k:] -= np.outer(M[k + 1:, k] / M[k, k], M[k, k:])
    return complex(det)


def _inf_norm(A: np.ndarray) -> float:
    return float(np.max(np.sum(np.abs(A), axis=1)))


def matrix_exponential(A, tol: float = EXPM_TOL) -> np.ndarray:
    """exp(A) by scaling and squaring around a truncated Taylor kernel.

    ``A`` is scaled by ``2**-s`` until its infinity norm is at most 0.5; the
    series is summed until the next term drops below ``tol * 2**-s`` (so the
    squaring phase cannot amplify truncation past ``tol``), then squared
    ``s`` times.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    X = as_matrix(A)
    n = X.shape[0]
    norm = _inf_norm(X)
    s = 0 if norm <= 0.5 else int(math.ceil(math.log2(norm / 0.5)))
    X = X / (2.0 ** s)

    threshold = tol * 2.0 ** (-s)
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, TAYLOR_TERM_BUDGET + 1):
        term = term @ X / k
        result += term
        if max_abs(term) <= threshold:
            break
    else:
        raise NonConvergence(
            f"Taylor kernel did not reach {threshold:.3g} in {TAYLOR_TERM_BUDGET} terms"
        )
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(s):
            result = result @ result
    if not np.all(np.isfinite(result)):
        raise NonConvergence(f"exponential overflowed (input norm {norm:.3g})")
    return result


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a square matrix.

    Iterating yields ``(eigenvalue, eigenvector)`` pairs; ``vectors`` holds
    the eigenvectors as columns, each with unit Dirac norm. ``defective`` is
    set when some eigenvector had to be repeated because the eigenspace is
    too small at the requested tolerance.
    """

    values: np.ndarray
    vectors: np.ndarray
    defective: bool = False

    def __iter__(self) -> Iterator[tuple[complex, np.ndarray]]:
        for k in range(len(self.values)):
            yield complex(self.values[k]), self.vectors[:, k]

    def __len__(self) -> int:
        return len(self.values)


def _givens(x: complex, y: complex) -> tuple[float, complex]:
    # G = [[c, s], [-conj(s), c]] maps (x, y) to (r, 0)
    if y == 0:
        return 1.0, 0j
    if x == 0:
        return 0.0, np.conj(y) / abs(y)
    r = math.hypot(abs(x), abs(y))
    return abs(x) / r, (x / abs(x)) * np.conj(y) / r


def hessenberg(A) -> tuple[np.ndarray, np.ndarray]:
    """Householder reduction ``A = Q H Q^dagger`` with ``H`` upper Hessenberg."""
    H = as_matrix(A)
    n = H.shape[0]
    Q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = H[k + 1:, k].copy()
        xnorm = np.linalg.norm(x)
        if xnorm == 0 or xnorm == abs(x[0]) and np.all(x[1:] == 0):
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * xnorm
        v /= np.linalg.norm(v)
        H[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, :])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
        Q[:, k + 1:] -= 2.0 * np.outer(Q[:, k + 1:] @ v, v.conj())
        H[k + 2:, k] = 0
    return H, Q


def schur(A, max_sweeps: int = QR_SWEEP_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    """Complex Schur form ``A = Z T Z^dagger`` via single-shift implicit QR.

    Wilkinson shifts, with an ad-hoc shift every tenth sweep on a stalled
    window. Raises :class:`NonConvergence` after ``max_sweeps`` QR sweeps.
    """
    T, Z = hessenberg(A)
    n = T.shape[0]
    scale = max(max_abs(T), np.finfo(float).tiny)
    hi = n - 1
    sweeps = 0
    stalled = 0
    while hi > 0:
        lo = hi
        while lo > 0:
            ref = abs(T[lo - 1, lo - 1]) + abs(T[lo, lo])
            if ref == 0:
                ref = scale
            if abs(T[lo, lo - 1]) <= _EPS * ref:
                T[lo, lo - 1] = 0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            stalled = 0
            continue
        if sweeps >= max_sweeps:
            raise NonConvergence(f"QR iteration exceeded {max_sweeps} sweeps")

        a, b = T[hi - 1, hi - 1], T[hi - 1, hi]
        c, d = T[hi, hi - 1], T[hi, hi]
        if stalled and stalled % 10 == 0:
            mu = d + 0.75 * abs(c) * (1 + 1j)
        else:
            half = 0.5 * (a - d)
            disc = np.sqrt(half * half + b * c)
            mu1, mu2 = d + half + disc, d + half - disc
            # shift is the trailing-block eigenvalue closer to T[hi, hi]
            mu = mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2

        for k in range(lo, hi):
            if k == lo:
                x, y = T[k, k] - mu, T[k + 1, k]
            else:
                x, y = T[k, k - 1], T[k + 1, k - 1]
            cs, sn = _givens(x, y)
            G = np.array([[cs, sn], [-np.conj(sn), cs]])
            col0 = lo if k == lo else k - 1
            T[k:k + 2, col0:] = G @ T[k:k + 2, col0:]
            if k > lo:
                T[k + 1, k - 1] = 0
            row1 = min(k + 3, hi + 1)
            T[:row1, k:k + 2] = T[:row1, k:k + 2] @ G.conj().T
            Z[:, k:k + 2] = Z[:, k:k + 2] @ G.conj().T
        sweeps += 1
        stalled += 1
    return np.triu(T), Z


def _triangular_eigvecs(T: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    smin = max(_EPS * max_abs(T), np.finfo(float).tiny)
    X = np.zeros((n, n), dtype=complex)
    for k in range(n):
        lam = T[k, k]
        x = np.zeros(n, dtype=complex)
        x[k] = 1.0
        for i in range(k - 1, -1, -1):
            rhs = -(T[i, i + 1:k + 1] @ x[i + 1:k + 1])
            den = T[i, i] - lam
            if abs(den) < smin:
                den = smin if den == 0 else den / abs(den) * smin
            x[i] = rhs / den
            big = np.max(np.abs(x))
            if big > 1e100:
                x /= big
        X[:, k] = x
    return X


def _eig2(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    mid = 0.5 * (a + d)
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    values = np.array([mid + disc, mid - disc], dtype=complex)
    vectors = np.zeros((2, 2), dtype=complex)
    tiny = _EPS * max(max_abs(M), np.finfo(float).tiny)
    for k, lam in enumerate(values):
        # rows of (M - lam I) give two candidate null vectors; keep the larger
        u = np.array([b, lam - a])
        w = np.array([lam - d, c])
        v = u if np.linalg.norm(u) >= np.linalg.norm(w) else w
        if np.linalg.norm(v) <= tiny:
            v = np.eye(2, dtype=complex)[:, k]
        vectors[:, k] = v
    return values, vectors


def eigen_decompose(A, tol: float = EIG_TOL) -> EigenDecomposition:
    """Eigenvalues and unit eigenvectors of a dense complex matrix.

    For n = 2 the roots of the characteristic quadratic are taken in closed
    form; larger matrices go through Hessenberg reduction, shifted QR and
    triangular back-substitution. Pairs are ordered by decreasing real part,
    then decreasing imaginary part; each vector's largest component is made
    real positive.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    M = as_matrix(A)
    n = M.shape[0]
    if n == 1:
        return EigenDecomposition(M[0].copy(), np.ones((1, 1), dtype=complex))
    big = max_abs(M)
    if big == 0:
        return EigenDecomposition(np.zeros(n, dtype=complex), np.eye(n, dtype=complex))
    # exact power-of-two rescaling to max entry in [0.5, 1); keeps subnormal
    # and near-overflow inputs away from the Givens and Householder arithmetic
    exponent = math.frexp(big)[1]
    M = np.ldexp(M.real, -exponent) + 1j * np.ldexp(M.imag, -exponent)
    M[np.abs(M) < _FLUSH] = 0
    if n == 2:
        values, vectors = _eig2(M)
    else:
        T, Z = schur(M)
        values = np.diag(T).copy()
        vectors = Z @ _triangular_eigvecs(T)
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    # phase convention: largest component real positive
    pivots = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(n)]
    vectors = vectors * (np.abs(pivots) / pivots)

    order = sorted(range(n), key=lambda k: (-values[k].real, -values[k].imag))
    values = values[order]
    vectors = vectors[:, order]

    # eigenvectors that collapsed onto an earlier one mark a deficient eigenspace;
    # values are still in units of the rescaled matrix here
    defective = False
    close = math.sqrt(tol)
    for k in range(1, n):
        for i in range(k):
            if abs(values[i] - values[k]) > close:
                continue
            overlap = np.vdot(vectors[:, i], vectors[:, k])
            phase = overlap / abs(overlap) if overlap != 0 else 1.0
            if np.linalg.norm(vectors[:, k] - phase * vectors[:, i]) <= close:
                vectors[:, k] = vectors[:, i]
                defective = True
                break
    half = exponent // 2
    values = values * 2.0 ** half * 2.0 ** (exponent - half)
    return EigenDecomposition(values, vectors, defective)
