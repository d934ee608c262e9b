"""Random generators and independent oracles shared by the test modules."""

import math

import numpy as np
from hypothesis import strategies as st

from kreinqm import FundamentalSymmetry, matrix_exponential

SIGNATURES = [FundamentalSymmetry(1, 1), FundamentalSymmetry(2, 1), FundamentalSymmetry(2, 2)]
J11 = FundamentalSymmetry(1, 1)


def cgauss(rng, shape, scale=1.0):
    return scale * (rng.normal(size=shape) + 1j * rng.normal(size=shape))


def unit_disk(rng, shape):
    r = np.sqrt(rng.uniform(size=shape))
    return r * np.exp(2j * np.pi * rng.uniform(size=shape))


def random_j_hermitian(rng, j, scale=1.0):
    A = cgauss(rng, (j.n, j.n), scale)
    return 0.5 * (A + j.conjugate(A.conj().T))


def random_algebra(rng, j, scale=1.0):
    """X with X^dagger J + J X = 0."""
    A = cgauss(rng, (j.n, j.n), scale)
    return 0.5 * (A - j.conjugate(A.conj().T))


def random_j_unitary(rng, j, scale=0.5):
    return matrix_exponential(random_algebra(rng, j, scale))


def random_real_spectrum(rng, j, spread=3.0, scale=0.5):
    """J-Hermitian H = M D M^-1 with M J-unitary and D real with well separated entries."""
    M = random_j_unitary(rng, j, scale)
    while True:
        d = rng.uniform(-spread, spread, j.n)
        if np.min(np.diff(np.sort(d))) > 0.2:
            break
    return M @ np.diag(d) @ j.conjugate(M.conj().T)


def taylor_exp(A, terms=60):
    """Plain power-series partial sum, no scaling."""
    A = np.asarray(A, dtype=complex)
    out = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ A / k
        out = out + term
    return out


def laplace_det(A):
    """Recursive cofactor expansion along the first row."""
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    if n == 1:
        return A[0, 0]
    total = 0j
    for k in range(n):
        minor = np.delete(np.delete(A, 0, axis=0), k, axis=1)
        total += (-1) ** k * A[0, k] * laplace_det(minor)
    return total


def traceless(a, b):
    return np.array([[a, b], [-np.conj(b), -a]], dtype=complex)


def random_ab(rng, regime):
    """(a, b) for the traceless 2x2 family in 'real' (a > |b| > 0), 'broken' or 'exceptional' regime."""
    a = rng.uniform(0.2, 3.0)
    angle = rng.uniform(0, 2 * math.pi)
    if regime == "real":
        mod = a * rng.uniform(0.05, 0.9)
    elif regime == "broken":
        mod = a * rng.uniform(1.1, 3.0)
    else:
        mod = a
    b = mod * complex(math.cos(angle), math.sin(angle))
    if regime == "exceptional":
        # |b| == a in floating point up to one ulp; snap so |b|^2 - a^2 is tiny
        b = b / abs(b) * a
    return a, b


finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def complex_matrices(draw, min_n=1, max_n=8, bound=1.0):
    n = draw(st.integers(min_n, max_n))
    re = draw(st.lists(finite, min_size=n * n, max_size=n * n))
    im = draw(st.lists(finite, min_size=n * n, max_size=n * n))
    return bound * (np.array(re) + 1j * np.array(im)).reshape(n, n)


seeds = st.integers(min_value=0, max_value=2**32 - 1)
