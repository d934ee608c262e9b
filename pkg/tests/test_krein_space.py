import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import J11, SIGNATURES, cgauss, random_j_hermitian, seeds
from kreinqm import (
    DimensionMismatch,
    FundamentalSymmetry,
    KreinSpace,
    NormClass,
    ValidationError,
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

E1, E2 = np.array([1, 0]), np.array([0, 1])


@given(st.integers(0, 32), st.integers(0, 32))
def test_fundamental_symmetry_is_involution(p, q):
    if not 1 <= p + q <= 32:
        with pytest.raises(ValidationError):
            FundamentalSymmetry(p, q)
        return
    J = FundamentalSymmetry(p, q).matrix
    np.testing.assert_array_equal(J @ J, np.eye(p + q))
    np.testing.assert_array_equal(J.conj().T, J)
    np.testing.assert_array_equal(np.diag(J), [1] * p + [-1] * q)


def test_krein_space_bases():
    space = KreinSpace(FundamentalSymmetry(2, 1))
    assert [space.inner(v, v) for v in space.positive_basis] == [1, 1]
    assert [space.inner(v, v) for v in space.negative_basis] == [-1]


def test_indefinite_inner_basis():
    assert indefinite_inner(E1, E1, J11) == 1
    assert indefinite_inner(E1, E2, J11) == 0
    assert indefinite_inner(E2, E2, J11) == -1
    assert indefinite_inner([1, 1], [1, 1], J11) == 0


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        indefinite_inner([1, 0, 0], [1, 0, 0], J11)
    with pytest.raises(DimensionMismatch):
        j_adjoint(np.eye(3), J11)
    with pytest.raises(DimensionMismatch):
        is_j_hermitian(np.eye(3), J11)


@given(seeds)
def test_inner_conjugate_symmetric_and_linear(seed):
    rng = np.random.default_rng(seed)
    j = SIGNATURES[seed % 3]
    v, w, u = (cgauss(rng, j.n) for _ in range(3))
    a, b = cgauss(rng, 2)
    assert indefinite_inner(v, w, j) == pytest.approx(np.conj(indefinite_inner(w, v, j)), abs=1e-13)
    lhs = indefinite_inner(v, a * w + b * u, j)
    rhs = a * indefinite_inner(v, w, j) + b * indefinite_inner(v, u, j)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_j_inner_examples():
    assert j_inner(E2, E2, J11) == 1
    assert j_inner([1, 1j], [1, 1j], J11) == 2


@given(seeds)
def test_j_inner_is_dirac_bracket(seed):
    rng = np.random.default_rng(seed)
    j = SIGNATURES[seed % 3]
    v, w = cgauss(rng, j.n), cgauss(rng, j.n)
    assert j_inner(v, w, j) == np.vdot(v, w)
    assert j_inner(v, v, j).real > 0
    assert j_inner(np.zeros(j.n), np.zeros(j.n), j) == 0


def test_j_adjoint_examples():
    np.testing.assert_array_equal(j_adjoint([[1, 2], [3, 4]], J11), [[1, -3], [-2, 4]])
    np.testing.assert_array_equal(j_adjoint(J11.matrix, J11), J11.matrix)


@given(seeds)
@settings(max_examples=60)
def test_adjoint_axioms(seed):
    rng = np.random.default_rng(seed)
    j = SIGNATURES[seed % 3]
    A, B = cgauss(rng, (j.n, j.n)), cgauss(rng, (j.n, j.n))
    lam = complex(*rng.normal(size=2))
    adj = lambda M: j_adjoint(M, j)
    assert np.max(np.abs(adj(A + B) - adj(A) - adj(B))) <= 1e-12
    assert np.max(np.abs(adj(lam * A) - np.conj(lam) * adj(A))) <= 1e-12
    assert np.max(np.abs(adj(A @ B) - adj(B) @ adj(A))) <= 1e-12
    np.testing.assert_array_equal(adj(adj(A)), A)
    C = A + 3 * j.n * np.eye(j.n)  # diagonally dominant, well conditioned
    assert np.max(np.abs(adj(np.linalg.inv(C)) - np.linalg.inv(adj(C)))) <= 1e-12

    v, w = cgauss(rng, j.n), cgauss(rng, j.n)
    assert abs(indefinite_inner(adj(A) @ v, w, j) - indefinite_inner(v, A @ w, j)) <= 1e-12 * 10


@pytest.mark.parametrize(
    "H, sig, expected",
    [
        ([[2, 1], [-1, -2]], (1, 1), True),
        ([[1, 2 + 1j, 3], [2 - 1j, 4, 1j], [-3, 1j, 5]], (2, 1), True),
        ([[0, 1], [1, 0]], (1, 1), False),
    ],
)
def test_is_j_hermitian_examples(H, sig, expected):
    assert is_j_hermitian(H, FundamentalSymmetry(*sig)) is expected


def test_three_by_three_pattern():
    # a, d, f real; entries (2,1) = conj(b), (3,1) = -conj(c), (3,2) = -conj(e)
    a, d, f, b, c, e = 1.5, -0.3, 2.0, 1 + 2j, -0.5j, 3 - 1j
    H = [[a, b, c], [np.conj(b), d, e], [-np.conj(c), -np.conj(e), f]]
    assert is_j_hermitian(H, FundamentalSymmetry(2, 1))
    H[0][0] = a + 0.1j
    assert not is_j_hermitian(H, FundamentalSymmetry(2, 1))


@given(seeds)
@settings(max_examples=40)
def test_j_hermitian_matches_form_identity(seed):
    rng = np.random.default_rng(seed)
    j = SIGNATURES[seed % 3]
    H = random_j_hermitian(rng, j)
    if seed % 2:
        H = H + 1e-3 * cgauss(rng, (j.n, j.n))
    symmetric_form = all(
        abs(indefinite_inner(H @ v, w, j) - indefinite_inner(v, H @ w, j)) <= 1e-10
        for v, w in ((cgauss(rng, j.n), cgauss(rng, j.n)) for _ in range(100))
    )
    assert is_j_hermitian(H, j) == symmetric_form


@pytest.mark.parametrize(
    "H, expected",
    [
        ([[1, 1j], [1j, -1]], True),
        (np.diag([0.7, -2.5]), True),
        ([[1, 2], [2, 3]], False),
    ],
)
def test_is_pt_symmetric_examples(H, expected):
    assert is_pt_symmetric(H, J11) is expected


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_symmetric_pt_symmetric_is_j_hermitian(a, b, c):
    H = np.array([[a, 1j * b], [1j * b, c]])
    assert is_pt_symmetric(H, J11) and np.array_equal(H, H.T)
    assert is_j_hermitian(H, J11)


@pytest.mark.parametrize(
    "H, expected",
    [([[0, 1], [1, 0]], True), ([[2, 1], [-1, -2]], False), (np.diag([1.3, -1.3]), True)],
)
def test_is_dirac_hermitian_examples(H, expected):
    assert is_dirac_hermitian(H) is expected


def test_norm_class_examples():
    assert norm_class(E1, J11) is NormClass.POSITIVE
    assert norm_class(E2, J11) is NormClass.NEGATIVE
    assert norm_class([1, 1], J11) is NormClass.NEUTRAL
    assert norm_class([1, 1 + 1e-12], J11) is NormClass.NEUTRAL
    assert norm_class([1, 1 - 1e-4], J11) is NormClass.POSITIVE


def test_time_reversal_and_parity():
    A = np.array([[1, 1j], [-1j, 2]])
    np.testing.assert_array_equal(time_reversal(A), [[1, -1j], [1j, 2]])
    np.testing.assert_array_equal(time_reversal(time_reversal(A)), A)
    R = np.array([[1.0, 2.0], [3.0, 4.0]])
    np.testing.assert_array_equal(time_reversal(R), R)
    np.testing.assert_array_equal(parity(R, J11), [[1, -2], [-3, 4]])


@given(seeds)
@settings(max_examples=100)
def test_j_and_dirac_hermitian_means_block_diagonal_hermitian(seed):
    # in signature (p, q) both conditions together force H = H^dagger with no
    # coupling between the +1 and -1 blocks; for (1, 1) that is real diagonal
    rng = np.random.default_rng(seed)
    j = SIGNATURES[seed % 3]
    A = cgauss(rng, (j.n, j.n))
    H = 0.5 * (A + A.conj().T)
    if seed % 2:
        H = H * np.equal.outer(j.signs, j.signs)
    both = is_j_hermitian(H, j) and is_dirac_hermitian(H)
    assert both == bool(seed % 2)
