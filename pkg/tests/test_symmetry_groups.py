import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import J11, SIGNATURES, cgauss, random_algebra, random_j_unitary, seeds
from kreinqm import (
    FundamentalSymmetry,
    UnsupportedDimension,
    in_algebra,
    in_indefinite_unitary,
    in_unitary,
    matrix_exponential,
    membership_report,
    torus_intersection,
)

PHASES = np.diag([np.exp(1j * math.pi / 3), np.exp(-1j * math.pi / 5)])
BOOST = np.array([[math.cosh(0.7), math.sinh(0.7)], [math.sinh(0.7), math.cosh(0.7)]])
SWAP = np.array([[0, 1], [1, 0]])


@given(st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_diagonal_phases_in_indefinite_unitary(theta, phi):
    U = np.diag([np.exp(1j * theta), np.exp(1j * phi)])
    assert in_indefinite_unitary(U, J11)
    special = abs(np.exp(1j * (theta + phi)) - 1) <= 1e-10
    assert in_indefinite_unitary(U, J11, special=True) == special


def test_special_variant_examples():
    assert in_indefinite_unitary(np.diag([np.exp(0.4j), np.exp(-0.4j)]), J11, special=True)
    assert in_indefinite_unitary(BOOST, J11)
    assert in_indefinite_unitary(BOOST, J11, special=True)
    assert not in_indefinite_unitary(SWAP, J11)


def test_unitary_examples():
    assert in_unitary(np.eye(2))
    assert in_unitary(PHASES)
    assert not in_unitary([[1, 1], [0, 1]])
    assert not in_unitary(PHASES, special=True)


def test_algebra_examples():
    H = np.array([[2, 1], [-1, -2]])
    assert in_algebra(-1j * H, J11)
    assert in_algebra(-1j * H, J11, special=True)
    assert not in_algebra(-1j * np.array([[0, 1], [1, 0]]), J11)
    assert in_algebra(np.zeros((2, 2)), J11)
    assert not in_algebra(-1j * np.diag([1.0, 2.0]), J11, special=True)


def test_torus_examples():
    theta, phi = torus_intersection(PHASES, J11)
    assert theta == pytest.approx(math.pi / 3, abs=1e-12)
    assert phi == pytest.approx(2 * math.pi - math.pi / 5, abs=1e-12)
    assert torus_intersection(np.eye(2), J11) == (0.0, 0.0)
    assert torus_intersection(BOOST, J11) is None
    with pytest.raises(UnsupportedDimension):
        torus_intersection(np.eye(3), FundamentalSymmetry(2, 1))
    with pytest.raises(UnsupportedDimension):
        torus_intersection(np.eye(2), FundamentalSymmetry(2, 0))


def test_membership_report():
    rep = membership_report(PHASES, J11)
    assert rep.in_indefinite_unitary and rep.in_unitary and not rep.in_special_variant
    assert rep.torus_angles is not None
    rep = membership_report(BOOST, J11)
    assert rep.in_indefinite_unitary and not rep.in_unitary and rep.in_special_variant
    assert rep.torus_angles is None


@given(seeds)
@settings(max_examples=60, deadline=None)
def test_group_closure(seed):
    rng = np.random.default_rng(seed)
    j = SIGNATURES[seed % 3]
    A, B = random_j_unitary(rng, j), random_j_unitary(rng, j)
    assert in_indefinite_unitary(A @ B, j, 1e-9)
    assert in_indefinite_unitary(np.linalg.inv(A), j, 1e-9)


@given(seeds)
@settings(max_examples=60, deadline=None)
def test_exponential_lands_in_group(seed):
    rng = np.random.default_rng(seed)
    j = SIGNATURES[seed % 3]
    X = random_algebra(rng, j)
    X *= 2.0 / max(1.0, np.max(np.abs(X))) * rng.uniform()
    assert in_algebra(X, j)
    assert in_indefinite_unitary(matrix_exponential(X), j, 1e-9)


@given(seeds)
@settings(max_examples=100)
def test_algebra_intersection_is_imaginary_diagonal(seed):
    rng = np.random.default_rng(seed)
    kind = seed % 3
    if kind == 0:
        X = 1j * np.diag(rng.normal(size=2))
    elif kind == 1:
        X = random_algebra(rng, J11)
    else:
        A = cgauss(rng, (2, 2))
        X = 0.5 * (A - A.conj().T)
    both = in_algebra(X, J11, 1e-12) and np.max(np.abs(X.conj().T + X)) <= 1e-12
    imaginary_diagonal = abs(X[0, 1]) <= 1e-12 and abs(X[1, 0]) <= 1e-12 and np.max(np.abs(np.diag(X).real)) <= 1e-12
    assert both == imaginary_diagonal
