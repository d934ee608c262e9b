"""Time evolution under (possibly time-dependent) Hamiltonians.

The integrator is the exponential midpoint rule

    psi(t + dt) = exp(-(i/hbar) H(t + dt/2) dt) psi(t),

so every factor is exactly J-unitary whenever H(t) is J-Hermitian, and the
indefinite norm is conserved up to the exponential kernel's rounding no
matter how coarse the step. The Dirac norm carries no such guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, ValidationError
from .krein_space import PREDICATE_TOL, FundamentalSymmetry
from .linalg_core import EXPM_TOL, as_matrix, as_vector, matrix_exponential, max_abs

PROFILE_KINDS = ("constant", "polynomial", "sine", "cosine")


@dataclass(frozen=True)
class Profile:
    """Scalar time profile f(t).

    ``constant``: (c,) -> c; ``polynomial``: (c0, c1, ...) -> sum c_k t^k;
    ``sine`` / ``cosine``: (omega, phi) -> sin(omega t + phi) / cos(...).
    """

    kind: str
    params: tuple[float, ...]

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ValidationError(f"unknown profile kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if not all(math.isfinite(p) for p in self.params):
            raise ValidationError("profile parameters must be finite")
        expected = {"constant": 1, "sine": 2, "cosine": 2}.get(self.kind)
        if expected is not None and len(self.params) != expected:
            raise ValidationError(f"{self.kind} profile takes {expected} parameters")
        if self.kind == "polynomial" and not self.params:
            raise ValidationError("polynomial profile needs at least one coefficient")

    @classmethod
    def constant(cls, c: float) -> Profile:
        return cls("constant", (c,))

    @classmethod
    def polynomial(cls, coeffs: Sequence[float]) -> Profile:
        return cls("polynomial", tuple(coeffs))

    @classmethod
    def sine(cls, omega: float, phi: float = 0.0) -> Profile:
        return cls("sine", (omega, phi))

    @classmethod
    def cosine(cls, omega: float, phi: float = 0.0) -> Profile:
        return cls("cosine", (omega, phi))

    def __call__(self, t: float) -> float:
        if self.kind == "constant":
            return self.params[0]
        if self.kind == "polynomial":
            acc = 0.0
            for c in reversed(self.params):
                acc = acc * t + c
            return acc
        omega, phi = self.params
        if self.kind == "sine":
            return math.sin(omega * t + phi)
        return math.cos(omega * t + phi)


@dataclass(frozen=True, eq=False)
class HamiltonianFamily:
    """H(t) = base + sum_k f_k(t) H_k."""

    base: np.ndarray
    terms: tuple[tuple[Profile, np.ndarray], ...] = ()

    def __post_init__(self):
        base = as_matrix(self.base)
        terms = tuple((prof, as_matrix(mat)) for prof, mat in self.terms)
        for _, mat in terms:
            if mat.shape != base.shape:
                raise DimensionMismatch(
                    f"term of shape {mat.shape} does not match base {base.shape}"
                )
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def constant(cls, H) -> HamiltonianFamily:
        return cls(H)

    @property
    def n(self) -> int:
        return self.base.shape[0]

    def at(self, t: float) -> np.ndarray:
        H = self.base.copy()
        for prof, mat in self.terms:
            H += prof(t) * mat
        return H

    def __eq__(self, other):
        if not isinstance(other, HamiltonianFamily):
            return NotImplemented
        return (
            np.array_equal(self.base, other.base)
            and len(self.terms) == len(other.terms)
            and all(
                p1 == p2 and np.array_equal(m1, m2)
                for (p1, m1), (p2, m2) in zip(self.terms, other.terms)
            )
        )


@dataclass(frozen=True)
class EvolutionConfig:
    hbar: float = 1.0
    t_start: float = 0.0
    t_end: float = 1.0
    dt: float = 1e-3
    tol: float = EXPM_TOL

    def __post_init__(self):
        for name in ("hbar", "t_start", "t_end", "dt", "tol"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if self.hbar <= 0:
            raise ValidationError("hbar must be positive")
        if self.t_end <= self.t_start:
            raise ValidationError("t_end must exceed t_start")
        if self.dt <= 0 or self.dt > self.t_end - self.t_start:
            raise ValidationError("dt must lie in (0, t_end - t_start]")
        if self.tol <= 0:
            raise ValidationError("tol must be positive")

    def grid(self) -> np.ndarray:
        """Uniform grid from t_start to t_end with step at most ``dt``."""
        span = self.t_end - self.t_start
        steps = max(1, math.ceil(span / self.dt - 1e-9))
        return self.t_start + span * np.arange(steps + 1) / steps


@dataclass
class EvolutionTrace:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), n)
    indefinite_norms: np.ndarray
    dirac_norms: np.ndarray
    j_unitarity_defect: float = field(init=False)
    dirac_unitarity_defect: float = field(init=False)

    def __post_init__(self):
        self.j_unitarity_defect = float(np.max(np.abs(self.indefinite_norms - self.indefinite_norms[0])))
        self.dirac_unitarity_defect = float(np.max(np.abs(self.dirac_norms - self.dirac_norms[0])))


class UnitarityDefect(NamedTuple):
    j_defect: float
    dirac_defect: float


def propagator(H, t: float, hbar: float = 1.0, tol: float = EXPM_TOL) -> np.ndarray:
    """U(t) = exp(-(i/hbar) H t)."""
    if not hbar > 0:
        raise ValidationError("hbar must be positive")
    return matrix_exponential(-1j / hbar * t * as_matrix(H), tol)


def is_j_unitary(U, j: FundamentalSymmetry, tol: float = PREDICATE_TOL) -> bool:
    return j_unitarity_residual(U, j) <= tol


def j_unitarity_residual(U, j: FundamentalSymmetry) -> float:
    """max-entry |U^dagger J U - J|."""
    M = as_matrix(U)
    if M.shape[0] != j.n:
        raise DimensionMismatch(f"matrix of size {M.shape[0]} against signature of size {j.n}")
    return max_abs(M.conj().T @ j.apply(M) - j.matrix)


def is_dirac_unitary(U, tol: float = PREDICATE_TOL) -> bool:
    M = as_matrix(U)
    return max_abs(M.conj().T @ M - np.eye(M.shape[0])) <= tol


def _steps(family: HamiltonianFamily, config: EvolutionConfig) -> Iterator[tuple[float, np.ndarray]]:
    times = config.grid()
    for t0, t1 in zip(times[:-1], times[1:]):
        h = t1 - t0
        yield t1, propagator(family.at(t0 + 0.5 * h), h, config.hbar, config.tol)


def evolve(
    family: HamiltonianFamily,
    psi0,
    j: FundamentalSymmetry,
    config: EvolutionConfig = EvolutionConfig(),
) -> EvolutionTrace:
    """Step ``psi0`` across ``config.grid()``, recording both norms."""
    psi = as_vector(psi0)
    if psi.shape[0] != family.n or j.n != family.n:
        raise DimensionMismatch(
            f"state of size {psi.shape[0]}, family of size {family.n}, signature of size {j.n}"
        )
    times = config.grid()
    states = np.empty((len(times), family.n), dtype=complex)
    states[0] = psi
    for k, (_, U) in enumerate(_steps(family, config), start=1):
        psi = U @ psi
        states[k] = psi
    indefinite = np.einsum("ti,i,ti->t", states.conj(), j.signs, states).real
    dirac = np.einsum("ti,ti->t", states.conj(), states).real
    return EvolutionTrace(times, states, indefinite, dirac)


def unitarity_defect(
    family: HamiltonianFamily,
    j: FundamentalSymmetry,
    config: EvolutionConfig = EvolutionConfig(),
) -> UnitarityDefect:
    """Max over the grid of |P^dagger J P - J| and |P^dagger P - I| for the stepped propagator P."""
    if j.n != family.n:
        raise DimensionMismatch(f"family of size {family.n}, signature of size {j.n}")
    P = np.eye(family.n, dtype=complex)
    eye = np.eye(family.n)
    j_def = dirac_def = 0.0
    for _, U in _steps(family, config):
        P = U @ P
        j_def = max(j_def, max_abs(P.conj().T @ j.apply(P) - j.matrix))
        dirac_def = max(dirac_def, max_abs(P.conj().T @ P - eye))
    return UnitarityDefect(j_def, dirac_def)
