"""
Pointwise model of the quaternionic representation H (x) C^n, identified
with C^n + conj(C^n): a quaternion a + bi + cj + dk sits as (a + bi, c + di).
The circle acts on x with weight 1 and on y with weight -1.
"""
from dataclasses import dataclass

import numpy as np

from core.exceptions import PreconditionError


@dataclass(frozen=True, eq=False)
class SpinorPair:
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=complex))
        y = np.atleast_1d(np.asarray(self.y, dtype=complex))
        if x.ndim != 1 or x.shape != y.shape:
            raise PreconditionError(f"spinor components must be vectors of one length, got {x.shape} and {y.shape}")
        object.__setattr__(self, 'x', x)
        object.__setattr__(self, 'y', y)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    def norm_sq(self) -> float:
        return float(np.vdot(self.x, self.x).real + np.vdot(self.y, self.y).real)

    def normalize(self) -> 'SpinorPair':
        norm = np.sqrt(self.norm_sq())
        if norm == 0.0:
            raise PreconditionError("cannot normalize the zero spinor")
        return SpinorPair(self.x / norm, self.y / norm)

    def __add__(self, other: 'SpinorPair') -> 'SpinorPair':
        _check_same_length(self, other)
        return SpinorPair(self.x + other.x, self.y + other.y)

    def __sub__(self, other: 'SpinorPair') -> 'SpinorPair':
        _check_same_length(self, other)
        return SpinorPair(self.x - other.x, self.y - other.y)

    def scaled(self, factor) -> 'SpinorPair':
        """Real scalar multiple; complex scalars do not commute with j."""
        return SpinorPair(factor * self.x, factor * self.y)

    def rotated(self, u) -> 'SpinorPair':
        """Circle action (u x, conj(u) y)."""
        return SpinorPair(u * self.x, np.conj(u) * self.y)


@dataclass(frozen=True)
class MomentValue:
    """mu_r is purely imaginary and stored through its real coefficient."""
    mu_r_coefficient: float
    mu_c: complex

    @property
    def mu_r(self) -> complex:
        return 1j * self.mu_r_coefficient

    def __sub__(self, other: 'MomentValue') -> 'MomentValue':
        return MomentValue(self.mu_r_coefficient - other.mu_r_coefficient, self.mu_c - other.mu_c)

    def scaled(self, factor: float) -> 'MomentValue':
        return MomentValue(factor * self.mu_r_coefficient, factor * self.mu_c)

    def isclose(self, other: 'MomentValue', atol: float = 1e-12) -> bool:
        return (abs(self.mu_r_coefficient - other.mu_r_coefficient) <= atol
                and abs(self.mu_c - other.mu_c) <= atol)


def _check_same_length(p: SpinorPair, q: SpinorPair):
    if p.n != q.n:
        raise PreconditionError(f"spinor dimension mismatch: {p.n} vs {q.n}")


def real_inner(p: SpinorPair, q: SpinorPair) -> float:
    """Real part of the Hermitian inner product on C^n + conj(C^n)."""
    _check_same_length(p, q)
    return float(np.vdot(p.x, q.x).real + np.vdot(p.y, q.y).real)


def imul(p: SpinorPair) -> SpinorPair:
    return SpinorPair(1j * p.x, 1j * p.y)


def jmul(p: SpinorPair) -> SpinorPair:
    return SpinorPair(-np.conj(p.y), np.conj(p.x))


def kmul(p: SpinorPair) -> SpinorPair:
    return imul(jmul(p))


def rho(p: SpinorPair) -> SpinorPair:
    """Infinitesimal circle action, the derivative of rotated(exp(i t)) at t = 0."""
    return SpinorPair(1j * p.x, -1j * p.y)


def moment(p: SpinorPair) -> MomentValue:
    """
    Real and complex moment maps of the circle action.

    Returns:
        mu_r = i(|x|^2 - |y|^2) and mu_c = sum_k y_k x_k
    """
    coefficient = float(np.vdot(p.x, p.x).real - np.vdot(p.y, p.y).real)
    return MomentValue(coefficient, complex(np.sum(p.y * p.x)))


def moment_polarized(p: SpinorPair, q: SpinorPair) -> MomentValue:
    """Symmetric real-bilinear form whose diagonal is moment()."""
    _check_same_length(p, q)
    coefficient = float(np.vdot(p.x, q.x).real - np.vdot(p.y, q.y).real)
    mu_c = 0.5 * (np.sum(p.y * q.x) + np.sum(q.y * p.x))
    return MomentValue(coefficient, complex(mu_c))


def hyperkahler_moment(p: SpinorPair):
    """
    Moment map components (mu_I, mu_J, mu_K) for the three complex structures.

    mu_I equals the coefficient of mu_r and mu_K - i mu_J equals mu_c.
    """
    rp = rho(p)
    mu_i = -real_inner(imul(rp), p)
    mu_j = 0.5 * real_inner(jmul(rp), p)
    mu_k = 0.5 * real_inner(kmul(rp), p)
    return mu_i, mu_j, mu_k


def moment_identity_lhs(p: SpinorPair) -> float:
    """<mu_c(p) j rho(p), p>, with the complex number mu_c acting as Re mu_c k - Im mu_c j."""
    c = moment(p).mu_c
    rp = rho(p)
    return 0.5 * (c.real * real_inner(kmul(rp), p) - c.imag * real_inner(jmul(rp), p))


def moment_identity_check(p: SpinorPair) -> float:
    """Deviation of <mu_c(p) j p, p> from |mu_c(p)|^2."""
    return abs(moment_identity_lhs(p) - abs(moment(p).mu_c) ** 2)
