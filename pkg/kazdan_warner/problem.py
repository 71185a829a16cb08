"""
The equation  Laplacian(f) + P exp(2f) - Q exp(-2f) = w  on the torus.

Two solvable regimes are distinguished:
  lemma  - integral of (P - Q) > 0 and integral of w > 0
  remark - integral of w = 0 with neither P nor Q identically zero
"""
from dataclasses import dataclass

import numpy as np

from core.exceptions import HypothesesViolatedError, PreconditionError
from torus_geometry.fields import TwistedField
from torus_geometry.grid import TorusGrid

LEMMA = 'lemma'
REMARK = 'remark'
CASE_TAGS = (LEMMA, REMARK)

# Integrals closer to zero than this count as zero
INTEGRAL_TOL = 1e-10


def _as_real_array(grid, values, name):
    if isinstance(values, TwistedField):
        if values.degree != 0:
            raise PreconditionError(f"{name} must be a degree-0 field, got degree {values.degree}")
        values = values.values
    values = np.asarray(values)
    if np.iscomplexobj(values):
        if np.max(np.abs(values.imag), initial=0.0) > 1e-12:
            raise PreconditionError(f"{name} must be real")
        values = values.real
    values = np.array(values, dtype=float)
    if values.shape != grid.shape:
        raise PreconditionError(f"{name} has shape {values.shape}, grid is {grid.shape}")
    return values


def mean_tolerance(w) -> float:
    return INTEGRAL_TOL * max(1.0, float(np.max(np.abs(w))))


def infer_case(grid: TorusGrid, P, Q, w, case_tag: str = None) -> str:
    """
    Return the regime a problem falls into, or raise if it is in neither.

    An explicit LEMMA tag is checked against strict positivity of both
    integrals instead of INTEGRAL_TOL.
    """
    int_pq = grid.integrate(P - Q)
    int_w = grid.integrate(w)
    if case_tag == LEMMA:
        if int_pq > 0 and int_w > 0:
            return LEMMA
        raise HypothesesViolatedError(
            f"case_tag 'lemma' needs positive integrals, got integral(P - Q) = {int_pq:.3e}, "
            f"integral(w) = {int_w:.3e}"
        )
    if abs(int_w) <= mean_tolerance(w):
        if not np.any(P) or not np.any(Q):
            raise HypothesesViolatedError("zero-mean w needs both P and Q not identically zero")
        return REMARK
    if int_pq > INTEGRAL_TOL and int_w > INTEGRAL_TOL:
        return LEMMA
    raise HypothesesViolatedError(
        f"no solvable regime: integral(P - Q) = {int_pq:.3e}, integral(w) = {int_w:.3e}"
    )


@dataclass(frozen=True, eq=False)
class KWProblem:
    grid: TorusGrid
    P: np.ndarray
    Q: np.ndarray
    w: np.ndarray
    case_tag: str = None

    def __post_init__(self):
        P = _as_real_array(self.grid, self.P, 'P')
        Q = _as_real_array(self.grid, self.Q, 'Q')
        w = _as_real_array(self.grid, self.w, 'w')
        if np.min(P) < 0 or np.min(Q) < 0:
            raise HypothesesViolatedError("P and Q must be non-negative")
        if self.case_tag is not None and self.case_tag not in CASE_TAGS:
            raise PreconditionError(f"case_tag must be one of {CASE_TAGS}, got {self.case_tag!r}")

        inferred = infer_case(self.grid, P, Q, w, self.case_tag)
        if self.case_tag is not None and self.case_tag != inferred:
            raise HypothesesViolatedError(
                f"case_tag {self.case_tag!r} disagrees with the integrals, which give {inferred!r}"
            )
        object.__setattr__(self, 'P', P)
        object.__setattr__(self, 'Q', Q)
        object.__setattr__(self, 'w', w)
        object.__setattr__(self, 'case_tag', inferred)

    @property
    def is_remark(self) -> bool:
        return self.case_tag == REMARK

    def normalization_shift(self) -> float:
        """Constant C with integral(P e^{2C} - Q e^{-2C}) = 0; zero outside the remark case."""
        if not self.is_remark:
            return 0.0
        return 0.25 * float(np.log(self.grid.integrate(self.Q) / self.grid.integrate(self.P)))

    def rescaled(self, c: float) -> 'KWProblem':
        """Problem solved by f - c when this one is solved by f."""
        return KWProblem(self.grid, np.exp(2 * c) * self.P, np.exp(-2 * c) * self.Q, self.w)

    def translated(self, shift) -> 'KWProblem':
        """Translate the data by a whole number of sites."""
        roll = lambda a: np.roll(a, shift, axis=(0, 1))
        return KWProblem(self.grid, roll(self.P), roll(self.Q), roll(self.w), self.case_tag)


def manufactured_problem(grid: TorusGrid, amplitude: float = 0.3):
    """
    Problem with the known solution f* = amplitude cos(2 pi x) cos(2 pi y).

    Returns:
        (KWProblem, f*)
    """
    X, Y = grid.X, grid.Y
    f_star = amplitude * np.cos(2 * np.pi * X) * np.cos(2 * np.pi * Y)
    P = 1.0 + 0.5 * np.sin(2 * np.pi * X)
    Q = np.full(grid.shape, 0.5)
    # Laplacian of f* is 8 pi^2 f*
    w = 8 * np.pi ** 2 * f_star + P * np.exp(2 * f_star) - Q * np.exp(-2 * f_star)
    return KWProblem(grid, P, Q, w), f_star
