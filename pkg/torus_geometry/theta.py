"""
Holomorphic sections with prescribed zeros built from translated first
Jacobi theta functions of modulus i.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from core.conf import resolve
from core.exceptions import CoincidentZerosError, PreconditionError
from core.utils.numerics import torus_distance
from .connection import LatticeConnection, base_connection
from .fields import TwistedField
from .grid import TorusGrid

logger = logging.getLogger(__name__)

MIN_TRUNCATION = 6


@dataclass(frozen=True)
class ThetaSpec:
    degree: int
    zero_points: List[Tuple[float, float]]
    truncation: Optional[int] = field(default=None)

    def __post_init__(self):
        points = [(float(u) % 1.0, float(v) % 1.0) for u, v in self.zero_points]
        object.__setattr__(self, 'zero_points', points)
        if self.degree < 1:
            raise PreconditionError(f"theta sections need positive degree, got {self.degree}")
        if len(points) != self.degree:
            raise PreconditionError(
                f"a degree-{self.degree} section has {self.degree} zeros, got {len(points)}"
            )

    @property
    def jacobian_class(self) -> Tuple[float, float]:
        """Flat class of the bundle the section lives in, fixed by the sum of the zeros."""
        m = self.degree
        sum_u = sum(u for u, _ in self.zero_points)
        sum_v = sum(v for _, v in self.zero_points)
        return (m / 2 - sum_v, m / 2 + sum_u)


def jacobi_theta1(w, truncation: int) -> np.ndarray:
    """
    Odd theta function with characteristic (1/2, 1/2) at modulus i.

    Args:
        w: Complex array of arguments
        truncation: Terms k = -N .. N-1 of the lattice sum

    Returns:
        Sum of (-1)^k exp(-pi (k+1/2)^2) exp(2 pi i (k+1/2) w)
    """
    w = np.asarray(w, dtype=complex)
    k = np.arange(-truncation, truncation)
    signs = np.where(k % 2 == 0, 1.0, -1.0)
    half = k + 0.5
    weights = signs * np.exp(-np.pi * half ** 2)
    return np.tensordot(np.exp(2j * np.pi * w[..., None] * half), weights, axes=([-1], [0]))


def _check_separation(grid: TorusGrid, points):
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            if torus_distance(points[a], points[b]) < grid.spacing:
                raise CoincidentZerosError(
                    f"zero points {points[a]} and {points[b]} coincide within one grid spacing"
                )


def theta_section(grid: TorusGrid, spec: ThetaSpec) -> Tuple[TwistedField, LatticeConnection]:
    """
    Unit-norm holomorphic section vanishing exactly at spec.zero_points,
    paired with the constant-curvature connection of the matching class.
    """
    truncation = resolve(spec.truncation, 'THETA_TRUNCATION')
    if truncation < MIN_TRUNCATION:
        raise PreconditionError(f"theta truncation must be at least {MIN_TRUNCATION}, got {truncation}")
    _check_separation(grid, spec.zero_points)

    m = spec.degree
    z = grid.X + 1j * grid.Y
    values = np.ones(grid.shape, dtype=complex)
    for u, v in spec.zero_points:
        values *= np.exp(-np.pi * (grid.Y - v) ** 2) * jacobi_theta1(z - (u + 1j * v), truncation)

    # Gauge to periodic in x and to the exp(-2 pi i m x) wrap in y
    sum_u = sum(u for u, _ in spec.zero_points)
    c1, c2 = m / 2, m / 2 + sum_u
    values *= np.exp(-2j * np.pi * (c1 * grid.X + c2 * grid.Y))

    conn = base_connection(grid, m, spec.jacobian_class)
    section = TwistedField(m, values).normalize()
    logger.debug(f"Theta section of degree {m} on n={grid.n}, class {spec.jacobian_class}")
    return section, conn
