"""
Holomorphic triples (L, alpha, beta) over the split bundle E = M + M^-1.

Components and the bundles they are sections of:
    alpha1 in M L        alpha2 in M^-1 L
    beta1  in M^-1 L^-1  beta2  in M L^-1
so alpha1 beta1 + alpha2 beta2 is a function; holomorphic triples make it vanish.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from core.exceptions import DegreeMismatchError, PreconditionError
from torus_geometry.connection import LatticeConnection, base_connection
from torus_geometry.fields import TwistedField, constant_field, zero_field
from torus_geometry.grid import TorusGrid
from torus_geometry.operators import dbar
from torus_geometry.theta import ThetaSpec, theta_section

logger = logging.getLogger(__name__)

PAIRING_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class HolomorphicTriple:
    grid: TorusGrid
    m: int
    conn: LatticeConnection
    background: LatticeConnection
    alpha: Tuple[TwistedField, TwistedField]
    beta: Tuple[TwistedField, TwistedField]
    holomorphicity_constant: float = field(init=False)

    def __post_init__(self):
        if self.background.degree != self.m:
            raise DegreeMismatchError(f"background has degree {self.background.degree}, expected m={self.m}")
        for section, conn in zip(self.sections, self.component_connections):
            if section.degree != conn.degree:
                raise DegreeMismatchError(
                    f"section of degree {section.degree} paired with a degree-{conn.degree} bundle"
                )
            if section.n != self.grid.n:
                raise PreconditionError("sections must live on the triple grid")

        scale = self.alpha_sup() * self.beta_sup()
        if scale > 0 and self.pairing_residual() > PAIRING_TOL * scale:
            raise PreconditionError(
                f"alpha beta pairing {self.pairing_residual():.3e} exceeds {PAIRING_TOL:.0e} relative"
            )
        worst = max(dbar(self.grid, c, s).sup_norm() for s, c in zip(self.sections, self.component_connections))
        object.__setattr__(self, 'holomorphicity_constant', worst * self.grid.n ** 2)

    @property
    def d(self) -> int:
        return self.conn.degree

    @property
    def sections(self):
        return (*self.alpha, *self.beta)

    @property
    def component_connections(self):
        L, M = self.conn, self.background
        return (M + L, L - M, -(M + L), M - L)

    def alpha_density(self) -> np.ndarray:
        return sum(np.abs(a.values) ** 2 for a in self.alpha)

    def beta_density(self) -> np.ndarray:
        return sum(np.abs(b.values) ** 2 for b in self.beta)

    def alpha_sup(self) -> float:
        return float(np.sqrt(np.max(self.alpha_density())))

    def beta_sup(self) -> float:
        return float(np.sqrt(np.max(self.beta_density())))

    def alpha_is_zero(self) -> bool:
        return all(a.is_zero() for a in self.alpha)

    def beta_is_zero(self) -> bool:
        return all(b.is_zero() for b in self.beta)

    def pairing(self) -> np.ndarray:
        return self.alpha[0].values * self.beta[0].values + self.alpha[1].values * self.beta[1].values

    def pairing_residual(self) -> float:
        return float(np.max(np.abs(self.pairing())))

    def replace(self, conn=None, alpha=None, beta=None) -> 'HolomorphicTriple':
        return HolomorphicTriple(
            self.grid,
            self.m,
            self.conn if conn is None else conn,
            self.background,
            tuple(self.alpha if alpha is None else alpha),
            tuple(self.beta if beta is None else beta),
        )


def split_theta_triple(
    grid: TorusGrid,
    m: int,
    d: int,
    alpha_zeros: Optional[Sequence] = None,
    beta_zeros: Optional[Sequence] = None,
) -> HolomorphicTriple:
    """
    Triple with alpha = (theta_a, 0) and beta = (0, theta_b).

    theta_a is the section of M L with the given zeros and theta_b the
    section of M L^-1; the Jacobian classes of M and L are fixed by the
    zero sums. A missing zero list gives a vanishing component and puts M
    at the trivial class.
    """
    if alpha_zeros is None and beta_zeros is None:
        raise PreconditionError("a theta triple needs alpha or beta zeros")
    if alpha_zeros is not None and len(alpha_zeros) != m + d:
        raise PreconditionError(f"alpha1 lives in degree {m + d}, got {len(alpha_zeros)} zeros")
    if beta_zeros is not None and len(beta_zeros) != m - d:
        raise PreconditionError(f"beta2 lives in degree {m - d}, got {len(beta_zeros)} zeros")

    class_a = ThetaSpec(m + d, list(alpha_zeros)).jacobian_class if alpha_zeros else None
    class_b = ThetaSpec(m - d, list(beta_zeros)).jacobian_class if beta_zeros else None
    if class_a is not None and class_b is not None:
        class_m = ((class_a[0] + class_b[0]) / 2, (class_a[1] + class_b[1]) / 2)
        class_l = ((class_a[0] - class_b[0]) / 2, (class_a[1] - class_b[1]) / 2)
    elif class_a is not None:
        class_m, class_l = (0.0, 0.0), class_a
    else:
        class_m, class_l = (0.0, 0.0), (-class_b[0], -class_b[1])

    alpha1 = theta_section(grid, ThetaSpec(m + d, list(alpha_zeros)))[0] if alpha_zeros else zero_field(grid.n, m + d)
    beta2 = theta_section(grid, ThetaSpec(m - d, list(beta_zeros)))[0] if beta_zeros else zero_field(grid.n, m - d)
    alpha = (alpha1, zero_field(grid.n, d - m))
    beta = (zero_field(grid.n, -m - d), beta2)

    conn = base_connection(grid, d, class_l)
    background = base_connection(grid, m, class_m)
    triple = HolomorphicTriple(grid, m, conn, background, alpha, beta)
    logger.debug(f"Theta triple m={m} d={d} on n={grid.n}, holomorphicity constant {triple.holomorphicity_constant:.3e}")
    return triple


def constant_triple(grid: TorusGrid, alpha, beta) -> HolomorphicTriple:
    """Triple over trivial M and L with constant components."""
    conn = base_connection(grid, 0)
    alpha = tuple(constant_field(grid.n, a) for a in alpha)
    beta = tuple(constant_field(grid.n, b) for b in beta)
    return HolomorphicTriple(grid, 0, conn, base_connection(grid, 0), alpha, beta)
