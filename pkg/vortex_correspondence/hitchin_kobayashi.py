"""
The map from holomorphic triples to solutions of the reduced vortex system

    dbar alpha = 0,  dbar beta = 0,  alpha beta = 0,
    i*F_A + |alpha|^2 - |beta|^2 - 2 pi tau = 0,

realised by one complex gauge transformation e^f whose exponent solves a
Kazdan-Warner equation.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from core.exceptions import CaseMismatchError, ConservationError
from core.utils.numerics import sup_norm
from kazdan_warner.problem import LEMMA, REMARK, KWProblem
from kazdan_warner.solver import KWSolution, solve_kw
from torus_geometry.connection import site_curvature
from torus_geometry.operators import dbar, nyquist_part, spectral_laplacian, two_grid_dbar
from .gauge import complex_gauge_apply
from .triples import HolomorphicTriple

logger = logging.getLogger(__name__)

RESIDUAL_NAMES = ('dbar_alpha', 'dbar_beta', 'pairing', 'curvature')
DEGREE_IDENTITY_TOL = 1e-8
KW_TOL_CAP = 1e-10
WALL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class VortexState:
    triple: HolomorphicTriple
    eta_tau: float
    residuals: Dict[str, float]
    tolerance: Optional[float] = None
    f: Optional[np.ndarray] = field(default=None, repr=False)
    kw: Optional[KWSolution] = field(default=None, repr=False)
    floors: Dict[str, float] = field(default_factory=dict)

    @property
    def conn(self):
        return self.triple.conn

    @property
    def alpha(self):
        return self.triple.alpha

    @property
    def beta(self):
        return self.triple.beta

    @classmethod
    def from_triple(cls, triple: HolomorphicTriple, tau: float) -> 'VortexState':
        """Unsolved state: the triple as it is, with its residuals evaluated."""
        return cls(triple, float(tau), triple_residuals(triple, tau))

    def contract_bounds(self) -> Dict[str, float]:
        """Per-equation bound max(tolerance, discretisation floor)."""
        tol = self.tolerance or 0.0
        return {name: max(tol, self.floors.get(name, 0.0)) for name in RESIDUAL_NAMES}

    def within_contract(self) -> bool:
        bounds = self.contract_bounds()
        return all(self.residuals[name] <= bounds[name] for name in RESIDUAL_NAMES)


def curvature_residual(triple: HolomorphicTriple, tau: float) -> np.ndarray:
    return site_curvature(triple.conn) + triple.alpha_density() - triple.beta_density() - 2 * np.pi * tau


def _dbar_residual(triple, sections, connections, operator=dbar):
    return max(operator(triple.grid, c, s).sup_norm() for s, c in zip(sections, connections))


def triple_residuals(triple: HolomorphicTriple, tau: float) -> Dict[str, float]:
    connections = triple.component_connections
    return {
        'dbar_alpha': _dbar_residual(triple, triple.alpha, connections[:2]),
        'dbar_beta': _dbar_residual(triple, triple.beta, connections[2:]),
        'pairing': triple.pairing_residual(),
        'curvature': sup_norm(curvature_residual(triple, tau)),
    }


def vortex_residual(state: VortexState) -> Dict[str, float]:
    """Sup norms of the four discrete residuals, keyed by RESIDUAL_NAMES."""
    return triple_residuals(state.triple, state.eta_tau)


def degree_identity_defect(state: VortexState) -> float:
    """|2 pi (d - tau) + ||alpha||^2 - ||beta||^2| in L2 on the unit torus."""
    triple = state.triple
    grid = triple.grid
    balance = (2 * np.pi * (triple.d - state.eta_tau)
               + grid.integrate(triple.alpha_density())
               - grid.integrate(triple.beta_density()))
    return float(abs(balance))


def _sign_case(d, tau):
    gap = d - tau
    if abs(gap) <= WALL_TOL:
        return 0
    return -1 if gap < 0 else 1


def _check_case(triple, sign):
    if sign < 0 and triple.alpha_is_zero():
        raise CaseMismatchError("case mismatch: d - tau < 0 needs alpha not identically zero")
    if sign > 0 and triple.beta_is_zero():
        raise CaseMismatchError("case mismatch: d - tau > 0 needs beta not identically zero")
    if sign == 0 and (triple.alpha_is_zero() or triple.beta_is_zero()):
        raise CaseMismatchError("case mismatch: d = tau needs alpha and beta both nonzero")


def _balancing_shift(grid, P, Q):
    """Constant C making integral(P e^{2C} - Q e^{-2C}) positive, or 0 if it already is."""
    int_p, int_q = grid.integrate(P), grid.integrate(Q)
    if int_p - int_q > 0:
        return 0.0
    return 0.25 * float(np.log(int_q / int_p)) + 1.0


def _discretisation_floors(triple: HolomorphicTriple, kw: KWSolution, f) -> Dict[str, float]:
    """Two-grid estimate of the O(h^2) dbar floor plus the Nyquist leakage of f."""
    connections = triple.component_connections
    coarse_alpha = _dbar_residual(triple, triple.alpha, connections[:2], two_grid_dbar)
    coarse_beta = _dbar_residual(triple, triple.beta, connections[2:], two_grid_dbar)
    leakage = sup_norm(spectral_laplacian(triple.grid, nyquist_part(triple.grid, f)))
    return {
        'dbar_alpha': 1.5 * coarse_alpha / 4,
        'dbar_beta': 1.5 * coarse_beta / 4,
        'pairing': triple.pairing_residual(),
        'curvature': kw.residual_linf + leakage,
    }


def hk_solve(triple: HolomorphicTriple, tau: float, tol: float, initial=None) -> VortexState:
    """
    Solve the vortex equations in the complex gauge orbit of a triple.

    Args:
        triple: Holomorphic triple (L, alpha, beta)
        tau: Vortex parameter, the integral of i eta / 2 pi
        tol: Residual target for the curvature equation
        initial: Optional starting guess for the gauge exponent

    Returns:
        Solved VortexState carrying the gauge exponent, the KW solution and
        the discretisation floors

    Raises:
        CaseMismatchError: if the nonvanishing condition for sign(d - tau) fails
        ConservationError: if the integrated degree identity is off by more than 1e-8
    """
    grid = triple.grid
    sign = _sign_case(triple.d, tau)
    _check_case(triple, sign)

    P = triple.alpha_density()
    Q = triple.beta_density()
    w = 2 * np.pi * tau - site_curvature(triple.conn)
    if sign == 0:
        # d = tau exactly; the curvature mean is 2 pi d up to rounding
        w = w - np.mean(w)

    kw_tol = min(tol, KW_TOL_CAP)
    # regime follows sign(d - tau), not INTEGRAL_TOL
    case_tag = REMARK if sign == 0 else LEMMA
    if sign > 0:
        shift = _balancing_shift(grid, Q, P)
        problem = KWProblem(grid, np.exp(2 * shift) * Q, np.exp(-2 * shift) * P, -w, case_tag)
        guess = None if initial is None else -np.asarray(initial) - shift
        kw = solve_kw(problem, kw_tol, initial=guess)
        f = -(kw.f + shift)
    else:
        shift = _balancing_shift(grid, P, Q) if sign < 0 else 0.0
        problem = KWProblem(grid, np.exp(2 * shift) * P, np.exp(-2 * shift) * Q, w, case_tag)
        guess = None if initial is None else np.asarray(initial) - shift
        kw = solve_kw(problem, kw_tol, initial=guess)
        f = kw.f + shift

    solved = complex_gauge_apply(f, triple)
    residuals = triple_residuals(solved, tau)
    floors = _discretisation_floors(solved, kw, f)
    state = VortexState(solved, float(tau), residuals, tol, f, kw, floors)

    defect = degree_identity_defect(state)
    if defect > DEGREE_IDENTITY_TOL:
        raise ConservationError(f"degree identity off by {defect:.3e} after the complex gauge solve")
    logger.info(
        f"HK solve d={triple.d} tau={tau} (sign {sign}): curvature residual {residuals['curvature']:.3e}, "
        f"degree defect {defect:.1e}, {kw.newton_iters} Newton passes"
    )
    return state


@dataclass(frozen=True)
class ContinuityReport:
    eps: float
    delta_alpha: float
    delta_beta: float
    delta_curvature: float

    @property
    def largest(self) -> float:
        return max(self.delta_alpha, self.delta_beta, self.delta_curvature)


def continuity_probe(triple: HolomorphicTriple, tau: float, eps: float, tol: float = 1e-10) -> ContinuityReport:
    """
    Solve a triple and its image under the complex gauge e^{eps g}, with
    g = cos(2 pi x) sin(2 pi y), and compare the gauge-invariant observables
    |alpha|, |beta| and the site curvature of the two solutions.
    """
    grid = triple.grid
    g = eps * np.cos(2 * np.pi * grid.X) * np.sin(2 * np.pi * grid.Y)
    base = hk_solve(triple, tau, tol)
    moved = hk_solve(complex_gauge_apply(g, triple), tau, tol)
    return ContinuityReport(
        eps=eps,
        delta_alpha=sup_norm(np.sqrt(base.triple.alpha_density()) - np.sqrt(moved.triple.alpha_density())),
        delta_beta=sup_norm(np.sqrt(base.triple.beta_density()) - np.sqrt(moved.triple.beta_density())),
        delta_curvature=sup_norm(site_curvature(base.conn) - site_curvature(moved.conn)),
    )
