"""
Concentration sweep t -> 0 of the scaled vortex equations

    t^2 (i*F_A - 2 pi tau) + |alpha|^2 - |beta|^2 = 0.

Each t is one complex gauge solve of the triple with alpha and beta scaled
by A/t, A the sweep amplitude (settings SWEEP_AMPLITUDE). For unit-norm
sections the vortex core has width about t/A. As t decreases the curvature
concentrates at the zeros, pi q_x in a small ball around a zero of weight q_x.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from core.conf import resolve
from core.exceptions import PreconditionError, StalledError, ZerosTooCloseError
from core.utils.numerics import torus_distance
from kazdan_warner.solver import KWSolution
from torus_geometry.connection import site_curvature
from torus_geometry.grid import TorusGrid
from vortex_correspondence.hitchin_kobayashi import hk_solve
from vortex_correspondence.triples import HolomorphicTriple
from .exponents import vanishing_exponent
from .simple_gauge import LimitingState, LimitingZero, simple_gauge

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ('t', 'zero_id', 'x', 'y', 'q', 'flux', 'exponent', 'kw_iters', 'residual')


@dataclass(frozen=True, eq=False)
class SweepRecord:
    t: float
    zeros: Tuple[LimitingZero, ...]
    fluxes: Tuple[float, ...]
    exponents: Tuple[float, ...]
    global_l2_alpha_minus_beta: float
    kw_iters: int
    residual: float
    ball_radius: float
    kw: Optional[KWSolution] = field(default=None, repr=False)
    stalled: bool = False

    @property
    def f_t(self) -> Optional[np.ndarray]:
        return None if self.kw is None else self.kw.f

    @property
    def flux_limits(self) -> Tuple[float, ...]:
        return tuple(np.pi * z.q for z in self.zeros)

    def relative_flux_errors(self) -> Tuple[float, ...]:
        return tuple(
            abs(flux - limit) / abs(limit) if limit else abs(flux)
            for flux, limit in zip(self.fluxes, self.flux_limits)
        )

    def noise_bar(self) -> float:
        """Flux uncertainty from the curvature residual over one ball."""
        return self.residual * np.pi * self.ball_radius ** 2

    def rows(self) -> List[dict]:
        return [
            {
                't': self.t,
                'zero_id': zero.zero_id,
                'x': zero.point[0],
                'y': zero.point[1],
                'q': zero.q,
                'flux': flux,
                'exponent': exponent,
                'kw_iters': self.kw_iters,
                'residual': self.residual,
            }
            for zero, flux, exponent in zip(self.zeros, self.fluxes, self.exponents)
        ]


def ball_flux(grid: TorusGrid, curvature, center, radius: float) -> float:
    """Integral of a curvature density over the geodesic ball B(center, radius)."""
    dx, dy = grid.torus_offsets(center)
    inside = np.hypot(dx, dy) < radius
    return float(np.real(grid.integrate(np.where(inside, curvature, 0.0))))


def scaled_triple(triple: HolomorphicTriple, t: float, amplitude: float = 1.0) -> HolomorphicTriple:
    factor = amplitude / t
    return triple.replace(
        alpha=[a.scaled(factor) for a in triple.alpha],
        beta=[b.scaled(factor) for b in triple.beta],
    )


def _check_balls(zeros, ball_radius):
    for i, a in enumerate(zeros):
        for b in zeros[i + 1:]:
            if torus_distance(a.point, b.point) <= 2 * ball_radius:
                raise ZerosTooCloseError(
                    f"zeros too close: flux balls of radius {ball_radius} around {a.point} and {b.point} overlap"
                )


def sweep_point(triple: HolomorphicTriple, limit: LimitingState, t: float, tau: float,
                ball_radius: float, tol: float, amplitude: float = 1.0) -> SweepRecord:
    """Solve the scaled equations at one t and measure the concentration observables."""
    grid = triple.grid
    try:
        state = hk_solve(scaled_triple(triple, t, amplitude), tau, tol)
    except StalledError as e:
        logger.warning(f"Newton stalled at t={t}: {e}")
        nan = tuple(float('nan') for _ in limit.zeros)
        return SweepRecord(
            t=t, zeros=limit.zeros, fluxes=nan, exponents=nan,
            global_l2_alpha_minus_beta=float('nan'), kw_iters=e.iterations or 0,
            residual=float(e.best_residual) if e.best_residual is not None else float('nan'),
            ball_radius=ball_radius, stalled=True,
        )

    # |Psi_t| = t |(alpha', beta')| for the solved pair
    alpha = t * np.sqrt(state.triple.alpha_density())
    beta = t * np.sqrt(state.triple.beta_density())
    defect = float(np.sqrt(np.real(grid.integrate((alpha - beta) ** 2))))
    modulus = np.hypot(alpha, beta)

    curvature = site_curvature(state.conn)
    fluxes = tuple(ball_flux(grid, curvature, z.point, ball_radius) for z in limit.zeros)
    exponents = tuple(vanishing_exponent(modulus, z.point) for z in limit.zeros)
    logger.debug(f"Sweep t={t}: fluxes {fluxes}, L2 defect {defect:.3e}")
    return SweepRecord(
        t=t,
        zeros=limit.zeros,
        fluxes=fluxes,
        exponents=exponents,
        global_l2_alpha_minus_beta=defect,
        kw_iters=state.kw.newton_iters,
        residual=state.residuals['curvature'],
        ball_radius=ball_radius,
        kw=state.kw,
    )


def monotonicity_warnings(records: Sequence[SweepRecord]) -> List[str]:
    """
    Soft checks along decreasing t: the L2 defect of |alpha'| - |beta'| and
    each per-zero flux error should not grow beyond the recorded noise bars.
    """
    messages = []
    solved = [r for r in records if not r.stalled]
    for previous, current in zip(solved, solved[1:]):
        noise = previous.noise_bar() + current.noise_bar() + 1e-8
        if current.global_l2_alpha_minus_beta > previous.global_l2_alpha_minus_beta + noise:
            messages.append(
                f"L2 defect grew from {previous.global_l2_alpha_minus_beta:.4e} at t={previous.t} "
                f"to {current.global_l2_alpha_minus_beta:.4e} at t={current.t}"
            )
        for zero, before, after, limit in zip(current.zeros, previous.fluxes, current.fluxes, current.flux_limits):
            if abs(after - limit) > abs(before - limit) + noise:
                messages.append(
                    f"zero {zero.zero_id}: flux moved away from {limit:.4f} between t={previous.t} and t={current.t}"
                )
    return messages


def t_sweep(
    triple: HolomorphicTriple,
    t_list: Sequence[float],
    tau: float,
    ball_radius: Optional[float] = None,
    tol: float = 1e-8,
    jobs: int = 1,
    mask_radius: Optional[float] = None,
    amplitude: Optional[float] = None,
) -> List[SweepRecord]:
    """
    Solve the scaled vortex equations along a descending list of t.

    Args:
        triple: Holomorphic triple with alpha and beta both not identically zero
        t_list: Strictly descending positive values of t
        tau: Vortex parameter; d = tau goes through the remark branch of the solver
        ball_radius: Radius of the flux balls; defaults to BALL_RADIUS
        tol: Residual target for each solve
        jobs: Number of solves run concurrently
        mask_radius: Passed on to simple_gauge
        amplitude: Factor applied to alpha and beta before the 1/t scaling;
            defaults to SWEEP_AMPLITUDE

    Returns:
        One SweepRecord per t, ordered by decreasing t. Stalled solves are
        kept and flagged.
    """
    ts = [float(t) for t in t_list]
    if not ts or min(ts) <= 0.0:
        raise PreconditionError("t values must be positive")
    if any(a <= b for a, b in zip(ts, ts[1:])):
        raise PreconditionError(f"t values must be strictly descending, got {ts}")
    ball_radius = resolve(ball_radius, 'BALL_RADIUS')
    amplitude = resolve(amplitude, 'SWEEP_AMPLITUDE')
    if amplitude <= 0.0:
        raise PreconditionError(f"sweep amplitude must be positive, got {amplitude}")

    limit = simple_gauge(triple, mask_radius)
    _check_balls(limit.zeros, ball_radius)

    if jobs > 1:
        records = Parallel(n_jobs=jobs, prefer='threads')(
            delayed(sweep_point)(triple, limit, t, tau, ball_radius, tol, amplitude) for t in ts
        )
    else:
        records = [sweep_point(triple, limit, t, tau, ball_radius, tol, amplitude) for t in ts]
    records = sorted(records, key=lambda r: -r.t)

    for message in monotonicity_warnings(records):
        logger.warning(f"Sweep monotonicity: {message}")
    return records
