"""
Damped inexact Newton for the Kazdan-Warner equation.

The linearisation Laplacian + 2P e^{2f} + 2Q e^{-2f} is symmetric positive
definite as soon as P + Q is not identically zero; each step solves it with
conjugate gradients preconditioned by (Laplacian + c)^{-1}.
"""
import logging
import time
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.sparse.linalg import LinearOperator, cg

from core.conf import resolve
from core.exceptions import HypothesesViolatedError, PreconditionError, StalledError
from core.utils.numerics import sup_norm
from torus_geometry.operators import solve_poisson, spectral_laplacian
from .problem import KWProblem, mean_tolerance

logger = logging.getLogger(__name__)

MIN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class KWSolution:
    f: np.ndarray
    residual_linf: float
    newton_iters: int
    damping_events: int
    case_tag: str
    shift: float = 0.0
    wall_time: float = 0.0


def kw_residual(problem: KWProblem, f) -> np.ndarray:
    P, Q, w = problem.P, problem.Q, problem.w
    return spectral_laplacian(problem.grid, f) + P * np.exp(2 * f) - Q * np.exp(-2 * f) - w


def kw_verify(problem: KWProblem, f) -> float:
    """Sup norm of the equation residual at f."""
    f = np.asarray(f, dtype=float)
    if f.shape != problem.grid.shape:
        raise PreconditionError(f"f has shape {f.shape}, grid is {problem.grid.shape}")
    return sup_norm(kw_residual(problem, f))


def _newton_direction(problem: KWProblem, f, residual, rtol, maxiter):
    grid = problem.grid
    shape = grid.shape
    diagonal = 2 * problem.P * np.exp(2 * f) + 2 * problem.Q * np.exp(-2 * f)

    def matvec(v):
        v = v.reshape(shape)
        return (spectral_laplacian(grid, v) + diagonal * v).ravel()

    shift = float(np.mean(diagonal))
    symbol = grid.laplacian_symbol + shift

    def precondition(v):
        v = v.reshape(shape)
        return np.real(np.fft.ifft2(np.fft.fft2(v) / symbol)).ravel()

    size = grid.sites
    jacobian = LinearOperator((size, size), matvec=matvec, dtype=float)
    preconditioner = LinearOperator((size, size), matvec=precondition, dtype=float)
    step, info = cg(jacobian, -residual.ravel(), rtol=rtol, atol=0.0, maxiter=maxiter, M=preconditioner)
    if info > 0:
        logger.debug(f"CG stopped after {info} iterations without reaching rtol {rtol:.0e}")
    return step.reshape(shape)


def _newton(problem: KWProblem, f, tol, max_newton, max_halvings, cg_rtol, cg_maxiter):
    residual = kw_residual(problem, f)
    norm = sup_norm(residual)
    iterations = 0
    damping_events = 0
    while True:
        iterations += 1
        logger.debug(f"Newton pass {iterations}: residual {norm:.3e}")
        if norm <= tol:
            return f, norm, iterations, damping_events
        if iterations > max_newton:
            raise StalledError(
                f"stalled: {max_newton} Newton steps left residual {norm:.3e} above {tol:.1e}",
                best_residual=norm,
                iterations=iterations - 1,
            )

        direction = _newton_direction(problem, f, residual, cg_rtol, cg_maxiter)
        scale = 1.0
        for _ in range(max_halvings + 1):
            trial = f + scale * direction
            trial_residual = kw_residual(problem, trial)
            trial_norm = sup_norm(trial_residual)
            if trial_norm < norm:
                break
            scale *= 0.5
            damping_events += 1
        else:
            raise StalledError(
                f"stalled: no decrease after {max_halvings} step halvings at residual {norm:.3e}",
                best_residual=norm,
                iterations=iterations,
            )
        f, residual, norm = trial, trial_residual, trial_norm


def solve_kw(
    problem: KWProblem,
    tol: float,
    initial: Optional[np.ndarray] = None,
    max_newton: Optional[int] = None,
    max_halvings: Optional[int] = None,
) -> KWSolution:
    """
    Solve the Kazdan-Warner equation to a sup-norm residual of tol.

    Args:
        problem: Validated KWProblem
        tol: Residual target, at least 1e-12
        initial: Optional starting guess; defaults to the zero-mean solution of Laplacian(v) = w
        max_newton: Newton step cap (settings KW_MAX_NEWTON)
        max_halvings: Step halvings allowed per Newton step (settings KW_MAX_HALVINGS)

    Returns:
        KWSolution

    Raises:
        HypothesesViolatedError: if w does not have zero mean in the remark case
        StalledError: if the residual does not reach tol within the caps
    """
    if tol < MIN_TOL:
        raise PreconditionError(f"tol must be at least {MIN_TOL:.0e}, got {tol!r}")
    max_newton = resolve(max_newton, 'KW_MAX_NEWTON')
    max_halvings = resolve(max_halvings, 'KW_MAX_HALVINGS')
    cg_rtol = resolve(None, 'KW_CG_RTOL')
    cg_maxiter = resolve(None, 'KW_CG_MAXITER')

    started = time.perf_counter()
    grid = problem.grid
    shift = problem.normalization_shift()
    working = problem
    if problem.is_remark:
        mean_w = float(np.mean(problem.w))
        if abs(mean_w) > mean_tolerance(problem.w):
            raise HypothesesViolatedError(f"remark case needs zero-mean w, mean is {mean_w:.3e}")
        working = KWProblem(
            grid,
            np.exp(2 * shift) * problem.P,
            np.exp(-2 * shift) * problem.Q,
            problem.w - mean_w,
        )

    if initial is None:
        f0 = solve_poisson(grid, working.w)
    else:
        f0 = np.array(initial, dtype=float) - shift
        if f0.shape != grid.shape:
            raise PreconditionError(f"initial guess has shape {f0.shape}, grid is {grid.shape}")

    g, norm, iterations, damping = _newton(
        working, f0, tol, max_newton, max_halvings, cg_rtol, cg_maxiter
    )
    f = g + shift
    elapsed = time.perf_counter() - started
    logger.info(
        f"KW solve ({problem.case_tag}, n={grid.n}) converged in {iterations} passes, "
        f"residual {norm:.3e}, {damping} halvings"
    )
    return KWSolution(f, norm, iterations, damping, problem.case_tag, shift, elapsed)


def kw_bracket(problem: KWProblem) -> Tuple[np.ndarray, np.ndarray]:
    """
    Sub- and supersolution enclosing the remark-case solution.

    With v1, v2 the zero-mean solutions of Laplacian(v1) = w and
    Laplacian(v2) = Q' - P' for the normalised data P', Q', and
    M = sup |v1 + v2|, the solution lies between v1 + v2 - M and
    v1 + v2 + M, shifted back by the normalisation constant.
    """
    if not problem.is_remark:
        raise HypothesesViolatedError("the sub/supersolution bracket is built for the zero-mean case only")
    grid = problem.grid
    shift = problem.normalization_shift()
    P = np.exp(2 * shift) * problem.P
    Q = np.exp(-2 * shift) * problem.Q
    v1 = solve_poisson(grid, problem.w)
    v2 = solve_poisson(grid, Q - P)
    base = v1 + v2
    bound = sup_norm(base)
    return base - bound + shift, base + bound + shift
