"""
Numerical h0 and h1 of twisted Dolbeault operators on the torus from the
chiral zero modes of the overlap operator.
"""
import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from core.conf import resolve
from core.exceptions import InsufficientResolutionError, PreconditionError, UnreliableRankError
from torus_geometry.connection import LatticeConnection, base_connection, flux
from torus_geometry.grid import TorusGrid
from .overlap import chirality_operator, overlap_operator

logger = logging.getLogger(__name__)

MIN_GRID = 16


@dataclass(frozen=True, eq=False)
class DolbeaultProblem:
    grid: TorusGrid
    connections: List[LatticeConnection]

    def __post_init__(self):
        if not self.connections:
            raise PreconditionError("a Dolbeault problem needs at least one line bundle summand")
        for conn in self.connections:
            if conn.grid.n != self.grid.n:
                raise PreconditionError("summand connections must live on the problem grid")

    @property
    def degrees(self) -> List[int]:
        return [conn.degree for conn in self.connections]

    @classmethod
    def line_bundle(cls, grid, degree, jacobian_class=(0.0, 0.0)) -> 'DolbeaultProblem':
        return cls(grid, [base_connection(grid, degree, jacobian_class)])

    @classmethod
    def for_split_bundle(cls, grid, m, class_m, l, class_l) -> 'DolbeaultProblem':
        """
        E (x) L for E = M + M^{-1}: summands of degree l + m and l - m.
        The two E-summand degrees sum to 2 deg L.
        """
        twist = base_connection(grid, l, class_l)
        summand = base_connection(grid, m, class_m)
        return cls(grid, [twist + summand, twist - summand])


@dataclass(frozen=True)
class CohomologyReport:
    h0: int
    h1: int
    singular_values: List[float] = field(repr=False)
    gap_ratio: float
    rank_tol: float
    degrees: List[int]

    @property
    def index(self) -> int:
        return self.h0 - self.h1


@dataclass(frozen=True, eq=False)
class _SummandSpectrum:
    singular_values: np.ndarray
    positive: int
    negative: int
    smallest_kept: float
    largest_dropped: float


def _check_resolution(problem: DolbeaultProblem):
    n = problem.grid.n
    if n < MIN_GRID:
        raise InsufficientResolutionError(f"Dolbeault cohomology needs n >= {MIN_GRID}, got {n}")
    for conn in problem.connections:
        if abs(conn.degree) > n / 8:
            raise InsufficientResolutionError(
                f"degree {conn.degree} is too large for n={n} (limit n/8 = {n // 8})"
            )
        if flux(conn) != conn.degree:
            raise PreconditionError(f"connection flux {flux(conn)} disagrees with its degree {conn.degree}")


def _summand_spectrum(conn: LatticeConnection, rank_tol: float) -> _SummandSpectrum:
    operator = overlap_operator(conn)
    # Ginsparg-Wilson: D^dagger D = D + D^dagger, Hermitian with eigenvalues sigma^2
    gram = operator + operator.conj().T
    try:
        values, vectors = np.linalg.eigh(gram)
    except np.linalg.LinAlgError as exc:
        raise UnreliableRankError(
            f"eigendecomposition of D^dagger D failed for degree {conn.degree} on n={conn.grid.n}: {exc}"
        ) from exc
    singular = np.sqrt(np.clip(values[::-1], 0.0, None))
    vectors = vectors[:, ::-1]
    threshold = rank_tol * singular[0]
    dropped = singular < threshold
    null_space = vectors[:, dropped]
    # square roots of rounded eigenvalues sit near 1e-8; measure |D v| instead
    singular[dropped] = np.linalg.norm(operator @ null_space, axis=0)

    # Zero modes of the overlap operator split by chirality
    g5 = chirality_operator(conn.grid.sites)
    projected = null_space.conj().T @ (g5[:, None] * null_space)
    chiralities = np.linalg.eigvalsh(0.5 * (projected + projected.conj().T))
    positive = int(np.sum(chiralities > 0))
    negative = int(np.sum(chiralities < 0))

    kept = singular[~dropped]
    return _SummandSpectrum(
        singular_values=singular,
        positive=positive,
        negative=negative,
        smallest_kept=float(kept.min()) if kept.size else 0.0,
        largest_dropped=float(singular[dropped].max()) if dropped.any() else 0.0,
    )


def h0(problem: DolbeaultProblem, rank_tol: float = None, min_gap_ratio: float = None) -> CohomologyReport:
    """
    Dimensions of the holomorphic sections and of the first cohomology.

    Ranks come from the overlap operator of each summand, not from the
    forward-difference dbar matrix: its chiral zero modes are the
    holomorphic sections (positive) and the classes of H^1 (negative).
    The reported singular values are those of the overlap operator.

    Args:
        problem: One or more line bundle summands on a grid with n >= 16
        rank_tol: Relative singular value threshold (settings RANK_TOL)
        min_gap_ratio: Smallest acceptable kept/dropped ratio (settings MIN_GAP_RATIO)

    Returns:
        CohomologyReport summed over the summands

    Raises:
        InsufficientResolutionError: if the grid is too coarse for the degrees
        UnreliableRankError: if the singular value gap is below min_gap_ratio
            or the eigendecomposition does not converge
    """
    rank_tol = resolve(rank_tol, 'RANK_TOL')
    min_gap_ratio = resolve(min_gap_ratio, 'MIN_GAP_RATIO')
    _check_resolution(problem)

    spectra = [_summand_spectrum(conn, rank_tol) for conn in problem.connections]
    kept = min(s.smallest_kept for s in spectra)
    dropped = max(s.largest_dropped for s in spectra)
    gap_ratio = float('inf') if dropped == 0.0 else kept / dropped

    h0_total = sum(s.positive for s in spectra)
    h1_total = sum(s.negative for s in spectra)
    singular_values = sorted(np.concatenate([s.singular_values for s in spectra]).tolist(), reverse=True)
    report = CohomologyReport(h0_total, h1_total, singular_values, gap_ratio, rank_tol, problem.degrees)

    if gap_ratio < min_gap_ratio:
        raise UnreliableRankError(
            f"unreliable rank: gap ratio {gap_ratio:.3e} below {min_gap_ratio:.0e} "
            f"(degrees {problem.degrees}, n={problem.grid.n})",
            gap_ratio=gap_ratio,
        )
    logger.info(
        f"h0={h0_total} h1={h1_total} for degrees {problem.degrees} on n={problem.grid.n}, gap {gap_ratio:.2e}"
    )
    return report
