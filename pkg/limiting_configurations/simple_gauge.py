"""
Limiting configurations in the simple gauge.

Away from the zeros of alpha and beta the positive function
h = sqrt(|beta| / |alpha|) is a complex gauge transformation that balances
the two sides, |h alpha| = |beta / h|. Each zero carries an integer weight
read off from winding counts of the L^2-valued section

    phi = alpha1 conj(beta2) - alpha2 conj(beta1),   |phi| = |alpha| |beta|,

which winds like alpha at a zero of alpha and against beta at a zero of beta.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from core.conf import resolve
from core.exceptions import (
    AmbiguousWindingError,
    ConservationError,
    InsufficientResolutionError,
    PreconditionError,
    ZerosTooCloseError,
)
from core.utils.numerics import torus_distance
from torus_geometry.connection import LatticeConnection, base_connection, plaquette_angles
from torus_geometry.fields import TwistedField
from torus_geometry.grid import TorusGrid
from vortex_correspondence.triples import HolomorphicTriple

logger = logging.getLogger(__name__)

ZERO_THRESHOLD = 0.1
BALANCE_TOL = 1e-8
# Largest covariant phase step along a winding loop before the count is distrusted
MAX_LINK_PHASE = 0.5 * np.pi


@dataclass(frozen=True)
class LimitingZero:
    zero_id: int
    point: Tuple[float, float]
    q: int
    source: str


@dataclass(frozen=True, eq=False)
class LimitingState:
    grid: TorusGrid
    gauge: np.ndarray = field(repr=False)
    alpha: Tuple[TwistedField, TwistedField] = field(repr=False)
    beta: Tuple[TwistedField, TwistedField] = field(repr=False)
    zeros: Tuple[LimitingZero, ...]
    mask_radius: float
    mask: np.ndarray = field(repr=False)
    modulus: np.ndarray = field(repr=False)
    d: int = 0

    @property
    def zero_points(self) -> List[Tuple[float, float]]:
        return [z.point for z in self.zeros]

    @property
    def weights(self) -> List[int]:
        return [z.q for z in self.zeros]

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def modulus_defect(self) -> float:
        """Sup of | |alpha'| - |beta'| | outside the masked disks."""
        if not np.any(~self.mask):
            return 0.0
        alpha = np.sqrt(sum(np.abs(a.values) ** 2 for a in self.alpha))
        beta = np.sqrt(sum(np.abs(b.values) ** 2 for b in self.beta))
        return float(np.max(np.abs(alpha - beta)[~self.mask]))

    def gauge_winding(self, zero: LimitingZero) -> int:
        """Winding of h around a zero; h is positive so this is always 0."""
        flat = base_connection(self.grid, 0)
        return zero_winding(flat, self.gauge, zero.point, self.mask_radius)


def locate_zeros(grid: TorusGrid, density, threshold: float = ZERO_THRESHOLD) -> List[Tuple[float, float]]:
    """
    Zeros of a section given its pointwise squared norm.

    Candidates are strict local minima of the modulus below `threshold`
    times its maximum; each is refined to sub-cell accuracy by a least
    squares quadratic fit of the squared norm on the surrounding 3 x 3 block.

    Returns:
        Zero positions in [0, 1)^2, sorted
    """
    density = np.asarray(density, dtype=float)
    modulus = np.sqrt(density)
    peak = float(np.max(modulus))
    if peak == 0.0:
        return []

    candidate = modulus < threshold * peak
    for dj in (-1, 0, 1):
        for dk in (-1, 0, 1):
            if dj or dk:
                candidate &= modulus < np.roll(np.roll(modulus, -dj, axis=0), -dk, axis=1)

    n = grid.n
    offsets = [(u, v) for u in (-1, 0, 1) for v in (-1, 0, 1)]
    design = np.array([[1.0, u, v, u * u, u * v, v * v] for u, v in offsets])
    points = []
    for j, k in zip(*np.nonzero(candidate)):
        block = np.array([density[(j + u) % n, (k + v) % n] for u, v in offsets])
        c = np.linalg.lstsq(design, block, rcond=None)[0]
        hessian = np.array([[2 * c[3], c[4]], [c[4], 2 * c[5]]])
        try:
            shift = np.linalg.solve(hessian, -c[1:3])
        except np.linalg.LinAlgError:
            shift = np.zeros(2)
        if not np.all(np.isfinite(shift)) or np.max(np.abs(shift)) > 1.0:
            shift = np.zeros(2)
        points.append((float((j + shift[0]) / n % 1.0), float((k + shift[1]) / n % 1.0)))
    return sorted(points)


def _loop_steps(center, radius):
    """Counter-clockwise square loop of half side `radius` cells as (site, axis, direction) steps."""
    j0, k0 = center
    r = radius
    steps = []
    steps += [((j0 + s, k0 - r), 0, 1) for s in range(-r, r)]
    steps += [((j0 + r, k0 + s), 1, 1) for s in range(-r, r)]
    steps += [((j0 - s, k0 + r), 0, -1) for s in range(-r, r)]
    steps += [((j0 - r, k0 - s), 1, -1) for s in range(-r, r)]
    return steps


def winding_number(conn: LatticeConnection, values, center, radius: int) -> int:
    """
    Gauge-invariant winding of a section around a square loop.

    The covariant phase increments along the loop are summed and the
    enclosed plaquette angles subtracted, which leaves 2 pi times the number
    of zeros inside, counted with multiplicity.

    Args:
        conn: Connection of the bundle the section lives on
        values: Section values on the grid
        center: Site index (j, k) the loop is centred on
        radius: Half side of the loop in cells

    Raises:
        AmbiguousWindingError: if the section vanishes on the loop or its
            phase turns too fast to count reliably
    """
    n = conn.grid.n
    values = np.asarray(values, dtype=complex)
    links = (conn.link_phase_x, conn.link_phase_y)

    increments = []
    for (j, k), axis, direction in _loop_steps(center, radius):
        j, k = j % n, k % n
        if axis == 0:
            nj, nk = (j + direction) % n, k
            link = links[0][j, k] if direction > 0 else np.conj(links[0][nj, nk])
        else:
            nj, nk = j, (k + direction) % n
            link = links[1][j, k] if direction > 0 else np.conj(links[1][nj, nk])
        increments.append(np.conj(values[j, k]) * link * values[nj, nk])

    increments = np.array(increments)
    if not np.all(np.isfinite(increments)) or np.min(np.abs(increments)) == 0.0:
        raise AmbiguousWindingError("zero on mask boundary: section vanishes on the winding loop")
    phases = np.angle(increments)
    if np.max(np.abs(phases)) > MAX_LINK_PHASE:
        raise AmbiguousWindingError(
            f"zero on mask boundary: phase step {np.max(np.abs(phases)):.2f} rad on the winding loop"
        )

    j0, k0 = center
    rows = np.arange(j0 - radius, j0 + radius) % n
    cols = np.arange(k0 - radius, k0 + radius) % n
    enclosed = float(np.sum(plaquette_angles(conn)[np.ix_(rows, cols)]))
    winding = (float(np.sum(phases)) - enclosed) / (2 * np.pi)
    rounded = int(round(winding))
    if abs(winding - rounded) > 0.25:
        raise AmbiguousWindingError(f"winding count {winding:.3f} is not near an integer")
    return rounded


def zero_winding(conn: LatticeConnection, values, point, mask_radius: float) -> int:
    """
    Winding around a zero on the two smallest loops that clear its mask.

    Raises:
        AmbiguousWindingError: if the two loops disagree
    """
    grid = conn.grid
    center = grid.nearest_site(point)
    inner = int(np.ceil(mask_radius / grid.spacing)) + 1
    first = winding_number(conn, values, center, inner)
    second = winding_number(conn, values, center, inner + 1)
    if first != second:
        raise AmbiguousWindingError(
            f"zero on mask boundary: winding {first} on radius {inner} but {second} on radius {inner + 1}"
        )
    return first


def pairing_section(triple: HolomorphicTriple) -> Tuple[np.ndarray, LatticeConnection]:
    """phi = alpha1 conj(beta2) - alpha2 conj(beta1), a section of L^2, with its connection."""
    alpha1, alpha2 = (a.values for a in triple.alpha)
    beta1, beta2 = (b.values for b in triple.beta)
    phi = alpha1 * np.conj(beta2) - alpha2 * np.conj(beta1)
    return phi, triple.conn.scaled(2)


def zero_mask(grid: TorusGrid, points, radius: float) -> np.ndarray:
    """Union of the closed disks of the given radius around the points."""
    mask = np.zeros(grid.shape, dtype=bool)
    for point in points:
        dx, dy = grid.torus_offsets(point)
        mask |= np.hypot(dx, dy) <= radius
    return mask


def _check_separation(points, mask_radius):
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            distance = torus_distance(p, q)
            if distance <= 3 * mask_radius:
                raise ZerosTooCloseError(
                    f"zeros too close: {p} and {q} are {distance:.4f} apart, need more than {3 * mask_radius:.4f}"
                )


def simple_gauge(triple: HolomorphicTriple, mask_radius: Optional[float] = None) -> LimitingState:
    """
    Put a triple in the simple gauge h = sqrt(|beta| / |alpha|).

    Args:
        triple: Holomorphic triple with alpha and beta both not identically zero
        mask_radius: Radius of the disks cut out around each zero; defaults to
            MASK_RADIUS_CELLS grid spacings

    Returns:
        LimitingState with h (NaN inside the masks), the gauged sections and
        the weighted zeros

    Raises:
        PreconditionError: if alpha or beta vanishes identically
        ZerosTooCloseError: if two zeros are within 3 mask radii
        AmbiguousWindingError: if a weight cannot be counted reliably
        ConservationError: if the weights do not add up to 2d
    """
    grid = triple.grid
    if triple.alpha_is_zero() or triple.beta_is_zero():
        raise PreconditionError("the simple gauge needs alpha and beta both not identically zero")
    if mask_radius is None:
        mask_radius = resolve(None, 'MASK_RADIUS_CELLS') * grid.spacing
    if mask_radius <= 0:
        raise PreconditionError(f"mask radius must be positive, got {mask_radius}")

    P = triple.alpha_density()
    Q = triple.beta_density()
    located = ([(p, 'alpha') for p in locate_zeros(grid, P)]
               + [(p, 'beta') for p in locate_zeros(grid, Q)])
    _check_separation([p for p, _ in located], mask_radius)

    mask = zero_mask(grid, [p for p, _ in located], mask_radius)
    outside = ~mask
    if np.any(P[outside] == 0.0) or np.any(Q[outside] == 0.0):
        raise InsufficientResolutionError("alpha or beta vanishes away from every located zero")

    gauge = np.full(grid.shape, np.nan)
    gauge[outside] = (Q[outside] / P[outside]) ** 0.25
    alpha = tuple(TwistedField(a.degree, a.values * gauge) for a in triple.alpha)
    beta = tuple(TwistedField(b.degree, b.values / gauge) for b in triple.beta)

    phi, phi_conn = pairing_section(triple)
    zeros = tuple(
        LimitingZero(i, point, zero_winding(phi_conn, phi, point, mask_radius), source)
        for i, (point, source) in enumerate(located)
    )
    state = LimitingState(
        grid=grid,
        gauge=gauge,
        alpha=alpha,
        beta=beta,
        zeros=zeros,
        mask_radius=float(mask_radius),
        mask=mask,
        modulus=(P * Q) ** 0.25,
        d=triple.d,
    )

    defect = state.modulus_defect()
    if defect > BALANCE_TOL:
        raise ConservationError(f"|alpha'| and |beta'| differ by {defect:.3e} outside the masks")
    if state.total_weight != 2 * triple.d:
        raise ConservationError(f"zero weights add up to {state.total_weight}, expected 2d = {2 * triple.d}")
    logger.info(f"Simple gauge: {len(zeros)} zeros with weights {state.weights}, mask radius {mask_radius:.4f}")
    return state
