"""
Unitary connections on lattice line bundles.

Links carry real angles theta; the phase exp(i theta_x[j, k]) transports
from site (j+1, k) to (j, k) and exp(i theta_y[j, k]) from (j, k+1) to (j, k).
"""
import logging
from dataclasses import dataclass

import numpy as np

from core.exceptions import NonQuantizedFluxError, PreconditionError
from .grid import TorusGrid

logger = logging.getLogger(__name__)

# Flux quantization thresholds on the pre-rounding value
FLUX_WARN_DEVIATION = 1e-10
FLUX_FAIL_DEVIATION = 1e-8


@dataclass(frozen=True, eq=False)
class LatticeConnection:
    grid: TorusGrid
    degree: int
    theta_x: np.ndarray
    theta_y: np.ndarray
    jacobian_class: tuple = (0.0, 0.0)

    @property
    def link_phase_x(self) -> np.ndarray:
        return np.exp(1j * self.theta_x)

    @property
    def link_phase_y(self) -> np.ndarray:
        return np.exp(1j * self.theta_y)

    def __neg__(self) -> 'LatticeConnection':
        """Connection on the dual bundle."""
        cx, cy = self.jacobian_class
        return LatticeConnection(self.grid, -self.degree, -self.theta_x, -self.theta_y, (-cx, -cy))

    def __add__(self, other: 'LatticeConnection') -> 'LatticeConnection':
        """Connection on the tensor product bundle."""
        if other.grid.n != self.grid.n:
            raise PreconditionError("connections live on different grids")
        cls = (self.jacobian_class[0] + other.jacobian_class[0],
               self.jacobian_class[1] + other.jacobian_class[1])
        return LatticeConnection(
            self.grid,
            self.degree + other.degree,
            self.theta_x + other.theta_x,
            self.theta_y + other.theta_y,
            cls,
        )

    def __sub__(self, other: 'LatticeConnection') -> 'LatticeConnection':
        return self + (-other)

    def scaled(self, k: int) -> 'LatticeConnection':
        """Connection on the k-th tensor power."""
        cx, cy = self.jacobian_class
        return LatticeConnection(self.grid, k * self.degree, k * self.theta_x, k * self.theta_y, (k * cx, k * cy))

    def with_angles(self, theta_x, theta_y) -> 'LatticeConnection':
        return LatticeConnection(self.grid, self.degree, theta_x, theta_y, self.jacobian_class)


def base_connection(grid: TorusGrid, d: int, jacobian_class=(0.0, 0.0)) -> LatticeConnection:
    """
    Constant-curvature connection of degree d, optionally shifted by a flat
    Jacobian class (c_x, c_y).

    Args:
        grid: Torus grid
        d: Bundle degree
        jacobian_class: Flat part, added as angles 2 pi c h on every link

    Returns:
        LatticeConnection whose plaquette angles all equal -2 pi d / n^2
    """
    n = grid.n
    h = grid.spacing
    j = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    theta_x = 2 * np.pi * d * np.broadcast_to(k, (n, n)) / n ** 2
    theta_y = np.zeros((n, n))
    # Seam links realise the wrap rule exp(-2 pi i d x)
    theta_y[:, n - 1] = -2 * np.pi * d * j[:, 0] / n

    cx, cy = float(jacobian_class[0]), float(jacobian_class[1])
    theta_x = theta_x + 2 * np.pi * cx * h
    theta_y = theta_y + 2 * np.pi * cy * h
    return LatticeConnection(grid, int(d), np.array(theta_x, dtype=float), theta_y, (cx, cy))


def plaquette_angles(conn: LatticeConnection) -> np.ndarray:
    """Principal holonomy angle of every plaquette, counter-clockwise from its lower-left site."""
    raw = (conn.theta_x
           + np.roll(conn.theta_y, -1, axis=0)
           - np.roll(conn.theta_x, -1, axis=1)
           - conn.theta_y)
    return np.angle(np.exp(1j * raw))


def flux_value(conn: LatticeConnection) -> float:
    """Total plaquette angle divided by -2 pi, before rounding."""
    return float(np.sum(plaquette_angles(conn)) / (-2 * np.pi))


def flux_deviation(conn: LatticeConnection) -> float:
    value = flux_value(conn)
    return abs(value - round(value))


def flux(conn: LatticeConnection) -> int:
    """
    Integer flux of a lattice connection.

    Returns:
        The rounded value of the total plaquette angle over -2 pi

    Raises:
        NonQuantizedFluxError: if the pre-rounding value is off an integer by more than 1e-8
    """
    value = flux_value(conn)
    if not np.isfinite(value):
        raise NonQuantizedFluxError(f"non-finite flux value {value!r}")
    rounded = round(value)
    deviation = abs(value - rounded)
    if deviation > FLUX_FAIL_DEVIATION:
        raise NonQuantizedFluxError(f"non-quantized flux: {value!r} is {deviation:.3e} from an integer")
    if deviation > FLUX_WARN_DEVIATION:
        logger.warning(f"Flux deviation {deviation:.3e} exceeds {FLUX_WARN_DEVIATION:.0e}")
    return int(rounded)


def curvature_density(conn: LatticeConnection) -> np.ndarray:
    """i*F at plaquette centres; integrates to 2 pi times the degree."""
    return -plaquette_angles(conn) / conn.grid.spacing ** 2


def site_curvature(conn: LatticeConnection) -> np.ndarray:
    """i*F interpolated spectrally from plaquette centres to sites, Nyquist modes removed."""
    spectrum = np.fft.fft2(curvature_density(conn)) * conn.grid.half_cell_shift
    return np.real(np.fft.ifft2(spectrum))


def gauge_transform(conn: LatticeConnection, u) -> LatticeConnection:
    """
    Apply a unit-modulus degree-0 gauge transformation u to the links.
    Sections transform as psi -> u psi.
    """
    u = np.asarray(u, dtype=complex)
    if np.max(np.abs(np.abs(u) - 1.0)) > 1e-12:
        raise PreconditionError("gauge transformation must have unit modulus")
    chi = np.angle(u)
    theta_x = conn.theta_x + chi - np.roll(chi, -1, axis=0)
    theta_y = conn.theta_y + chi - np.roll(chi, -1, axis=1)
    return conn.with_angles(theta_x, theta_y)
