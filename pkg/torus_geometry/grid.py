"""
Uniform sampling of the square torus R^2/Z^2 with its operator tables.
"""
from dataclasses import dataclass, field

import numpy as np

from core.exceptions import GridSizeError


@dataclass(frozen=True, eq=False)
class TorusGrid:
    """
    N x N grid of the unit square torus. Site (j, k) sits at (j/n, k/n) and
    every array on the grid is indexed [j, k].
    """
    n: int
    x: np.ndarray = field(init=False, repr=False)
    X: np.ndarray = field(init=False, repr=False)
    Y: np.ndarray = field(init=False, repr=False)
    wavenumbers: np.ndarray = field(init=False, repr=False)
    laplacian_symbol: np.ndarray = field(init=False, repr=False)
    half_cell_shift: np.ndarray = field(init=False, repr=False)
    nyquist_mask: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = self.n
        x = np.arange(n) / n
        X, Y = np.meshgrid(x, x, indexing='ij')
        p = np.fft.fftfreq(n, d=1.0 / n)
        P, Q = np.meshgrid(p, p, indexing='ij')
        nyquist = (P == -n // 2) | (Q == -n // 2)
        phi_p = 2 * np.pi * P / n
        phi_q = 2 * np.pi * Q / n

        # Plaquette centres sit half a cell up and right of their site
        shift = np.exp(-0.5j * phi_p) * np.exp(-0.5j * phi_q)
        shift[nyquist] = 0.0

        object.__setattr__(self, 'x', x)
        object.__setattr__(self, 'X', X)
        object.__setattr__(self, 'Y', Y)
        object.__setattr__(self, 'wavenumbers', (P, Q))
        object.__setattr__(self, 'laplacian_symbol', 4 * np.pi ** 2 * (P ** 2 + Q ** 2))
        object.__setattr__(self, 'half_cell_shift', shift)
        object.__setattr__(self, 'nyquist_mask', nyquist)

    @property
    def spacing(self) -> float:
        return 1.0 / self.n

    @property
    def area_element(self) -> float:
        return 1.0 / self.n ** 2

    @property
    def sites(self) -> int:
        return self.n * self.n

    @property
    def shape(self):
        return (self.n, self.n)

    def integrate(self, values) -> complex:
        """Riemann sum of a grid array against the area element."""
        return np.sum(values) * self.area_element

    def nearest_site(self, point):
        """Index pair of the site closest to a torus point."""
        j = int(np.round(point[0] * self.n)) % self.n
        k = int(np.round(point[1] * self.n)) % self.n
        return j, k

    def torus_offsets(self, point):
        """Signed shortest displacement (dx, dy) from point to every site."""
        dx = self.X - point[0]
        dy = self.Y - point[1]
        return dx - np.round(dx), dy - np.round(dy)


def make_grid(n) -> TorusGrid:
    """
    Build a torus grid with its spectral and stencil tables.

    Args:
        n: Grid points per side; even and at least 8 so the spectral
           Laplacian has a well-defined Nyquist row

    Returns:
        TorusGrid instance
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 8 or n % 2:
        raise GridSizeError(f"grid size must be even ≥ 8, got {n!r}")
    return TorusGrid(int(n))
