"""
Complex and unitary gauge actions on triples.

A real function f acts by alpha -> e^f alpha, beta -> e^-f beta and moves
the connection of L by the real 1-form (-d_y f) dx + (d_x f) dy. The link
update is evaluated spectrally at link midpoints with the finite-difference
symbol correction, so the site curvature moves by exactly the spectral
Laplacian of f away from the Nyquist modes.
"""
import numpy as np

from core.exceptions import PreconditionError
from torus_geometry.connection import LatticeConnection, gauge_transform
from torus_geometry.grid import TorusGrid
from .triples import HolomorphicTriple


def _midpoint_correction(phi):
    """(phi/2) / sin(phi/2), equal to 1 at phi = 0."""
    half = 0.5 * phi
    safe = np.where(half == 0.0, 1.0, half)
    return np.where(half == 0.0, 1.0, safe / np.sin(safe))


def link_update(grid: TorusGrid, f) -> tuple:
    """Angle increments (d theta_x, d theta_y) produced by the real gauge function f."""
    n = grid.n
    h = grid.spacing
    P, Q = grid.wavenumbers
    phi_p = 2 * np.pi * P / n
    phi_q = 2 * np.pi * Q / n
    spectrum = np.fft.fft2(f)
    spectrum[grid.nyquist_mask] = 0.0

    dx = np.exp(0.5j * phi_p) * (2j * np.pi * Q) * _midpoint_correction(phi_q)
    dy = np.exp(0.5j * phi_q) * (2j * np.pi * P) * _midpoint_correction(phi_p)
    delta_x = -h * np.real(np.fft.ifft2(spectrum * dx))
    delta_y = h * np.real(np.fft.ifft2(spectrum * dy))
    return delta_x, delta_y


def complex_gauge_connection(conn: LatticeConnection, f) -> LatticeConnection:
    delta_x, delta_y = link_update(conn.grid, f)
    return conn.with_angles(conn.theta_x + delta_x, conn.theta_y + delta_y)


def complex_gauge_apply(f, triple: HolomorphicTriple) -> HolomorphicTriple:
    """
    Act on a triple by the complex gauge transformation e^f.

    Args:
        f: Real grid array (degree-0 field)
        triple: HolomorphicTriple

    Returns:
        The transformed triple; flux and the alpha beta pairing are unchanged
    """
    f = np.asarray(f)
    if np.iscomplexobj(f):
        if np.max(np.abs(f.imag)) > 1e-12:
            raise PreconditionError("complex gauge function must be real")
        f = f.real
    if f.shape != triple.grid.shape:
        raise PreconditionError(f"gauge function has shape {f.shape}, grid is {triple.grid.shape}")

    grow, shrink = np.exp(f), np.exp(-f)
    return triple.replace(
        conn=complex_gauge_connection(triple.conn, f),
        alpha=[a.scaled(grow) for a in triple.alpha],
        beta=[b.scaled(shrink) for b in triple.beta],
    )


def unitary_gauge_apply(u, triple: HolomorphicTriple) -> HolomorphicTriple:
    """Unit-modulus gauge transformation of L: alpha -> u alpha, beta -> conj(u) beta."""
    u = np.asarray(u, dtype=complex)
    return triple.replace(
        conn=gauge_transform(triple.conn, u),
        alpha=[a.scaled(u) for a in triple.alpha],
        beta=[b.scaled(np.conj(u)) for b in triple.beta],
    )
