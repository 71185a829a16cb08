"""
Vanishing exponents of a field modulus at a point.
"""
from typing import Optional, Sequence

import numpy as np
from scipy.ndimage import map_coordinates, spline_filter

from core.exceptions import InsufficientResolutionError, PreconditionError

MIN_RADII = 4
MIN_RADIUS_CELLS = 2
INJECTIVITY_SCALE = 0.25
CIRCLE_SAMPLES = 64


def default_radii(n: int, count: int = 5) -> np.ndarray:
    """Radii between 2.5 and 6 grid spacings."""
    return np.linspace(2.5, 6.0, count) / n


def circle_means(field_modulus, center, radii, samples: int = CIRCLE_SAMPLES) -> np.ndarray:
    """
    Fourth-power mean of a modulus on circles around a point.

    The fourth power of the modulus of a product of sections is smooth where
    the modulus itself has a square-root singularity, so the cubic spline
    interpolation is done on it and the root taken afterwards.
    """
    modulus = np.asarray(field_modulus, dtype=float)
    n = modulus.shape[0]
    coefficients = spline_filter(modulus ** 4, order=3, mode='grid-wrap')
    angles = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    means = []
    for r in radii:
        coords = np.vstack([
            (center[0] + r * np.cos(angles)) * n,
            (center[1] + r * np.sin(angles)) * n,
        ])
        sampled = map_coordinates(coefficients, coords, order=3, mode='grid-wrap', prefilter=False)
        means.append(float(np.mean(np.clip(sampled, 0.0, None))) ** 0.25)
    return np.array(means)


def vanishing_exponent(field_modulus, zero_point, radii: Optional[Sequence[float]] = None) -> float:
    """
    Fitted exponent k in |Psi(x)| ~ dist(x, zero_point)^k.

    Args:
        field_modulus: Pointwise modulus on an n x n grid, finite everywhere
        zero_point: Point (x, y) of the unit torus
        radii: Sampling radii; at least four, each more than two grid
            spacings and below the injectivity scale 0.25

    Returns:
        Least squares slope of log(mean modulus) against log(radius)

    Raises:
        InsufficientResolutionError: if the radii do not resolve the point
    """
    modulus = np.asarray(field_modulus, dtype=float)
    if modulus.ndim != 2 or modulus.shape[0] != modulus.shape[1]:
        raise PreconditionError(f"modulus must be a square grid array, got shape {modulus.shape}")
    if not np.all(np.isfinite(modulus)):
        raise PreconditionError("modulus must be finite everywhere")
    n = modulus.shape[0]
    radii = default_radii(n) if radii is None else np.asarray(radii, dtype=float)

    if radii.size < MIN_RADII:
        raise InsufficientResolutionError(f"insufficient resolution: need {MIN_RADII} radii, got {radii.size}")
    if np.min(radii) <= MIN_RADIUS_CELLS / n or np.max(radii) >= INJECTIVITY_SCALE:
        raise InsufficientResolutionError(
            f"insufficient resolution: radii must lie in ({MIN_RADIUS_CELLS / n:.4f}, {INJECTIVITY_SCALE})"
        )

    means = circle_means(modulus, zero_point, radii)
    if np.min(means) <= 0.0:
        raise InsufficientResolutionError("insufficient resolution: modulus vanishes on a sampling circle")
    slope = np.polyfit(np.log(radii), np.log(means), 1)[0]
    return float(slope)
