import numpy as np

from core.conf import numerics


def sup_norm(values) -> float:
    """Largest absolute entry of an array (0.0 for empty input)."""
    values = np.asarray(values)
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(values)))


def torus_distance(p, q) -> float:
    """
    Distance between two points of the unit square torus.

    Args:
        p, q: Pairs (x, y), coordinates taken modulo 1

    Returns:
        Length of the shortest representative of p - q
    """
    delta = np.asarray(p, dtype=float) - np.asarray(q, dtype=float)
    delta = delta - np.round(delta)
    return float(np.hypot(delta[0], delta[1]))


def seeded_rng(seed=None) -> np.random.Generator:
    """Random generator seeded from VORTEXLAB_SEED unless a seed is given."""
    return np.random.default_rng(numerics('SEED') if seed is None else seed)
