"""
Access to the numerical defaults declared in settings.VORTEXLAB.
"""
from django.conf import settings


def numerics(key):
    """
    Return one numerical default.

    Args:
        key: Name in the VORTEXLAB settings dict (e.g. 'RANK_TOL')

    Returns:
        The configured value
    """
    return settings.VORTEXLAB[key]


def resolve(value, key):
    """Return value unless it is None, in which case the configured default."""
    return numerics(key) if value is None else value
