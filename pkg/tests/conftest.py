"""Configuration file for pytest fixtures that can be shared across test files."""

import pytest
import os
import django
from django.conf import settings

# Set up Django environment
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'vortexlab.settings')
django.setup()

# Import after Django setup
import numpy as np

from core.utils.numerics import seeded_rng
from torus_geometry.grid import make_grid
from torus_geometry.theta import ThetaSpec, theta_section


@pytest.fixture(scope='session')
def django_db_setup(django_db_blocker):
    """Configure the Django DB for the test session."""
    settings.DATABASES['default'] = {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
    from django.core.management import call_command
    from django.db import connections
    connections['default'].settings_dict.update(settings.DATABASES['default'])
    connections['default'].close()
    with django_db_blocker.unblock():
        call_command('migrate', verbosity=0)


@pytest.fixture
def rng():
    """Generator seeded from VORTEXLAB_SEED so every run sees the same draws."""
    return seeded_rng()


@pytest.fixture
def grid32():
    return make_grid(32)


@pytest.fixture
def grid64():
    return make_grid(64)


@pytest.fixture
def theta_pair():
    """Return a factory for (section, connection) on a fresh grid."""
    def _theta_pair(n, zero_points, truncation=None):
        grid = make_grid(n)
        spec = ThetaSpec(len(zero_points), list(zero_points), truncation)
        section, conn = theta_section(grid, spec)
        return grid, section, conn
    return _theta_pair


@pytest.fixture
def random_periodic(rng):
    """Return a factory for smooth real periodic test functions built from a few low modes."""
    def _random_periodic(grid, modes=3, scale=1.0):
        values = np.zeros(grid.shape)
        for p in range(-modes, modes + 1):
            for q in range(-modes, modes + 1):
                a, b = rng.normal(size=2) / (1 + p * p + q * q)
                phase = 2 * np.pi * (p * grid.X + q * grid.Y)
                values += a * np.cos(phase) + b * np.sin(phase)
        return scale * values
    return _random_periodic


@pytest.fixture(scope='session')
def manufactured_kw():
    """Kazdan-Warner problem on n = 64 with its known solution f*."""
    from kazdan_warner.problem import manufactured_problem
    return manufactured_problem(make_grid(64))


@pytest.fixture(scope='session')
def theta_triple_m1():
    """m = 1, d = 0 triple alpha = (theta_a, 0), beta = (0, theta_b) on n = 32."""
    from vortex_correspondence.triples import split_theta_triple
    return split_theta_triple(make_grid(32), 1, 0, [(0.3, 0.6)], [(0.7, 0.2)])
