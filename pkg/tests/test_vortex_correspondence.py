import json

import pytest
import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError

from core.exceptions import CaseMismatchError, DegreeMismatchError, PreconditionError
from torus_geometry.connection import base_connection, flux, site_curvature
from torus_geometry.fields import TwistedField, zero_field
from torus_geometry.grid import make_grid
from torus_geometry.operators import nyquist_part, spectral_laplacian
from vortex_correspondence.gauge import complex_gauge_apply, unitary_gauge_apply
from vortex_correspondence.hitchin_kobayashi import (
    RESIDUAL_NAMES,
    VortexState,
    continuity_probe,
    degree_identity_defect,
    hk_solve,
    vortex_residual,
)
from vortex_correspondence.triples import HolomorphicTriple, constant_triple, split_theta_triple


@pytest.fixture(scope='module')
def framed_triple():
    """d = 1 with beta = 0 over trivial M."""
    return split_theta_triple(make_grid(32), 0, 1, alpha_zeros=[(0.5, 0.5)])


@pytest.fixture(scope='module')
def solved_m1(theta_triple_m1):
    return hk_solve(theta_triple_m1, 0.0, 1e-8)


@pytest.mark.unit
class TestTriples:

    def test_theta_triple_components(self, theta_triple_m1):
        triple = theta_triple_m1
        assert [s.degree for s in triple.sections] == [1, -1, -1, 1]
        assert triple.pairing_residual() == 0.0
        assert triple.holomorphicity_constant < 1e3

    def test_component_connections_match_theta_classes(self, theta_triple_m1):
        conns = theta_triple_m1.component_connections
        assert [flux(c) for c in conns] == [1, -1, -1, 1]

    def test_pairing_violation(self):
        with pytest.raises(PreconditionError):
            constant_triple(make_grid(16), (1, 0), (1, 0))

    def test_zero_count_must_match(self):
        with pytest.raises(PreconditionError):
            split_theta_triple(make_grid(16), 1, 0, [(0.3, 0.6), (0.1, 0.1)], None)

    def test_background_degree_checked(self):
        grid = make_grid(16)
        fields = (zero_field(16, 0), zero_field(16, 0))
        with pytest.raises(DegreeMismatchError):
            HolomorphicTriple(grid, 1, base_connection(grid, 0), base_connection(grid, 0), fields, fields)


@pytest.mark.unit
class TestResiduals:

    def test_reducible_balance(self):
        grid = make_grid(32)
        conn = base_connection(grid, 2)
        triple = HolomorphicTriple(
            grid, 0, conn, base_connection(grid, 0),
            (zero_field(32, 2), zero_field(32, 2)),
            (zero_field(32, -2), zero_field(32, -2)),
        )
        residuals = vortex_residual(VortexState.from_triple(triple, 2.0))
        assert residuals['curvature'] < 1e-9
        assert set(residuals) == set(RESIDUAL_NAMES)

    def test_noise_breaks_holomorphicity(self, framed_triple, rng):
        alpha1 = framed_triple.alpha[0]
        noise = 1e-3 * (rng.normal(size=alpha1.values.shape) + 1j * rng.normal(size=alpha1.values.shape))
        noisy = framed_triple.replace(alpha=[TwistedField(1, alpha1.values + noise), framed_triple.alpha[1]])
        assert vortex_residual(VortexState.from_triple(noisy, 2.0))['dbar_alpha'] >= 1e-4

    def test_unitary_gauge_invariance(self, solved_m1, rng):
        u = np.exp(1j * rng.uniform(-np.pi, np.pi, size=solved_m1.triple.grid.shape))
        moved = unitary_gauge_apply(u, solved_m1.triple)
        before = vortex_residual(solved_m1)
        after = vortex_residual(VortexState.from_triple(moved, solved_m1.eta_tau))
        for name in RESIDUAL_NAMES:
            assert after[name] == pytest.approx(before[name], abs=1e-10)


@pytest.mark.unit
class TestComplexGauge:

    def test_zero_is_identity(self, theta_triple_m1):
        moved = complex_gauge_apply(np.zeros(theta_triple_m1.grid.shape), theta_triple_m1)
        assert np.array_equal(moved.conn.theta_x, theta_triple_m1.conn.theta_x)
        assert np.array_equal(moved.alpha[0].values, theta_triple_m1.alpha[0].values)

    def test_constant_scales_sections(self, theta_triple_m1):
        c = 0.4
        moved = complex_gauge_apply(np.full(theta_triple_m1.grid.shape, c), theta_triple_m1)
        assert np.allclose(moved.conn.theta_x, theta_triple_m1.conn.theta_x, atol=1e-14)
        assert np.allclose(moved.conn.theta_y, theta_triple_m1.conn.theta_y, atol=1e-14)
        assert np.allclose(moved.alpha[0].values, np.exp(c) * theta_triple_m1.alpha[0].values)
        assert np.allclose(moved.beta[1].values, np.exp(-c) * theta_triple_m1.beta[1].values)

    def test_flux_and_curvature_law(self, theta_triple_m1, random_periodic):
        grid = theta_triple_m1.grid
        f = random_periodic(grid, scale=0.2)
        moved = complex_gauge_apply(f, theta_triple_m1)
        assert flux(moved.conn) == flux(theta_triple_m1.conn)
        shift = site_curvature(moved.conn) - site_curvature(theta_triple_m1.conn)
        expected = spectral_laplacian(grid, f - nyquist_part(grid, f))
        assert np.max(np.abs(shift - expected)) < 1e-8

    def test_rejects_complex_exponent(self, theta_triple_m1):
        with pytest.raises(PreconditionError):
            complex_gauge_apply(1j * np.ones(theta_triple_m1.grid.shape), theta_triple_m1)


@pytest.mark.unit
class TestHitchinKobayashi:

    def test_symmetric_constants(self):
        triple = constant_triple(make_grid(16), (1, 0), (0, 1))
        state = hk_solve(triple, 0.0, 1e-10)
        assert np.max(np.abs(state.f)) <= 1e-12
        assert max(state.residuals.values()) <= 1e-10

    def test_balanced_theta_triple(self, solved_m1):
        grid = solved_m1.triple.grid
        norm_alpha = grid.integrate(solved_m1.triple.alpha_density())
        norm_beta = grid.integrate(solved_m1.triple.beta_density())
        assert abs(norm_alpha - norm_beta) <= 1e-8
        assert degree_identity_defect(solved_m1) <= 1e-8
        assert solved_m1.within_contract()

    def test_residuals_at_floor(self, solved_m1):
        bounds = solved_m1.contract_bounds()
        assert solved_m1.residuals['curvature'] <= bounds['curvature']
        assert solved_m1.residuals['pairing'] == 0.0

    def test_framed_vortex(self, framed_triple):
        state = hk_solve(framed_triple, 2.0, 1e-8)
        grid = framed_triple.grid
        assert grid.integrate(state.triple.alpha_density()) == pytest.approx(2 * np.pi, abs=1e-8)
        assert state.triple.beta_is_zero()
        assert state.within_contract()

    def test_idempotence(self, solved_m1):
        again = hk_solve(solved_m1.triple, solved_m1.eta_tau, 1e-8)
        assert np.max(np.abs(again.f)) <= 10 * 1e-8

    def test_beta_side_of_the_wall(self):
        triple = split_theta_triple(make_grid(32), 0, -1, beta_zeros=[(0.25, 0.75)])
        state = hk_solve(triple, -2.0, 1e-8)
        grid = triple.grid
        assert grid.integrate(state.triple.beta_density()) == pytest.approx(2 * np.pi, abs=1e-8)

    def test_unbalanced_start_is_pre_gauged(self, theta_triple_m1):
        # alpha carries less mass than beta, so the solve needs the e^C shift first
        weak = theta_triple_m1.replace(alpha=[a.scaled(0.1) for a in theta_triple_m1.alpha])
        state = hk_solve(weak, 0.5, 1e-8)
        assert degree_identity_defect(state) <= 1e-8

    @pytest.mark.parametrize('gap', [1e-9, 1e-11])
    def test_framed_vortex_just_off_the_wall(self, framed_triple, gap):
        state = hk_solve(framed_triple, 1.0 + gap, 1e-8)
        grid = framed_triple.grid
        assert state.kw.case_tag == 'lemma'
        assert grid.integrate(state.triple.alpha_density()) == pytest.approx(2 * np.pi * gap, abs=1e-8)
        assert degree_identity_defect(state) <= 1e-8

    def test_beta_side_just_off_the_wall(self):
        triple = split_theta_triple(make_grid(32), 0, -1, beta_zeros=[(0.25, 0.75)])
        state = hk_solve(triple, -1.0 - 1e-11, 1e-8)
        assert state.triple.alpha_is_zero()
        assert degree_identity_defect(state) <= 1e-8

    def test_case_mismatch(self, framed_triple):
        with pytest.raises(CaseMismatchError):
            hk_solve(framed_triple, 0.0, 1e-8)

    def test_wall_needs_both(self, framed_triple):
        with pytest.raises(CaseMismatchError):
            hk_solve(framed_triple, 1.0, 1e-8)

    def test_orbit_consistency(self, theta_triple_m1):
        report = continuity_probe(theta_triple_m1, 0.0, 0.1)
        assert report.largest <= 1e-8


@pytest.mark.integration
class TestVortexCommand:

    def test_constant_triple_file(self, tmp_path):
        spec = tmp_path / 'triple.json'
        spec.write_text(json.dumps({'kind': 'constant', 'n': 16, 'alpha': [[1, 0], [0, 0]], 'beta': [[0, 0], [1, 0]]}))
        out = tmp_path / 'state.json'
        call_command('vortex', 'hk', '--triple', str(spec), '--tau', '0', '--tol', '1e-8', '--out', str(out))
        data = json.loads(out.read_text())
        assert data['within_contract'] is True
        assert data['degree_identity_defect'] <= 1e-8
        assert set(data['residuals']) == set(RESIDUAL_NAMES)

    def test_missing_triple_file(self, tmp_path):
        with pytest.raises(CommandError) as excinfo:
            call_command('vortex', 'hk', '--triple', str(tmp_path / 'absent.json'), '--tau', '0')
        assert excinfo.value.returncode == 2

    def test_case_mismatch_exits_one(self, tmp_path):
        spec = tmp_path / 'triple.json'
        spec.write_text(json.dumps({'kind': 'theta', 'n': 16, 'm': 0, 'd': 1, 'alpha_zeros': [[0.5, 0.5]]}))
        with pytest.raises(CommandError) as excinfo:
            call_command('vortex', 'hk', '--triple', str(spec), '--tau', '0')
        assert excinfo.value.returncode == 1
