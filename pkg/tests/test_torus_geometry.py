import pytest
import numpy as np

from core.exceptions import (
    CoincidentZerosError,
    DegreeMismatchError,
    GridSizeError,
    NonQuantizedFluxError,
    PreconditionError,
)
from torus_geometry.blob import HEADER, decode_field, encode_field, field_from_base64, field_to_base64
from torus_geometry.connection import (
    base_connection,
    curvature_density,
    flux,
    gauge_transform,
    plaquette_angles,
    site_curvature,
)
from torus_geometry.fields import TwistedField, constant_field
from torus_geometry.grid import make_grid
from torus_geometry.operators import (
    dbar,
    laplacian,
    solve_poisson,
    spectral_laplacian,
    two_grid_dbar,
)
from torus_geometry.serializers import FieldRecordSerializer, field_record
from torus_geometry.theta import ThetaSpec, jacobi_theta1, theta_section


@pytest.mark.unit
class TestGrid:

    @pytest.mark.parametrize('n', [8, 16, 64])
    def test_valid_sizes(self, n):
        grid = make_grid(n)
        assert grid.shape == (n, n)
        assert grid.spacing == pytest.approx(1.0 / n)
        assert grid.X[1, 0] == pytest.approx(1.0 / n)
        assert grid.Y[0, 1] == pytest.approx(1.0 / n)

    @pytest.mark.parametrize('n', [7, 6, 0, 33, 2.0, True])
    def test_rejected_sizes(self, n):
        with pytest.raises(GridSizeError):
            make_grid(n)

    def test_integrate_constant(self, grid32):
        assert grid32.integrate(np.ones(grid32.shape)) == pytest.approx(1.0)

    def test_nearest_site_wraps(self, grid32):
        assert grid32.nearest_site((0.999, 0.5)) == (0, 16)


@pytest.mark.unit
class TestConnection:

    @pytest.mark.parametrize('d', [0, 1, -3, 5])
    def test_base_connection_flux(self, grid32, d):
        conn = base_connection(grid32, d)
        assert flux(conn) == d
        assert np.allclose(plaquette_angles(conn), -2 * np.pi * d / 32 ** 2, atol=1e-12)

    def test_flat_class_does_not_change_curvature(self, grid32):
        conn = base_connection(grid32, 2, (0.3, -0.7))
        assert flux(conn) == 2
        assert np.allclose(curvature_density(conn), 4 * np.pi, atol=1e-9)

    def test_single_link_perturbation_keeps_flux(self, grid32):
        conn = base_connection(grid32, 0)
        theta_x = conn.theta_x.copy()
        theta_x[3, 5] += 0.3
        assert flux(conn.with_angles(theta_x, conn.theta_y)) == 0

    def test_site_curvature_of_constant_connection(self, grid32):
        conn = base_connection(grid32, -2)
        assert np.allclose(site_curvature(conn), -4 * np.pi, atol=1e-9)

    def test_curvature_integrates_to_degree(self, grid32, rng):
        conn = base_connection(grid32, 3)
        chi = rng.uniform(-np.pi, np.pi, size=grid32.shape)
        bumped = conn.with_angles(conn.theta_x + 0.05 * chi, conn.theta_y)
        total = grid32.integrate(curvature_density(bumped))
        assert total == pytest.approx(2 * np.pi * 3, abs=1e-9)

    def test_tensor_operations(self, grid32):
        a = base_connection(grid32, 2, (0.1, 0.2))
        b = base_connection(grid32, 1, (0.3, 0.0))
        assert (a + b).degree == 3
        assert (a - b).jacobian_class == pytest.approx((-0.2, 0.2))
        assert flux(a.scaled(2)) == 4
        assert flux(-a) == -2

    def test_gauge_transform_rejects_non_unitary(self, grid32):
        conn = base_connection(grid32, 1)
        with pytest.raises(PreconditionError):
            gauge_transform(conn, 2 * np.ones(grid32.shape))

    def test_gauge_transform_keeps_curvature(self, grid32, rng):
        conn = base_connection(grid32, 1)
        u = np.exp(1j * rng.uniform(-np.pi, np.pi, size=grid32.shape))
        moved = gauge_transform(conn, u)
        assert np.allclose(plaquette_angles(moved), plaquette_angles(conn), atol=1e-12)

    def test_off_integer_flux_is_rejected(self, grid32, monkeypatch):
        conn = base_connection(grid32, 1)
        monkeypatch.setattr(
            "torus_geometry.connection.plaquette_angles",
            lambda c: np.full(c.grid.shape, -np.pi / c.grid.sites),
        )
        with pytest.raises(NonQuantizedFluxError):
            flux(conn)

    def test_non_finite_flux_is_rejected(self, grid32):
        conn = base_connection(grid32, 0)
        theta_x = conn.theta_x.copy()
        theta_x[0, 0] = np.nan
        with pytest.raises(NonQuantizedFluxError):
            flux(conn.with_angles(theta_x, conn.theta_y))


@pytest.mark.unit
class TestTheta:

    def test_single_zero_location(self, theta_pair):
        grid, section, _ = theta_pair(64, [(0.5, 0.5)])
        j, k = np.unravel_index(np.argmin(section.modulus()), grid.shape)
        assert (j, k) == (32, 32)
        assert section.l2_norm() == pytest.approx(1.0)

    def test_two_zeros_vanish_at_sites(self, theta_pair):
        grid, section, conn = theta_pair(64, [(0.25, 0.25), (0.75, 0.75)])
        peak = section.sup_norm()
        assert section.modulus()[16, 16] < 1e-10 * peak
        assert section.modulus()[48, 48] < 1e-10 * peak
        assert conn.degree == 2
        assert flux(conn) == 2

    def test_jacobian_class_from_zero_sum(self):
        spec = ThetaSpec(2, [(0.25, 0.25), (0.75, 0.75)])
        assert spec.jacobian_class == pytest.approx((0.0, 2.0))

    def test_truncation_independence(self, theta_pair):
        _, low, _ = theta_pair(32, [(0.3, 0.6)], truncation=6)
        _, high, _ = theta_pair(32, [(0.3, 0.6)], truncation=12)
        assert np.max(np.abs(low.values - high.values)) < 1e-10

    def test_theta1_is_odd(self):
        w = np.array([0.1 + 0.2j, -0.37 + 0.05j])
        assert np.allclose(jacobi_theta1(-w, 8), -jacobi_theta1(w, 8), atol=1e-13)

    def test_truncation_floor(self):
        with pytest.raises(PreconditionError):
            theta_section(make_grid(16), ThetaSpec(1, [(0.5, 0.5)], truncation=4))

    def test_coincident_zeros(self):
        with pytest.raises(CoincidentZerosError):
            theta_section(make_grid(32), ThetaSpec(2, [(0.5, 0.5), (0.5, 0.51)]))

    def test_zero_count_must_match_degree(self):
        with pytest.raises(PreconditionError):
            ThetaSpec(2, [(0.5, 0.5)])


@pytest.mark.unit
class TestOperators:

    def test_dbar_of_constant_vanishes(self, grid32):
        conn = base_connection(grid32, 0)
        result = dbar(grid32, conn, constant_field(32, 1.0 + 2.0j))
        assert result.sup_norm() < 1e-12

    def test_dbar_degree_mismatch(self, grid32):
        conn = base_connection(grid32, 1)
        with pytest.raises(DegreeMismatchError):
            dbar(grid32, conn, constant_field(32, 1.0))

    def test_plane_wave_accuracy(self, grid64):
        conn = base_connection(grid64, 0)
        wave = np.exp(2j * np.pi * (grid64.X + 2 * grid64.Y))
        exact = (np.pi * 1j - 2 * np.pi) * wave
        result = dbar(grid64, conn, TwistedField(0, wave))
        assert np.max(np.abs(result.values - exact)) < 1e-2 * np.max(np.abs(exact))

    def test_theta_section_is_holomorphic_to_second_order(self, theta_pair):
        residuals = []
        for n in (32, 64):
            grid, section, conn = theta_pair(n, [(0.3, 0.6), (0.7, 0.2)])
            residuals.append(dbar(grid, conn, section).sup_norm())
        assert 3.0 < residuals[0] / residuals[1] < 5.0

    def test_two_grid_estimate_quadruples(self, theta_pair):
        grid, section, conn = theta_pair(64, [(0.4, 0.45)])
        fine = dbar(grid, conn, section).sup_norm()
        coarse = two_grid_dbar(grid, conn, section).sup_norm()
        assert 3.0 < coarse / fine < 5.0

    def test_gauge_covariance(self, theta_pair, rng):
        grid, section, conn = theta_pair(32, [(0.5, 0.5)])
        u = np.exp(1j * rng.uniform(-np.pi, np.pi, size=grid.shape))
        moved = dbar(grid, gauge_transform(conn, u), section.scaled(u))
        assert np.allclose(moved.values, u * dbar(grid, conn, section).values, atol=1e-10)

    def test_laplacian_eigenfunction(self, grid32):
        f = np.cos(2 * np.pi * grid32.X) * np.cos(4 * np.pi * grid32.Y)
        assert np.allclose(spectral_laplacian(grid32, f), 20 * np.pi ** 2 * f, atol=1e-9)

    def test_laplacian_kernel_and_mean(self, grid32, random_periodic):
        assert np.allclose(spectral_laplacian(grid32, np.full(grid32.shape, 3.0)), 0.0, atol=1e-10)
        f = random_periodic(grid32)
        assert grid32.integrate(spectral_laplacian(grid32, f)) == pytest.approx(0.0, abs=1e-10)

    def test_laplacian_self_adjoint(self, grid32, random_periodic):
        f, g = random_periodic(grid32), random_periodic(grid32)
        left = grid32.integrate(spectral_laplacian(grid32, f) * g)
        right = grid32.integrate(f * spectral_laplacian(grid32, g))
        assert left == pytest.approx(right, rel=1e-10, abs=1e-10)

    def test_poisson_inverts_laplacian(self, grid32, random_periodic):
        f = random_periodic(grid32)
        f = f - f.mean()
        assert np.allclose(solve_poisson(grid32, spectral_laplacian(grid32, f)), f, atol=1e-10)

    def test_laplacian_requires_degree_zero(self, grid32):
        with pytest.raises(DegreeMismatchError):
            laplacian(grid32, constant_field(32, 1.0, degree=1))


@pytest.mark.unit
class TestBlob:

    def test_header_layout(self, theta_pair):
        _, section, _ = theta_pair(16, [(0.5, 0.5)])
        blob = encode_field(section)
        assert len(blob) == 8 + 16 * 16 * 16
        assert HEADER.unpack_from(blob) == (16, 1)
        assert blob[:4] == (16).to_bytes(4, 'little')

    def test_negative_degree_header(self):
        blob = encode_field(constant_field(8, 1.0, degree=-3))
        assert HEADER.unpack_from(blob) == (8, -3)
        assert decode_field(blob).degree == -3

    def test_truncated_blob(self):
        blob = encode_field(constant_field(8, 1.0))
        with pytest.raises(PreconditionError):
            decode_field(blob[:-16])

    def test_base64_rejects_garbage(self):
        with pytest.raises(PreconditionError):
            field_from_base64('not base64!!')

    def test_field_record_validates(self, theta_pair):
        _, section, _ = theta_pair(16, [(0.5, 0.5)])
        record = field_record(section, provenance='theta')
        serializer = FieldRecordSerializer(data=dict(record))
        assert serializer.is_valid(), serializer.errors
        assert np.array_equal(serializer.validated_data['blob'].values, section.values)

    def test_field_record_header_mismatch(self, theta_pair):
        _, section, _ = theta_pair(16, [(0.5, 0.5)])
        record = dict(field_record(section))
        record['degree'] = 2
        serializer = FieldRecordSerializer(data=record)
        assert not serializer.is_valid()
        assert field_to_base64(section) == record['blob']
