import json

import pytest
import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError

from core.exceptions import HypothesesViolatedError, PreconditionError, StalledError
from kazdan_warner.problem import KWProblem, LEMMA, REMARK
from kazdan_warner.serializers import KWProblemSerializer, problem_record
from kazdan_warner.solver import kw_bracket, kw_verify, solve_kw
from torus_geometry.blob import decode_field
from torus_geometry.grid import make_grid


def remark_problem(grid):
    """Zero-mean w with P and Q of unequal mass."""
    X, Y = grid.X, grid.Y
    P = 1.5 + np.cos(2 * np.pi * X)
    Q = 0.4 + 0.2 * np.sin(2 * np.pi * Y) ** 2
    w = np.sin(2 * np.pi * X) * np.cos(4 * np.pi * Y) + 0.5 * np.cos(2 * np.pi * (X + Y))
    return KWProblem(grid, P, Q, w)


@pytest.mark.unit
class TestProblem:

    def test_case_inference(self, grid32, manufactured_kw):
        problem, _ = manufactured_kw
        assert problem.case_tag == LEMMA
        ones = np.ones(grid32.shape)
        assert KWProblem(grid32, ones, ones, 0 * ones).case_tag == REMARK

    def test_negative_weight(self, grid32):
        P = np.ones(grid32.shape)
        P[0, 0] = -1e-3
        with pytest.raises(HypothesesViolatedError):
            KWProblem(grid32, P, np.ones(grid32.shape), np.zeros(grid32.shape))

    def test_inconsistent_tag(self, grid32):
        ones = np.ones(grid32.shape)
        with pytest.raises(HypothesesViolatedError):
            KWProblem(grid32, ones, ones, 0 * ones, case_tag=LEMMA)

    def test_no_regime(self, grid32):
        ones = np.ones(grid32.shape)
        with pytest.raises(HypothesesViolatedError):
            KWProblem(grid32, ones, 2 * ones, ones)

    def test_remark_needs_both_weights(self, grid32):
        ones = np.ones(grid32.shape)
        with pytest.raises(HypothesesViolatedError):
            KWProblem(grid32, ones, 0 * ones, 0 * ones)

    def test_explicit_lemma_tag_with_tiny_integral(self, grid32):
        ones = np.ones(grid32.shape)
        with pytest.raises(HypothesesViolatedError):
            KWProblem(grid32, ones, 0 * ones, 1e-11 * ones)
        problem = KWProblem(grid32, ones, 0 * ones, 1e-11 * ones, case_tag=LEMMA)
        assert problem.case_tag == LEMMA
        with pytest.raises(HypothesesViolatedError):
            KWProblem(grid32, ones, 0 * ones, -1e-11 * ones, case_tag=LEMMA)

    def test_shape_mismatch(self, grid32):
        with pytest.raises(PreconditionError):
            KWProblem(grid32, np.ones((16, 16)), np.ones(grid32.shape), np.zeros(grid32.shape))


@pytest.mark.unit
class TestVerify:

    def test_symmetric_fixed_point(self, grid32):
        ones = np.ones(grid32.shape)
        assert kw_verify(KWProblem(grid32, ones, ones, 0 * ones), 0 * ones) == 0.0

    def test_manufactured_residual(self, manufactured_kw):
        problem, f_star = manufactured_kw
        assert kw_verify(problem, f_star) <= 1e-12
        assert kw_verify(problem, f_star + 0.1) >= 1e-3

    def test_shape_check(self, manufactured_kw):
        problem, _ = manufactured_kw
        with pytest.raises(PreconditionError):
            kw_verify(problem, np.zeros((8, 8)))


@pytest.mark.unit
class TestSolver:

    def test_symmetric_problem_converges_immediately(self, grid32):
        ones = np.ones(grid32.shape)
        solution = solve_kw(KWProblem(grid32, ones, ones, 0 * ones), 1e-10)
        assert np.max(np.abs(solution.f)) == 0.0
        assert solution.newton_iters == 1
        assert solution.damping_events == 0

    def test_manufactured_solution(self, manufactured_kw):
        problem, f_star = manufactured_kw
        solution = solve_kw(problem, 1e-10)
        assert solution.residual_linf <= 1e-10
        assert np.max(np.abs(solution.f - f_star)) <= 1e-9

    def test_uniqueness_from_two_starts(self, manufactured_kw):
        problem, f_star = manufactured_kw
        cold = solve_kw(problem, 1e-10, initial=np.zeros(problem.grid.shape))
        warm = solve_kw(problem, 1e-10, initial=f_star + 1.0)
        assert np.max(np.abs(cold.f - warm.f)) <= 1e-9

    def test_remark_case_residual_and_bracket(self, grid32):
        problem = remark_problem(grid32)
        assert problem.case_tag == REMARK
        solution = solve_kw(problem, 1e-10)
        assert kw_verify(problem, solution.f) <= 1e-10
        lower, upper = kw_bracket(problem)
        assert np.all(lower - 1e-6 <= solution.f)
        assert np.all(solution.f <= upper + 1e-6)

    def test_remark_shift(self, grid32):
        problem = remark_problem(grid32)
        expected = 0.25 * np.log(grid32.integrate(problem.Q) / grid32.integrate(problem.P))
        assert problem.normalization_shift() == pytest.approx(expected)
        assert solve_kw(problem, 1e-10).shift == pytest.approx(expected)

    def test_bracket_is_remark_only(self, manufactured_kw):
        problem, _ = manufactured_kw
        with pytest.raises(HypothesesViolatedError):
            kw_bracket(problem)

    def test_translation_covariance(self, manufactured_kw):
        problem, _ = manufactured_kw
        base = solve_kw(problem, 1e-10)
        moved = solve_kw(problem.translated((5, -3)), 1e-10)
        assert np.max(np.abs(moved.f - np.roll(base.f, (5, -3), axis=(0, 1)))) <= 1e-9

    @pytest.mark.parametrize('c', [0.3, -0.7])
    def test_scaling_shifts_solution(self, manufactured_kw, c):
        problem, _ = manufactured_kw
        base = solve_kw(problem, 1e-10)
        scaled = solve_kw(problem.rescaled(c), 1e-10)
        assert np.max(np.abs(scaled.f - (base.f - c))) <= 1e-9

    def test_stalled_reports_best_residual(self, manufactured_kw):
        problem, _ = manufactured_kw
        with pytest.raises(StalledError) as excinfo:
            solve_kw(problem, 1e-12, max_newton=1)
        assert excinfo.value.best_residual > 1e-12
        assert excinfo.value.iterations == 1

    def test_tolerance_floor(self, manufactured_kw):
        problem, _ = manufactured_kw
        with pytest.raises(PreconditionError):
            solve_kw(problem, 1e-13)


@pytest.mark.integration
class TestKWCommand:

    def test_problem_round_trip_through_serializer(self, manufactured_kw):
        problem, _ = manufactured_kw
        serializer = KWProblemSerializer(data=json.loads(json.dumps(problem_record(problem))))
        assert serializer.is_valid(), serializer.errors
        assert np.array_equal(serializer.to_problem().w, problem.w)

    def test_solve_from_file(self, tmp_path):
        problem_path = tmp_path / 'problem.json'
        out = tmp_path / 'solution.json'
        blob = tmp_path / 'f.bin'
        call_command('kw', 'manufactured', '--n', '32', '--out', str(problem_path))
        call_command('kw', 'solve', '--problem', str(problem_path), '--tol', '1e-10',
                     '--out', str(out), '--binary', str(blob))
        record = json.loads(out.read_text())
        assert record['residual_linf'] <= 1e-10
        assert record['case_tag'] == 'lemma'
        assert decode_field(blob.read_bytes()).n == 32

    def test_missing_problem_file(self, tmp_path):
        with pytest.raises(CommandError) as excinfo:
            call_command('kw', 'solve', '--problem', str(tmp_path / 'absent.json'))
        assert excinfo.value.returncode == 2

    def test_hypotheses_violation_exits_one(self, tmp_path):
        grid = make_grid(16)
        ones = np.ones(grid.shape)
        record = problem_record(KWProblem(grid, ones, ones, 0 * ones))
        record['case_tag'] = 'lemma'
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps(record))
        with pytest.raises(CommandError) as excinfo:
            call_command('kw', 'solve', '--problem', str(path))
        assert excinfo.value.returncode == 1

    def test_manifest_hashes_output(self, tmp_path):
        out = tmp_path / 'problem.json'
        manifest = tmp_path / 'manifest.json'
        call_command('kw', 'manufactured', '--n', '16', '--out', str(out), '--manifest', str(manifest))
        data = json.loads(manifest.read_text())
        assert data['command'] == 'kw'
        assert data['exit_code'] == 0
        assert list(data['artifact_hashes'].values())[0] == __import__('hashlib').sha256(out.read_bytes()).hexdigest()
