from rest_framework import serializers

from torus_geometry.blob import real_field
from torus_geometry.grid import make_grid
from torus_geometry.serializers import FieldBlobField
from .problem import CASE_TAGS, KWProblem


class KWProblemSerializer(serializers.Serializer):
    """Problem file: n plus base64 blobs of P, Q and w."""
    n = serializers.IntegerField(min_value=8)
    P = FieldBlobField()
    Q = FieldBlobField()
    w = FieldBlobField()
    case_tag = serializers.ChoiceField(choices=CASE_TAGS, required=False, allow_null=True)

    def validate(self, attrs):
        for name in ('P', 'Q', 'w'):
            field = attrs[name]
            if field.n != attrs['n'] or field.degree != 0:
                raise serializers.ValidationError(f"{name} must be a degree-0 field on the n={attrs['n']} grid")
        return attrs

    def to_problem(self) -> KWProblem:
        data = self.validated_data
        grid = make_grid(data['n'])
        return KWProblem(grid, data['P'], data['Q'], data['w'], data.get('case_tag'))


def problem_record(problem: KWProblem) -> dict:
    return {
        'n': problem.grid.n,
        'P': FieldBlobField().to_representation(real_field(problem.P)),
        'Q': FieldBlobField().to_representation(real_field(problem.Q)),
        'w': FieldBlobField().to_representation(real_field(problem.w)),
        'case_tag': problem.case_tag,
    }


class KWSolutionSerializer(serializers.Serializer):
    f = FieldBlobField()
    residual_linf = serializers.FloatField()
    newton_iters = serializers.IntegerField()
    damping_events = serializers.IntegerField()
    case_tag = serializers.CharField()
    shift = serializers.FloatField()
    tol = serializers.FloatField()


def solution_record(solution, tol) -> dict:
    return KWSolutionSerializer({
        'f': real_field(solution.f),
        'residual_linf': solution.residual_linf,
        'newton_iters': solution.newton_iters,
        'damping_events': solution.damping_events,
        'case_tag': solution.case_tag,
        'shift': solution.shift,
        'tol': tol,
    }).data
