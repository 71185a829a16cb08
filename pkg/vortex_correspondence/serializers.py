from rest_framework import serializers

from torus_geometry.grid import make_grid
from torus_geometry.serializers import field_record
from .hitchin_kobayashi import RESIDUAL_NAMES, degree_identity_defect
from .triples import constant_triple, split_theta_triple


class PointField(serializers.ListField):
    """A pair of floats."""

    def __init__(self, **kwargs):
        kwargs.setdefault('child', serializers.FloatField())
        kwargs.setdefault('min_length', 2)
        kwargs.setdefault('max_length', 2)
        super().__init__(**kwargs)


class TripleSpecSerializer(serializers.Serializer):
    """
    Triple file. kind 'theta' builds alpha = (theta_a, 0), beta = (0, theta_b)
    from zero lists; kind 'constant' takes alpha and beta as [re, im] pairs.
    """
    kind = serializers.ChoiceField(choices=['theta', 'constant'])
    n = serializers.IntegerField(min_value=8)
    m = serializers.IntegerField(required=False, default=0)
    d = serializers.IntegerField(required=False, default=0)
    alpha_zeros = serializers.ListField(child=PointField(), required=False, allow_null=True, default=None)
    beta_zeros = serializers.ListField(child=PointField(), required=False, allow_null=True, default=None)
    alpha = serializers.ListField(child=PointField(), required=False, min_length=2, max_length=2)
    beta = serializers.ListField(child=PointField(), required=False, min_length=2, max_length=2)

    def validate(self, attrs):
        if attrs['kind'] == 'constant' and ('alpha' not in attrs or 'beta' not in attrs):
            raise serializers.ValidationError("constant triples need alpha and beta")
        if attrs['kind'] == 'theta' and not attrs.get('alpha_zeros') and not attrs.get('beta_zeros'):
            raise serializers.ValidationError("theta triples need alpha_zeros or beta_zeros")
        return attrs

    def to_triple(self):
        data = self.validated_data
        grid = make_grid(data['n'])
        if data['kind'] == 'constant':
            alpha = [complex(re, im) for re, im in data['alpha']]
            beta = [complex(re, im) for re, im in data['beta']]
            return constant_triple(grid, alpha, beta)
        zeros = lambda key: None if not data.get(key) else [tuple(p) for p in data[key]]
        return split_theta_triple(grid, data['m'], data['d'], zeros('alpha_zeros'), zeros('beta_zeros'))


class VortexStateSerializer(serializers.Serializer):
    n = serializers.SerializerMethodField()
    d = serializers.SerializerMethodField()
    m = serializers.SerializerMethodField()
    tau = serializers.FloatField(source='eta_tau')
    tolerance = serializers.FloatField(allow_null=True)
    residuals = serializers.DictField(child=serializers.FloatField())
    floors = serializers.DictField(child=serializers.FloatField())
    within_contract = serializers.SerializerMethodField()
    degree_identity_defect = serializers.SerializerMethodField()
    newton_iters = serializers.SerializerMethodField()
    gauge_sup = serializers.SerializerMethodField()
    alpha = serializers.SerializerMethodField()
    beta = serializers.SerializerMethodField()

    def get_n(self, state):
        return state.triple.grid.n

    def get_d(self, state):
        return state.triple.d

    def get_m(self, state):
        return state.triple.m

    def get_within_contract(self, state):
        return state.within_contract()

    def get_degree_identity_defect(self, state):
        return degree_identity_defect(state)

    def get_newton_iters(self, state):
        return None if state.kw is None else state.kw.newton_iters

    def get_gauge_sup(self, state):
        return None if state.f is None else float(abs(state.f).max())

    def get_alpha(self, state):
        return [field_record(a, provenance='computed') for a in state.alpha]

    def get_beta(self, state):
        return [field_record(b, provenance='computed') for b in state.beta]


def residual_table(state):
    return [(name, state.residuals[name], state.contract_bounds()[name]) for name in RESIDUAL_NAMES]
