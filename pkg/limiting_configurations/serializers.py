import csv
import io

from rest_framework import serializers

from .exponents import vanishing_exponent
from .sweep import SWEEP_COLUMNS


class LimitingZeroSerializer(serializers.Serializer):
    zero_id = serializers.IntegerField()
    x = serializers.SerializerMethodField()
    y = serializers.SerializerMethodField()
    q = serializers.IntegerField()
    source = serializers.CharField()

    def get_x(self, zero):
        return zero.point[0]

    def get_y(self, zero):
        return zero.point[1]


class LimitingStateSerializer(serializers.Serializer):
    n = serializers.SerializerMethodField()
    d = serializers.IntegerField()
    mask_radius = serializers.FloatField()
    zeros = LimitingZeroSerializer(many=True)
    total_weight = serializers.IntegerField()
    modulus_defect = serializers.SerializerMethodField()
    exponents = serializers.SerializerMethodField()
    provenance = serializers.SerializerMethodField()

    def get_n(self, state):
        return state.grid.n

    def get_modulus_defect(self, state):
        return state.modulus_defect()

    def get_exponents(self, state):
        return [vanishing_exponent(state.modulus, z.point) for z in state.zeros]

    def get_provenance(self, state):
        return 'computed'


class SweepRowSerializer(serializers.Serializer):
    """One CSV row: a zero at one value of t."""
    t = serializers.FloatField()
    zero_id = serializers.IntegerField()
    x = serializers.FloatField()
    y = serializers.FloatField()
    q = serializers.IntegerField()
    flux = serializers.FloatField()
    exponent = serializers.FloatField()
    kw_iters = serializers.IntegerField()
    residual = serializers.FloatField()


def sweep_rows(records):
    return [SweepRowSerializer(row).data for record in records for row in record.rows()]


def write_sweep_csv(records, stream=None):
    """Write sweep records as CSV to a text stream; returns the text when no stream is given."""
    target = io.StringIO() if stream is None else stream
    writer = csv.DictWriter(target, fieldnames=SWEEP_COLUMNS, lineterminator='\n')
    writer.writeheader()
    for row in sweep_rows(records):
        writer.writerow({key: row[key] for key in SWEEP_COLUMNS})
    return target.getvalue() if stream is None else None
