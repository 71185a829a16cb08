import math

from rest_framework import serializers


class CohomologyReportSerializer(serializers.Serializer):
    h0 = serializers.IntegerField(min_value=0)
    h1 = serializers.IntegerField(min_value=0)
    index = serializers.IntegerField()
    degrees = serializers.ListField(child=serializers.IntegerField())
    rank_tol = serializers.FloatField()
    gap_ratio = serializers.SerializerMethodField()
    singular_values = serializers.ListField(child=serializers.FloatField())

    def get_gap_ratio(self, report):
        # JSON has no infinity; no dropped singular value means an unbounded gap
        return None if math.isinf(report.gap_ratio) else report.gap_ratio


class FueterReportSerializer(serializers.Serializer):
    exists = serializers.BooleanField()
    search_cap = serializers.IntegerField()
    candidates_checked = serializers.IntegerField()
    witness = serializers.SerializerMethodField()

    def get_witness(self, report):
        if report.witness is None:
            return None
        cx, cy = report.witness.jacobian_class
        return {'degree': report.witness.degree, 'class': [str(cx), str(cy)]}
