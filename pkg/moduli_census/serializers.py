from rest_framework import serializers

from .bundles import CLASS_FLAGS, KINDS, SUPPORTED_GENERA, BundleSpec


class BundleSpecSerializer(serializers.Serializer):
    genus = serializers.ChoiceField(choices=SUPPORTED_GENERA)
    kind = serializers.ChoiceField(choices=KINDS)
    d = serializers.IntegerField()
    sign = serializers.ChoiceField(choices=(-1, 0, 1), default=-1)
    param = serializers.IntegerField(min_value=0, default=0)
    class_flag = serializers.ChoiceField(choices=CLASS_FLAGS, default='generic')
    label = serializers.CharField(read_only=True)

    def to_spec(self) -> BundleSpec:
        return BundleSpec(**self.validated_data)


class ModuliDescriptionSerializer(serializers.Serializer):
    status = serializers.CharField(source='label')
    dimC = serializers.IntegerField(allow_null=True)
    euler = serializers.IntegerField()
    euler_of = serializers.CharField()
    sw = serializers.SerializerMethodField()
    compact = serializers.BooleanField()
    fueter_present = serializers.BooleanField()
    provenance = serializers.CharField()
    notes = serializers.ListField(child=serializers.CharField())

    def get_sw(self, desc):
        return desc.sw


class CensusRowSerializer(serializers.Serializer):
    theorem_items = serializers.SerializerMethodField()
    genus = serializers.IntegerField(source='spec.genus')
    kind = serializers.CharField(source='spec.label')
    d = serializers.IntegerField(source='spec.d')
    sign = serializers.IntegerField(source='spec.sign')
    status = serializers.CharField(source='description.label')
    dimC = serializers.IntegerField(source='description.dimC', allow_null=True)
    euler = serializers.IntegerField(source='description.euler')
    sw = serializers.SerializerMethodField()
    compact = serializers.BooleanField(source='description.compact')
    fueter_present = serializers.BooleanField(source='description.fueter_present')
    provenance = serializers.CharField(source='description.provenance')

    def get_theorem_items(self, row):
        return ';'.join(str(item) for item in row.items)

    def get_sw(self, row):
        return row.description.sw
