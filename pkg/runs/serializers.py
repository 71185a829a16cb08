from rest_framework import serializers

from .models import RunManifest


class RunManifestSerializer(serializers.ModelSerializer):
    class Meta:
        model = RunManifest
        fields = [
            'command', 'parameters', 'grid_size', 'tolerances', 'wall_time',
            'artifact_hashes', 'provenance', 'exit_code',
        ]


class CheckResultSerializer(serializers.Serializer):
    name = serializers.CharField()
    status = serializers.CharField()
    passed = serializers.BooleanField()
    detail = serializers.CharField()
    wall_time = serializers.FloatField()
    metrics = serializers.DictField(child=serializers.FloatField())
