from rest_framework import serializers

from core.exceptions import PreconditionError
from .blob import field_from_base64, field_to_base64


class FieldBlobField(serializers.Field):
    """Base64 field blob <-> TwistedField."""

    default_error_messages = {
        'invalid': 'Not a valid field blob: {reason}',
    }

    def to_representation(self, value):
        return field_to_base64(value)

    def to_internal_value(self, data):
        if not isinstance(data, str):
            self.fail('invalid', reason='expected a base64 string')
        try:
            return field_from_base64(data)
        except PreconditionError as e:
            self.fail('invalid', reason=str(e))


class FieldRecordSerializer(serializers.Serializer):
    """JSON wrapper around a field blob with its norm and provenance."""
    n = serializers.IntegerField(min_value=8)
    degree = serializers.IntegerField()
    norm = serializers.FloatField()
    provenance = serializers.CharField()
    blob = FieldBlobField()

    def validate(self, attrs):
        field = attrs['blob']
        if field.n != attrs['n'] or field.degree != attrs['degree']:
            raise serializers.ValidationError("blob header disagrees with n/degree")
        return attrs


def field_record(field, provenance='computed'):
    """Primitive JSON record for one field."""
    return FieldRecordSerializer({
        'n': field.n,
        'degree': field.degree,
        'norm': field.l2_norm(),
        'provenance': provenance,
        'blob': field,
    }).data
