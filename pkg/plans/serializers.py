import math

from rest_framework import serializers


class ScalarField(serializers.Field):
    default_error_messages = {
        "invalid": "Expected a string, number or boolean.",
    }

    def to_internal_value(self, data):
        if isinstance(data, (str, int, float, bool)):
            return data
        self.fail("invalid")

    def to_representation(self, value):
        return value


class PlanNodeSerializer(serializers.Serializer):
    id = serializers.IntegerField(min_value=0)
    operator = serializers.CharField()
    fact = serializers.CharField()
    properties = serializers.DictField(child=ScalarField(), required=False, default=dict)


class PlanDocumentSerializer(serializers.Serializer):
    plan_id = serializers.CharField()
    runtime_seconds = serializers.FloatField(required=False, allow_null=True, default=None)
    nodes = PlanNodeSerializer(many=True)
    edges = serializers.ListField(
        child=serializers.ListField(
            child=serializers.IntegerField(min_value=0),
            min_length=2,
            max_length=2,
        ),
        required=False,
        default=list,
    )

    def validate_runtime_seconds(self, value):
        if value is None:
            return value
        if not math.isfinite(value):
            raise serializers.ValidationError("Runtime must be finite.")
        if value < 0:
            raise serializers.ValidationError("Runtime must be >= 0.")
        return value


def first_error(errors, path=""):
    """(field path, message) of the first error in a DRF error structure."""
    if isinstance(errors, dict):
        for key, value in errors.items():
            if isinstance(key, int):
                child = f"{path}[{key}]"
            elif key == "non_field_errors":
                child = path or "document"
            else:
                child = f"{path}.{key}" if path else key
            found = first_error(value, child)
            if found:
                return found
        return None
    if isinstance(errors, list):
        for i, item in enumerate(errors):
            if isinstance(item, (dict, list)):
                found = first_error(item, f"{path}[{i}]")
                if found:
                    return found
            elif item:
                return path or "document", str(item)
        return None
    return path or "document", str(errors)
