from rest_framework import serializers

from .labels import ComplexityLabel
from .signatures import Approach
from .simhash import to_hex


class PlanRequestSerializer(serializers.Serializer):
    plan = serializers.JSONField()


class FingerprintRequestSerializer(PlanRequestSerializer):
    approach = serializers.ChoiceField(choices=Approach.choices, required=False)
    ngram_n = serializers.IntegerField(min_value=1, required=False)


class MatchRequestSerializer(PlanRequestSerializer):
    k = serializers.IntegerField(min_value=1, required=False)
    top = serializers.IntegerField(min_value=1, required=False)


class PredictRequestSerializer(PlanRequestSerializer):
    k = serializers.IntegerField(min_value=1, required=False)
    vote = serializers.IntegerField(min_value=1, required=False, default=1)


class FingerprintSerializer(serializers.Serializer):
    plan_id = serializers.CharField()
    edge_fp = serializers.SerializerMethodField()
    node_fp = serializers.SerializerMethodField()
    approach = serializers.SerializerMethodField()

    def get_edge_fp(self, obj):
        return to_hex(obj["fingerprint"].edge_sig)

    def get_node_fp(self, obj):
        return to_hex(obj["fingerprint"].node_sig)

    def get_approach(self, obj):
        return Approach(obj["fingerprint"].approach).value


class MatchResultSerializer(serializers.Serializer):
    plan_id = serializers.CharField()
    edge_distance = serializers.IntegerField()
    node_distance = serializers.IntegerField()
    label = serializers.SerializerMethodField()
    runtime_seconds = serializers.FloatField()

    def get_label(self, obj):
        return ComplexityLabel(obj.label).label
