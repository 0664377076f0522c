from fractions import Fraction

from rest_framework import serializers

from subtropical.constants import ORTHANT_CHOICES, STRATEGY_CHOICES

from .models import BatchRun, RunRecord


class RationalField(serializers.Field):
    """Exact rationals as {"num": "<int>", "den": "<positive int>"}."""

    default_error_messages = {
        "invalid": 'Expected {"num": "<integer>", "den": "<positive integer>"}.',
    }

    def to_representation(self, value):
        value = Fraction(value)
        return {"num": str(value.numerator), "den": str(value.denominator)}

    def to_internal_value(self, data):
        try:
            num = int(data["num"])
            den = int(data["den"])
        except (TypeError, KeyError, ValueError):
            self.fail("invalid")
        if den <= 0:
            self.fail("invalid")
        return Fraction(num, den)


class RunReportSerializer(serializers.Serializer):
    path = serializers.CharField()
    verdict = serializers.ChoiceField(choices=RunRecord.VERDICT_CHOICES)
    witness = serializers.DictField(child=RationalField(), allow_null=True)
    reason = serializers.CharField(allow_blank=True)
    timings = serializers.DictField(child=serializers.FloatField())
    family = serializers.CharField(allow_blank=True, required=False)

    def validate(self, attrs):
        if (attrs["verdict"] == "sat") != (attrs["witness"] is not None):
            raise serializers.ValidationError("A witness is present exactly for sat verdicts.")
        return attrs


class SolveRequestSerializer(serializers.Serializer):
    script = serializers.CharField(trim_whitespace=False)
    timeout_ms = serializers.IntegerField(min_value=0, required=False)
    max_squarings = serializers.IntegerField(min_value=1, required=False)
    orthant = serializers.ChoiceField(choices=ORTHANT_CHOICES, required=False)
    strategy = serializers.ChoiceField(choices=STRATEGY_CHOICES, required=False)


class RunRecordSerializer(serializers.ModelSerializer):
    class Meta:
        model = RunRecord
        fields = (
            "id",
            "path",
            "family",
            "verdict",
            "reason",
            "witness",
            "parse_ms",
            "encode_ms",
            "solve_ms",
            "base_search_ms",
        )


class BatchRunSerializer(serializers.ModelSerializer):
    records = RunRecordSerializer(many=True, read_only=True)

    class Meta:
        model = BatchRun
        fields = "__all__"
