from dataclasses import dataclass
from fractions import Fraction

import mpmath
from rest_framework import serializers

from .models import ReportRecord


@dataclass(frozen=True)
class Measurement:
    """A numeric output together with its certified error bound."""
    value: object
    error_bound: object = 0


def format_number(value, digits=None):
    """Strings for report values; mpmath numbers keep every digit of the current working precision."""
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(value, digits or mpmath.mp.dps)
    if isinstance(value, complex):
        return repr(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (int, Fraction)):
        return str(value)
    return str(value)


class MeasurementField(serializers.Field):
    """
    Renders a number as {"value": str, "error_bound": str}. Anything carrying an error_bound
    keeps it; exact values (ints, Fractions, sympy constants) get a zero bound.
    """
    def to_representation(self, value):
        if not hasattr(value, "error_bound"):
            value = Measurement(value, 0)
        return {
            "value": format_number(value.value),
            "error_bound": format_number(value.error_bound),
        }

    def to_internal_value(self, data):
        try:
            return Measurement(mpmath.mpmathify(data["value"]), mpmath.mpmathify(data["error_bound"]))
        except (KeyError, TypeError, ValueError):
            raise serializers.ValidationError("expected {'value': ..., 'error_bound': ...}")


class DichotomySerializer(serializers.Serializer):
    n = serializers.IntegerField()
    m = serializers.IntegerField()
    sigma = serializers.ListField(child=serializers.CharField())
    global_sign = serializers.IntegerField()
    split = serializers.BooleanField()
    vanishing = serializers.BooleanField()
    realization_j2 = serializers.CharField(allow_null=True)
    hilbert_cross_check = serializers.BooleanField()


class CharValueSerializer(serializers.Serializer):
    norm = serializers.IntegerField()
    generator = serializers.CharField()
    value = MeasurementField()
    twisted = MeasurementField()


class CharSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    infinity_type = serializers.ListField(child=serializers.IntegerField())
    conductor = serializers.CharField()
    level = serializers.IntegerField()
    values = CharValueSerializer(many=True)


class QExpSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    weight = serializers.IntegerField()
    level = serializers.IntegerField()
    limit = serializers.IntegerField()
    coefficients = serializers.ListField(child=serializers.IntegerField())
    eta_product_match = serializers.BooleanField(allow_null=True)


class ThetaEvalSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    l = serializers.IntegerField()
    tau = serializers.CharField()
    lattice = MeasurementField()
    qexp = MeasurementField()
    ratio = MeasurementField()
    closed_form = MeasurementField()
    passed = serializers.BooleanField()


class RallisSerializer(serializers.Serializer):
    l = serializers.IntegerField()
    lhs = MeasurementField()
    rhs = MeasurementField()
    deviation = MeasurementField()
    per_factor = serializers.DictField(child=MeasurementField(allow_null=True))
    rhs_ratio = serializers.CharField()
    passed = serializers.BooleanField()


class PeriodSerializer(serializers.Serializer):
    l = serializers.IntegerField()
    lhs = MeasurementField()
    rhs = MeasurementField()
    ratio = MeasurementField()
    null_test = MeasurementField()
    diagnostics = serializers.DictField()


class PeriodListSerializer(serializers.Serializer):
    reports = PeriodSerializer(many=True)
    passed = serializers.BooleanField()


class VerifySerializer(serializers.Serializer):
    suite = serializers.CharField()
    samples = serializers.IntegerField()
    seed = serializers.IntegerField()
    passed = serializers.IntegerField()
    failures = serializers.ListField(child=serializers.CharField())
    details = serializers.DictField(required=False)


class ReportRecordSerializer(serializers.ModelSerializer):
    class Meta:
        model = ReportRecord
        fields = ['id', 'subcommand', 'config', 'payload', 'passed', 'created']
