from rest_framework import serializers

from .checks import CheckResult, CheckStatus, VerificationReport
from .models import VerificationRun

REPORT_SCHEMA_VERSION = 1


class EnumValueField(serializers.ChoiceField):
    """Serializes an enum member as its value and parses it back."""

    def __init__(self, enum_class, **kwargs):
        self.enum_class = enum_class
        super().__init__(choices=[member.value for member in enum_class], **kwargs)

    def to_representation(self, value):
        return self.enum_class(value).value

    def to_internal_value(self, data):
        return self.enum_class(super().to_internal_value(data))


# ------------------------
# REPORT
# ------------------------
class CheckResultSerializer(serializers.Serializer):
    id = serializers.CharField()
    anchor = serializers.CharField()
    status = EnumValueField(CheckStatus)
    measured = serializers.CharField(allow_blank=True)
    expected = serializers.CharField(allow_blank=True)
    tolerance = serializers.FloatField()
    notes = serializers.CharField(allow_blank=True)


class VerificationReportSerializer(serializers.Serializer):
    schema_version = serializers.SerializerMethodField()
    n = serializers.IntegerField(min_value=2)
    suites = serializers.ListField(child=serializers.CharField())
    passed = serializers.BooleanField(read_only=True)
    constant_mode = serializers.CharField()
    flux_checks = serializers.DictField(child=serializers.CharField())
    curvature_constant = serializers.CharField()
    gamma_estimate = serializers.CharField(allow_null=True, required=False)
    alpha_from_mass = serializers.CharField(allow_null=True, required=False)
    checks = CheckResultSerializer(many=True)
    coverage = serializers.DictField(child=serializers.IntegerField(), required=False)
    internal_errors = serializers.ListField(child=serializers.CharField(), required=False)
    config = serializers.DictField()
    toolkit_version = serializers.CharField()

    def get_schema_version(self, obj):
        return REPORT_SCHEMA_VERSION

    def validate(self, attrs):
        version = self.initial_data.get("schema_version")
        if version != REPORT_SCHEMA_VERSION:
            raise serializers.ValidationError(f"unsupported report schema {version!r}")
        return attrs

    def create(self, validated_data):
        checks = [CheckResult(**check) for check in validated_data.pop("checks")]
        return VerificationReport(checks=checks, **validated_data)


# ------------------------
# ARCHIVE
# ------------------------
class VerificationRunSerializer(serializers.ModelSerializer):
    report = serializers.SerializerMethodField()

    class Meta:
        model = VerificationRun
        fields = [
            "id",
            "n",
            "suite",
            "constant_mode",
            "passed",
            "toolkit_version",
            "created_at",
            "report",
        ]
        read_only_fields = fields

    def get_report(self, obj):
        return obj.report_data()


class VerificationRunSummarySerializer(serializers.ModelSerializer):
    """Lightweight run data for list responses"""

    class Meta:
        model = VerificationRun
        fields = ["id", "n", "suite", "constant_mode", "passed", "toolkit_version", "created_at"]
