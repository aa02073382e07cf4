"""
Proof checking and reduction report serializers
"""
from django.utils.translation import gettext as _
from rest_framework import serializers


class LineReportSerializer(serializers.Serializer):
    index = serializers.IntegerField(label=_("Proof line"))
    rule = serializers.CharField(label=_("Cited rule label"))
    ok = serializers.BooleanField(label=_("Line accepted"))
    message = serializers.CharField(label=_("Rejection reason"), allow_blank=True)


class CheckVerdictSerializer(serializers.Serializer):
    """
    Outcome of checking one proof document
    """
    label = serializers.CharField(label=_("Theorem label"))
    accepted = serializers.BooleanField(label=_("Proof accepted"))
    status = serializers.IntegerField(label=_("Exit status"), read_only=True)
    failed_line = serializers.IntegerField(
        label=_("First failing line"),
        help_text=_("0 when the proof is accepted or fails as a whole"))
    reason = serializers.CharField(label=_("Rejection reason"), allow_blank=True)
    warnings = serializers.ListField(child=serializers.CharField(), label=_("Warnings"))
    lines = LineReportSerializer(many=True, read_only=True)


class ReductionTraceSerializer(serializers.Serializer):
    steps = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField()),
        label=_("Connection lists"),
        help_text=_("Successive connection lists from the conclusion back to the premise"))
    final = serializers.ListField(child=serializers.IntegerField(), label=_("Final connection list"))
    redundant_lines = serializers.ListField(child=serializers.IntegerField(), label=_("Redundant lines"))
    unused_premises = serializers.ListField(child=serializers.IntegerField(), label=_("Unused premise lines"))
