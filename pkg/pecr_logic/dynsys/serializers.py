"""
Dynamical system serializers
"""
from django.utils.translation import gettext as _
from rest_framework import serializers

from pecr_logic.dynsys.models import BoxRegion


class BoxRegionSerializer(serializers.Serializer):
    """
    Box [a b] given as two nested integer lists
    """
    a = serializers.JSONField(label=_("Lower bound"), help_text=_("Lower bound array, lbx of the box"))
    b = serializers.JSONField(label=_("Upper bound"), help_text=_("Upper bound array, ubx of the box"))

    def to_representation(self, instance: BoxRegion):
        return {'a': instance.a.tolist(), 'b': instance.b.tolist()}

    def validate(self, attrs):
        try:
            box = BoxRegion(attrs['a'], attrs['b'])
        except Exception as e:
            raise serializers.ValidationError(str(e))
        if not box.is_valid:
            raise serializers.ValidationError(_("Lower bound exceeds upper bound"))
        attrs['box'] = box
        return attrs


class CycleReportSerializer(serializers.Serializer):
    tcyc = serializers.IntegerField(label=_("Entry time of the cycle"), read_only=True)
    pcyc = serializers.IntegerField(label=_("Period of the cycle"), read_only=True)
    witness = serializers.SerializerMethodField(label=_("First state of the cycle"))
    is_fixed_point = serializers.BooleanField(label=_("Period one"), read_only=True)

    def get_witness(self, obj):
        return obj.witness.tolist()


class AxcCertificateSerializer(serializers.Serializer):
    map_name = serializers.CharField(label=_("Map name"), read_only=True)
    p = BoxRegionSerializer(label=_("Domain box"), read_only=True)
    q = BoxRegionSerializer(label=_("Range bounding box"), read_only=True)
    certified = serializers.BooleanField(label=_("axc premise holds"), read_only=True)
    reason = serializers.CharField(label=_("Refusal reason"), read_only=True)
