"""
Serializers for machine parameters and program reports
"""
from django.utils.translation import gettext as _
from rest_framework import serializers

from pecr_logic.programs.models import MachineParams


class MachineParamsSerializer(serializers.Serializer):
    """
    Serializer for the machine environment [msym mstr mnat mlst]
    """
    msym = serializers.IntegerField(label=_("Alphabet size"), min_value=1)
    mstr = serializers.IntegerField(label=_("Maximal string length"), min_value=1)
    mnat = serializers.IntegerField(label=_("Maximal machine number"), min_value=1)
    nprem = serializers.IntegerField(label=_("Maximal premise length"), min_value=1)
    npmax = serializers.IntegerField(label=_("Maximal program list length"), min_value=1)
    nx = serializers.IntegerField(label=_("Maximal input arity"), min_value=1)
    ny = serializers.IntegerField(label=_("Maximal output arity"), min_value=1)

    def validate(self, attrs):
        if attrs['nprem'] > attrs['npmax']:
            raise serializers.ValidationError(_("nprem must not exceed npmax"))
        return attrs

    def create(self, validated_data):
        return MachineParams(**validated_data)

    @classmethod
    def from_flags(cls, mach: str = '', mlst: str = '', base: MachineParams = None):
        """
        Build a serializer from --mach and --mlst flag values
        :param mach: 'msym,mstr,mnat' or empty
        :param mlst: 'nprem,npmax,nx,ny' or empty
        :param base: parameters used for omitted flags
        """
        base = base or MachineParams.default()
        data = {
            'msym': base.msym, 'mstr': base.mstr, 'mnat': base.mnat,
            'nprem': base.nprem, 'npmax': base.npmax, 'nx': base.nx, 'ny': base.ny,
        }
        if mach:
            data.update(zip(('msym', 'mstr', 'mnat'), mach.split(',')))
        if mlst:
            data.update(zip(('nprem', 'npmax', 'nx', 'ny'), mlst.split(',')))
        return cls(data=data)


class ViolationSerializer(serializers.Serializer):
    item = serializers.IntegerField(label=_("1-based item index, 0 for the whole program"))
    condition = serializers.CharField(label=_("Violated condition"))
    message = serializers.CharField(label=_("Description"))


class ValidationReportSerializer(serializers.Serializer):
    ok = serializers.BooleanField(read_only=True)
    violations = ViolationSerializer(many=True, read_only=True)


class BindingProfileSerializer(serializers.Serializer):
    inp = serializers.ListField(child=serializers.CharField(), label=_("Unit rank input list"))
    outp = serializers.ListField(child=serializers.CharField(), label=_("Unit rank output list"))
    lio = serializers.ListField(child=serializers.CharField(), label=_("Distinct I/O labels"))
    pil = serializers.ListField(child=serializers.CharField(), label=_("Primary input list"))
    free = serializers.ListField(child=serializers.CharField(), label=_("Free variables"))
    pol = serializers.ListField(child=serializers.CharField(), label=_("Primary output list"))
