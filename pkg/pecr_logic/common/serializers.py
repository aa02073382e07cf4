"""
Common serializers
"""
from django.utils.translation import gettext as _
from rest_framework import serializers


class ErrorSerializer(serializers.Serializer):
    status = serializers.IntegerField(label=_("Exit status"))
    code = serializers.CharField(label=_("Error class"), default='')
    description = serializers.CharField(label=_("Detailed description"))

    @classmethod
    def from_error(cls, error):
        """
        Build the serializer for a PecrServiceError
        """
        return cls({
            'status': error.status,
            'code': error.__class__.__name__,
            'description': str(error.message),
        })
