"""
Command line serializers
"""
from django.utils.translation import gettext as _
from rest_framework import serializers

from pecr_logic.cli.models import ProverConfig


class ProverConfigSerializer(serializers.Serializer):
    depth = serializers.IntegerField(
        label=_("Search rounds"),
        help_text=_("Number of forward chaining rounds before giving up"),
        min_value=1)
    facts = serializers.IntegerField(
        label=_("Fact limit"),
        help_text=_("Largest number of statements held by the search"),
        min_value=1)
    time = serializers.IntegerField(label=_("Time budget in seconds"), min_value=1)
    seed = serializers.IntegerField(
        label=_("Rule order seed"),
        help_text=_("0 keeps the store order, any other value shuffles it"),
        min_value=0)

    def create(self, validated_data):
        return ProverConfig(**validated_data)

    @classmethod
    def from_options(cls, options: dict):
        """
        Build a serializer from command options, falling back to the configured defaults
        """
        default = ProverConfig.default()
        data = {name: options.get(name) if options.get(name) is not None else getattr(default, name)
                for name in ('depth', 'facts', 'time', 'seed')}
        return cls(data=data)
