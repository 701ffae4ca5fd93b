from rest_framework import serializers

from sideinfo.config_algebra import InvalidRoutingMatrix, parse_config
from region.gaussian_layers import Channel, InvalidChannel
from report.models import ReportRow
from report.reporting import DirectionSpecError, parse_directions


class ConfigField(serializers.Field):
    """Config id 0-63 or a six-character bit string, read as a RoutingMatrix."""

    def to_internal_value(self, data):
        try:
            return parse_config(data)
        except InvalidRoutingMatrix as e:
            raise serializers.ValidationError(str(e))

    def to_representation(self, value):
        return value.config_id


class DirectionSpecField(serializers.CharField):

    def to_internal_value(self, data):
        spec = super().to_internal_value(data)
        try:
            parse_directions(spec)
        except DirectionSpecError as e:
            raise serializers.ValidationError(str(e))
        return spec


class ChannelSerializer(serializers.Serializer):
    P = serializers.FloatField()
    N1 = serializers.FloatField()
    N2 = serializers.FloatField()
    N3 = serializers.FloatField()
    base = serializers.ChoiceField(choices=['2', 'e'], default='2')

    def validate_P(self, value):
        if value <= 0:
            raise serializers.ValidationError("Transmit power must be greater than 0")
        return value

    def validate(self, data):
        if not 0 < data['N1'] < data['N2'] < data['N3']:
            raise serializers.ValidationError(
                "Noise variances must be strictly increasing and positive: 0 < N1 < N2 < N3")
        return data

    def to_channel(self):
        data = self.validated_data
        try:
            return Channel(data['P'], (data['N1'], data['N2'], data['N3']), data['base'])
        except InvalidChannel as e:
            raise serializers.ValidationError(str(e))


class BoundsQuerySerializer(ChannelSerializer):
    config = ConfigField()
    directions = DirectionSpecField(default='fibonacci:64')
    grid = serializers.IntegerField(min_value=1, default=200)
    seed = serializers.IntegerField(default=0)


class ReportRowSerializer(serializers.ModelSerializer):
    class Meta:
        model = ReportRow
        fields = [
            'id', 'config_id', 'bits', 'complete_sets', 'tightness', 'inner_sum', 'outer_sum',
            'max_gap', 'power', 'n1', 'n2', 'n3', 'base', 'grid', 'created_at', 'updated_at',
        ]
        read_only_fields = fields
