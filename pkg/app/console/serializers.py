from dataclasses import replace

from django.conf import settings
from rest_framework import serializers

from engine.config import CELL_WIDTHS, PROFILES
from engine.state import SnapshotPolicy
from tower.towers import EngineKind


class CliConfigSerializer(serializers.Serializer):
    """Flags of the run and tower commands, validated before anything executes."""
    SUBCOMMAND_CHOICES = ('run', 'tower')
    ENGINE_CHOICES = ('direct', 'bytecode', 'appendix')

    subcommand = serializers.ChoiceField(choices=SUBCOMMAND_CHOICES)
    profile = serializers.ChoiceField(choices=sorted(PROFILES), required=False)
    cell_width = serializers.ChoiceField(choices=CELL_WIDTHS, required=False, allow_null=True)
    step_limit = serializers.IntegerField(min_value=0, required=False, allow_null=True)
    tape_limit = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    levels = serializers.IntegerField(min_value=0, default=0)
    engine = serializers.ChoiceField(choices=ENGINE_CHOICES, required=False, allow_null=True)
    snapshot = serializers.CharField(required=False, allow_null=True)
    trace = serializers.CharField(required=False, allow_null=True)
    data_file = serializers.CharField(required=False, allow_null=True)

    def validate_snapshot(self, value):
        if value is None:
            return value
        try:
            return SnapshotPolicy.parse(value, window=settings.DBFI['TRACE_WINDOW'])
        except ValueError as exc:
            raise serializers.ValidationError(str(exc))

    def validate(self, data):
        appendix_engine = data.get('engine') == 'appendix'
        if data.get('profile') is None:
            data['profile'] = 'appendix' if appendix_engine else settings.DBFI['DEFAULT_PROFILE']
        elif appendix_engine and not PROFILES[data['profile']].sparse:
            raise serializers.ValidationError(
                {"profile": "The appendix interpreter always has a sparse tape; use --profile appendix"})
        config = PROFILES[data['profile']]
        if data.get('cell_width') is None:
            data['cell_width'] = config.cell_width

        tracing = data.get('trace') is not None
        if data.get('snapshot') is not None and not tracing:
            raise serializers.ValidationError({"snapshot": "A snapshot policy needs --trace"})
        if data.get('engine') is None:
            data['engine'] = 'direct' if tracing else 'bytecode'

        if data['subcommand'] == 'tower':
            if data.get('data_file') is not None:
                raise serializers.ValidationError(
                    {"data_file": "Tower input comes from the '!' suffix; --data-file is not accepted"})
            if data['levels'] >= 1 and data['cell_width'] != 8:
                raise serializers.ValidationError(
                    {"cell_width": "dbfi needs 8-bit cells when levels >= 1"})
            if data['engine'] == 'appendix':
                raise serializers.ValidationError({"engine": "Towers run on the direct or bytecode engine"})
            if tracing:
                raise serializers.ValidationError({"trace": "Tracing is available on the run command only"})
        elif data['levels']:
            raise serializers.ValidationError({"levels": "Use the tower command for levels >= 1"})

        if tracing and data['engine'] != 'direct':
            raise serializers.ValidationError({"trace": "Tracing needs --engine direct"})
        if data['engine'] == 'appendix' and (data['cell_width'] != 8 or data.get('tape_limit')):
            raise serializers.ValidationError(
                {"engine": "The appendix interpreter has byte cells and no tape limit"})
        return data

    def engine_config(self):
        data = self.validated_data
        return replace(
            PROFILES[data['profile']],
            cell_width=data['cell_width'],
            step_limit=data.get('step_limit'),
            tape_limit=data.get('tape_limit'),
        )

    def engine_kind(self):
        return EngineKind(self.validated_data['engine'])
