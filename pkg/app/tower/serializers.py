from rest_framework import serializers

from engine.serializers import OutcomeSerializer


class BoundaryRecordSerializer(serializers.Serializer):
    record = serializers.SerializerMethodField()
    boundary_no = serializers.IntegerField()
    host_step = serializers.IntegerField()
    sim_ip = serializers.IntegerField(allow_null=True)
    sim_head = serializers.IntegerField(allow_null=True)
    verdict = serializers.CharField()
    chained = serializers.IntegerField()
    detail = serializers.CharField(allow_blank=True)

    def get_record(self, verdict):
        return 'boundary'


class CosimSummarySerializer(serializers.Serializer):
    record = serializers.SerializerMethodField()
    boundaries = serializers.SerializerMethodField()
    passed = serializers.BooleanField()
    failure = serializers.CharField(allow_null=True)
    output_matches = serializers.BooleanField()
    final = BoundaryRecordSerializer(allow_null=True)
    level0 = OutcomeSerializer()
    host = OutcomeSerializer(allow_null=True)

    def get_record(self, report):
        return 'summary'

    def get_boundaries(self, report):
        return len(report.boundaries)


def report_records(report):
    """Boundary records followed by the summary record."""
    records = [BoundaryRecordSerializer(verdict).data for verdict in report.boundaries]
    records.append(CosimSummarySerializer(report).data)
    return records
