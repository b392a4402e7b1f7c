from rest_framework import serializers

from lang.serializers import LatinBytesField

from .models import FuzzCase, FuzzRun


class FuzzCaseSerializer(serializers.ModelSerializer):
    record = serializers.SerializerMethodField()
    run_seed = serializers.IntegerField(source='run.seed', read_only=True)
    source = LatinBytesField()
    data = LatinBytesField()

    class Meta:
        model = FuzzCase
        fields = ['record', 'run_seed', 'index', 'seed', 'source', 'data', 'verdict',
                  'divergence', 'skip_reason', 'outcomes']

    def get_record(self, case):
        return 'case'


class FuzzRunSerializer(serializers.ModelSerializer):
    record = serializers.SerializerMethodField()
    counts = serializers.SerializerMethodField()

    class Meta:
        model = FuzzRun
        fields = ['record', 'id', 'seed', 'cases', 'levels', 'mutant', 'params', 'step_limit',
                  'overhead_factor', 'counts', 'created_at']

    def get_record(self, run):
        return 'run'

    def get_counts(self, run):
        return run.counts()
