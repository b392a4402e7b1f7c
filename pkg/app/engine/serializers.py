from rest_framework import serializers

from lang.serializers import InstructionField


class TraceEventSerializer(serializers.Serializer):
    step = serializers.IntegerField()
    ip = serializers.IntegerField()
    head = serializers.IntegerField()
    instruction = InstructionField()
    tape_start = serializers.IntegerField(allow_null=True)
    tape = serializers.ListField(child=serializers.IntegerField(), allow_null=True)


class OutcomeSerializer(serializers.Serializer):
    output = serializers.SerializerMethodField()
    steps = serializers.IntegerField()
    halt_reason = serializers.SerializerMethodField()
    error_position = serializers.IntegerField(allow_null=True)
    touched_cells = serializers.SerializerMethodField()

    def get_output(self, outcome):
        return outcome.output.decode('latin-1')

    def get_halt_reason(self, outcome):
        return outcome.halt_reason.value

    def get_touched_cells(self, outcome):
        if outcome.final_state is None:
            return None
        return outcome.final_state.tape.touched
