from django.conf import settings

from console.base import ProgramCommand
from engine import bytecode, direct
from engine.appendix import run_appendix
from engine.serializers import TraceEventSerializer
from lang.serializers import json_lines


class Command(ProgramCommand):
    help = "Run a dbfi-BF program and write its output to stdout"

    def add_arguments(self, parser):
        self.add_source_argument(parser)
        self.add_profile_arguments(parser, settings.DBFI['RUN_STEP_LIMIT'])
        parser.add_argument('--cell-width', type=int)
        parser.add_argument('--tape-limit', type=int)
        parser.add_argument('--data-file', help="Program input, replacing the '!' suffix")
        parser.add_argument('--trace', help='Write trace records (JSON lines) to this file')
        parser.add_argument('--snapshot', help="Trace policy: every:K, full or ip:I,J (default every:1)")

    def handle(self, *args, **options):
        cli = self.validate_flags('run', options)
        source = self.read_source(options['source'])
        program = self.parse(source)
        data = None
        if options['data_file'] is not None:
            data = self.read_source(options['data_file'])

        config = cli.engine_config()
        engine = cli.validated_data['engine']
        if engine == 'appendix':
            outcome = run_appendix(source, data, step_limit=config.step_limit)
        elif engine == 'bytecode':
            outcome = bytecode.run(program, data, config)
        elif options['trace'] is None:
            outcome = direct.run(program, data, config)
        else:
            with open(options['trace'], 'wb') as trace_file:
                outcome, _ = direct.run_traced(
                    program, data, config,
                    policy=cli.validated_data.get('snapshot'),
                    on_event=lambda event: trace_file.write(json_lines([TraceEventSerializer(event).data])),
                )

        self.write_bytes(outcome.output)
        self.finish(outcome)
