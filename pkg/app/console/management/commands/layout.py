from django.conf import settings
from django.core.management.base import CommandError

from console.base import EXIT_CODES, EXIT_FAILURE, ProgramCommand
from lang.parser import split_source
from lang.serializers import json_lines
from tower.cosim import cosimulate
from tower.dbfi import DBFI_SOURCE
from tower.exceptions import CosimPreconditionError, StructureMismatch
from tower.serializers import report_records


class Command(ProgramCommand):
    help = "Cosimulate dbfi on a program and check its memory layout at every fetch boundary"

    def add_arguments(self, parser):
        self.add_source_argument(parser)
        parser.add_argument('--dbfi-file', help='Interpreter source to check instead of the embedded dbfi')
        parser.add_argument('--output', help='Write report records here instead of stdout')
        parser.add_argument('--step-limit', type=int, default=settings.DBFI['TOWER_STEP_LIMIT'])

    def handle(self, *args, **options):
        source = self.read_source(options['source'])
        self.parse(source)
        code, data = split_source(source)
        dbfi_source = DBFI_SOURCE
        if options['dbfi_file'] is not None:
            dbfi_source = self.read_source(options['dbfi_file'])
            self.parse(dbfi_source)

        try:
            report = cosimulate(
                code, data,
                dbfi_source=dbfi_source,
                max_chain=settings.DBFI['MAX_CHAIN'],
                step_limit=options['step_limit'],
            )
        except CosimPreconditionError as exc:
            raise CommandError(str(exc), returncode=EXIT_CODES[exc.outcome.halt_reason])
        except StructureMismatch as exc:
            raise CommandError(str(exc), returncode=EXIT_FAILURE)

        records = json_lines(report_records(report))
        if options['output'] is None:
            self.write_bytes(records)
        else:
            with open(options['output'], 'wb') as report_file:
                report_file.write(records)

        if report.passed:
            return
        if report.host is not None and not report.host.completed:
            raise CommandError(f"dbfi halted: {report.failure}",
                               returncode=EXIT_CODES[report.host.halt_reason])
        raise CommandError(f"layout check failed: {report.failure or 'output differs'}",
                           returncode=EXIT_FAILURE)
