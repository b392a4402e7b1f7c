"""Shared plumbing for the dbfi management commands."""
import logging
import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from engine.exceptions import BudgetExceeded, EngineError
from engine.state import HaltReason
from lang.exceptions import ParseError
from lang.parser import parse

from .serializers import CliConfigSerializer

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_ENGINE_ERROR = 2
EXIT_BUDGET = 3

EXIT_CODES = {
    HaltReason.COMPLETED: EXIT_OK,
    HaltReason.UNDERFLOW: EXIT_ENGINE_ERROR,
    HaltReason.STEP_LIMIT: EXIT_BUDGET,
    HaltReason.TAPE_LIMIT: EXIT_BUDGET,
}

TOOLKIT_LOGGERS = ('lang', 'engine', 'tower', 'conformance', 'console')


class ProgramCommand(BaseCommand):
    """Base for commands that read a dbfi-BF source file (or '-' for stdin)."""

    def add_source_argument(self, parser):
        parser.add_argument('source', help="Program file, or '-' to read standard input")

    def add_profile_arguments(self, parser, step_limit):
        parser.add_argument('--profile', help=f"Semantics profile (default {settings.DBFI['DEFAULT_PROFILE']})")
        parser.add_argument('--engine', help='direct or bytecode')
        parser.add_argument('--step-limit', type=int, default=step_limit,
                            help=f'Instruction budget (default {step_limit})')

    def execute(self, *args, **options):
        self.configure_logging(options.get('verbosity', 1))
        return super().execute(*args, **options)

    def configure_logging(self, verbosity):
        if verbosity >= 2:
            level = logging.DEBUG if verbosity >= 3 else logging.INFO
            for name in TOOLKIT_LOGGERS:
                logging.getLogger(name).setLevel(level)

    def read_source(self, path):
        if path == '-':
            return sys.stdin.buffer.read()
        try:
            with open(path, 'rb') as source_file:
                return source_file.read()
        except OSError as exc:
            raise CommandError(f"cannot read {path}: {exc.strerror}", returncode=EXIT_FAILURE)

    def write_bytes(self, data):
        """Write raw bytes to stdout; text streams receive them latin-1 decoded."""
        buffer = getattr(self.stdout, 'buffer', None)
        if buffer is not None:
            self.stdout.flush()
            buffer.write(data)
            buffer.flush()
        else:
            self.stdout.write(data.decode('latin-1'), ending='')

    def validate_flags(self, subcommand, options):
        """CliConfigSerializer over the flags that were actually given."""
        fields = CliConfigSerializer().fields
        cli = CliConfigSerializer(data={
            name: options[name] for name in fields
            if options.get(name) is not None
        } | {'subcommand': subcommand})
        if not cli.is_valid():
            self.validation_failed(cli.errors)
        return cli

    def validation_failed(self, errors):
        messages = '; '.join(
            f"{field}: {' '.join(str(message) for message in field_errors)}"
            for field, field_errors in errors.items()
        )
        raise CommandError(messages, returncode=EXIT_FAILURE)

    def finish(self, outcome):
        """Raise the CommandError matching an abnormal halt."""
        try:
            outcome.raise_for_status()
        except BudgetExceeded as exc:
            raise CommandError(str(exc), returncode=EXIT_BUDGET)
        except EngineError as exc:
            raise CommandError(str(exc), returncode=EXIT_CODES.get(outcome.halt_reason, EXIT_ENGINE_ERROR))

    def parse(self, source):
        try:
            return parse(source)
        except ParseError as exc:
            raise CommandError(f"parse error: {exc}", returncode=EXIT_FAILURE)
