from django.conf import settings

from console.base import ProgramCommand
from lang.parser import split_source
from tower.towers import TowerJob, run_tower


class Command(ProgramCommand):
    help = "Run a dbfi-BF program under a tower of dbfi self-interpreters"

    def add_arguments(self, parser):
        self.add_source_argument(parser)
        self.add_profile_arguments(parser, settings.DBFI['TOWER_STEP_LIMIT'])
        parser.add_argument('--levels', type=int, default=1, help='Number of dbfi levels (default 1)')
        parser.add_argument('--cell-width', type=int)
        parser.add_argument('--data-file', help='Not accepted: tower input always follows the first "!"')

    def handle(self, *args, **options):
        cli = self.validate_flags('tower', options)
        source = self.read_source(options['source'])
        self.parse(source)
        code, data = split_source(source)

        config = cli.engine_config()
        outcome = run_tower(TowerJob(
            program_source=code,
            data=data,
            levels=cli.validated_data['levels'],
            engine=cli.engine_kind(),
            config=config,
            step_budget=config.step_limit,
        ))
        self.write_bytes(outcome.output)
        self.finish(outcome)
