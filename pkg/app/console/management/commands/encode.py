from console.base import ProgramCommand
from lang.instructions import encode_program


class Command(ProgramCommand):
    help = "Print dbfi's instruction codes (1..8) for every token of a program"

    def add_arguments(self, parser):
        self.add_source_argument(parser)

    def handle(self, *args, **options):
        program = self.parse(self.read_source(options['source']))
        self.stdout.write(' '.join(str(code) for code in encode_program(program)))
