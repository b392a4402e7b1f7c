from console.base import ProgramCommand
from engine import bytecode


class Command(ProgramCommand):
    help = "Compile a program to bytecode and print a summary or the disassembly"

    def add_arguments(self, parser):
        self.add_source_argument(parser)
        parser.add_argument('--disasm', action='store_true', help='Print one line per op')

    def handle(self, *args, **options):
        program = self.parse(self.read_source(options['source']))
        compiled = bytecode.compile(program)
        if options['disasm']:
            for line in bytecode.disassemble(compiled):
                self.stdout.write(line)
        else:
            self.stdout.write(f"{len(compiled)} ops from {compiled.token_count} tokens")
