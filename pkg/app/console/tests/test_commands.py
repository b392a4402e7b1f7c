import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from tower.dbfi import DBFI_SOURCE

QUINE = b'>,[.>,]<[<]>[.>]!>,[.>,]<[<]>[.>]!'


class CommandTestMixin:
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.directory = Path(directory.name)

    def write(self, name, content):
        path = self.directory / name
        path.write_bytes(content)
        return str(path)

    def call(self, command, *args, **options):
        out = StringIO()
        call_command(command, *args, stdout=out, stderr=StringIO(), **options)
        return out.getvalue()

    def assertExitCode(self, returncode, command, *args, **options):
        with self.assertRaises(CommandError) as ctx:
            self.call(command, *args, **options)
        self.assertEqual(ctx.exception.returncode, returncode)
        return ctx.exception


class RunCommandTestCase(CommandTestMixin, SimpleTestCase):
    def test_program_output(self):
        """Test that run prints exactly the program output"""
        self.assertEqual(self.call('run', self.write('inc.b', b',+.!a')), 'b')

    def test_both_engines(self):
        """Test the copy example on each engine"""
        path = self.write('copy.b', b',[>+>+<<-]>.>.!X')
        for engine in ('direct', 'bytecode', 'appendix'):
            with self.subTest(engine=engine):
                self.assertEqual(self.call('run', path, engine=engine), 'XX')

    def test_parse_error(self):
        """Test that unbalanced code exits with 1"""
        error = self.assertExitCode(1, 'run', self.write('bad.b', b'['))
        self.assertIn('offset 0', str(error))

    def test_underflow(self):
        """Test that '<!' is an engine error under the portable profile"""
        self.assertExitCode(2, 'run', self.write('left.b', b'<!'), profile='portable')

    def test_appendix_profile_allows_underflow(self):
        """Test that the appendix profile runs '<!' to completion"""
        self.assertEqual(self.call('run', self.write('left.b', b'<!'), profile='appendix'), '')

    def test_step_limit(self):
        """Test that running out of steps exits with 3"""
        self.assertExitCode(3, 'run', self.write('loop.b', b'+[]'), step_limit=100)

    def test_tape_limit(self):
        """Test that the tape limit is a budget failure"""
        self.assertExitCode(3, 'run', self.write('far.b', b'>>>>'), tape_limit=2)

    def test_data_file(self):
        """Test that --data-file replaces the '!' suffix"""
        path = self.write('inc.b', b',+.!a')
        data = self.write('data', b'y')
        self.assertEqual(self.call('run', path, data_file=data), 'z')

    def test_cell_width(self):
        """Test that output is the low byte of a wide cell"""
        self.assertEqual(self.call('run', self.write('dec.b', b'-.'), cell_width=16), '\xff')

    def test_trace(self):
        """Test that tracing writes one record per event and keeps stdout clean"""
        trace = self.directory / 'trace.jsonl'
        output = self.call('run', self.write('inc.b', b',+.!a'), trace=str(trace), snapshot='every:1')
        self.assertEqual(output, 'b')
        records = [json.loads(line) for line in trace.read_text().splitlines()]
        self.assertEqual([record['instruction'] for record in records], [',', '+', '.'])
        self.assertEqual(records[2]['tape'][records[2]['head'] - records[2]['tape_start']], 98)

    def test_invalid_flag_combinations(self):
        """Test that contradictory flags are rejected before running"""
        path = self.write('inc.b', b',+.!a')
        self.assertExitCode(1, 'run', path, snapshot='every:1')
        self.assertExitCode(1, 'run', path, trace=str(self.directory / 't'), engine='bytecode')
        self.assertExitCode(1, 'run', path, cell_width=12)
        self.assertExitCode(1, 'run', path, profile='fast')
        self.assertExitCode(1, 'run', path, trace=str(self.directory / 't'), snapshot='often')

    def test_appendix_engine_rejects_portable_profile(self):
        """Test that the scanning interpreter cannot be asked for portable semantics"""
        path = self.write('left.b', b'<!')
        self.assertExitCode(1, 'run', path, engine='appendix', profile='portable')
        self.assertEqual(self.call('run', path, engine='appendix'), '')
        self.assertEqual(self.call('run', path, engine='appendix', profile='appendix'), '')

    def test_missing_file(self):
        """Test that an unreadable source exits with 1"""
        self.assertExitCode(1, 'run', str(self.directory / 'missing.b'))


class TowerCommandTestCase(CommandTestMixin, SimpleTestCase):
    def test_quine_at_level_one(self):
        """Test that the quine survives one dbfi"""
        output = self.call('tower', self.write('quine.b', QUINE), levels=1)
        self.assertEqual(output.encode('latin-1'), QUINE)

    def test_level_zero_is_run(self):
        """Test that level 0 behaves like run"""
        path = self.write('copy.b', b',[>+>+<<-]>.>.!X')
        self.assertEqual(self.call('tower', path, levels=0), self.call('run', path))

    def test_data_file_rejected(self):
        """Test that towers take their data from the '!' suffix only"""
        path = self.write('inc.b', b',+.!a')
        self.assertExitCode(1, 'tower', path, data_file=path)

    def test_wide_cells_rejected(self):
        """Test that dbfi levels need 8-bit cells"""
        self.assertExitCode(1, 'tower', self.write('inc.b', b',+.!a'), levels=1, cell_width=16)

    def test_budget(self):
        """Test that an endless tower exits with 3"""
        self.assertExitCode(3, 'tower', self.write('loop.b', b'+[]'), levels=1, step_limit=50_000)


class LayoutCommandTestCase(CommandTestMixin, SimpleTestCase):
    def records(self, text):
        return [json.loads(line) for line in text.splitlines()]

    def test_printed_example(self):
        """Test that every boundary of ',[.[-],]!a' passes"""
        records = self.records(self.call('layout', self.write('ex.b', b',[.[-],]!a')))
        self.assertTrue(all(record['verdict'] == 'pass' for record in records[:-1]))
        self.assertTrue(records[-1]['passed'])

    def test_empty_program(self):
        """Test that an empty program gives a passing report"""
        records = self.records(self.call('layout', self.write('empty.b', b'')))
        self.assertTrue(records[-1]['passed'])

    def test_report_file(self):
        """Test that --output keeps stdout empty"""
        report = self.directory / 'report.jsonl'
        self.assertEqual(self.call('layout', self.write('ex.b', b',+.!a'), output=str(report)), '')
        self.assertEqual(self.records(report.read_text())[-1]['record'], 'summary')

    def test_corrupted_interpreter(self):
        """Test that a dbfi with one broken instruction fails the check"""
        broken = self.write('broken.b', DBFI_SOURCE.replace('<<[>+>]', '<<[>->]').encode('ascii'))
        with self.assertRaises(CommandError) as ctx:
            self.call('layout', self.write('ex.b', b',+.!a'), dbfi_file=broken, step_limit=10 ** 6)
        self.assertNotEqual(ctx.exception.returncode, 0)

    def test_program_failing_at_level_zero(self):
        """Test that an underflowing program is an engine error"""
        self.assertExitCode(2, 'layout', self.write('left.b', b'<!'))


class SmallCommandsTestCase(CommandTestMixin, SimpleTestCase):
    def test_encode(self):
        """Test the instruction codes of the layout example"""
        self.assertEqual(self.call('encode', self.write('ex.b', b',[.[-],]!')), '7 2 5 2 6 1 7 1\n')

    def test_compile_disasm(self):
        """Test the disassembly of '+++!'"""
        self.assertEqual(self.call('compile', self.write('add.b', b'+++!'), disasm=True), 'ADD +3\n')

    def test_compile_summary(self):
        """Test the one-line compile summary"""
        self.assertEqual(self.call('compile', self.write('zero.b', b'+[-]')), '2 ops from 4 tokens\n')


class FuzzCommandTestCase(CommandTestMixin, TestCase):
    def test_no_cases(self):
        """Test that zero cases is a clean run with an empty report"""
        self.assertEqual(self.call('fuzz', cases=0), '')

    def test_report_records(self):
        """Test one report record per case"""
        output = self.call('fuzz', seed=3, cases=5, levels=0, max_tokens=16, step_limit=5_000)
        records = [json.loads(line) for line in output.splitlines()]
        self.assertEqual([record['index'] for record in records], list(range(5)))
        self.assertTrue(all(record['verdict'] in ('agree', 'skipped') for record in records))

    def test_level_one(self):
        """Test a small level-1 run"""
        report = self.directory / 'report.jsonl'
        self.call('fuzz', seed=8, cases=4, levels=1, max_tokens=12, step_limit=1_000, report=str(report))
        self.assertEqual(len(report.read_text().splitlines()), 4)

    def test_mutant_writes_repro_files(self):
        """Test that a broken engine fails the run and leaves repro files"""
        repro_dir = self.directory / 'repro'
        error = self.assertExitCode(
            1, 'fuzz', seed=0, cases=40, levels=0, max_tokens=24, step_limit=5_000,
            mutant='swapped-inc-dec', repro_dir=str(repro_dir),
        )
        self.assertIn('disagreements', str(error))
        repro_files = list(repro_dir.glob('*.b!'))
        self.assertTrue(repro_files)
        self.assertIn(b'!', repro_files[0].read_bytes())

    def test_invalid_mutant(self):
        """Test that unknown mutants are rejected"""
        self.assertExitCode(1, 'fuzz', cases=1, mutant='flaky')
