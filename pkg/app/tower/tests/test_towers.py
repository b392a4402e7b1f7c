import os
import unittest

from django.test import SimpleTestCase

from engine.config import EngineConfig
from engine.state import HaltReason
from lang.parser import parse, split_source
from tower.dbfi import DBFI_SOURCE, fetch_boundary_set, locate_fetch_boundary
from tower.exceptions import StructureMismatch
from tower.towers import EngineKind, TowerJob, compose_tower, run_tower

DBFI = DBFI_SOURCE.encode('ascii')
QUINE = b'>,[.>,]<[<]>[.>]!>,[.>,]<[<]>[.>]!'
SLOW_TESTS = os.environ.get('DBFI_SLOW_TESTS') == '1'


def job_for(source, levels, **kwargs):
    code, data = split_source(source)
    return TowerJob(program_source=code, data=data, levels=levels, **kwargs)


class DbfiSourceTestCase(SimpleTestCase):
    def test_source_shape(self):
        """Test the embedded interpreter's fixed properties"""
        self.assertNotIn('!', DBFI_SOURCE)
        program = parse(DBFI_SOURCE)
        self.assertEqual(len(program), 423)
        self.assertLessEqual(program.max_depth, 8)

    def test_fetch_boundary(self):
        """Test that the execute loop opens at token 160"""
        program = parse(DBFI_SOURCE)
        self.assertEqual(locate_fetch_boundary(program), 160)
        self.assertEqual(fetch_boundary_set(program), frozenset({160, 161}))

    def test_fetch_boundary_ignores_whitespace(self):
        """Test that reformatting the source does not move the boundary"""
        reflowed = DBFI_SOURCE.replace('\n', '') + '\n  \n'
        self.assertEqual(locate_fetch_boundary(parse(reflowed)), 160)

    def test_structure_mismatch(self):
        """Test that a program with one top-level loop is rejected"""
        with self.assertRaises(StructureMismatch):
            locate_fetch_boundary(parse('+[>[-]<]'))


class ComposeTowerTestCase(SimpleTestCase):
    def test_level_zero_is_identity(self):
        """Test that level 0 runs the program as given"""
        self.assertEqual(compose_tower(TowerJob(program_source='a!', data=b'')), (b'a!', b''))

    def test_level_one(self):
        """Test that level 1 feeds program and data to dbfi"""
        code, stream = compose_tower(TowerJob(program_source=',+.', data=b'a', levels=1))
        self.assertEqual(code, DBFI)
        self.assertEqual(stream, b',+.!a')

    def test_level_two(self):
        """Test that level 2 puts another dbfi in front of the program"""
        _, stream = compose_tower(TowerJob(program_source=',+.', data=b'a', levels=2))
        self.assertEqual(stream, DBFI + b'!' + b',+.!a')

    def test_negative_levels(self):
        """Test that a negative level count is rejected"""
        with self.assertRaises(ValueError):
            TowerJob(program_source='+', levels=-1)

    def test_engine_from_text(self):
        """Test that the engine may be named by its value"""
        self.assertIs(TowerJob(program_source='+', engine='direct').engine, EngineKind.DIRECT)


class RunTowerTestCase(SimpleTestCase):
    examples = (
        (b',+.!a', b'b'),
        (b'a!', b''),
        (b',[>+>+<<-]>.>.!X', b'XX'),
        (QUINE, QUINE),
        (b'+,.!', b'\x01'),
    )

    def test_level_zero(self):
        """Test the example suite on both engines without dbfi"""
        for source, expected in self.examples:
            for engine in EngineKind:
                with self.subTest(source=source, engine=engine):
                    self.assertEqual(run_tower(job_for(source, 0, engine=engine)).output, expected)

    def test_level_one(self):
        """Test the example suite under one dbfi"""
        for source, expected in self.examples:
            with self.subTest(source=source):
                outcome = run_tower(job_for(source, 1))
                self.assertEqual(outcome.halt_reason, HaltReason.COMPLETED)
                self.assertEqual(outcome.output, expected)

    def test_level_one_direct_engine(self):
        """Test that the direct engine hosts dbfi the same way"""
        self.assertEqual(run_tower(job_for(b',+.!a', 1, engine=EngineKind.DIRECT)).output, b'b')

    def test_level_one_final_tape(self):
        """Test that dbfi leaves the simulated cells where ',>,!ab' puts them"""
        outcome = run_tower(job_for(b',>,!ab', 1))
        self.assertIn(bytes([2, 97, 2, 98]), bytes(outcome.final_state.tape.snapshot()[1]))

    def test_deep_nesting_level_one(self):
        """Test 124 nested loops under dbfi"""
        source = b'+' + b'[' * 124 + b'-' + b']' * 124 + b'+.'
        self.assertEqual(run_tower(job_for(source, 0)).output, b'\x01')
        self.assertEqual(run_tower(job_for(source, 1)).output, b'\x01')

    def test_step_budget(self):
        """Test that the budget stops a tower that runs too long"""
        outcome = run_tower(job_for(b'+[]', 1, step_budget=20_000))
        self.assertEqual(outcome.halt_reason, HaltReason.STEP_LIMIT)

    def test_wide_cells_at_level_zero(self):
        """Test that level 0 honours the configured cell width"""
        outcome = run_tower(job_for(b'-.', 0, config=EngineConfig(cell_width=16)))
        self.assertEqual(outcome.final_state.tape[0], 0xFFFF)

    @unittest.skipUnless(SLOW_TESTS, 'set DBFI_SLOW_TESTS=1 to run two-level towers')
    def test_level_two(self):
        """Test two stacked interpreters"""
        for source, expected in ((b',+.!a', b'b'), (b'a!', b'')):
            with self.subTest(source=source):
                outcome = run_tower(job_for(source, 2, step_budget=10 ** 10))
                self.assertEqual(outcome.output, expected)
