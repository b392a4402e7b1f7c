from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from engine import direct
from engine.direct import DirectEngine
from engine.state import SnapshotPolicy
from lang.instructions import encode_program
from lang.parser import parse
from tower.dbfi import DBFI_SOURCE, fetch_boundary_set
from tower.exceptions import DecodeError
from tower.layout import LayoutPrediction, ShadowState, decode_layout, predict_layout, trim_cells

PRINTED_LAYOUT = (7, 2, 0, 0, 5, 2, 6, 1, 7, 1, 0, 0, 2, 97)


@st.composite
def shadow_states(draw):
    codes = tuple(draw(st.lists(st.integers(1, 8), max_size=20)))
    sim_ip = draw(st.integers(0, len(codes)))
    sim_head = draw(st.integers(0, 12))
    values = draw(st.lists(st.integers(0, 255), max_size=16))
    return ShadowState(codes=codes, sim_ip=sim_ip, sim_cells=trim_cells(values, sim_head), sim_head=sim_head)


class DecodeLayoutTestCase(SimpleTestCase):
    def test_printed_example(self):
        """Test the layout of ',[.[-],]' reading 'a', about to output"""
        shadow = decode_layout(PRINTED_LAYOUT + (0,) * 6)
        self.assertEqual(shadow.codes, (7, 2, 5, 2, 6, 1, 7, 1))
        self.assertEqual(shadow.sim_ip, 2)
        self.assertEqual(shadow.sim_cells, (97,))
        self.assertEqual(shadow.sim_head, 0)

    def test_empty_program(self):
        """Test the layout of a program without instructions"""
        shadow = decode_layout((0, 0, 0, 0, 2, 0, 0, 0))
        self.assertEqual(shadow.codes, ())
        self.assertEqual(shadow.sim_ip, 0)
        self.assertEqual(shadow.sim_cells, (0,))
        self.assertEqual(shadow.sim_head, 0)

    def test_head_cell_is_checked(self):
        """Test that the host head must sit after the last code"""
        self.assertEqual(decode_layout(PRINTED_LAYOUT, head=9).sim_ip, 2)
        with self.assertRaises(DecodeError):
            decode_layout(PRINTED_LAYOUT, head=4)

    def test_invalid_marker(self):
        """Test that a marker other than 0 or 2 is rejected"""
        with self.assertRaises(DecodeError):
            decode_layout((8, 0, 0, 0, 0, 3, 1))

    def test_marker_order(self):
        """Test that a 2 marker after a 0 marker is rejected"""
        with self.assertRaises(DecodeError):
            decode_layout((8, 0, 0, 0, 0, 2, 1, 0, 0, 2, 5))

    def test_missing_head_marker(self):
        """Test that the first cell pair must carry the head marker"""
        with self.assertRaises(DecodeError):
            decode_layout((8, 0, 0, 0, 0, 0, 1))

    def test_lone_zero_between_codes(self):
        """Test that a single zero inside the code is not an IP pair"""
        with self.assertRaises(DecodeError):
            decode_layout((8, 0, 5, 0, 0, 0, 0, 2, 0))

    def test_code_cell_out_of_range(self):
        """Test that code cells must hold 1..8"""
        with self.assertRaises(DecodeError):
            decode_layout((9, 0, 0, 0, 0, 2, 0))


class PredictLayoutTestCase(SimpleTestCase):
    def test_printed_example(self):
        """Test the prediction for the printed example"""
        shadow = ShadowState(codes=(7, 2, 5, 2, 6, 1, 7, 1), sim_ip=2, sim_cells=(97,), sim_head=0)
        self.assertEqual(predict_layout(shadow), LayoutPrediction(cells=PRINTED_LAYOUT, head=9))

    def test_prefix_length(self):
        """Test that the prefix covers every cell up to the head"""
        shadow = ShadowState(codes=(8, 3), sim_ip=1, sim_cells=(1,), sim_head=3)
        cells = predict_layout(shadow).cells
        self.assertEqual(len(cells), 2 + 4 + 2 * 4)
        self.assertEqual(cells[6:], (2, 1, 2, 0, 2, 0, 2, 0))

    def test_shadow_validation(self):
        """Test the ShadowState invariants"""
        with self.assertRaises(ValueError):
            ShadowState(codes=(1,), sim_ip=2, sim_cells=(), sim_head=0)
        with self.assertRaises(ValueError):
            ShadowState(codes=(0,), sim_ip=0, sim_cells=(), sim_head=0)
        with self.assertRaises(ValueError):
            ShadowState(codes=(), sim_ip=0, sim_cells=(256,), sim_head=0)
        with self.assertRaises(ValueError):
            ShadowState(codes=(), sim_ip=0, sim_cells=(), sim_head=-1)

    @settings(max_examples=1000, deadline=None)
    @given(shadow_states())
    def test_decode_inverts_predict(self, shadow):
        """Test that decoding a predicted layout returns the same state"""
        prediction = predict_layout(shadow)
        self.assertEqual(decode_layout(prediction.cells + (0, 0, 0), prediction.head), shadow)


class HostLayoutTestCase(SimpleTestCase):
    def test_printed_layout_appears_in_dbfi(self):
        """Test dbfi's memory when it is about to execute the '.' of ',[.[-],]'"""
        dbfi = parse(DBFI_SOURCE)
        _, events = direct.run_traced(
            dbfi, b',[.[-],]!a', policy=SnapshotPolicy.at_ip(fetch_boundary_set(dbfi)),
        )
        matching = [event for event in events if decode_layout(event.tape).sim_ip == 2]
        self.assertTrue(matching)
        tape = matching[0].tape
        self.assertEqual(tape[:len(PRINTED_LAYOUT)], PRINTED_LAYOUT)
        self.assertTrue(all(value == 0 for value in tape[len(PRINTED_LAYOUT):]))
        self.assertEqual(matching[0].head, 9)

    def test_from_machine(self):
        """Test the shadow view of a direct-engine state"""
        program = parse(',>,!ab')
        outcome = DirectEngine(program).run()
        shadow = ShadowState.from_machine(encode_program(program), outcome.final_state)
        self.assertEqual(shadow.sim_cells, (97, 98))
        self.assertEqual(shadow.sim_head, 1)
        self.assertEqual(shadow.sim_ip, 3)
        self.assertEqual(shadow.executed_count, 3)
