from django.test import SimpleTestCase

from lang.instructions import (
    INSTRUCTION_CODES, Instruction, decode_instruction, encode_instruction, encode_program,
)
from lang.parser import parse
from lang.serializers import LatinBytesField, json_lines


class InstructionCodeTestCase(SimpleTestCase):
    def test_codes_from_table(self):
        """Test the codes dbfi uses for a few instructions"""
        self.assertEqual(encode_instruction(Instruction.INPUT), 7)
        self.assertEqual(encode_instruction(Instruction.LOOP_OPEN), 2)
        self.assertEqual(encode_instruction(Instruction.LOOP_CLOSE), 1)

    def test_codes_follow_reverse_ascii_order(self):
        """Test that a higher ASCII character always has a lower code"""
        ordered = sorted(Instruction, key=lambda instruction: instruction.byte)
        self.assertEqual([encode_instruction(i) for i in ordered], [8, 7, 6, 5, 4, 3, 2, 1])

    def test_decode_inverts_encode(self):
        """Test that every code decodes back to its instruction"""
        for instruction, code in INSTRUCTION_CODES.items():
            self.assertIs(decode_instruction(code), instruction)

    def test_decode_rejects_other_values(self):
        """Test that 0 and 9 are not instruction codes"""
        for code in (0, 9, -1):
            with self.assertRaises(ValueError):
                decode_instruction(code)

    def test_encode_program(self):
        """Test the tokenwise encoding of the layout example program"""
        self.assertEqual(encode_program(parse(',[.[-],]')), [7, 2, 5, 2, 6, 1, 7, 1])


class SerializerHelpersTestCase(SimpleTestCase):
    def test_latin_bytes_field(self):
        """Test that every byte value maps to one code point and back"""
        field = LatinBytesField()
        self.assertEqual(field.to_representation(bytes(range(256))), ''.join(map(chr, range(256))))
        self.assertEqual(field.to_internal_value('\xffa'), b'\xffa')

    def test_json_lines(self):
        """Test that each record becomes one newline-terminated JSON document"""
        self.assertEqual(json_lines([{'a': 1}, {'b': 'x'}]), b'{"a":1}\n{"b":"x"}\n')
        self.assertEqual(json_lines([]), b'')
