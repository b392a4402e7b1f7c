from rest_framework import serializers
from rest_framework.renderers import JSONRenderer


class LatinBytesField(serializers.Field):
    """Bytes rendered as text where each byte becomes the code point of the same value."""

    def to_representation(self, value):
        return bytes(value).decode('latin-1')

    def to_internal_value(self, data):
        if isinstance(data, (bytes, bytearray)):
            return bytes(data)
        try:
            return str(data).encode('latin-1')
        except UnicodeEncodeError:
            raise serializers.ValidationError("Only code points below 256 can be stored as bytes")


class InstructionField(serializers.Field):
    def to_representation(self, value):
        return value.char


def json_lines(records):
    """One compact JSON document per record, newline terminated."""
    renderer = JSONRenderer()
    return b''.join(renderer.render(record) + b'\n' for record in records)
