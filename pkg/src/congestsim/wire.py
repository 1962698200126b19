"""Bit-string encoding helpers.

Messages in the simulator are strings of '0'/'1'.  Algorithms in this
package keep every numeric payload aligned to fixed-width fields (the
field width is the id width of the run) so that the number of physical
rounds spent on a logical exchange depends only on the field count, never
on the graph size.  `fragment_payload` is the generic fallback for
payloads that are not field-aligned: each chunk spends one bit on a
continuation flag.
"""
from __future__ import annotations

from .errors import InvalidParams, ProtocolError


def encode_fields(values, width: int) -> str:
    """Pack non-negative integers into consecutive fixed-width fields."""
    if width < 1:
        raise InvalidParams("field width must be at least 1")
    parts = []
    top = 1 << width
    for v in values:
        if v < 0 or v >= top:
            raise InvalidParams(f"value {v} does not fit in {width} bits")
        parts.append(format(v, f"0{width}b"))
    return "".join(parts)


def decode_fields(bits: str, width: int) -> list[int]:
    """Inverse of encode_fields; the string length must be a multiple of width."""
    if width < 1:
        raise InvalidParams("field width must be at least 1")
    if len(bits) % width != 0:
        raise ProtocolError(f"bit string of length {len(bits)} is not field aligned")
    return [int(bits[i : i + width], 2) for i in range(0, len(bits), width)]


class FieldReader:
    """Sequential reader over a field-aligned bit string."""

    __slots__ = ("bits", "width", "pos")

    def __init__(self, bits: str, width: int):
        self.bits = bits
        self.width = width
        self.pos = 0

    def read(self) -> int:
        end = self.pos + self.width
        if end > len(self.bits):
            raise ProtocolError("message truncated: ran out of fields")
        v = int(self.bits[self.pos : end], 2)
        self.pos = end
        return v

    def read_many(self, count: int) -> list[int]:
        return [self.read() for _ in range(count)]

    def exhausted(self) -> bool:
        return self.pos >= len(self.bits)


def fragment_payload(payload: str, budget_bits: int) -> list[str]:
    """Split a payload into chunks that fit the per-round budget.

    Each chunk starts with a continuation bit ('1' means more chunks
    follow), so the usable capacity per chunk is budget_bits - 1.  An
    empty payload yields no chunks.
    """
    if budget_bits < 2:
        raise InvalidParams("budget must leave room for a header bit and payload")
    if not payload:
        return []
    cap = budget_bits - 1
    chunks = []
    for start in range(0, len(payload), cap):
        part = payload[start : start + cap]
        more = "1" if start + cap < len(payload) else "0"
        chunks.append(more + part)
    return chunks


def reassemble(chunks) -> str:
    """Concatenate fragment chunks back into the original payload."""
    chunks = list(chunks)
    if not chunks:
        return ""
    out = []
    for i, chunk in enumerate(chunks):
        if not chunk:
            raise ProtocolError("empty fragment chunk")
        more, part = chunk[0], chunk[1:]
        expected = "1" if i < len(chunks) - 1 else "0"
        if more != expected:
            raise ProtocolError("fragment continuation flags are inconsistent")
        out.append(part)
    return "".join(out)
