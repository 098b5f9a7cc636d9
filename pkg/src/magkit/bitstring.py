"""Packed bit strings and varint primitives.

A BitString is a length-carrying bit sequence packed MSB-first within each
byte; padding bits in the final byte are always zero. The canonical packing
makes byte equality equivalent to bit equality, which the file formats rely
on for deterministic round trips.

Varints are unsigned LEB128: 7 data bits per byte, little-endian groups,
high bit marks continuation. Encoding is always minimal and the decoder
rejects non-minimal forms, again so that value equality is byte equality.
"""

from __future__ import annotations

import numpy as np

from .errors import PaddingError, RangeError, TruncatedError, VarintError

# Bit-reversal table: maps each byte to the byte with reversed bit order.
# Lets us convert between MSB-first packed bytes and little-endian integers
# with one bytes.translate plus int.from_bytes, both O(n) in C.
_REVERSED = bytes(int(f"{i:08b}"[::-1], 2) for i in range(256))


def encode_uvarint(value: int) -> bytes:
    if value < 0:
        raise VarintError("varint value must be non-negative")
    out = bytearray()
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def decode_uvarint(data: bytes, pos: int) -> tuple[int, int]:
    """Decode one minimal LEB128 varint at pos; return (value, next_pos)."""
    value = 0
    shift = 0
    start = pos
    while True:
        if pos >= len(data):
            raise TruncatedError("stream ends inside a varint")
        byte = data[pos]
        pos += 1
        if shift >= 63 and byte > 1:
            raise VarintError("varint exceeds 64 bits")
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            if byte == 0 and pos - start > 1:
                raise VarintError("non-minimal varint encoding")
            return value, pos
        shift += 7


class BitString:
    """Fixed-length packed bit sequence, MSB-first per byte, zero padding."""

    __slots__ = ("bit_length", "payload")

    def __init__(self, bit_length: int, payload: bytes | bytearray | None = None):
        if bit_length < 0:
            raise RangeError("bit length must be non-negative")
        nbytes = (bit_length + 7) // 8
        if payload is None:
            payload = bytearray(nbytes)
        else:
            if len(payload) != nbytes:
                raise TruncatedError(
                    f"payload holds {len(payload)} bytes, expected {nbytes}"
                )
            payload = bytearray(payload)
            if bit_length % 8:
                pad_mask = (1 << (8 - bit_length % 8)) - 1
                if payload[-1] & pad_mask:
                    raise PaddingError("padding bits in final byte are not zero")
        self.bit_length = bit_length
        self.payload = payload

    def _check(self, index: int) -> None:
        if not 0 <= index < self.bit_length:
            raise RangeError(f"bit index {index} out of range [0, {self.bit_length})")

    def get(self, index: int) -> bool:
        self._check(index)
        return bool(self.payload[index >> 3] & (0x80 >> (index & 7)))

    def set(self, index: int, value: bool = True) -> None:
        self._check(index)
        mask = 0x80 >> (index & 7)
        if value:
            self.payload[index >> 3] |= mask
        else:
            self.payload[index >> 3] &= ~mask

    def count(self) -> int:
        return sum(b.bit_count() for b in self.payload)

    def to_bytes(self) -> bytes:
        return bytes(self.payload)

    def to_int(self) -> int:
        """Whole string as an integer with bit j of the string at bit j."""
        return int.from_bytes(bytes(self.payload).translate(_REVERSED), "little")

    @classmethod
    def from_int(cls, bit_length: int, value: int) -> "BitString":
        if value < 0 or value >> bit_length:
            raise RangeError("integer does not fit the requested bit length")
        nbytes = (bit_length + 7) // 8
        raw = value.to_bytes(nbytes, "little").translate(_REVERSED)
        return cls(bit_length, raw)

    def to_array(self) -> np.ndarray:
        """Bits as a uint8 array of length bit_length."""
        buf = np.frombuffer(bytes(self.payload), dtype=np.uint8)
        return np.unpackbits(buf, bitorder="big")[: self.bit_length]

    @classmethod
    def from_array(cls, bits: np.ndarray) -> "BitString":
        packed = np.packbits(bits.astype(np.uint8, copy=False), bitorder="big")
        return cls(int(bits.size), packed.tobytes())

    def copy(self) -> "BitString":
        return BitString(self.bit_length, bytes(self.payload))

    def __len__(self) -> int:
        return self.bit_length

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self.bit_length == other.bit_length and self.payload == other.payload

    def __repr__(self) -> str:
        return f"BitString({self.bit_length}, {bytes(self.payload).hex()!r})"
