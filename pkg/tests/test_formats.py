"""Binary and text characteristic-string formats."""

import pytest

from magkit.bitstring import encode_uvarint
from magkit.core import CompanionTuple, SimpleMag, edge_from_rank
from magkit.errors import (
    BadMagicError,
    DuplicateEdgeError,
    ParseError,
    PaddingError,
    TrailingDataError,
    TruncatedError,
)
from magkit.formats import read_magt, read_mcs, write_magt, write_mcs
from magkit.randgen import GenSpec, generate


def random_mag(sizes, seed, p=(1, 2)):
    return generate(GenSpec(CompanionTuple(sizes), p[0], p[1], seed))


def test_mcs_empty_bytes():
    g = SimpleMag(CompanionTuple((2, 1)))
    assert write_mcs(g) == b"MCS1" + bytes([2, 2, 1, 0])


def test_mcs_single_edge_byte():
    g = SimpleMag.from_edges(CompanionTuple((2, 1)), [((0, 0), (1, 0))])
    data = write_mcs(g)
    assert data[-1] == 0b1000_0000


def test_mcs_roundtrip_random():
    for seed in range(5):
        g = random_mag((8, 4), seed)
        assert read_mcs(write_mcs(g)) == g


def test_mcs_deterministic():
    g = random_mag((5, 3), 11)
    assert write_mcs(g) == write_mcs(g.copy())


def test_mcs_read_then_write_identity():
    for seed in range(3):
        data = write_mcs(random_mag((6, 5), seed))
        assert write_mcs(read_mcs(data)) == data


def test_mcs_bad_magic():
    with pytest.raises(BadMagicError):
        read_mcs(b"XXXX" + bytes([1, 2]))


def test_mcs_truncated_and_trailing():
    data = write_mcs(random_mag((4, 2), 3))
    with pytest.raises(TruncatedError):
        read_mcs(data[:-1])
    with pytest.raises(TrailingDataError):
        read_mcs(data + b"\x00")


def test_mcs_noncanonical_padding():
    g = SimpleMag(CompanionTuple((3,)))  # M = 3, 5 padding bits
    data = bytearray(write_mcs(g))
    data[-1] |= 0x01
    with pytest.raises(PaddingError):
        read_mcs(bytes(data))


def test_magt_empty():
    g = SimpleMag(CompanionTuple((3, 2)))
    assert write_magt(g) == "mag 2 3 2\n"
    assert read_magt("mag 2 3 2\n") == g


def test_magt_edge_line():
    g = SimpleMag.from_edges(CompanionTuple((3, 2)), [((0, 0), (1, 0))])
    assert write_magt(g) == "mag 2 3 2\ne 0 0 1 0\n"


def test_magt_roundtrip_random():
    for seed in range(4):
        g = random_mag((6, 3), seed)
        assert read_magt(write_magt(g)) == g


def test_magt_comments_blanks_and_order():
    text = """
# a comment
mag 2 3 2  # trailing comment

e 0 1 1 0   # larger-index endpoint listed first; reader normalizes
e 0 0 1 0
"""
    g = read_magt(text)
    assert g.edge_count() == 2
    assert g.has_edge((0, 0), (1, 0))
    assert g.has_edge((1, 0), (0, 1))


def test_magt_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as info:
        read_magt("mag 2 3 2\ne 0 0\n")
    assert info.value.line == 2
    with pytest.raises(ParseError) as info:
        read_magt("mag 2 3 2\ne 0 0 x 0\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        read_magt("mag 2 3\n")
    with pytest.raises(ParseError):
        read_magt("e 0 0 1 0\n")
    with pytest.raises(ParseError) as info:
        read_magt("mag 2 3 2\ne 0 0 5 0\n")  # coordinate out of range
    assert info.value.line == 2


def test_magt_duplicate_edge():
    text = "mag 2 3 2\ne 0 0 1 0\ne 1 0 0 0\n"
    with pytest.raises(DuplicateEdgeError) as info:
        read_magt(text)
    assert info.value.line == 3


def test_magt_fuzz_never_crashes():
    import random

    from magkit.errors import MagError

    rng = random.Random(31337)
    base = write_magt(random_mag((5, 3), 2))
    alphabet = "mage 0123456789#\n\t-x"
    for _ in range(500):
        chars = list(base)
        for _ in range(rng.randint(1, 6)):
            pos = rng.randrange(len(chars))
            chars[pos] = rng.choice(alphabet)
        try:
            read_magt("".join(chars))
        except MagError:
            pass


def test_cross_format_bit_membership():
    # bit j of the serialized payload equals membership of edge_from_rank(j)
    g = random_mag((4, 3), 17)
    data = write_mcs(g)
    header_len = 4 + len(encode_uvarint(2)) + len(encode_uvarint(4)) + len(encode_uvarint(3))
    payload = data[header_len:]
    text_edges = set()
    for line in write_magt(g).splitlines()[1:]:
        coords = tuple(int(t) for t in line.split()[1:])
        text_edges.add((coords[:2], coords[2:]))
    for j in range(g.shape.possible_edges):
        bit = bool(payload[j // 8] & (0x80 >> (j % 8)))
        assert bit == (edge_from_rank(g.shape, j) in text_edges)
