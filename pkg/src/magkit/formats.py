"""Characteristic-string file codecs.

Binary (.mcs):  magic "MCS1", varint p, varints n_1..n_p, then the packed
characteristic string (MSB-first, zero padding). Equal MAGs serialize to
identical bytes and the reader rejects every non-canonical stream, so byte
equality is MAG equality.

Text (.magt):   header line "mag p n_1 ... n_p", one line per present edge
"e a_1 ... a_p b_1 ... b_p" with the smaller-vertex-index endpoint first and
lines sorted by edge rank. "#" starts a comment; blank lines are ignored on
read. Writing is canonical, reading is lenient about edge order.
"""

from __future__ import annotations

from .bitstring import BitString, decode_uvarint, encode_uvarint
from .core import CompanionTuple, SimpleMag, edge_from_rank, edge_rank
from .errors import (
    BadMagicError,
    DuplicateEdgeError,
    MagError,
    ParseError,
    TrailingDataError,
    TruncatedError,
)

MCS_MAGIC = b"MCS1"


def write_mcs(g: SimpleMag) -> bytes:
    out = bytearray(MCS_MAGIC)
    out += encode_uvarint(g.shape.order)
    for n in g.shape.sizes:
        out += encode_uvarint(n)
    out += g.bits.payload
    return bytes(out)


def read_mcs(data: bytes) -> SimpleMag:
    if data[:4] != MCS_MAGIC:
        raise BadMagicError(f"expected magic {MCS_MAGIC!r}")
    pos = 4
    order, pos = decode_uvarint(data, pos)
    sizes = []
    for _ in range(order):
        n, pos = decode_uvarint(data, pos)
        sizes.append(n)
    shape = CompanionTuple(sizes)
    expected = (shape.possible_edges + 7) // 8
    remaining = len(data) - pos
    if remaining < expected:
        raise TruncatedError(
            f"payload holds {remaining} bytes, shape requires {expected}"
        )
    if remaining > expected:
        raise TrailingDataError(f"{remaining - expected} bytes past the payload")
    bits = BitString(shape.possible_edges, data[pos:])
    return SimpleMag(shape, bits)


def write_magt(g: SimpleMag) -> str:
    lines = ["mag " + " ".join(str(n) for n in (g.shape.order, *g.shape.sizes))]
    for u, v in g.edges():
        lines.append("e " + " ".join(str(c) for c in (*u, *v)))
    return "\n".join(lines) + "\n"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError("expected integers", line=lineno) from None


def read_magt(text: str) -> SimpleMag:
    g = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if g is None:
            if tokens[0] != "mag":
                raise ParseError(f"expected 'mag' header, got {tokens[0]!r}", line=lineno)
            fields = _ints(tokens[1:], lineno)
            if not fields:
                raise ParseError("header is missing the order", line=lineno)
            order, sizes = fields[0], fields[1:]
            if len(sizes) != order:
                raise ParseError(
                    f"header declares order {order} but lists {len(sizes)} sizes",
                    line=lineno,
                )
            try:
                g = SimpleMag(CompanionTuple(sizes))
            except MagError as exc:
                raise ParseError(str(exc), line=lineno) from exc
            continue
        if tokens[0] != "e":
            raise ParseError(f"expected 'e' line, got {tokens[0]!r}", line=lineno)
        coords = _ints(tokens[1:], lineno)
        p = g.shape.order
        if len(coords) != 2 * p:
            raise ParseError(
                f"edge line has {len(coords)} coordinates, expected {2 * p}",
                line=lineno,
            )
        try:
            rank = edge_rank(g.shape, coords[:p], coords[p:])
        except MagError as exc:
            raise ParseError(str(exc), line=lineno) from exc
        if g.bits.get(rank):
            u, v = edge_from_rank(g.shape, rank)
            raise DuplicateEdgeError(f"edge {u} -- {v} repeated", line=lineno)
        g.bits.set(rank)
    if g is None:
        raise ParseError("no 'mag' header found")
    return g
