"""Low-level wire encoding primitives.

Everything on disk reduces to these: little-endian fixed-width integers,
bit-vectors packed MSB-first per byte with a u32 bit-length prefix, bit
matrices packed row-major (each row padded to whole bytes), and u32
count-prefixed sequences.  The canonical byte form of a component tuple
(pack_bitvec_seq) doubles as the signature input for the CCA2 wrapping,
so it must never change shape.
"""

from __future__ import annotations

from typing import Callable, Sequence, TypeVar

from .algebra import BitMatrix, BitVec

T = TypeVar("T")


class WireError(ValueError):
    """Malformed bytes: bad framing, lengths, or values."""


class Reader:
    """Cursor over immutable bytes; every read is bounds-checked."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if n < 0 or self.pos + n > len(self.data):
            raise WireError("truncated input")
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def u16(self) -> int:
        return int.from_bytes(self.take(2), "little")

    def u32(self) -> int:
        return int.from_bytes(self.take(4), "little")

    def u64(self) -> int:
        return int.from_bytes(self.take(8), "little")

    def bitvec(self, expect_len: int | None = None) -> BitVec:
        n = self.u32()
        if n > 1 << 26:
            raise WireError("implausible bit length")
        if expect_len is not None and n != expect_len:
            raise WireError(f"bit length {n}, expected {expect_len}")
        try:
            return BitVec.from_bytes(self.take((n + 7) // 8), n)
        except ValueError as exc:
            raise WireError(str(exc)) from None

    def matrix(self) -> BitMatrix:
        nrows = self.u32()
        ncols = self.u32()
        if nrows > 1 << 20 or ncols > 1 << 20:
            raise WireError("implausible matrix shape")
        row_bytes = (ncols + 7) // 8
        try:
            rows = [BitVec.from_bytes(self.take(row_bytes), ncols).bits
                    for _ in range(nrows)]
            return BitMatrix.from_rows(rows, ncols)
        except WireError:
            raise
        except ValueError as exc:
            raise WireError(str(exc)) from None

    def seq(self, item: Callable[["Reader"], T]) -> list[T]:
        count = self.u32()
        if count > 1 << 24:
            raise WireError("implausible sequence length")
        return [item(self) for _ in range(count)]

    def u32_seq(self) -> list[int]:
        return self.seq(lambda r: r.u32())

    def done(self) -> None:
        if self.pos != len(self.data):
            raise WireError("trailing bytes after payload")


def u16(v: int) -> bytes:
    return v.to_bytes(2, "little")


def u32(v: int) -> bytes:
    return v.to_bytes(4, "little")


def u64(v: int) -> bytes:
    return v.to_bytes(8, "little")


def bitvec(v: BitVec) -> bytes:
    return u32(v.n) + v.to_bytes()


def matrix(mat: BitMatrix) -> bytes:
    out = bytearray(u32(mat.nrows) + u32(mat.ncols))
    for i in range(mat.nrows):
        out += mat.row(i).to_bytes()
    return bytes(out)


def seq(items: Sequence[T], encode: Callable[[T], bytes]) -> bytes:
    out = bytearray(u32(len(items)))
    for it in items:
        out += encode(it)
    return bytes(out)


def u32_seq(items: Sequence[int]) -> bytes:
    return seq(items, u32)


def pack_bitvec_seq(vecs: Sequence[BitVec]) -> bytes:
    """Canonical bytes of a tuple of bit-vectors (the signing format)."""
    return seq(vecs, bitvec)


def unpack_bitvec_seq(data: bytes) -> list[BitVec]:
    r = Reader(data)
    out = r.seq(lambda rr: rr.bitvec())
    r.done()
    return out
