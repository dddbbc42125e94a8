"""Arithmetic foundations: GF(2^m) fields, polynomials over them, and
bit-packed GF(2) linear algebra.

Field elements are plain ints in [0, 2^m); a GF2m instance carries the
reduction polynomial and the lookup tables.  Polynomials over the field
are lists of ints, lowest degree first, with no trailing zeros (the zero
polynomial is the empty list, its degree reported as -1).  Vectors and
matrices over GF(2) pack their bits into Python ints, bit i of the int
being coordinate i.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Iterable, Iterator, Sequence

# Smallest primitive polynomial per extension degree, in integer encoding
# (bit i = coefficient of x^i).  Primitivity is what makes the log/exp
# table construction below cover every nonzero element.
REDUCTION_POLYS = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x402B,
    15: 0x8003,
    16: 0x1002D,
}


class GF2m:
    """The field GF(2^m) under a fixed primitive reduction polynomial.

    Multiplication and inversion go through log/antilog tables indexed by
    powers of x, so construction is O(2^m) and per-operation cost is a few
    lookups.  Intended for m up to 16.
    """

    def __init__(self, m: int, reduction: int | None = None):
        if m not in REDUCTION_POLYS and reduction is None:
            raise ValueError(f"no reduction polynomial on file for m={m}")
        self.m = m
        self.order = 1 << m
        self.reduction = reduction if reduction is not None else REDUCTION_POLYS[m]
        if self.reduction >> m != 1:
            raise ValueError("reduction polynomial must be monic of degree m")
        # exp[i] = x^i; log[exp[i]] = i for i in [0, 2^m - 2]
        exp = [0] * (2 * self.order)
        log = [-1] * self.order
        v = 1
        for i in range(self.order - 1):
            if log[v] != -1:
                # x's powers cycled early: the polynomial is not primitive
                raise ValueError(f"0x{self.reduction:x} is not primitive for m={m}")
            exp[i] = v
            log[v] = i
            v <<= 1
            if v & self.order:
                v ^= self.reduction
        if v != 1:
            raise ValueError(f"0x{self.reduction:x} is not primitive for m={m}")
        for i in range(self.order - 1, 2 * self.order):
            exp[i] = exp[i - (self.order - 1)]
        self.exp = exp
        self.log = log
        # sqrt[a] = a^(2^(m-1)), the inverse of the Frobenius square
        self.sqrt_table = [0] * self.order
        for a in range(1, self.order):
            self.sqrt_table[a] = exp[(log[a] << (m - 1)) % (self.order - 1)]

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of GF(2^{self.m})")
        return a

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverting 0 in GF(2^m)")
        return self.exp[self.order - 1 - self.log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of 0")
            return 0
        return self.exp[(self.log[a] * e) % (self.order - 1)]

    def sqrt(self, a: int) -> int:
        return self.sqrt_table[a]

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, reduction=0x{self.reduction:x})"


_FIELD_CACHE: dict[tuple[int, int | None], GF2m] = {}


def field(m: int, reduction: int | None = None) -> GF2m:
    """Shared GF2m instance for (m, reduction); tables are built once."""
    key = (m, reduction)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = GF2m(m, reduction)
    return _FIELD_CACHE[key]


# ---------------------------------------------------------------------------
# Polynomials over GF(2^m): lists of coefficients, lowest degree first,
# normalized to have no trailing zeros.

def poly_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_degree(p: Sequence[int]) -> int:
    """Degree of a normalized polynomial; -1 stands in for the degree of 0."""
    return len(p) - 1


def poly_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] ^= c
    return poly_trim(out)


def poly_mul(gf: GF2m, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        la = gf.log[ai]
        exp = gf.exp
        log = gf.log
        for j, bj in enumerate(b):
            if bj:
                out[i + j] ^= exp[la + log[bj]]
    return poly_trim(out)


def poly_scale(gf: GF2m, a: Sequence[int], c: int) -> list[int]:
    if c == 0:
        return []
    return poly_trim([gf.mul(ai, c) for ai in a])


def poly_divmod(gf: GF2m, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder of a by b; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lead_inv = gf.inv(b[-1])
    q = [0] * max(len(r) - db, 0)
    for i in range(len(r) - 1, db - 1, -1):
        if r[i] == 0:
            continue
        c = gf.mul(r[i], lead_inv)
        q[i - db] = c
        for j, bj in enumerate(b):
            if bj:
                r[i - db + j] ^= gf.mul(c, bj)
    return poly_trim(q), poly_trim(r)


def poly_rem(gf: GF2m, a: Sequence[int], b: Sequence[int]) -> list[int]:
    return poly_divmod(gf, a, b)[1]


def poly_eval(gf: GF2m, p: Sequence[int], x: int) -> int:
    """Evaluate p at x by Horner's rule."""
    acc = 0
    mul = gf.mul
    for c in reversed(p):
        acc = mul(acc, x) ^ c
    return acc


def poly_sqr(gf: GF2m, p: Sequence[int]) -> list[int]:
    """Square of p; in characteristic 2 this just squares and spreads."""
    if not p:
        return []
    out = [0] * (2 * len(p) - 1)
    for i, c in enumerate(p):
        if c:
            out[2 * i] = gf.mul(c, c)
    return out


def poly_eea_stop(gf: GF2m, a: Sequence[int], b: Sequence[int], stop_degree: int
                  ) -> tuple[list[int], list[int], list[int]]:
    """Extended Euclid on (a, b), halted early.

    Runs the remainder sequence until its degree drops to stop_degree or
    below, and returns (u, v, r) for that first small remainder, with
    u*a + v*b = r.  Requires deg(a) >= deg(b); passing stop_degree = 0
    therefore yields the full gcd run (last nonzero remainder is reached
    once the sequence would go below degree 0).
    """
    if poly_degree(a) < poly_degree(b):
        raise ValueError("poly_eea_stop needs deg(a) >= deg(b)")
    r0, r1 = list(a), list(b)
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while poly_degree(r1) > stop_degree:
        q, r = poly_divmod(gf, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, poly_add(u0, poly_mul(gf, q, u1))
        v0, v1 = v1, poly_add(v0, poly_mul(gf, q, v1))
    return u1, v1, r1


def poly_gcd(gf: GF2m, a: Sequence[int], b: Sequence[int]) -> list[int]:
    r0, r1 = list(a), list(b)
    while r1:
        r0, r1 = r1, poly_rem(gf, r0, r1)
    if r0:
        r0 = poly_scale(gf, r0, gf.inv(r0[-1]))
    return r0


def poly_inv_mod(gf: GF2m, p: Sequence[int], mod: Sequence[int]) -> list[int]:
    """Inverse of p modulo mod; mod must be irreducible and p nonzero mod it."""
    p = poly_rem(gf, p, mod)
    if not p:
        raise ZeroDivisionError("inverting 0 modulo g")
    u, v, r = poly_eea_stop(gf, mod, p, 0)
    # r is a nonzero constant because mod is irreducible and p is nonzero
    if poly_degree(r) != 0:
        raise ValueError("modulus is not irreducible or operand not invertible")
    return poly_scale(gf, v, gf.inv(r[0]))


# ---------------------------------------------------------------------------
# GF(2) vectors and matrices, bit-packed into ints.

_REV8 = bytes(int(f"{i:08b}"[::-1], 2) for i in range(256))


@dataclass(frozen=True, slots=True)
class BitVec:
    """Fixed-length vector over GF(2); bit i of `bits` is coordinate i."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("bits outside declared length")

    @classmethod
    def from_bits(cls, seq: Iterable[int]) -> "BitVec":
        bits = 0
        n = 0
        for b in seq:
            if b & 1:
                bits |= 1 << n
            n += 1
        return cls(n, bits)

    @classmethod
    def random(cls, n: int, rng: Random) -> "BitVec":
        return cls(n, rng.getrandbits(n)) if n else cls(0, 0)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        for _ in range(self.n):
            yield bits & 1
            bits >>= 1

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        return BitVec(self.n, self.bits ^ other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def set_positions(self) -> list[int]:
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def concat(self, other: "BitVec") -> "BitVec":
        return BitVec(self.n + other.n, self.bits | (other.bits << self.n))

    def slice(self, start: int, stop: int) -> "BitVec":
        if not 0 <= start <= stop <= self.n:
            raise ValueError(f"bad slice [{start}, {stop}) of length {self.n}")
        width = stop - start
        return BitVec(width, (self.bits >> start) & ((1 << width) - 1))

    def dot(self, other: "BitVec") -> int:
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")
        return (self.bits & other.bits).bit_count() & 1

    def flip(self, i: int) -> "BitVec":
        if not 0 <= i < self.n:
            raise IndexError(i)
        return BitVec(self.n, self.bits ^ (1 << i))

    def to_bytes(self) -> bytes:
        """Pack MSB-first: coordinate 8j lands in the top bit of byte j."""
        nbytes = (self.n + 7) // 8
        return self.bits.to_bytes(nbytes, "little").translate(_REV8)

    @classmethod
    def from_bytes(cls, data: bytes, n: int) -> "BitVec":
        if len(data) != (n + 7) // 8:
            raise ValueError("byte length does not match bit length")
        bits = int.from_bytes(data.translate(_REV8), "little")
        if bits >> n:
            raise ValueError("stray bits beyond declared length")
        return cls(n, bits)

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self)


@dataclass(frozen=True, slots=True)
class BitMatrix:
    """Matrix over GF(2); row i is an int with bit j = entry (i, j)."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        mask = (1 << self.ncols) - 1
        for r in self.rows:
            if r < 0 or r & ~mask:
                raise ValueError("row has bits outside declared width")

    @classmethod
    def from_rows(cls, rows: Sequence[int], ncols: int) -> "BitMatrix":
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_bitvecs(cls, vecs: Sequence[BitVec]) -> "BitMatrix":
        if not vecs:
            raise ValueError("empty matrix")
        n = vecs[0].n
        return cls(len(vecs), n, tuple(v.bits for v in vecs))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def random(cls, nrows: int, ncols: int, rng: Random) -> "BitMatrix":
        return cls(nrows, ncols, tuple(rng.getrandbits(ncols) for _ in range(nrows)))

    def row(self, i: int) -> BitVec:
        return BitVec(self.ncols, self.rows[i])

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def column_bits(self, j: int) -> int:
        out = 0
        for i, r in enumerate(self.rows):
            out |= ((r >> j) & 1) << i
        return out

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.ncols, self.nrows,
                         tuple(self.column_bits(j) for j in range(self.ncols)))

    def mat_mul(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError("inner dimension mismatch")
        orows = other.rows
        out = []
        for r in self.rows:
            acc = 0
            rr = r
            while rr:
                low = rr & -rr
                acc ^= orows[low.bit_length() - 1]
                rr ^= low
            out.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(out))

    def permute_cols(self, perm: Sequence[int]) -> "BitMatrix":
        """New matrix whose column j is column perm[j] of self."""
        if sorted(perm) != list(range(self.ncols)):
            raise ValueError("not a permutation of the column indices")
        out = []
        for r in self.rows:
            acc = 0
            for j, pj in enumerate(perm):
                acc |= ((r >> pj) & 1) << j
            out.append(acc)
        return BitMatrix(self.nrows, self.ncols, tuple(out))

    def leading_block_is_identity(self) -> bool:
        k = min(self.nrows, self.ncols)
        mask = (1 << k) - 1
        return all((self.rows[i] & mask) == 1 << i for i in range(k))


def mat_vec_mul(v: BitVec, mat: BitMatrix) -> BitVec:
    """Row vector times matrix: XOR of the rows selected by v's set bits."""
    if v.n != mat.nrows:
        raise ValueError(f"vector length {v.n} != row count {mat.nrows}")
    acc = 0
    rows = mat.rows
    bits = v.bits
    while bits:
        low = bits & -bits
        acc ^= rows[low.bit_length() - 1]
        bits ^= low
    return BitVec(mat.ncols, acc)


def permute_vec(v: BitVec, perm: Sequence[int]) -> BitVec:
    """Vector with coordinate j = v[perm[j]] (same convention as permute_cols)."""
    acc = 0
    bits = v.bits
    for j, pj in enumerate(perm):
        acc |= ((bits >> pj) & 1) << j
    return BitVec(v.n, acc)


def invert_permutation(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for j, pj in enumerate(perm):
        inv[pj] = j
    return inv


def _eliminate(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """In-place forward+back elimination; returns (rows, pivot column list)."""
    pivots = []
    rank = 0
    for col in range(ncols):
        sel = None
        for i in range(rank, len(rows)):
            if (rows[i] >> col) & 1:
                sel = i
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        piv = rows[rank]
        for i in range(len(rows)):
            if i != rank and (rows[i] >> col) & 1:
                rows[i] ^= piv
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows, pivots


def gf2_rank(mat: BitMatrix) -> int:
    rows = list(mat.rows)
    _, pivots = _eliminate(rows, mat.ncols)
    return len(pivots)


def gf2_solve(mat: BitMatrix, y: BitVec) -> BitVec | None:
    """Any x with x*mat = y, or None when y is outside the row space."""
    if y.n != mat.ncols:
        raise ValueError(f"target length {y.n} != column count {mat.ncols}")
    # Track which original rows combine into each eliminated row.
    aug = [(mat.rows[i], 1 << i) for i in range(mat.nrows)]
    rank = 0
    acc_y = y.bits
    acc_x = 0
    for col in range(mat.ncols):
        sel = None
        for i in range(rank, len(aug)):
            if (aug[i][0] >> col) & 1:
                sel = i
                break
        if sel is None:
            continue
        aug[rank], aug[sel] = aug[sel], aug[rank]
        prow, pmask = aug[rank]
        for i in range(len(aug)):
            if i != rank and (aug[i][0] >> col) & 1:
                aug[i] = (aug[i][0] ^ prow, aug[i][1] ^ pmask)
        if (acc_y >> col) & 1:
            acc_y ^= prow
            acc_x ^= pmask
        rank += 1
    if acc_y:
        return None
    return BitVec(mat.nrows, acc_x)


def gf2_kernel_basis(mat: BitMatrix) -> tuple[list[BitVec], list[int]]:
    """Basis of {v : mat * v^T = 0} plus the free-column positions.

    Basis vector i has a lone 1 among the free columns, at free column i,
    so stacking the basis gives a generator matrix in reduced echelon form
    up to column order; reading coordinates back off the free columns
    inverts the encoding map.
    """
    rows = list(mat.rows)
    rows, pivots = _eliminate(rows, mat.ncols)
    pivot_set = set(pivots)
    free = [c for c in range(mat.ncols) if c not in pivot_set]
    basis = []
    for f in free:
        bits = 1 << f
        for r, p in zip(rows, pivots):
            if (r >> f) & 1:
                bits |= 1 << p
        basis.append(BitVec(mat.ncols, bits))
    return basis, free


def gf2_invert(mat: BitMatrix) -> BitMatrix | None:
    """Inverse of a square matrix, or None if singular."""
    if mat.nrows != mat.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = mat.nrows
    aug = [mat.rows[i] | (1 << (n + i)) for i in range(n)]
    aug, pivots = _eliminate(aug, n)
    if len(pivots) != n:
        return None
    inv = [0] * n
    for i, col in enumerate(pivots):
        inv[col] = aug[i] >> n
    return BitMatrix(n, n, tuple(inv))


def random_invertible(n: int, rng: Random) -> tuple[BitMatrix, BitMatrix]:
    """Uniform invertible n x n matrix over GF(2), with its inverse.

    Rejection sampling from the uniform distribution on all matrices; the
    invertible fraction tends to ~0.2888, so a handful of draws suffices.
    """
    while True:
        cand = BitMatrix.random(n, n, rng)
        inv = gf2_invert(cand)
        if inv is not None:
            return cand, inv


def bernoulli_vec(n: int, num: int, den: int, rng: Random) -> BitVec:
    """n independent Bernoulli(num/den) bits.

    For a power-of-two denominator the comparison "(d-bit uniform) < num"
    runs bit-sliced across all n positions at once; otherwise it falls
    back to one bounded draw per position.  Either way each bit is 1 with
    probability exactly num/den.
    """
    if not 0 <= num <= den or den <= 0:
        raise ValueError("need 0 <= num <= den")
    if num == 0:
        return BitVec(n, 0)
    if num == den:
        return BitVec(n, (1 << n) - 1)
    if den & (den - 1) == 0:
        d = den.bit_length() - 1
        lt = 0
        eq = (1 << n) - 1
        for k in range(d - 1, -1, -1):
            plane = rng.getrandbits(n)
            if (num >> k) & 1:
                lt |= eq & ~plane
            eq &= ~(plane ^ (((num >> k) & 1) and (1 << n) - 1))
        return BitVec(n, lt & ((1 << n) - 1))
    bits = 0
    for i in range(n):
        if rng.randrange(den) < num:
            bits |= 1 << i
    return BitVec(n, bits)
