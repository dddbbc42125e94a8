"""Binary irreducible Goppa codes with Patterson decoding.

A code is built from a monic irreducible g of degree t over GF(2^m) and a
shuffled support of field elements where g does not vanish.  For t >= 2 an
irreducible g has no roots in the base field, so the support is all of
GF(2^m) and the code has length n = 2^m and dimension l = n - t*m; degree-1
g always has its single root excluded, shortening the support by one.

The decoder corrects any error of weight up to t and reports failure
otherwise; failure is a return value, never an exception.
"""

from __future__ import annotations

from random import Random
from typing import Sequence

from .algebra import (
    BitMatrix,
    BitVec,
    GF2m,
    field,
    gf2_kernel_basis,
    gf2_rank,
    mat_vec_mul,
    poly_add,
    poly_degree,
    poly_eea_stop,
    poly_eval,
    poly_gcd,
    poly_inv_mod,
    poly_rem,
    poly_sqr,
    poly_trim,
)

GENERATE_RETRIES = 100


def is_irreducible(gf: GF2m, g: Sequence[int]) -> bool:
    """Irreducibility over GF(2^m) by factor-degree sieving.

    g of degree t is reducible iff it has an irreducible factor of degree
    at most t//2, iff gcd(x^(2^(m*i)) - x, g) is nontrivial for some
    i <= t//2.  The power is maintained incrementally by m-fold squaring.
    """
    t = poly_degree(g)
    if t <= 0:
        return False
    if t == 1:
        return True
    if g[0] == 0:
        return False  # divisible by x
    h = [0, 1]
    for _ in range(t // 2):
        for _ in range(gf.m):
            h = poly_rem(gf, poly_sqr(gf, h), g)
        if poly_degree(poly_gcd(gf, g, poly_add(h, [0, 1]))) != 0:
            return False
    return True


def sample_irreducible(gf: GF2m, t: int, rng: Random) -> list[int]:
    """Uniform monic irreducible polynomial of degree t over the field.

    Rejection sampling; about one in t monic candidates is irreducible.
    """
    if t < 1:
        raise ValueError("degree must be at least 1")
    for _ in range(200 * t + 200):
        g = [rng.randrange(gf.order) for _ in range(t)] + [1]
        if is_irreducible(gf, g):
            return poly_trim(g)
    raise RuntimeError("irreducible sampling failed to terminate")


class RankDeficiencyError(Exception):
    """Binary parity-check matrix came out rank-deficient for (g, L)."""


class GoppaCode:
    """An instantiated code: support, generator, and decoding tables.

    Treated as immutable after construction; the square-root table of x is
    filled in lazily on first decode, which is a benign write-once cache.
    """

    def __init__(self, gf: GF2m, g: Sequence[int], support: Sequence[int]):
        t = poly_degree(g)
        if t < 1:
            raise ValueError("Goppa polynomial must have positive degree")
        if g[-1] != 1:
            raise ValueError("Goppa polynomial must be monic")
        for c in g:
            gf.check(c)
        if len(set(support)) != len(support):
            raise ValueError("support elements must be distinct")
        self.gf = gf
        self.g = tuple(g)
        self.support = tuple(support)
        self.t = t
        self.n = len(support)
        for a in support:
            gf.check(a)
            if poly_eval(gf, g, a) == 0:
                raise ValueError("support hits a root of the Goppa polynomial")

        # Parity check over GF(2^m): row i, column j holds L_j^i / g(L_j);
        # expanded over GF(2) it has t*m rows of n bits.
        m = gf.m
        rows = [0] * (t * m)
        for j, a in enumerate(support):
            col = gf.inv(poly_eval(gf, g, a))
            for i in range(t):
                for r in range(m):
                    if (col >> r) & 1:
                        rows[i * m + r] |= 1 << j
                col = gf.mul(col, a)
        h_bin = BitMatrix.from_rows(rows, self.n)
        if gf2_rank(h_bin) != t * m:
            raise RankDeficiencyError(f"parity check rank below {t * m}")
        basis, free_cols = gf2_kernel_basis(h_bin)
        self.l = len(basis)
        self.G_sys = BitMatrix.from_bitvecs(basis)
        self.msg_cols = tuple(free_cols)

        # Decode table: column j packs the t coefficients of
        # (x - L_j)^(-1) mod g into one int, m bits per coefficient.
        # By synthetic division g = q*(x - L_j) + g(L_j), the inverse is
        # q / g(L_j).
        inv_cols = []
        mask_shift = [i * m for i in range(t)]
        for a in support:
            q = [0] * t
            acc = 1  # leading coefficient of monic g
            q[t - 1] = acc
            for i in range(t - 1, 0, -1):
                acc = gf.mul(acc, a) ^ g[i]
                q[i - 1] = acc
            r = gf.mul(acc, a) ^ g[0]
            r_inv = gf.inv(r)
            packed = 0
            for i in range(t):
                packed |= gf.mul(q[i], r_inv) << mask_shift[i]
            inv_cols.append(packed)
        self._inv_cols = tuple(inv_cols)
        self._sqrt_x: tuple[int, ...] | None = None

    def _sqrt_of_x(self) -> Sequence[int]:
        # sqrt(x) mod g = x^(2^(m*t - 1)); the residue ring is a field of
        # size 2^(m*t), where squaring m*t times is the identity.
        if self._sqrt_x is None:
            h = [0, 1]
            for _ in range(self.gf.m * self.t - 1):
                h = poly_rem(self.gf, poly_sqr(self.gf, h), list(self.g))
            self._sqrt_x = tuple(h)
        return self._sqrt_x

    def encode(self, x: BitVec) -> BitVec:
        """Codeword for an l-bit message under the systematic generator."""
        return mat_vec_mul(x, self.G_sys)

    def message_of_codeword(self, cw: BitVec) -> BitVec:
        """Invert encode() by reading the free-column coordinates."""
        bits = 0
        for i, c in enumerate(self.msg_cols):
            bits |= ((cw.bits >> c) & 1) << i
        return BitVec(self.l, bits)


def generate(m: int, t: int, rng: Random) -> GoppaCode:
    """Sample a code: irreducible g, shuffled support, full-rank check.

    Retries (bounded) on the rare rank-deficient draw.
    """
    gf = field(m)
    if t < 1:
        raise ValueError("t must be at least 1")
    if t * m >= (1 << m):
        raise ValueError(f"t*m = {t * m} leaves no code dimension at m={m}")
    for _ in range(GENERATE_RETRIES):
        g = sample_irreducible(gf, t, rng)
        support = [a for a in range(gf.order) if poly_eval(gf, g, a) != 0]
        rng.shuffle(support)
        try:
            return GoppaCode(gf, g, support)
        except RankDeficiencyError:
            continue
    raise RuntimeError(f"no full-rank code after {GENERATE_RETRIES} draws")


def syndrome(code: GoppaCode, y: BitVec) -> list[int]:
    """S(x) = sum over set bits of 1/(x - L_j), reduced mod g."""
    if y.n != code.n:
        raise ValueError(f"word length {y.n} != code length {code.n}")
    return _unpack_syndrome(code, _packed_syndrome(code, y.bits))


def _packed_syndrome(code: GoppaCode, bits: int) -> int:
    acc = 0
    cols = code._inv_cols
    while bits:
        low = bits & -bits
        acc ^= cols[low.bit_length() - 1]
        bits ^= low
    return acc


def _unpack_syndrome(code: GoppaCode, packed: int) -> list[int]:
    m = code.gf.m
    mask = (1 << m) - 1
    return poly_trim([(packed >> (i * m)) & mask for i in range(code.t)])


def patterson_decode(code: GoppaCode, y: BitVec) -> BitVec | None:
    """Error vector e with wt(e) <= t and y + e in the code, else None.

    Classic split: with T = S^(-1) mod g, take R = sqrt(T + x) mod g and
    stop the extended Euclidean run on (g, R) at degree floor(t/2),
    giving a = b*R mod g; the locator is sigma = a^2 + x*b^2.  Degree and
    root-count mismatches, and a final syndrome re-check, all fail.
    """
    gf = code.gf
    g = list(code.g)
    packed = _packed_syndrome(code, y.bits)
    if packed == 0:
        return BitVec(code.n, 0)
    s_poly = _unpack_syndrome(code, packed)
    t_poly = poly_inv_mod(gf, s_poly, g)
    p = poly_rem(gf, poly_add(t_poly, [0, 1]), g)
    if not p:
        # T = x exactly: locator is x itself (single error at L_j = 0)
        sigma = [0, 1]
    else:
        half = code.t // 2
        r = _sqrt_mod(code, p)
        _, b, a = poly_eea_stop(gf, g, r, half)
        sigma = poly_add(poly_sqr(gf, a), [0] + poly_sqr(gf, b))
    deg = poly_degree(sigma)
    if deg < 1 or deg > code.t:
        return None

    # Exhaustive root search over the support.
    exp = gf.exp
    log = gf.log
    coeffs = list(reversed(sigma))
    ebits = 0
    count = 0
    for j, x in enumerate(code.support):
        if x == 0:
            acc = sigma[0]
        else:
            lx = log[x]
            acc = 0
            for c in coeffs:
                acc = (exp[log[acc] + lx] if acc else 0) ^ c
        if acc == 0:
            ebits |= 1 << j
            count += 1
    if count != deg:
        return None
    if _packed_syndrome(code, ebits) != packed:
        return None
    return BitVec(code.n, ebits)


def _sqrt_mod(code: GoppaCode, p: Sequence[int]) -> list[int]:
    # Square root via the even/odd split: p = pe(x)^2 + x*po(x)^2 after
    # coefficient-wise square roots, so sqrt(p) = pe + sqrt(x)*po mod g.
    gf = code.gf
    pe = [gf.sqrt(c) for c in p[0::2]]
    po = [gf.sqrt(c) for c in p[1::2]]
    w = list(code._sqrt_of_x())
    prod = [0] * (len(w) + len(po))
    for i, wi in enumerate(w):
        if wi == 0:
            continue
        lw = gf.log[wi]
        exp = gf.exp
        log = gf.log
        for j, pj in enumerate(po):
            if pj:
                prod[i + j] ^= exp[lw + log[pj]]
    return poly_rem(gf, poly_add(poly_trim(pe), poly_trim(prod)), list(code.g))
