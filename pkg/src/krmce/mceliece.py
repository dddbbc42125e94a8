"""Randomized McEliece encryption over binary Goppa codes.

Keys scramble the systematic Goppa generator as G_pub = S * G_sys * P for
a uniform invertible S and a uniform column permutation P, and the keygen
refuses to publish a matrix whose leading l x l block is the identity:
a systematic public key leaks plaintext windows outright (see the
prefix-distance experiment in the harness).

Errors are sampled per-coordinate Bernoulli(theta) with theta strictly
below t/n, trading a small decoding-failure probability (the binomial
tail beyond t) for error vectors whose weight does not mark them.
Plaintexts are padded as x = s | m with a fresh uniform s per encryption,
so encryption is randomized even before the error vector comes in.
Decryption failure is the value None, never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random

from . import goppa
from .algebra import (
    BitMatrix,
    BitVec,
    bernoulli_vec,
    invert_permutation,
    mat_vec_mul,
    permute_vec,
    random_invertible,
)


@dataclass(frozen=True)
class McElieceParams:
    """Code size (m, t), Bernoulli rate theta, and the pad split l1 | l2.

    Derived sizes: n = 2^m, l = n - t*m, l2 = l - l1.  theta defaults to
    3t/(4n), i.e. a quarter below the decoding radius rate t/n; l1
    defaults to half the plaintext (rounded up).
    """

    m: int
    t: int
    theta: Fraction = None  # type: ignore[assignment]
    l1: int = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("need m >= 2")
        if self.t < 1:
            raise ValueError("need t >= 1")
        n = self.n
        if self.t * self.m >= n:
            raise ValueError(f"t*m = {self.t * self.m} leaves no dimension at n = {n}")
        if self.theta is None:
            object.__setattr__(self, "theta", Fraction(3 * self.t, 4 * n))
        if not isinstance(self.theta, Fraction):
            object.__setattr__(self, "theta", Fraction(self.theta))
        if not 0 < self.theta < Fraction(self.t, n):
            raise ValueError("theta must sit in (0, t/n)")
        if self.l1 is None:
            object.__setattr__(self, "l1", (self.l + 1) // 2)
        if not 1 <= self.l1 < self.l:
            raise ValueError(f"l1 must sit in [1, {self.l})")

    @property
    def n(self) -> int:
        # a degree-1 Goppa polynomial has a root in the field that the
        # support must exclude, so t = 1 runs one coordinate short
        return (1 << self.m) - (1 if self.t == 1 else 0)

    @property
    def l(self) -> int:
        return self.n - self.t * self.m

    @property
    def l2(self) -> int:
        return self.l - self.l1


@dataclass(frozen=True)
class McEliecePublicKey:
    params: McElieceParams
    G_pub: BitMatrix


@dataclass(frozen=True)
class McElieceSecretKey:
    params: McElieceParams
    code: goppa.GoppaCode
    S_inv: BitMatrix
    perm: tuple[int, ...]  # column j of G_pub took column perm[j] of S*G_sys

    @property
    def perm_inv(self) -> list[int]:
        return invert_permutation(self.perm)


def keygen(params: McElieceParams, rng: Random) -> tuple[McEliecePublicKey, McElieceSecretKey]:
    """Sample a keypair; the public matrix is S * G_sys with columns permuted."""
    while True:
        code = goppa.generate(params.m, params.t, rng)
        if code.n != params.n or code.l != params.l:
            raise RuntimeError("generated code does not match parameters")
        s_mat, s_inv = random_invertible(params.l, rng)
        perm = list(range(params.n))
        rng.shuffle(perm)
        g_pub = s_mat.mat_mul(code.G_sys).permute_cols(perm)
        if g_pub.leading_block_is_identity():
            # a systematic-looking public key is exactly what the
            # scrambling exists to rule out; resample
            continue
        pk = McEliecePublicKey(params, g_pub)
        sk = McElieceSecretKey(params, code, s_inv, tuple(perm))
        return pk, sk


def sample_error(params: McElieceParams, rng: Random) -> BitVec:
    """n-bit error, each coordinate independently 1 with probability theta."""
    return bernoulli_vec(params.n, params.theta.numerator, params.theta.denominator, rng)


def encrypt_with(pk: McEliecePublicKey, x: BitVec, e: BitVec) -> BitVec:
    """Deterministic core: c = x * G_pub + e."""
    if x.n != pk.params.l:
        raise ValueError(f"plaintext length {x.n} != l = {pk.params.l}")
    if e.n != pk.params.n:
        raise ValueError(f"error length {e.n} != n = {pk.params.n}")
    return mat_vec_mul(x, pk.G_pub) ^ e


def encrypt(pk: McEliecePublicKey, x: BitVec, rng: Random) -> BitVec:
    return encrypt_with(pk, x, sample_error(pk.params, rng))


def decrypt(sk: McElieceSecretKey, c: BitVec) -> BitVec | None:
    """Recover x with encrypt_with(pk, x, e) = c for some wt(e) <= t, or None."""
    if c.n != sk.params.n:
        raise ValueError(f"ciphertext length {c.n} != n = {sk.params.n}")
    code = sk.code
    # undo the column permutation: y[perm[j]] = c[j]
    y = permute_vec(c, sk.perm_inv)
    e = goppa.patterson_decode(code, y)
    if e is None:
        return None
    cw = y ^ e
    z = code.message_of_codeword(cw)
    if code.encode(z) != cw:
        return None
    return mat_vec_mul(z, sk.S_inv)


def encode_randomized(params: McElieceParams, m: BitVec, s: BitVec) -> BitVec:
    """Pad the message into a full plaintext block: x = s | m."""
    if s.n != params.l1:
        raise ValueError(f"randomizer length {s.n} != l1 = {params.l1}")
    if m.n != params.l2:
        raise ValueError(f"message length {m.n} != l2 = {params.l2}")
    return s.concat(m)


def decode_randomized(params: McElieceParams, x: BitVec) -> BitVec:
    """Strip the randomizer: the message is the trailing l2 bits."""
    if x.n != params.l:
        raise ValueError(f"plaintext length {x.n} != l = {params.l}")
    return x.slice(params.l1, params.l)


def randomizer_part(params: McElieceParams, x: BitVec) -> BitVec:
    """The leading l1 bits of a plaintext block."""
    if x.n != params.l:
        raise ValueError(f"plaintext length {x.n} != l = {params.l}")
    return x.slice(0, params.l1)


def encrypt_message(pk: McEliecePublicKey, m: BitVec, rng: Random) -> BitVec:
    """Randomized-encoding encryption: draw s, encrypt s | m."""
    s = BitVec.random(pk.params.l1, rng)
    return encrypt(pk, encode_randomized(pk.params, m, s), rng)


def decrypt_message(sk: McElieceSecretKey, c: BitVec) -> BitVec | None:
    x = decrypt(sk, c)
    if x is None:
        return None
    return decode_randomized(sk.params, x)
