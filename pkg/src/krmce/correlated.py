"""Threshold-verifiable variant: component plaintexts correlated by an erasure code.

Messages are tau symbols over GF(2^q), spread over k components through a
Reed-Solomon evaluation code, so any tau honestly decrypting components
determine the whole plaintext vector.  That buys two things the plain
k-repetition scheme lacks: decryption survives up to k - tau failed
components, and possession of any tau component secret keys suffices to
verify a ciphertext against all k public keys.

The chosen-ciphertext composition replaces the bit-indexed key pairs with
symbol-indexed banks of 2^q keys per position; the compressed one-time
verification key is spread by a second evaluation code of minimum distance
tau, so distinct verification keys select key banks differing in at least
tau positions.
"""

from dataclasses import dataclass
from itertools import combinations
from random import Random
from typing import Sequence

from . import mceliece
from .algebra import (
    GF2m,
    BitVec,
    field,
    poly_add,
    poly_eval,
    poly_mul,
    poly_scale,
    poly_trim,
)
from .ots import (
    DESK_LAMBDA,
    DESK_W,
    HashSuite,
    ots_gen,
    ots_sign,
    ots_verify,
    vk_compress,
)
from .cca2 import Cca2Ciphertext
from .repetition import RepCiphertext


# ---------------------------------------------------------------- RS codes


def rs_encode(gf: GF2m, msg: Sequence[int], k: int) -> tuple[int, ...]:
    """Evaluate the polynomial with coefficients msg at points 0..k-1."""
    if k > 1 << gf.m:
        raise ValueError("not enough distinct evaluation points")
    for c in msg:
        gf.check(c)
    return tuple(poly_eval(gf, list(msg), x) for x in range(k))


def rs_erasure_decode(gf: GF2m, received: Sequence[int | None], msg_len: int
                      ) -> tuple[int, ...] | None:
    """Interpolate a degree < msg_len polynomial through the known positions.

    Uses msg_len known points to interpolate, then checks every remaining
    known position against the result; any inconsistency (or fewer than
    msg_len known positions) gives None.
    """
    known = [(x, v) for x, v in enumerate(received) if v is not None]
    if len(known) < msg_len:
        return None
    base, rest = known[:msg_len], known[msg_len:]
    coeffs = [0]
    for j, (xj, yj) in enumerate(base):
        num = [1]
        den = 1
        for i, (xi, _) in enumerate(base):
            if i == j:
                continue
            num = poly_mul(gf, num, [xi, 1])  # (x - xi); char 2
            den = gf.mul(den, gf.add(xj, xi))
        coeffs = poly_add(coeffs, poly_scale(gf, num, gf.div(yj, den)))
    coeffs = poly_trim(coeffs)
    if len(coeffs) > msg_len:
        return None
    coeffs = coeffs + [0] * (msg_len - len(coeffs))
    for x, v in rest:
        if poly_eval(gf, coeffs, x) != v:
            return None
    return tuple(coeffs)


# ------------------------------------------------------------- parameters


@dataclass(frozen=True, slots=True)
class CorrelatedParams:
    mp: mceliece.McElieceParams
    q: int          # symbol width; alphabet is GF(2^q)
    k: int          # component count = code length
    tau: int        # symbols per message; also the verification threshold

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("need q >= 1")
        if not 1 <= self.tau <= self.k:
            raise ValueError("need 1 <= tau <= k")
        if self.k > 1 << self.q:
            raise ValueError("k exceeds the evaluation-point supply 2^q")
        if self.k > 2 * self.tau - 1:
            raise ValueError("need k <= 2*tau - 1 so tau positions pin the codeword")
        if self.q > self.mp.l2:
            raise ValueError("symbol wider than the component message slot")

    @property
    def gf(self) -> GF2m:
        return field(self.q)

    @property
    def pad_bits(self) -> int:
        return self.mp.l2 - self.q

    @property
    def vk_symbols(self) -> int:
        # spreading-code message length; its minimum distance is then
        # k - (k - tau + 1) + 1 = tau
        return self.k - self.tau + 1

    @property
    def msg_bits(self) -> int:
        return self.tau * self.q


def symbols_to_bits(params: CorrelatedParams, symbols: Sequence[int]) -> BitVec:
    out = BitVec(0)
    for s in symbols:
        params.gf.check(s)
        out = out.concat(BitVec(params.q, s))
    return out


def bits_to_symbols(params: CorrelatedParams, v: BitVec) -> tuple[int, ...]:
    if v.n % params.q:
        raise ValueError("bit length is not a whole number of symbols")
    return tuple(v.slice(i, i + params.q).bits for i in range(0, v.n, params.q))


def component_plaintext(params: CorrelatedParams, s: BitVec, symbol: int) -> BitVec:
    """s | symbol | zero tail, filling the component plaintext exactly."""
    return s.concat(BitVec(params.q, symbol)).concat(BitVec(params.pad_bits))


def component_symbol(params: CorrelatedParams, x: BitVec) -> int | None:
    """Extract the symbol, or None if the zero tail was disturbed."""
    l1 = params.mp.l1
    if x.slice(l1 + params.q, x.n).bits:
        return None
    return x.slice(l1, l1 + params.q).bits


# ------------------------------------------------------------ base scheme


def gen_cor(params: CorrelatedParams, rng: Random
            ) -> tuple[list[mceliece.McEliecePublicKey], list[mceliece.McElieceSecretKey]]:
    pairs = [mceliece.keygen(params.mp, rng) for _ in range(params.k)]
    return [pk for pk, _ in pairs], [sk for _, sk in pairs]


def enc_cor(pks: Sequence[mceliece.McEliecePublicKey], params: CorrelatedParams,
            m: BitVec, rng: Random) -> RepCiphertext:
    s = BitVec.random(params.mp.l1, rng)
    errors = [mceliece.sample_error(params.mp, rng) for _ in range(params.k)]
    return enc_cor_with(pks, params, m, s, errors)


def enc_cor_with(pks: Sequence[mceliece.McEliecePublicKey], params: CorrelatedParams,
                 m: BitVec, s: BitVec, errors: Sequence[BitVec]) -> RepCiphertext:
    if len(pks) != params.k or len(errors) != params.k:
        raise ValueError("need one public key and one error per component")
    if m.n != params.msg_bits:
        raise ValueError("message must be tau symbols")
    if s.n != params.mp.l1:
        raise ValueError("randomizer length mismatch")
    y = rs_encode(params.gf, bits_to_symbols(params, m), params.k)
    comps = tuple(
        mceliece.encrypt_with(pk, component_plaintext(params, s, y[i]), errors[i])
        for i, pk in enumerate(pks)
    )
    return RepCiphertext(comps)


def dec_cor(sks: Sequence[mceliece.McElieceSecretKey], params: CorrelatedParams,
            c: RepCiphertext) -> BitVec | None:
    """Decrypt, treating failed components as erasures.

    Succeeds when at least tau components decrypt, they share one
    randomizer and clean zero tails, and their symbols lie on a single
    codeword that is consistent with every recovered position.
    """
    if len(sks) != params.k or c.k != params.k:
        raise ValueError("component count mismatch")
    received: list[int | None] = [None] * params.k
    s_seen = None
    for i, (sk, comp) in enumerate(zip(sks, c.components)):
        x = mceliece.decrypt(sk, comp)
        if x is None:
            continue
        sym = component_symbol(params, x)
        if sym is None:
            return None
        s_i = x.slice(0, params.mp.l1)
        if s_seen is None:
            s_seen = s_i
        elif s_i != s_seen:
            return None
        received[i] = sym
    msg = rs_erasure_decode(params.gf, received, params.tau)
    if msg is None:
        return None
    return symbols_to_bits(params, msg)


def verify_tau(c: RepCiphertext, pks: Sequence[mceliece.McEliecePublicKey],
               params: CorrelatedParams, subset: Sequence[int],
               sks_subset: Sequence[mceliece.McElieceSecretKey]) -> int:
    """Judge a ciphertext with tau component keys: 1 iff every component is
    within decoding distance of the plaintext vector those keys pin down."""
    if len(pks) != params.k or c.k != params.k:
        raise ValueError("component count mismatch")
    if len(subset) != params.tau or len(set(subset)) != params.tau:
        raise ValueError("need tau distinct component indices")
    if len(sks_subset) != params.tau:
        raise ValueError("need one secret key per subset index")
    if any(not 0 <= i < params.k for i in subset):
        raise ValueError("component index out of range")
    received: list[int | None] = [None] * params.k
    s_seen = None
    for i, sk in zip(subset, sks_subset):
        x = mceliece.decrypt(sk, c.components[i])
        if x is None:
            return 0
        sym = component_symbol(params, x)
        if sym is None:
            return 0
        s_i = x.slice(0, params.mp.l1)
        if s_seen is None:
            s_seen = s_i
        elif s_i != s_seen:
            return 0
        received[i] = sym
    msg = rs_erasure_decode(params.gf, received, params.tau)
    if msg is None:
        return 0
    y = rs_encode(params.gf, list(msg), params.k)
    t = params.mp.t
    for j, pk in enumerate(pks):
        x_j = component_plaintext(params, s_seen, y[j])
        residual = c.components[j] ^ mceliece.encrypt_with(pk, x_j, BitVec(params.mp.n))
        if residual.weight() > t:
            return 0
    return 1


# ----------------------------------------------- chosen-ciphertext layer


@dataclass(frozen=True, slots=True)
class CorCca2PublicKey:
    params: CorrelatedParams
    lam: int
    w: int
    # banks[i][sigma] = component public key selected by symbol sigma at i
    banks: tuple[tuple[mceliece.McEliecePublicKey, ...], ...]


@dataclass(frozen=True, slots=True)
class CorCca2SecretKey:
    params: CorrelatedParams
    lam: int
    w: int
    banks: tuple[tuple[mceliece.McElieceSecretKey, ...], ...]


def gen_cca2_cor(params: CorrelatedParams, rng: Random,
                 lam: int = DESK_LAMBDA, w: int = DESK_W
                 ) -> tuple[CorCca2PublicKey, CorCca2SecretKey]:
    pk_banks = []
    sk_banks = []
    for _ in range(params.k):
        pairs = [mceliece.keygen(params.mp, rng) for _ in range(1 << params.q)]
        pk_banks.append(tuple(pk for pk, _ in pairs))
        sk_banks.append(tuple(sk for _, sk in pairs))
    return (CorCca2PublicKey(params, lam, w, tuple(pk_banks)),
            CorCca2SecretKey(params, lam, w, tuple(sk_banks)))


def _selector_symbols(params: CorrelatedParams, vk, suite: HashSuite | None
                      ) -> tuple[int, ...]:
    digest = vk_compress(vk, params.q * params.vk_symbols, suite)
    return rs_encode(params.gf, bits_to_symbols(params, digest), params.k)


def enc_cca2_cor(pk: CorCca2PublicKey, m: BitVec, rng: Random,
                 suite: HashSuite | None = None) -> Cca2Ciphertext:
    params = pk.params
    vk, dsk = ots_gen(pk.lam, pk.w, rng, suite)
    sel = _selector_symbols(params, vk, suite)
    selected = [pk.banks[i][sel[i]] for i in range(params.k)]
    payload = enc_cor(selected, params, m, rng)
    sig = ots_sign(dsk, payload.to_bytes())
    return Cca2Ciphertext(payload, vk, sig)


def dec_cca2_cor(sk: CorCca2SecretKey, c: Cca2Ciphertext,
                 suite: HashSuite | None = None) -> BitVec | None:
    params = sk.params
    if c.vk.lam != sk.lam or c.vk.w != sk.w:
        return None
    if not ots_verify(c.vk, c.payload.to_bytes(), c.sig, suite):
        return None
    sel = _selector_symbols(params, c.vk, suite)
    selected = [sk.banks[i][sel[i]] for i in range(params.k)]
    try:
        return dec_cor(selected, params, c.payload)
    except ValueError:
        return None


def tau_subsets(params: CorrelatedParams):
    """All size-tau index subsets, in lexicographic order."""
    return combinations(range(params.k), params.tau)