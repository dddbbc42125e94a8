"""k-repetition encryption: one message under k independent keys.

Encryption draws a single randomizer s and encrypts the same block
x = s | m under every key with independent error vectors.  Decryption
decodes every component and answers only when all k agree on the message
part; verification decrypts one chosen component and weight-checks the
residual of every component against the recovered block, which makes its
verdict independent of which component was chosen (unique decoding within
radius t forces every successful component to the same block).

The verifier accepts residual weight up to and including t: the decoder
corrects exactly that radius, so accepted ciphertexts are guaranteed to
decrypt, honest ones included.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Sequence

from . import mceliece
from .algebra import BitVec
from .wire import pack_bitvec_seq


@dataclass(frozen=True)
class RepCiphertext:
    components: tuple[BitVec, ...]

    @property
    def k(self) -> int:
        return len(self.components)

    def to_bytes(self) -> bytes:
        """Canonical byte form; also the CCA2 signing input."""
        return pack_bitvec_seq(self.components)


def gen_k(params: mceliece.McElieceParams, k: int, rng: Random
          ) -> tuple[list[mceliece.McEliecePublicKey], list[mceliece.McElieceSecretKey]]:
    """k independent keypairs over the same parameters."""
    if k < 1:
        raise ValueError("need k >= 1")
    pks, sks = [], []
    for _ in range(k):
        pk, sk = mceliece.keygen(params, rng)
        pks.append(pk)
        sks.append(sk)
    return pks, sks


def enc_k(pks: Sequence[mceliece.McEliecePublicKey], m: BitVec, rng: Random
          ) -> RepCiphertext:
    """Encrypt m under every key with one shared randomizer s."""
    params = pks[0].params
    s = BitVec.random(params.l1, rng)
    errors = [mceliece.sample_error(params, rng) for _ in pks]
    return enc_k_with(pks, m, s, errors)


def enc_k_with(pks: Sequence[mceliece.McEliecePublicKey], m: BitVec, s: BitVec,
               errors: Sequence[BitVec]) -> RepCiphertext:
    """Deterministic core with the randomizer and errors supplied."""
    if not pks:
        raise ValueError("no keys")
    params = pks[0].params
    if any(pk.params != params for pk in pks):
        raise ValueError("mixed parameters across keys")
    if len(errors) != len(pks):
        raise ValueError("one error vector per key required")
    x = mceliece.encode_randomized(params, m, s)
    comps = tuple(
        mceliece.encrypt_with(pk, x, e) for pk, e in zip(pks, errors)
    )
    return RepCiphertext(comps)


def dec_k(sks: Sequence[mceliece.McElieceSecretKey], c: RepCiphertext) -> BitVec | None:
    """The common message part if every component decodes and agrees."""
    if c.k != len(sks):
        raise ValueError(f"{c.k} components for {len(sks)} keys")
    params = sks[0].params
    m = None
    for sk, comp in zip(sks, c.components):
        x = mceliece.decrypt(sk, comp)
        if x is None:
            return None
        part = mceliece.decode_randomized(params, x)
        if m is None:
            m = part
        elif part != m:
            return None
    return m


def verify(c: RepCiphertext, pks: Sequence[mceliece.McEliecePublicKey], i: int,
           sk_i: mceliece.McElieceSecretKey) -> int:
    """1 iff component i decrypts to a block within radius t of every
    component; the verdict does not depend on i."""
    if not 0 <= i < c.k or c.k != len(pks):
        raise ValueError("component index out of range")
    params = sk_i.params
    x = mceliece.decrypt(sk_i, c.components[i])
    if x is None:
        return 0
    for pk, comp in zip(pks, c.components):
        residual = comp ^ mceliece.encrypt_with(pk, x, BitVec(params.n))
        if residual.weight() > params.t:
            return 0
    return 1
