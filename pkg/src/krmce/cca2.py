"""Chosen-ciphertext-secure encryption from k-repetition plus one-time signatures.

Keys hold 2k component keypairs arranged in k selectable pairs.  Each
encryption draws a fresh one-time signature keypair, compresses its
verification key to k bits, encrypts under the k component keys that the
compressed bits select, and signs the serialized payload.  Decryption
checks the signature before touching any component secret key and reports
every failure mode as the same opaque None.
"""

from dataclasses import dataclass
from random import Random

from . import mceliece
from .algebra import BitVec
from .ots import (
    DESK_LAMBDA,
    DESK_W,
    HashSuite,
    OtsSignature,
    OtsVerificationKey,
    ots_gen,
    ots_sign,
    ots_verify,
    vk_compress,
)
from .repetition import RepCiphertext, dec_k, enc_k


@dataclass(frozen=True, slots=True)
class Cca2PublicKey:
    params: mceliece.McElieceParams
    k: int
    lam: int
    w: int
    # pairs[i] = (pk for selector bit 0, pk for selector bit 1)
    pairs: tuple[tuple[mceliece.McEliecePublicKey, mceliece.McEliecePublicKey], ...]


@dataclass(frozen=True, slots=True)
class Cca2SecretKey:
    params: mceliece.McElieceParams
    k: int
    lam: int
    w: int
    pairs: tuple[tuple[mceliece.McElieceSecretKey, mceliece.McElieceSecretKey], ...]


@dataclass(frozen=True, slots=True)
class Cca2Ciphertext:
    payload: RepCiphertext
    vk: OtsVerificationKey
    sig: OtsSignature


def gen_cca2(params: mceliece.McElieceParams, k: int, rng: Random,
             lam: int = DESK_LAMBDA, w: int = DESK_W
             ) -> tuple[Cca2PublicKey, Cca2SecretKey]:
    if k < 1:
        raise ValueError("need k >= 1 selectable pairs")
    pk_pairs = []
    sk_pairs = []
    for _ in range(k):
        pk0, sk0 = mceliece.keygen(params, rng)
        pk1, sk1 = mceliece.keygen(params, rng)
        pk_pairs.append((pk0, pk1))
        sk_pairs.append((sk0, sk1))
    return (Cca2PublicKey(params, k, lam, w, tuple(pk_pairs)),
            Cca2SecretKey(params, k, lam, w, tuple(sk_pairs)))


def enc_cca2(pk: Cca2PublicKey, m: BitVec, rng: Random,
             suite: HashSuite | None = None) -> Cca2Ciphertext:
    vk, dsk = ots_gen(pk.lam, pk.w, rng, suite)
    v = vk_compress(vk, pk.k, suite)
    selected = [pk.pairs[i][v[i]] for i in range(pk.k)]
    payload = enc_k(selected, m, rng)
    sig = ots_sign(dsk, payload.to_bytes())
    return Cca2Ciphertext(payload, vk, sig)


def dec_cca2(sk: Cca2SecretKey, c: Cca2Ciphertext,
             suite: HashSuite | None = None) -> BitVec | None:
    if c.vk.lam != sk.lam or c.vk.w != sk.w:
        return None
    if not ots_verify(c.vk, c.payload.to_bytes(), c.sig, suite):
        return None
    v = vk_compress(c.vk, sk.k, suite)
    selected = [sk.pairs[i][v[i]] for i in range(sk.k)]
    try:
        return dec_k(selected, c.payload)
    except ValueError:
        return None