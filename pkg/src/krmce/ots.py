"""Lamport one-time signatures, hash-then-sign, with key compression.

The signing key holds 2 x lam uniform w-bit preimages; the verification
key is their images under a one-way function F.  A message is digested to
lam bits by H and each digest bit selects which preimage to reveal.  The
hash primitive behind F and H is pluggable through HashSuite; the fixed
SHA-256 instantiation keeps every test vector reproducible, and setting
KRMCE_DETERMINISTIC=1 in the environment pins it explicitly for callers
that resolve the suite at runtime.

Signing keys are strictly one-time: the consumed flag flips under a lock,
so a second sign (from any thread) raises KeyReuseError.

vk_compress is the deterministic digest used to index repetition keys by
verification key; truncation to k bits is lossy on purpose, and the
collision rate for k-bit outputs behaves like 2^-k.
"""

from __future__ import annotations

import hashlib
import os
import threading
from dataclasses import dataclass, field as dataclass_field
from random import Random

from .algebra import BitVec

DESK_LAMBDA = 32
DESK_W = 64
PRODUCTION_LAMBDA = 256
PRODUCTION_W = 256


class KeyReuseError(RuntimeError):
    """A one-time signing key was asked to sign twice."""


@dataclass(frozen=True)
class HashSuite:
    """One-way function F and digest H built over a named hash core."""

    name: str = "sha256-fixed"

    def _core(self, tag: bytes, data: bytes, nbits: int) -> BitVec:
        out = b""
        counter = 0
        nbytes = (nbits + 7) // 8
        while len(out) < nbytes:
            h = hashlib.sha256()
            h.update(tag)
            h.update(self.name.encode())
            h.update(counter.to_bytes(4, "little"))
            h.update(data)
            out += h.digest()
            counter += 1
        bits = int.from_bytes(out[:nbytes], "big") >> (8 * nbytes - nbits)
        # MSB-first interpretation keeps the digest prefix-stable in k
        v = 0
        for i in range(nbits):
            v |= ((bits >> (nbits - 1 - i)) & 1) << i
        return BitVec(nbits, v)

    def f(self, preimage: BitVec) -> BitVec:
        """One-way function on w-bit strings (image width matches input)."""
        return self._core(b"F", preimage.to_bytes() + preimage.n.to_bytes(4, "little"),
                          preimage.n)

    def h(self, data: bytes, nbits: int) -> BitVec:
        """Message digest truncated to nbits."""
        return self._core(b"H", data, nbits)


FIXED_SUITE = HashSuite()


def resolve_suite(suite: HashSuite | None = None) -> HashSuite:
    """Pick the hash suite; KRMCE_DETERMINISTIC=1 forces the fixed one."""
    if os.environ.get("KRMCE_DETERMINISTIC") == "1":
        return FIXED_SUITE
    return suite if suite is not None else FIXED_SUITE


@dataclass(frozen=True)
class OtsVerificationKey:
    lam: int
    w: int
    entries: tuple[tuple[BitVec, ...], tuple[BitVec, ...]]  # entries[b][i] = F(sk[b][i])

    def to_bytes(self) -> bytes:
        out = bytearray()
        for side in self.entries:
            for img in side:
                out += img.to_bytes()
        return bytes(out)


@dataclass
class OtsSigningKey:
    lam: int
    w: int
    preimages: tuple[tuple[BitVec, ...], tuple[BitVec, ...]]
    suite: HashSuite
    _consumed: bool = False
    _lock: threading.Lock = dataclass_field(default_factory=threading.Lock, repr=False)

    @property
    def consumed(self) -> bool:
        return self._consumed


@dataclass(frozen=True)
class OtsSignature:
    lam: int
    w: int
    reveals: tuple[BitVec, ...]  # one preimage per digest bit


def ots_gen(lam: int, w: int, rng: Random, suite: HashSuite | None = None
            ) -> tuple[OtsVerificationKey, OtsSigningKey]:
    """Fresh keypair: 2*lam uniform preimages and their images under F."""
    if lam < 1 or w < 1:
        raise ValueError("need lam >= 1 and w >= 1")
    suite = resolve_suite(suite)
    pre = tuple(
        tuple(BitVec.random(w, rng) for _ in range(lam)) for _ in range(2)
    )
    img = tuple(tuple(suite.f(p) for p in side) for side in pre)
    vk = OtsVerificationKey(lam, w, img)
    dsk = OtsSigningKey(lam, w, pre, suite)
    return vk, dsk


def ots_sign(dsk: OtsSigningKey, message: bytes) -> OtsSignature:
    """Reveal the preimages selected by the message digest; one-shot."""
    with dsk._lock:
        if dsk._consumed:
            raise KeyReuseError("one-time signing key already used")
        dsk._consumed = True
    digest = dsk.suite.h(message, dsk.lam)
    reveals = tuple(dsk.preimages[digest[i]][i] for i in range(dsk.lam))
    return OtsSignature(dsk.lam, dsk.w, reveals)


def ots_verify(vk: OtsVerificationKey, message: bytes, sig: OtsSignature,
               suite: HashSuite | None = None) -> bool:
    """Check every revealed preimage against the digest-selected image."""
    if sig.lam != vk.lam or sig.w != vk.w or len(sig.reveals) != vk.lam:
        return False
    suite = resolve_suite(suite)
    digest = suite.h(message, vk.lam)
    for i in range(vk.lam):
        r = sig.reveals[i]
        if r.n != vk.w:
            return False
        if suite.f(r) != vk.entries[digest[i]][i]:
            return False
    return True


def vk_compress(vk: OtsVerificationKey, k: int, suite: HashSuite | None = None) -> BitVec:
    """Deterministic k-bit digest of the serialized verification key."""
    if k < 1:
        raise ValueError("need k >= 1")
    suite = resolve_suite(suite)
    header = vk.lam.to_bytes(4, "little") + vk.w.to_bytes(4, "little")
    return suite.h(b"VK" + header + vk.to_bytes(), k)
