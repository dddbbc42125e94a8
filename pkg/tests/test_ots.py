"""One-time signature tests: correctness, tamper rejection, one-shot
enforcement, and the compression birthday statistics."""

import math
import threading
from random import Random

import pytest

from krmce.algebra import BitVec
from krmce.ots import (
    DESK_LAMBDA,
    DESK_W,
    FIXED_SUITE,
    HashSuite,
    KeyReuseError,
    OtsVerificationKey,
    ots_gen,
    ots_sign,
    ots_verify,
    vk_compress,
)


def test_sign_verify_roundtrip():
    rng = Random(301)
    for _ in range(20):
        vk, dsk = ots_gen(DESK_LAMBDA, DESK_W, rng)
        msg = bytes(rng.randrange(256) for _ in range(rng.randrange(1, 64)))
        sig = ots_sign(dsk, msg)
        assert len(sig.reveals) == DESK_LAMBDA
        assert all(r.n == DESK_W for r in sig.reveals)
        assert ots_verify(vk, msg, sig)


def test_signature_bit_length():
    vk, dsk = ots_gen(32, 64, Random(303))
    sig = ots_sign(dsk, b"payload")
    assert sum(r.n for r in sig.reveals) == 32 * 64


def test_flipped_message_rejected():
    rng = Random(307)
    rejected = 0
    trials = 400
    for _ in range(trials):
        vk, dsk = ots_gen(DESK_LAMBDA, DESK_W, rng)
        msg = bytes(rng.randrange(256) for _ in range(16))
        sig = ots_sign(dsk, msg)
        i = rng.randrange(len(msg) * 8)
        tampered = bytearray(msg)
        tampered[i // 8] ^= 1 << (i % 8)
        if not ots_verify(vk, bytes(tampered), sig):
            rejected += 1
    assert rejected == trials


def test_flipped_signature_bit_rejected():
    rng = Random(311)
    for _ in range(200):
        vk, dsk = ots_gen(DESK_LAMBDA, DESK_W, rng)
        msg = b"fixed message"
        sig = ots_sign(dsk, msg)
        i = rng.randrange(DESK_LAMBDA)
        j = rng.randrange(DESK_W)
        reveals = list(sig.reveals)
        reveals[i] = reveals[i].flip(j)
        forged = type(sig)(sig.lam, sig.w, tuple(reveals))
        assert not ots_verify(vk, msg, forged)


def test_second_sign_raises():
    vk, dsk = ots_gen(DESK_LAMBDA, DESK_W, Random(313))
    ots_sign(dsk, b"first")
    with pytest.raises(KeyReuseError):
        ots_sign(dsk, b"second")


def test_concurrent_signing_single_winner():
    vk, dsk = ots_gen(DESK_LAMBDA, DESK_W, Random(317))
    outcomes = []
    barrier = threading.Barrier(8)

    def worker(i):
        barrier.wait()
        try:
            ots_sign(dsk, b"race %d" % i)
            outcomes.append("signed")
        except KeyReuseError:
            outcomes.append("refused")

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert outcomes.count("signed") == 1
    assert outcomes.count("refused") == 7


def test_degenerate_single_bit_digest():
    rng = Random(331)
    vk, dsk = ots_gen(1, 64, rng)
    msg = b"one bit of digest"
    sig = ots_sign(dsk, msg)
    assert len(sig.reveals) == 1
    assert ots_verify(vk, msg, sig)


def test_distinct_keypairs_share_no_entries():
    rng = Random(337)
    for _ in range(100):
        vk1, _ = ots_gen(8, 64, rng)
        vk2, _ = ots_gen(8, 64, rng)
        flat1 = {img.bits for side in vk1.entries for img in side}
        flat2 = {img.bits for side in vk2.entries for img in side}
        assert not flat1 & flat2


def test_vk_compress_deterministic_and_width():
    rng = Random(347)
    vk, _ = ots_gen(DESK_LAMBDA, DESK_W, rng)
    for k in (1, 8, 32, 128, 300):
        d = vk_compress(vk, k)
        assert d.n == k
        assert vk_compress(vk, k) == d
    # prefix stability: truncation to fewer bits is a prefix of more bits
    assert vk_compress(vk, 8) == vk_compress(vk, 32).slice(0, 8)


def test_vk_compress_birthday_statistics():
    # collision rate of the 8-bit compression over random verification
    # keys behaves like 2^-8; keys are built directly from random images
    # so the oracle is pure birthday statistics
    rng = Random(349)
    pairs = 100_000
    k = 8
    collisions = 0
    for _ in range(pairs):
        def rand_vk():
            return OtsVerificationKey(
                2, 16,
                (
                    (BitVec.random(16, rng), BitVec.random(16, rng)),
                    (BitVec.random(16, rng), BitVec.random(16, rng)),
                ),
            )
        if vk_compress(rand_vk(), k) == vk_compress(rand_vk(), k):
            collisions += 1
    expected = pairs / 256
    sigma = math.sqrt(pairs * (1 / 256) * (255 / 256))
    assert abs(collisions - expected) <= 4 * sigma


def test_suite_is_pluggable_and_fixed_by_env(monkeypatch):
    rng = Random(353)
    other = HashSuite(name="alternate")
    vk, dsk = ots_gen(8, 32, rng, suite=other)
    sig = ots_sign(dsk, b"msg")
    assert ots_verify(vk, b"msg", sig, suite=other)
    # under a different suite the images do not match
    assert not ots_verify(vk, b"msg", sig, suite=FIXED_SUITE)
    # the environment override pins the fixed suite regardless of argument
    monkeypatch.setenv("KRMCE_DETERMINISTIC", "1")
    assert not ots_verify(vk, b"msg", sig, suite=other)


def test_gen_validation():
    with pytest.raises(ValueError):
        ots_gen(0, 64, Random(1))
    with pytest.raises(ValueError):
        ots_gen(8, 0, Random(1))
    with pytest.raises(ValueError):
        vk, _ = ots_gen(2, 16, Random(1))
        vk_compress(vk, 0)
