"""Goppa code construction and Patterson decoding tests.

Oracles: trial division for irreducibility, exhaustive codeword-distance
enumeration for decoder failure cases, and direct syndrome recomputation.
"""

import itertools
from random import Random

import pytest

from krmce.algebra import BitVec, field, mat_vec_mul, poly_degree, poly_eval, poly_mul, poly_rem
from krmce.goppa import (
    GoppaCode,
    generate,
    is_irreducible,
    patterson_decode,
    sample_irreducible,
    syndrome,
)


def brute_irreducible(gf, g):
    """Oracle: trial division by every monic polynomial of degree <= t//2."""
    t = poly_degree(g)
    if t <= 0:
        return False
    for d in range(1, t // 2 + 1):
        for coeffs in itertools.product(range(gf.order), repeat=d):
            divisor = list(coeffs) + [1]
            if not poly_rem(gf, g, divisor):
                return False
    return True


def test_irreducibility_against_trial_division():
    gf = field(3)
    rng = Random(101)
    for _ in range(120):
        t = rng.randrange(1, 5)
        g = [rng.randrange(8) for _ in range(t)] + [1]
        assert is_irreducible(gf, g) == brute_irreducible(gf, g)


def test_explicit_reducible_product_rejected():
    gf = field(4)
    # (x + a)(x + b) with a != b factors by construction
    g = poly_mul(gf, [3, 1], [7, 1])
    assert not is_irreducible(gf, g)
    # and a square too
    assert not is_irreducible(gf, poly_mul(gf, [5, 1], [5, 1]))


def test_sample_irreducible_properties():
    gf = field(4)
    rng = Random(103)
    for t in (1, 2, 3, 5):
        g = sample_irreducible(gf, t, rng)
        assert poly_degree(g) == t
        assert g[-1] == 1
        assert brute_irreducible(gf, g) or t > 4  # oracle is cheap only for small t
        if t >= 2:
            assert all(poly_eval(gf, g, a) != 0 for a in range(16))
    assert poly_degree(sample_irreducible(gf, 1, rng)) == 1


def test_generate_shape_desk():
    code = generate(4, 2, Random(107))
    assert code.n == 16
    assert code.l == 8
    assert sorted(code.support) == list(range(16))
    assert code.G_sys.nrows == 8 and code.G_sys.ncols == 16
    # every generator row has zero syndrome
    for i in range(code.l):
        assert syndrome(code, code.G_sys.row(i)) == []


def test_generate_degree_one_excludes_root():
    code = generate(4, 1, Random(109))
    assert code.n == 15
    assert code.l == 15 - 4
    root = next(a for a in range(16) if poly_eval(code.gf, list(code.g), a) == 0)
    assert root not in code.support


def test_generate_rejects_hopeless_parameters():
    with pytest.raises(ValueError):
        generate(4, 4, Random(1))
    with pytest.raises(ValueError):
        generate(4, 0, Random(1))


def test_code_constructor_validation():
    gf = field(4)
    rng = Random(113)
    g = sample_irreducible(gf, 2, rng)
    with pytest.raises(ValueError):
        GoppaCode(gf, [g[0], g[1]], list(range(16)))  # not monic unless lucky
    with pytest.raises(ValueError):
        GoppaCode(gf, [1, 0, 0], list(range(16)))  # zero leading coeff
    with pytest.raises(ValueError):
        GoppaCode(gf, g, [0, 0, 1])  # duplicate support
    g1 = [5, 1]  # root at 5
    with pytest.raises(ValueError):
        GoppaCode(gf, g1, [5, 1, 2])


def test_syndrome_linearity_and_length_check():
    code = generate(4, 2, Random(127))
    rng = Random(128)
    for _ in range(50):
        y = BitVec.random(16, rng)
        z = BitVec.random(16, rng)
        sy = syndrome(code, y)
        sz = syndrome(code, z)
        sboth = syndrome(code, y ^ z)
        padded = lambda p: p + [0] * (2 - len(p))
        assert [a ^ b for a, b in zip(padded(sy), padded(sz))] == padded(sboth)
    with pytest.raises(ValueError):
        syndrome(code, BitVec(8))


def test_decode_exhaustive_patterns_on_sampled_codewords():
    code = generate(4, 2, Random(131))
    rng = Random(132)
    patterns = [BitVec(16, 0)]
    patterns += [BitVec(16, 1 << i) for i in range(16)]
    patterns += [BitVec(16, (1 << i) | (1 << j)) for i in range(16) for j in range(i)]
    assert len(patterns) == 137
    for _ in range(32):
        x = BitVec.random(8, rng)
        cw = code.encode(x)
        for e in patterns:
            assert patterson_decode(code, cw ^ e) == e
        assert code.message_of_codeword(cw) == x


def test_decode_boundary_weight_exactly_t():
    code = generate(8, 10, Random(137))
    rng = Random(138)
    for _ in range(40):
        x = BitVec.random(code.l, rng)
        cw = code.encode(x)
        pos = rng.sample(range(code.n), 10)
        e = BitVec(code.n, sum(1 << p for p in pos))
        assert patterson_decode(code, cw ^ e) == e


def test_decode_random_sweep_medium():
    code = generate(8, 10, Random(139))
    rng = Random(140)
    for _ in range(1000):
        x = BitVec.random(code.l, rng)
        cw = code.encode(x)
        wt = rng.randrange(0, 11)
        e = BitVec(code.n, sum(1 << p for p in rng.sample(range(code.n), wt)))
        got = patterson_decode(code, cw ^ e)
        assert got == e


def test_degree_one_code_is_perfect():
    # The t = 1 construction at m = 4 shortens to length 15 and covers the
    # whole space with radius-1 balls, so every word decodes.
    code = generate(4, 1, Random(149))
    assert (1 << code.l) * (1 + code.n) == 1 << code.n
    rng = Random(150)
    for _ in range(300):
        y = BitVec.random(code.n, rng)
        e = patterson_decode(code, y)
        assert e is not None and e.weight() <= 1


def test_decode_failure_at_distance_t_plus_one():
    # Construct, by exhaustive distance check, words at distance exactly
    # t + 1 from every codeword; the decoder must report failure on them.
    # (t = 1 at m = 4 yields a perfect code with no such word, so the
    # property is exercised at t = 2.)
    code = generate(4, 2, Random(149))
    codewords = [code.encode(BitVec(code.l, x)).bits for x in range(1 << code.l)]
    rng = Random(150)
    found = 0
    while found < 5:
        y = rng.getrandbits(code.n)
        dist = min((y ^ cw).bit_count() for cw in codewords)
        if dist == 3:
            found += 1
            assert patterson_decode(code, BitVec(code.n, y)) is None


def test_decode_never_accepts_outside_radius():
    # Any returned error must reproduce the received word as codeword + e
    # with weight <= t, even on garbage input.
    code = generate(4, 2, Random(151))
    rng = Random(152)
    for _ in range(2000):
        y = BitVec.random(16, rng)
        e = patterson_decode(code, y)
        if e is not None:
            assert e.weight() <= 2
            assert syndrome(code, y ^ e) == []
            cw = y ^ e
            x = code.message_of_codeword(cw)
            assert code.encode(x) == cw


def test_zero_support_position_single_error():
    # Exercise the T = x corner: a single error at the support position
    # holding the field element 0.
    code = generate(4, 2, Random(157))
    j = code.support.index(0)
    rng = Random(158)
    x = BitVec.random(8, rng)
    cw = code.encode(x)
    e = BitVec(16, 1 << j)
    assert patterson_decode(code, cw ^ e) == e


def test_published_size_table():
    code = generate(10, 50, Random(163))
    assert (code.l, code.n) == (524, 1024)
