"""Security-game harness: guessing experiments, reports, reference curves.

Each experiment runs an adversary against a scheme for a fixed number of
independent trials and produces an ExperimentReport whose one-line format
is `name trials wins advantage ci95`.  Guessing games measure distance
from the fair coin; forgery games set baseline 0 so the reported
advantage is the plain success rate.

Also here, deliberately quarantined from the main library: insecure_demo,
a stripped variant (systematic generator, message bits leading) that a
simple prefix-distance adversary beats soundly, next to the hardened
scheme that the very same adversary cannot budge.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Callable

from . import goppa, mceliece
from .algebra import (
    BitMatrix,
    BitVec,
    gf2_solve,
    invert_permutation,
    mat_vec_mul,
    permute_vec,
)
from .cca2 import dec_cca2, enc_cca2, gen_cca2
from .ots import KeyReuseError, ots_gen, ots_sign, ots_verify


# ----------------------------------------------------------------- reports


@dataclass(frozen=True)
class ExperimentReport:
    name: str
    trials: int
    wins: int
    invalid: int = 0
    refused: int = 0
    baseline: Fraction = Fraction(1, 2)
    outcomes: tuple[int, ...] = ()

    @property
    def advantage(self) -> float:
        return abs(self.wins / self.trials - self.baseline)

    @property
    def ci95(self) -> float:
        # worst-case binomial half-width
        return 1.96 * math.sqrt(0.25 / self.trials)

    def line(self) -> str:
        return (f"{self.name} {self.trials} {self.wins} "
                f"{self.advantage:.6f} {self.ci95:.6f}")


# ---------------------------------------------------------- scheme bundles


@dataclass(frozen=True)
class Scheme:
    """A keyed encryption scheme packaged for the games below."""
    msg_bits: int
    gen: Callable[[Random], tuple]
    enc: Callable[[object, BitVec, Random], object]
    dec: Callable[[object, object], BitVec | None]


def proper_scheme(params: mceliece.McElieceParams) -> Scheme:
    """The hardened single-key scheme: scrambled generator, message last."""
    return Scheme(
        msg_bits=params.l2,
        gen=lambda rng: mceliece.keygen(params, rng),
        enc=lambda pk, m, rng: mceliece.encrypt_message(pk, m, rng),
        dec=lambda sk, c: mceliece.decrypt_message(sk, c),
    )


@dataclass(frozen=True)
class _DemoPublicKey:
    params: mceliece.McElieceParams
    G: BitMatrix  # systematic: leading l x l identity


@dataclass(frozen=True)
class _DemoSecretKey:
    params: mceliece.McElieceParams
    code: goppa.GoppaCode
    perm_inv: tuple[int, ...]


def insecure_demo(params: mceliece.McElieceParams) -> Scheme:
    """What goes wrong without the scrambler: the ciphertext prefix is the
    message plus sparse noise.  Kept only as an experiment target."""

    def gen(rng: Random):
        code = goppa.generate(params.m, params.t, rng)
        if code.G_sys.nrows != params.l or code.G_sys.ncols != params.n:
            raise RuntimeError("generated code does not match parameters")
        parity = sorted(set(range(params.n)) - set(code.msg_cols))
        perm = tuple(code.msg_cols) + tuple(parity)
        G = code.G_sys.permute_cols(perm)
        if not G.leading_block_is_identity():
            raise RuntimeError("systematic form construction failed")
        return _DemoPublicKey(params, G), _DemoSecretKey(params, code, invert_permutation(perm))

    def enc(pk: _DemoPublicKey, m: BitVec, rng: Random):
        # message bits lead; the randomizer only pads the tail
        x = m.concat(BitVec.random(params.l1, rng))
        e = mceliece.sample_error(params, rng)
        return mat_vec_mul(x, pk.G) ^ e

    def dec(sk: _DemoSecretKey, c: BitVec):
        y = permute_vec(c, sk.perm_inv)
        e = goppa.patterson_decode(sk.code, y)
        if e is None:
            return None
        x = sk.code.message_of_codeword(y ^ e)
        return x.slice(0, params.l2)

    return Scheme(msg_bits=params.l2, gen=gen, enc=enc, dec=dec)


def cca2_scheme(params: mceliece.McElieceParams, k: int,
                lam: int | None = None, w: int | None = None) -> Scheme:
    kwargs = {}
    if lam is not None:
        kwargs["lam"] = lam
    if w is not None:
        kwargs["w"] = w
    return Scheme(
        msg_bits=params.l2,
        gen=lambda rng: gen_cca2(params, k, rng, **kwargs),
        enc=lambda pk, m, rng: enc_cca2(pk, m, rng),
        dec=lambda sk, c: dec_cca2(sk, c),
    )


# ---------------------------------------------------------- guessing games


def run_ind_cpa(scheme: Scheme, adversary, trials: int, rng: Random,
                name: str = "ind-cpa") -> ExperimentReport:
    """Left-right guessing game, fresh keys per trial; invalid message
    pairs count as losses."""
    if trials < 1:
        raise ValueError("need at least one trial")
    wins = invalid = 0
    outcomes = []
    for _ in range(trials):
        pk, _ = scheme.gen(rng)
        m0, m1 = adversary.choose(pk, rng)
        if m0.n != scheme.msg_bits or m1.n != scheme.msg_bits or m0 == m1:
            invalid += 1
            outcomes.append(0)
            continue
        b = rng.getrandbits(1)
        ct = scheme.enc(pk, (m0, m1)[b], rng)
        win = int(adversary.guess(pk, ct, rng) == b)
        wins += win
        outcomes.append(win)
    return ExperimentReport(name, trials, wins, invalid=invalid,
                            outcomes=tuple(outcomes))


class _DecryptionOracle:
    """Answers every query except the standing challenge, which it refuses."""

    def __init__(self, scheme: Scheme, sk):
        self._scheme = scheme
        self._sk = sk
        self.challenge = None
        self.refusals = 0

    def __call__(self, ct):
        if self.challenge is not None and ct == self.challenge:
            self.refusals += 1
            return None
        return self._scheme.dec(self._sk, ct)


def run_ind_cca2(scheme: Scheme, adversary, trials: int, rng: Random,
                 name: str = "ind-cca2") -> ExperimentReport:
    """Left-right game with a decryption oracle in both phases, fresh
    keys per trial."""
    if trials < 1:
        raise ValueError("need at least one trial")
    wins = invalid = refused = 0
    outcomes = []
    for _ in range(trials):
        pk, sk = scheme.gen(rng)
        oracle = _DecryptionOracle(scheme, sk)
        m0, m1 = adversary.choose(pk, oracle, rng)
        if m0.n != scheme.msg_bits or m1.n != scheme.msg_bits or m0 == m1:
            invalid += 1
            outcomes.append(0)
            continue
        b = rng.getrandbits(1)
        ct = scheme.enc(pk, (m0, m1)[b], rng)
        oracle.challenge = ct
        win = int(adversary.guess(pk, ct, oracle, rng) == b)
        wins += win
        refused += oracle.refusals
        outcomes.append(win)
    return ExperimentReport(name, trials, wins, invalid=invalid,
                            refused=refused, outcomes=tuple(outcomes))


def run_otsu(forger, trials: int, rng: Random, lam: int, w: int,
             name: str = "ots-forgery") -> ExperimentReport:
    """One-time signature unforgeability: fresh key per trial, one signing
    query, win on a verifying signature for a different message."""
    if trials < 1:
        raise ValueError("need at least one trial")
    wins = invalid = 0
    outcomes = []
    for _ in range(trials):
        vk, dsk = ots_gen(lam, w, rng)
        queried = []

        def sign_once(message: bytes):
            if queried:
                return None
            queried.append(message)
            try:
                return ots_sign(dsk, message)
            except KeyReuseError:
                return None

        try:
            forged = forger.forge(vk, sign_once, rng)
        except KeyReuseError:
            forged = None
        win = 0
        if forged is not None:
            msg2, sig2 = forged
            if queried and msg2 == queried[0]:
                invalid += 1
            else:
                win = int(ots_verify(vk, msg2, sig2))
        wins += win
        outcomes.append(win)
    return ExperimentReport(name, trials, wins, invalid=invalid,
                            baseline=Fraction(0), outcomes=tuple(outcomes))


# ------------------------------------------------------------- noisy inner


@dataclass
class LpnOracle:
    """Samples (a, <s,a> + e) with e Bernoulli(theta)."""
    s: BitVec
    theta: Fraction
    rng: Random
    queries: int = 0

    def query(self) -> tuple[BitVec, int]:
        self.queries += 1
        a = BitVec.random(self.s.n, self.rng)
        e = int(self.rng.randrange(self.theta.denominator) < self.theta.numerator)
        return a, a.dot(self.s) ^ e


@dataclass
class UniformPairOracle:
    n: int
    rng: Random
    queries: int = 0

    def query(self) -> tuple[BitVec, int]:
        self.queries += 1
        return BitVec.random(self.n, self.rng), self.rng.getrandbits(1)


def run_lpndp(distinguisher, n: int, theta: Fraction, trials: int, rng: Random,
              name: str = "lpn-distinguish") -> ExperimentReport:
    """Decision game: real noisy-inner-product oracle vs uniform pairs."""
    if trials < 1:
        raise ValueError("need at least one trial")
    wins = 0
    outcomes = []
    for _ in range(trials):
        b = rng.getrandbits(1)
        if b == 0:
            oracle = LpnOracle(BitVec.random(n, rng), theta, rng)
        else:
            oracle = UniformPairOracle(n, rng)
        win = int(distinguisher.distinguish(oracle.query, n, rng) == b)
        wins += win
        outcomes.append(win)
    return ExperimentReport(name, trials, wins, outcomes=tuple(outcomes))


# -------------------------------------------------------------- adversaries


class RandomGuess:
    """Floor reference: ignores everything and flips a coin."""

    def choose(self, pk, *rest):
        zero = BitVec(_msg_bits_of(pk))
        return zero, zero.flip(0)

    def guess(self, pk, ct, *rest):
        rng = rest[-1]
        return rng.getrandbits(1)


def _msg_bits_of(pk) -> int:
    params = getattr(pk, "params", None)
    if params is None:
        raise TypeError("public key does not expose params")
    return params.l2


class PrefixDistance:
    """Reads the leading message-window bits and picks the closer extreme.

    Against the systematic message-first demo the window is the message
    plus sparse noise; against the hardened scheme it is scrambled junk.
    """

    def choose(self, pk, *rest):
        l2 = _msg_bits_of(pk)
        return BitVec(l2), BitVec(l2, (1 << l2) - 1)

    def guess(self, pk, ct, *rest):
        rng = rest[-1]
        l2 = _msg_bits_of(pk)
        payload = ct if isinstance(ct, BitVec) else ct.components[0]
        window = payload.slice(0, l2)
        d0 = window.weight()
        d1 = l2 - d0
        if d0 == d1:
            return rng.getrandbits(1)
        return int(d1 < d0)


class Mauling:
    """Chosen-ciphertext probe: asks the oracle about the challenge verbatim,
    then about single-bit payload maulings, hoping one decrypts."""

    def choose(self, pk, oracle, rng):
        l2 = _msg_bits_of(pk)
        return BitVec(l2), BitVec(l2, (1 << l2) - 1)

    def guess(self, pk, ct, oracle, rng):
        from .cca2 import Cca2Ciphertext
        from .repetition import RepCiphertext

        oracle(ct)  # refused by the rules of the game
        l2 = _msg_bits_of(pk)
        for j in range(min(8, ct.payload.components[0].n)):
            comps = list(ct.payload.components)
            comps[0] = comps[0].flip(j)
            out = oracle(Cca2Ciphertext(RepCiphertext(tuple(comps)), ct.vk, ct.sig))
            if out is not None:
                return int(out == BitVec(l2, (1 << l2) - 1))
        return rng.getrandbits(1)


class BitFlipForger:
    """Replays the one legitimate signature on a one-bit-different message."""

    def forge(self, vk, sign_once, rng):
        message = b"rounds end at dusk"
        sig = sign_once(message)
        if sig is None:
            return None
        flipped = bytes([message[0] ^ 1]) + message[1:]
        return flipped, sig


class GaussianSolver:
    """Distinguishes by solving a linear draw for the secret and validating
    the solution on held-out queries."""

    def __init__(self, oversample: int = 2, checks: int = 24):
        self.oversample = oversample
        self.checks = checks

    def distinguish(self, query, n: int, rng: Random) -> int:
        rows = []
        bits = []
        for _ in range(self.oversample * n):
            a, b = query()
            rows.append(a)
            bits.append(b)
        mat = BitMatrix.from_bitvecs(rows).transpose()  # columns are the a's
        cand = gf2_solve(mat, BitVec.from_bits(bits))
        if cand is None:
            return 1  # inconsistent: looks uniform
        mismatches = 0
        for _ in range(self.checks):
            a, b = query()
            mismatches += a.dot(cand) ^ b
        return int(mismatches > self.checks // 4)


# --------------------------------------------------------- reference curves


def exact_tail(n: int, t: int, theta: Fraction) -> Fraction:
    """P[Binomial(n, theta) > t], exactly."""
    if not 0 <= t <= n:
        raise ValueError("need 0 <= t <= n")
    theta = Fraction(theta)
    head = sum(math.comb(n, i) * theta**i * (1 - theta) ** (n - i)
               for i in range(t + 1))
    return 1 - head


def fig1_sizes(m: int, t: int) -> tuple[int, int]:
    """Published (message bits, block length) curve over the full support."""
    return (1 << m) - t * m, 1 << m


# ------------------------------------------------------------------ figures


def render_report_figure(report: ExperimentReport, path: str) -> None:
    """Running-advantage trace with the final value and its 95% band."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    if report.outcomes:
        cum = 0
        xs, ys = [], []
        for i, o in enumerate(report.outcomes, start=1):
            cum += o
            xs.append(i)
            ys.append(abs(cum / i - report.baseline))
        ax.plot(xs, ys, lw=1.2, label="running advantage")
    final = report.advantage
    ax.axhline(final, color="tab:red", lw=1, ls="--",
               label=f"final = {final:.4f}")
    ax.axhspan(max(final - report.ci95, 0.0), final + report.ci95,
               color="tab:red", alpha=0.15, label="95% band")
    ax.set_xlabel("trial")
    ax.set_ylabel("advantage")
    ax.set_title(report.name)
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)