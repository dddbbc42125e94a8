"""Command-line front end.

Commands: params, keygen, encrypt, decrypt, experiment.  Exit codes:
0 success, 2 decryption refused (BOTTOM on stderr), 3 malformed or
unreadable input files, 4 usage errors.

Messages are raw byte files holding exactly ceil(bits/8) bytes for the
scheme's message width, with any bits past the declared width zero.
The experiment command prints one `name trials wins advantage ci95`
line and renders the running-advantage figure next to the output.
"""

import argparse
import os
import sys
from fractions import Fraction
from random import Random

from .algebra import BitVec
from .cca2 import (
    Cca2Ciphertext,
    Cca2PublicKey,
    Cca2SecretKey,
    dec_cca2,
    enc_cca2,
    gen_cca2,
)
from .correlated import (
    CorCca2PublicKey,
    CorCca2SecretKey,
    CorrelatedParams,
    dec_cca2_cor,
    enc_cca2_cor,
    gen_cca2_cor,
)
from .harness import (
    BitFlipForger,
    Mauling,
    PrefixDistance,
    RandomGuess,
    cca2_scheme,
    insecure_demo,
    proper_scheme,
    render_report_figure,
    run_ind_cca2,
    run_ind_cpa,
    run_otsu,
)
from .mceliece import (
    McElieceParams,
    McEliecePublicKey,
    McElieceSecretKey,
    decrypt_message,
    encrypt_message,
    keygen,
)
from .ots import DESK_LAMBDA, DESK_W
from .serial import dumps, load, save
from .wire import WireError

DEMO = McElieceParams(4, 2)
QUIET = McElieceParams(4, 2, theta=Fraction(1, 64))


class _Parser(argparse.ArgumentParser):
    """argparse, except usage problems exit 4 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(4, f"{self.prog}: error: {message}\n")


def _seed_type(text: str) -> int:
    value = int(text)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _experiments():
    return {
        "cpa-random-guess":
            lambda trials, rng: run_ind_cpa(
                proper_scheme(DEMO), RandomGuess(), trials, rng,
                name="cpa-random-guess"),
        "prefix-attack-broken":
            lambda trials, rng: run_ind_cpa(
                insecure_demo(DEMO), PrefixDistance(), trials, rng,
                name="prefix-attack-broken"),
        "prefix-attack-proper":
            lambda trials, rng: run_ind_cpa(
                proper_scheme(DEMO), PrefixDistance(), trials, rng,
                name="prefix-attack-proper"),
        "cca2-random-guess":
            lambda trials, rng: run_ind_cca2(
                cca2_scheme(QUIET, 8, lam=DESK_LAMBDA, w=DESK_W),
                RandomGuess(), trials, rng, name="cca2-random-guess"),
        "cca2-mauling":
            lambda trials, rng: run_ind_cca2(
                cca2_scheme(QUIET, 8, lam=DESK_LAMBDA, w=DESK_W),
                Mauling(), trials, rng, name="cca2-mauling"),
        "otsu-bitflip":
            lambda trials, rng: run_otsu(
                BitFlipForger(), trials, rng, lam=32, w=128,
                name="otsu-bitflip"),
    }


def build_parser() -> _Parser:
    parser = _Parser(prog="krmce", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scheme=False):
        p.add_argument("--m", type=int, default=4, help="field exponent")
        p.add_argument("--t", type=int, default=2, help="decoding radius")
        p.add_argument("--theta-num", type=int, default=None,
                       help="error-rate numerator (default 3t)")
        p.add_argument("--theta-den", type=int, default=None,
                       help="error-rate denominator (default 4n)")
        if scheme:
            p.add_argument("--scheme", choices=("single", "cca2", "cor"),
                           default="single")
            p.add_argument("--k", type=int, default=8,
                           help="component count / selector width")
            p.add_argument("--q", type=int, default=3, help="symbol bits")
            p.add_argument("--tau", type=int, default=5,
                           help="threshold / message symbols")

    p = sub.add_parser("params", help="print derived sizes")
    common(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("keygen", help="write PREFIX.pk and PREFIX.sk")
    common(p, scheme=True)
    p.add_argument("--seed", type=_seed_type, default=None)
    p.add_argument("--out", required=True, metavar="PREFIX")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a message file")
    p.add_argument("key", help="public-key file")
    p.add_argument("--in", dest="infile", required=True, metavar="MSGFILE")
    p.add_argument("--out", default=None, metavar="CTFILE")
    p.add_argument("--seed", type=_seed_type, default=None)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("key", help="secret-key file")
    p.add_argument("--in", dest="infile", required=True, metavar="CTFILE")
    p.add_argument("--out", default=None, metavar="MSGFILE")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("experiment", help="run a named experiment")
    p.add_argument("name", choices=sorted(_experiments()))
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=_seed_type, default=None)
    p.add_argument("--out", default=None, metavar="REPORTFILE")
    p.add_argument("--fig", default=None, metavar="FIGFILE")
    p.set_defaults(func=cmd_experiment)

    return parser


def _params_from(args) -> McElieceParams:
    theta = None
    if (args.theta_num is None) != (args.theta_den is None):
        raise ValueError("give both --theta-num and --theta-den or neither")
    if args.theta_num is not None:
        theta = Fraction(args.theta_num, args.theta_den)
    return McElieceParams(args.m, args.t, theta=theta)


def cmd_params(args) -> int:
    try:
        p = _params_from(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"krmce: error: {exc}", file=sys.stderr)
        return 4
    print(f"m={p.m} t={p.t} n={p.n} l={p.l} l1={p.l1} l2={p.l2} "
          f"theta={p.theta.numerator}/{p.theta.denominator}")
    return 0


def cmd_keygen(args) -> int:
    rng = Random(args.seed) if args.seed is not None else Random()
    try:
        p = _params_from(args)
        if args.scheme == "single":
            pk, sk = keygen(p, rng)
        elif args.scheme == "cca2":
            pk, sk = gen_cca2(p, args.k, rng)
        else:
            cp = CorrelatedParams(p, q=args.q, k=args.k, tau=args.tau)
            pk, sk = gen_cca2_cor(cp, rng)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"krmce: error: {exc}", file=sys.stderr)
        return 4
    save(pk, args.out + ".pk")
    save(sk, args.out + ".sk")
    print(f"{args.out}.pk {args.out}.sk")
    return 0


def _message_bits(key) -> int:
    if isinstance(key, (CorCca2PublicKey, CorCca2SecretKey)):
        return key.params.msg_bits
    return key.params.l2


def _read_message(path: str, bits: int) -> BitVec:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) != (bits + 7) // 8:
        raise WireError(f"message file must hold exactly {(bits + 7) // 8} bytes")
    try:
        return BitVec.from_bytes(data, bits)
    except ValueError as exc:
        raise WireError(str(exc)) from None


def _write_out(path: str | None, data: bytes) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def cmd_encrypt(args) -> int:
    rng = Random(args.seed) if args.seed is not None else Random()
    pk = load(args.key, expect=(McEliecePublicKey, Cca2PublicKey, CorCca2PublicKey))
    m = _read_message(args.infile, _message_bits(pk))
    if isinstance(pk, McEliecePublicKey):
        ct = encrypt_message(pk, m, rng)
    elif isinstance(pk, Cca2PublicKey):
        ct = enc_cca2(pk, m, rng)
    else:
        ct = enc_cca2_cor(pk, m, rng)
    _write_out(args.out, dumps(ct))
    return 0


def cmd_decrypt(args) -> int:
    sk = load(args.key, expect=(McElieceSecretKey, Cca2SecretKey, CorCca2SecretKey))
    ct = load(args.infile)
    if isinstance(sk, McElieceSecretKey):
        if not isinstance(ct, BitVec):
            raise WireError("ciphertext kind does not match the key")
        m = decrypt_message(sk, ct)
    else:
        if not isinstance(ct, Cca2Ciphertext):
            raise WireError("ciphertext kind does not match the key")
        m = dec_cca2(sk, ct) if isinstance(sk, Cca2SecretKey) else dec_cca2_cor(sk, ct)
    if m is None:
        print("BOTTOM", file=sys.stderr)
        return 2
    _write_out(args.out, m.to_bytes())
    return 0


def cmd_experiment(args) -> int:
    if args.trials < 1:
        print("krmce: error: need at least one trial", file=sys.stderr)
        return 4
    rng = Random(args.seed) if args.seed is not None else Random()
    report = _experiments()[args.name](args.trials, rng)
    line = report.line()
    print(line)
    if args.out is not None:
        with open(args.out, "w") as fh:
            fh.write(line + "\n")
    if args.fig is not None:
        fig_path = args.fig
    elif args.out is not None:
        fig_path = os.path.splitext(args.out)[0] + ".png"
    else:
        fig_path = args.name + ".png"
    render_report_figure(report, fig_path)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 4
    try:
        return args.func(args)
    except WireError as exc:
        print(f"krmce: error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"krmce: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())