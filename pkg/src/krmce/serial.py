"""File format for keys and ciphertexts.

Every file is `magic | version | kind | six u32 header fields | payload`.
The header fields are m, t, k, l1, q, tau in that order, zero when a
field has no meaning for the kind.  Kind numbers:

  1 single public key          2 single secret key
  3 multi-component public key 4 multi-component secret key
  5 bare multi-component ciphertext (payload bytes double as the
    signing input of kind 6)
  6 signed multi-component ciphertext
  7 symbol-bank public key     8 symbol-bank secret key
  9 single-key ciphertext

Secret-key files store the code description (polynomial and support
order) rather than derived tables; loading rebuilds the code, so any
corruption surfaces as a WireError.
"""

from fractions import Fraction

from . import wire
from .algebra import BitVec, field
from .cca2 import Cca2Ciphertext, Cca2PublicKey, Cca2SecretKey
from .correlated import CorCca2PublicKey, CorCca2SecretKey, CorrelatedParams
from .goppa import GoppaCode
from .mceliece import McElieceParams, McEliecePublicKey, McElieceSecretKey
from .ots import OtsSignature, OtsVerificationKey
from .repetition import RepCiphertext
from .wire import Reader, WireError

MAGIC = b"KRMCE1\x00\x00"
VERSION = 1

KIND_SINGLE_PK = 1
KIND_SINGLE_SK = 2
KIND_MULTI_PK = 3
KIND_MULTI_SK = 4
KIND_BARE_CT = 5
KIND_SIGNED_CT = 6
KIND_BANK_PK = 7
KIND_BANK_SK = 8
KIND_SINGLE_CT = 9


def _header(kind: int, m=0, t=0, k=0, l1=0, q=0, tau=0) -> bytes:
    return (MAGIC + wire.u16(VERSION) + wire.u16(kind)
            + b"".join(wire.u32(v) for v in (m, t, k, l1, q, tau)))


def _theta(params: McElieceParams) -> bytes:
    return wire.u32(params.theta.numerator) + wire.u32(params.theta.denominator)


def _read_params(r: Reader, m: int, t: int, l1: int) -> McElieceParams:
    num, den = r.u32(), r.u32()
    if den == 0:
        raise WireError("zero theta denominator")
    try:
        return McElieceParams(m, t, theta=Fraction(num, den), l1=l1)
    except ValueError as exc:
        raise WireError(f"bad parameters: {exc}") from exc


def _sk_block(sk: McElieceSecretKey) -> bytes:
    return (wire.u32_seq(sk.code.g)
            + wire.u32_seq(sk.code.support)
            + wire.matrix(sk.S_inv)
            + wire.u32_seq(sk.perm))


def _read_sk_block(r: Reader, params: McElieceParams) -> McElieceSecretKey:
    g = r.u32_seq()
    support = r.u32_seq()
    S_inv = r.matrix()
    perm = r.u32_seq()
    try:
        code = GoppaCode(field(params.m), g, tuple(support))
    except ValueError as exc:
        raise WireError(f"corrupt code description: {exc}") from exc
    if code.G_sys.nrows != params.l or code.G_sys.ncols != params.n:
        raise WireError("code does not match stated parameters")
    if S_inv.nrows != params.l or S_inv.ncols != params.l:
        raise WireError("scrambler shape mismatch")
    if sorted(perm) != list(range(params.n)):
        raise WireError("column order is not a permutation")
    return McElieceSecretKey(params, code, S_inv, tuple(perm))


def _pk_matrix(r: Reader, params: McElieceParams) -> McEliecePublicKey:
    G = r.matrix()
    if G.nrows != params.l or G.ncols != params.n:
        raise WireError("generator shape mismatch")
    return McEliecePublicKey(params, G)


def _vk_and_sig(ct: Cca2Ciphertext) -> bytes:
    images = list(ct.vk.entries[0]) + list(ct.vk.entries[1])
    return (wire.u32(ct.vk.lam) + wire.u32(ct.vk.w)
            + wire.seq(images, wire.bitvec)
            + wire.seq(ct.sig.reveals, wire.bitvec))


def dumps(obj) -> bytes:
    """Serialize any key or ciphertext object to its framed byte form."""
    if isinstance(obj, McEliecePublicKey):
        p = obj.params
        return (_header(KIND_SINGLE_PK, p.m, p.t, 0, p.l1)
                + _theta(p) + wire.matrix(obj.G_pub))
    if isinstance(obj, McElieceSecretKey):
        p = obj.params
        return (_header(KIND_SINGLE_SK, p.m, p.t, 0, p.l1)
                + _theta(p) + _sk_block(obj))
    if isinstance(obj, Cca2PublicKey):
        p = obj.params
        flat = [pk for pair in obj.pairs for pk in pair]
        return (_header(KIND_MULTI_PK, p.m, p.t, obj.k, p.l1)
                + _theta(p) + wire.u32(obj.lam) + wire.u32(obj.w)
                + wire.seq(flat, lambda pk: wire.matrix(pk.G_pub)))
    if isinstance(obj, Cca2SecretKey):
        p = obj.params
        flat = [sk for pair in obj.pairs for sk in pair]
        return (_header(KIND_MULTI_SK, p.m, p.t, obj.k, p.l1)
                + _theta(p) + wire.u32(obj.lam) + wire.u32(obj.w)
                + wire.seq(flat, _sk_block))
    if isinstance(obj, RepCiphertext):
        return _header(KIND_BARE_CT, k=obj.k) + obj.to_bytes()
    if isinstance(obj, Cca2Ciphertext):
        return (_header(KIND_SIGNED_CT, k=obj.payload.k)
                + _vk_and_sig(obj) + obj.payload.to_bytes())
    if isinstance(obj, CorCca2PublicKey):
        cp = obj.params
        flat = [pk for bank in obj.banks for pk in bank]
        return (_header(KIND_BANK_PK, cp.mp.m, cp.mp.t, cp.k, cp.mp.l1, cp.q, cp.tau)
                + _theta(cp.mp) + wire.u32(obj.lam) + wire.u32(obj.w)
                + wire.seq(flat, lambda pk: wire.matrix(pk.G_pub)))
    if isinstance(obj, CorCca2SecretKey):
        cp = obj.params
        flat = [sk for bank in obj.banks for sk in bank]
        return (_header(KIND_BANK_SK, cp.mp.m, cp.mp.t, cp.k, cp.mp.l1, cp.q, cp.tau)
                + _theta(cp.mp) + wire.u32(obj.lam) + wire.u32(obj.w)
                + wire.seq(flat, _sk_block))
    if isinstance(obj, BitVec):
        return _header(KIND_SINGLE_CT) + wire.bitvec(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def loads(data: bytes):
    """Parse a framed byte form back into its object; WireError on damage."""
    r = Reader(data)
    if r.take(len(MAGIC)) != MAGIC:
        raise WireError("bad magic")
    if r.u16() != VERSION:
        raise WireError("unsupported version")
    kind = r.u16()
    m, t, k, l1, q, tau = (r.u32() for _ in range(6))

    if kind == KIND_SINGLE_PK:
        params = _read_params(r, m, t, l1)
        obj = _pk_matrix(r, params)
    elif kind == KIND_SINGLE_SK:
        params = _read_params(r, m, t, l1)
        obj = _read_sk_block(r, params)
    elif kind == KIND_MULTI_PK:
        params = _read_params(r, m, t, l1)
        lam, w = r.u32(), r.u32()
        flat = r.seq(lambda rr: _pk_matrix(rr, params))
        if k < 1 or len(flat) != 2 * k:
            raise WireError("key count does not match the stated width")
        pairs = tuple((flat[2 * i], flat[2 * i + 1]) for i in range(k))
        obj = Cca2PublicKey(params, k, lam, w, pairs)
    elif kind == KIND_MULTI_SK:
        params = _read_params(r, m, t, l1)
        lam, w = r.u32(), r.u32()
        flat = r.seq(lambda rr: _read_sk_block(rr, params))
        if k < 1 or len(flat) != 2 * k:
            raise WireError("key count does not match the stated width")
        pairs = tuple((flat[2 * i], flat[2 * i + 1]) for i in range(k))
        obj = Cca2SecretKey(params, k, lam, w, pairs)
    elif kind == KIND_BARE_CT:
        comps = r.seq(Reader.bitvec)
        if k < 1 or len(comps) != k:
            raise WireError("component count mismatch")
        obj = RepCiphertext(tuple(comps))
    elif kind == KIND_SIGNED_CT:
        lam, w = r.u32(), r.u32()
        if lam < 1 or w < 1:
            raise WireError("bad signature dimensions")
        images = r.seq(Reader.bitvec)
        if len(images) != 2 * lam or any(v.n != w for v in images):
            raise WireError("verification key shape mismatch")
        reveals = r.seq(Reader.bitvec)
        if len(reveals) != lam or any(v.n != w for v in reveals):
            raise WireError("signature shape mismatch")
        comps = r.seq(Reader.bitvec)
        if k < 1 or len(comps) != k:
            raise WireError("component count mismatch")
        vk = OtsVerificationKey(lam, w, (tuple(images[:lam]), tuple(images[lam:])))
        sig = OtsSignature(lam, w, tuple(reveals))
        obj = Cca2Ciphertext(RepCiphertext(tuple(comps)), vk, sig)
    elif kind in (KIND_BANK_PK, KIND_BANK_SK):
        params = _read_params(r, m, t, l1)
        try:
            cp = CorrelatedParams(params, q=q, k=k, tau=tau)
        except ValueError as exc:
            raise WireError(f"bad parameters: {exc}") from exc
        lam, w = r.u32(), r.u32()
        if kind == KIND_BANK_PK:
            flat = r.seq(lambda rr: _pk_matrix(rr, params))
        else:
            flat = r.seq(lambda rr: _read_sk_block(rr, params))
        width = 1 << q
        if len(flat) != k * width:
            raise WireError("bank size does not match the stated alphabet")
        banks = tuple(tuple(flat[i * width:(i + 1) * width]) for i in range(k))
        if kind == KIND_BANK_PK:
            obj = CorCca2PublicKey(cp, lam, w, banks)
        else:
            obj = CorCca2SecretKey(cp, lam, w, banks)
    elif kind == KIND_SINGLE_CT:
        obj = r.bitvec()
    else:
        raise WireError(f"unknown kind {kind}")

    r.done()
    return obj


def save(obj, path: str) -> None:
    with open(path, "wb") as fh:
        fh.write(dumps(obj))


def load(path: str, expect: type | tuple[type, ...] | None = None):
    with open(path, "rb") as fh:
        obj = loads(fh.read())
    if expect is not None and not isinstance(obj, expect):
        raise WireError(f"{path}: holds {type(obj).__name__}, expected "
                        f"{expect.__name__ if isinstance(expect, type) else expect}")
    return obj