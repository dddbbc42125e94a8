"""Code-based encryption with k-repetition plus one-time-signature sealing.

The building blocks layer from the bottom up:

- :mod:`krmce.algebra`   — GF(2^m) arithmetic, polynomials, packed bit vectors
- :mod:`krmce.goppa`     — binary irreducible codes and syndrome decoding
- :mod:`krmce.mceliece`  — single-key randomized encryption
- :mod:`krmce.repetition`— k parallel components under one randomizer
- :mod:`krmce.ots`       — hash-chain one-time signatures
- :mod:`krmce.cca2`      — signature-sealed encryption over key pairs
- :mod:`krmce.correlated`— Reed-Solomon spread variant with partial verification
- :mod:`krmce.harness`   — attack games, reports, and figure rendering
- :mod:`krmce.serial`    — byte-level save/load for keys and ciphertexts
- :mod:`krmce.cli`       — command-line front end

The names re-exported here cover the common workflow: choose parameters,
generate keys, encrypt, decrypt, and serialize.
"""

from .algebra import BitMatrix, BitVec
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
    dec_cor,
    enc_cca2_cor,
    enc_cor,
    gen_cca2_cor,
    gen_cor,
    verify_tau,
)
from .mceliece import (
    McElieceParams,
    McEliecePublicKey,
    McElieceSecretKey,
    decrypt,
    decrypt_message,
    encrypt,
    encrypt_message,
    keygen,
)
from .ots import (
    DESK_LAMBDA,
    DESK_W,
    OtsSignature,
    OtsVerificationKey,
    ots_gen,
    ots_sign,
    ots_verify,
    vk_compress,
)
from .repetition import RepCiphertext, dec_k, enc_k, gen_k, verify
from .serial import dumps, load, loads, save
from .wire import WireError

__all__ = [
    "BitMatrix",
    "BitVec",
    "Cca2Ciphertext",
    "Cca2PublicKey",
    "Cca2SecretKey",
    "CorCca2PublicKey",
    "CorCca2SecretKey",
    "CorrelatedParams",
    "DESK_LAMBDA",
    "DESK_W",
    "McElieceParams",
    "McEliecePublicKey",
    "McElieceSecretKey",
    "OtsSignature",
    "OtsVerificationKey",
    "RepCiphertext",
    "WireError",
    "dec_cca2",
    "dec_cca2_cor",
    "dec_cor",
    "dec_k",
    "decrypt",
    "decrypt_message",
    "dumps",
    "enc_cca2",
    "enc_cca2_cor",
    "enc_cor",
    "enc_k",
    "encrypt",
    "encrypt_message",
    "gen_cca2",
    "gen_cca2_cor",
    "gen_cor",
    "gen_k",
    "keygen",
    "load",
    "loads",
    "ots_gen",
    "ots_sign",
    "ots_verify",
    "save",
    "verify",
    "verify_tau",
    "vk_compress",
]
