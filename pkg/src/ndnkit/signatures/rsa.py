"""RSA full-domain-hash signatures.

The message digest is expanded with MGF1 to one byte under the modulus
length (top two bits cleared so the representative is always below N),
then raised to the private exponent.  Expanding to the full domain rather
than signing the bare 256-bit digest closes the usual multiplicative
forgery on textbook hash-and-sign.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from ..intmath import i2osp, mgf1, os2ip, random_prime
from .params import SCHEME_RSA, ParameterError, SchemeParams

_FDH_TAG = b"ndnkit/rsa-fdh/v1"


@dataclass(frozen=True)
class RsaPublicKey:
    n: int
    e: int

    scheme_id = SCHEME_RSA

    @property
    def byte_length(self) -> int:
        return (self.n.bit_length() + 7) // 8


@dataclass(frozen=True)
class RsaPrivateKey:
    n: int
    e: int
    d: int
    p: int
    q: int

    scheme_id = SCHEME_RSA

    def public(self) -> RsaPublicKey:
        return RsaPublicKey(self.n, self.e)


def _prime_distance_floor(bits: int) -> int:
    # at 1024-bit moduli the factors must sit further apart than 2^412,
    # defeating Fermat-style factoring; scale the exponent with the modulus
    return max(0, bits - 612)


def keygen(params: SchemeParams, rng: random.Random | None = None) -> RsaPrivateKey:
    if params.scheme_id != SCHEME_RSA:
        raise ParameterError("params are not for RSA")
    rng = rng or random.SystemRandom()
    bits = params.rsa_bits
    e = params.rsa_e
    half = bits // 2
    distance = 1 << _prime_distance_floor(bits)
    while True:
        p = random_prime(half, rng)
        q = random_prime(bits - half, rng)
        if p == q or abs(p - q) <= distance:
            continue
        n = p * q
        if n.bit_length() != bits:
            continue
        phi = (p - 1) * (q - 1)
        try:
            d = pow(e, -1, phi)
        except ValueError:
            continue  # e shares a factor with phi; redraw
        return RsaPrivateKey(n=n, e=e, d=d, p=p, q=q)


def domain_digest(msg: bytes, n: int) -> int:
    k = (n.bit_length() + 7) // 8
    em = bytearray(mgf1(_FDH_TAG + hashlib.sha256(msg).digest(), k))
    em[0] &= 0x3F
    return os2ip(bytes(em))


def sign(key: RsaPrivateKey, msg: bytes) -> bytes:
    m = domain_digest(msg, key.n)
    return i2osp(pow(m, key.d, key.n), (key.n.bit_length() + 7) // 8)


def verify(key: RsaPublicKey, msg: bytes, sig: bytes) -> bool:
    k = key.byte_length
    if len(sig) != k:
        return False
    s = os2ip(sig)
    if s >= key.n:
        return False
    return pow(s, key.e, key.n) == domain_digest(msg, key.n)
