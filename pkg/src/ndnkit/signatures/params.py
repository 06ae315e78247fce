"""Shared parameters for the signature suite.

One fixed 1024/160 Schnorr-style group serves every discrete-log scheme
(DSA, group, ring, chameleon hashing), mirroring how deployments share a
single set of domain parameters.  The constants below were produced by
tools/gen_dl_params.py (deterministic search, seed recorded there) and are
re-verified by the test suite: p, q prime, q | p - 1, g has order q.

Elliptic curves are registered by name.  Both entries are short-Weierstrass
prime-field curves with a = -3 and cofactor 1; "p256" is the default signing
curve and "secp160r1" is the reference preset whose order matches the
160-bit discrete-log subgroup (giving the classic 320-bit signature).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

SCHEME_RSA = 1
SCHEME_DSA = 2
SCHEME_ECDSA = 3
SCHEME_BLS = 4
SCHEME_GROUP = 5
SCHEME_RING = 6
SCHEME_NC = 7

SCHEME_NAMES = {
    SCHEME_RSA: "rsa",
    SCHEME_DSA: "dsa",
    SCHEME_ECDSA: "ecdsa",
    SCHEME_BLS: "bls",
    SCHEME_GROUP: "group",
    SCHEME_RING: "ring",
    SCHEME_NC: "nc",
}


class ParameterError(ValueError):
    """Scheme parameters are inconsistent or insecure without an override."""


class SchemeMismatch(ValueError):
    """A signature or key was offered to the wrong scheme."""


class OpenFailure(LookupError):
    """A group signature's member key is absent from the manager registry."""


class IndexOutOfRing(IndexError):
    """The claimed signer position does not exist in the ring."""


class TokenReused(RuntimeError):
    """An offline signing token was consumed twice."""


class MixedScheme(ValueError):
    """A batch or aggregate mixes signatures from different schemes."""


# --- 1024/160 discrete-log group --------------------------------------------

DL_P = 0x96C800F31CB1AEAF1C065E4B0697A3658F13E5DB76459D0FFE6A76355897F827EB6A5FE866D4CEA8ED28D4558D6CDEDEE3709CC10FA248DC2C32E65A31B768B38D92612F5884776D7D856C94B1E8C02F1EC9F99B60E39B568FC4906010C2009318D27124F1CA096081BB302103A0567E8D810F8D7367CD044F5842427FF4C8A3
DL_Q = 0xCF08368F3C7DC52172D5F79F19579502E56D7FC3
DL_G = 0x3B46896250823DF0E2D3715B67FF59EB24E7C48BA85A03EE4167F7CFD08707A91E4147DEB7920F63A6FDB4F639957189B7D2E999AEF1DA429C8E95747AC263ABAE7C27905BB98EB646A27B6D9BA85D7CB632A242979D3FE4C4FA13C5F7B92822E16D548A0926966327924A127F54CA0694C56F116EB64ECC000161B49A5D6E36

assert (DL_P - 1) % DL_Q == 0
assert pow(DL_G, DL_Q, DL_P) == 1 and DL_G != 1


# --- elliptic curve registry -------------------------------------------------


@dataclass(frozen=True)
class CurveSpec:
    """Short-Weierstrass prime-field curve y^2 = x^3 + ax + b, cofactor 1.

    scalar_bytes fixes the serialized width of each signature integer;
    signing resamples its nonce until r and s both fit, which only ever
    triggers on secp160r1 (order slightly above 2^160) and there with
    probability ~2^-79 per integer.
    """

    name: str
    p: int
    a: int
    b: int
    gx: int
    gy: int
    n: int
    scalar_bytes: int


P256 = CurveSpec(
    name="p256",
    p=0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF,
    a=0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFC,
    b=0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B,
    gx=0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
    gy=0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5,
    n=0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551,
    scalar_bytes=32,
)

SECP160R1 = CurveSpec(
    name="secp160r1",
    p=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF7FFFFFFF,
    a=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF7FFFFFFC,
    b=0x1C97BEFC54BD7A8B65ACF89F81D4D4ADC565FA45,
    gx=0x4A96B5688EF573284664698968C38BB913CBFC82,
    gy=0x23A628553168947D59DCC912042351377AC5FB32,
    n=0x0100000000000000000001F4C8F927AED3CA752257,
    scalar_bytes=20,
)

CURVES = {c.name: c for c in (P256, SECP160R1)}


# --- scheme parameter record -------------------------------------------------


@dataclass(frozen=True)
class SchemeParams:
    """Sizes and choices for one scheme instance.

    The defaults are the suite's standard strengths; smaller values are for
    unit tests only and must be unlocked with allow_insecure=True.
    """

    scheme_id: int
    rsa_bits: int = 1024
    rsa_e: int = 65537
    dl_p_bits: int = 1024
    dl_q_bits: int = 160
    curve: str = "p256"
    group_size: int = 5
    ring_size: int = 5
    allow_insecure: bool = False

    def __post_init__(self):
        if self.scheme_id not in SCHEME_NAMES:
            raise ParameterError(f"unknown scheme id {self.scheme_id}")
        if self.curve not in CURVES:
            raise ParameterError(f"unknown curve {self.curve!r}")
        if self.group_size < 1:
            raise ParameterError("group must have at least one member")
        if self.ring_size < 2:
            raise ParameterError("ring must have at least two members")
        if self.rsa_e < 3 or self.rsa_e % 2 == 0:
            raise ParameterError("RSA exponent must be odd and >= 3")
        if not self.allow_insecure:
            if self.rsa_bits < 1024:
                raise ParameterError(
                    f"{self.rsa_bits}-bit RSA is a toy size; "
                    "pass allow_insecure=True in tests"
                )
            if self.dl_p_bits < 1024 or self.dl_q_bits < 160:
                raise ParameterError("discrete-log sizes below 1024/160 are toys")


def default_params(scheme_id: int) -> SchemeParams:
    return SchemeParams(scheme_id=scheme_id)


def reference_params(scheme_id: int) -> SchemeParams:
    """The benchmark preset: every scheme at its classic 80-bit strength,
    including the 160-bit curve so ECDSA emits 320-bit signatures."""
    return replace(default_params(scheme_id), curve="secp160r1")
