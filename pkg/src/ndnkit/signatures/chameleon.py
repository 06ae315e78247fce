"""Chameleon (trapdoor) hash over the shared discrete-log group.

CH(m, r) = g^m * h^r with h = g^alpha.  Anyone can evaluate it; the
trapdoor holder can steer it to any target value by solving the linear
relation m + alpha*r = const (mod q), which takes two multiplications and
no exponentiation.  That asymmetry is what makes signing splittable into
an expensive offline half and a near-free online half.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dlgroup import DL_P, DL_Q, gen_pow, hash_to_scalar, rand_scalar

_MSG_TAG = b"ndnkit/chameleon-msg/v1"


@dataclass(frozen=True)
class ChameleonKey:
    """Trapdoor pair: public element h plus the private exponent and its inverse."""

    h: int
    alpha: int
    alpha_inv: int

    def public(self) -> int:
        return self.h


def chameleon_keygen(rng: random.Random | None = None) -> ChameleonKey:
    rng = rng or random.SystemRandom()
    alpha = rand_scalar(rng)
    return ChameleonKey(h=gen_pow(alpha), alpha=alpha, alpha_inv=pow(alpha, -1, DL_Q))


def message_scalar(msg: bytes) -> int:
    return hash_to_scalar(_MSG_TAG, msg)


def chameleon_hash(h: int, m: int, r: int) -> int:
    """CH(m, r) for the public element h; m and r are scalars mod q."""
    return gen_pow(m) * pow(h, r, DL_P) % DL_P


def chameleon_collide(key: ChameleonKey, m_old: int, r_old: int, m_new: int) -> int:
    """The r_new with CH(m_new, r_new) == CH(m_old, r_old); exponentiation-free."""
    return (r_old + (m_old - m_new) * key.alpha_inv) % DL_Q
