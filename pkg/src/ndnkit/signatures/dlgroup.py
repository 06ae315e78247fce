"""Operations in the shared 1024/160 discrete-log group.

The generator carries a lazily built comb table, so g^k costs about forty
1024-bit multiplications; arbitrary-base exponentiations (public keys,
which differ per signer) fall back to pow().
"""

from __future__ import annotations

import hashlib
import random
from typing import Optional

from ..intmath import CombTable
from .params import DL_G, DL_P, DL_Q

_gen_comb: Optional[CombTable] = None


def gen_pow(e: int) -> int:
    """g^e mod p through the fixed-base table."""
    global _gen_comb
    if _gen_comb is None:
        _gen_comb = CombTable(DL_G, DL_P, DL_Q.bit_length() + 4)
    return _gen_comb.pow(e % DL_Q)


def rand_scalar(rng: random.Random) -> int:
    return rng.randrange(1, DL_Q)


def element_valid(y: int) -> bool:
    """Membership test for the order-q subgroup (rejects 1 and stray cosets)."""
    return 1 < y < DL_P and pow(y, DL_Q, DL_P) == 1


def hash_to_scalar(tag: bytes, *parts: bytes) -> int:
    h = hashlib.sha256(tag)
    for part in parts:
        h.update(len(part).to_bytes(4, "big"))
        h.update(part)
    return int.from_bytes(h.digest(), "big") % DL_Q


def element_bytes(y: int) -> bytes:
    return y.to_bytes(128, "big")


def scalar_bytes(s: int) -> bytes:
    return s.to_bytes(20, "big")
