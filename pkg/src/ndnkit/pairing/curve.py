"""BN-160 curve groups.

G1: E(Fp): y^2 = x^3 + 2, prime order n (cofactor 1).
G2: order-n subgroup of the D-type sextic twist E'(Fp2): y^2 = x^3 + 2/xi,
    twist cofactor 2p - n.

Affine points are coordinate tuples (None is the identity); scalar
multiplication runs in Jacobian coordinates with NAF digits.  The fixed
generators additionally carry radix-16 comb tables so generator
exponentiations (key generation, signing bases) cost ~40 mixed additions.

Generator provenance: g1 is the smallest-x curve point; g2 is the first
twist point with x = (k, 1), k = 1, 2, ..., cleared by the twist cofactor.
Both values are pinned as integers and re-checked by the test suite.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional

from .fields import (
    F2_ONE,
    F2_ZERO,
    N,
    P,
    XI,
    f2_add,
    f2_inv,
    f2_mul,
    f2_mul_xi,
    f2_neg,
    f2_scal,
    f2_sqr,
    f2_sqrt,
    f2_sub,
)

FIELD_PRIME = P
CURVE_ORDER = N
CURVE_B = 2
# twist coefficient 2/xi = 2*(1-i)/2 = 1 - i
TWIST_B = f2_mul((CURVE_B, 0), f2_inv(XI))
TWIST_COFACTOR = 2 * P - N

G1_X = 2
G1_Y = 49392867263768642569315391949339572744600141550
G2_X = (
    206187533382547191007520445247036350785025254508,
    48293968241449826288499494276441207267038517017,
)
G2_Y = (
    977935923900333672220893497676465926837977035155,
    694040654981950420821576091911461536837711620750,
)

_H2G1_TAG = b"ndnkit/hash-to-g1/v1"


def _naf(k):
    out = []
    while k:
        if k & 1:
            d = 2 - (k & 3)
            out.append(d)
            k -= d
        else:
            out.append(0)
        k >>= 1
    out.reverse()
    return out


# --- G1 arithmetic (ints, Jacobian hot paths) --------------------------------


def g1_on_curve(pt) -> bool:
    if pt is None:
        return True
    x, y = pt
    return (y * y - x * x * x - CURVE_B) % P == 0


def _jac_dbl(X, Y, Z):
    if not Y or not Z:
        return (1, 1, 0)
    A = X * X % P
    B = Y * Y % P
    C = B * B % P
    D = 2 * ((X + B) * (X + B) - A - C) % P
    E = 3 * A % P
    X3 = (E * E - 2 * D) % P
    Y3 = (E * (D - X3) - 8 * C) % P
    Z3 = 2 * Y * Z % P
    return (X3, Y3, Z3)


def _jac_add_mixed(X1, Y1, Z1, x2, y2):
    """(X1,Y1,Z1) + affine (x2,y2)."""
    if not Z1:
        return (x2, y2, 1)
    Z1Z1 = Z1 * Z1 % P
    U2 = x2 * Z1Z1 % P
    S2 = y2 * Z1Z1 * Z1 % P
    H = (U2 - X1) % P
    R = (S2 - Y1) % P
    if H == 0:
        if R == 0:
            return _jac_dbl(X1, Y1, Z1)
        return (1, 1, 0)
    HH = H * H % P
    HHH = HH * H % P
    V = X1 * HH % P
    X3 = (R * R - HHH - 2 * V) % P
    Y3 = (R * (V - X3) - Y1 * HHH) % P
    Z3 = Z1 * H % P
    return (X3, Y3, Z3)


def _jac_to_affine(X, Y, Z):
    if not Z:
        return None
    zi = pow(Z, -1, P)
    zi2 = zi * zi % P
    return (X * zi2 % P, Y * zi2 * zi % P)


def g1_neg(pt):
    return None if pt is None else (pt[0], (-pt[1]) % P)


def g1_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    X, Y, Z = _jac_add_mixed(a[0], a[1], 1, b[0], b[1])
    return _jac_to_affine(X, Y, Z)


def g1_mul(pt, k: int):
    k %= N
    if pt is None or k == 0:
        return None
    neg = (pt[0], (-pt[1]) % P)
    X, Y, Z = 1, 1, 0
    for d in _naf(k):
        X, Y, Z = _jac_dbl(X, Y, Z)
        if d == 1:
            X, Y, Z = _jac_add_mixed(X, Y, Z, pt[0], pt[1])
        elif d == -1:
            X, Y, Z = _jac_add_mixed(X, Y, Z, neg[0], neg[1])
    return _jac_to_affine(X, Y, Z)


def _batch_invert(vals):
    """Montgomery trick: invert a list of nonzero ints mod P with one pow."""
    acc = 1
    prefix = []
    for v in vals:
        prefix.append(acc)
        acc = acc * v % P
    inv = pow(acc, -1, P)
    out = [0] * len(vals)
    for i in range(len(vals) - 1, -1, -1):
        out[i] = prefix[i] * inv % P
        inv = inv * vals[i] % P
    return out


class _G1Comb:
    """Radix-16 fixed-base table: row j holds d * 16^j * base for d in 1..15."""

    def __init__(self, base, bits=164):
        rows = []
        cur = base
        njac = []
        for _ in range((bits + 3) // 4):
            row = [cur]
            X, Y, Z = cur[0], cur[1], 1
            for _ in range(14):
                X, Y, Z = _jac_add_mixed(X, Y, Z, cur[0], cur[1])
                row.append((X, Y, Z))
            njac.append(row)
            X, Y, Z = _jac_add_mixed(X, Y, Z, cur[0], cur[1])
            cur = _jac_to_affine(X, Y, Z)
        # normalize every Jacobian entry to affine with one batched inversion
        zs = []
        for row in njac:
            for ent in row[1:]:
                zs.append(ent[2])
        zinvs = iter(_batch_invert(zs))
        self.rows = []
        for row in njac:
            arow = [row[0]]
            for X, Y, Z in row[1:]:
                zi = next(zinvs)
                zi2 = zi * zi % P
                arow.append((X * zi2 % P, Y * zi2 * zi % P))
            self.rows.append(arow)

    def mul(self, k: int):
        X, Y, Z = 1, 1, 0
        j = 0
        while k:
            d = k & 15
            if d:
                px, py = self.rows[j][d - 1]
                X, Y, Z = _jac_add_mixed(X, Y, Z, px, py)
            k >>= 4
            j += 1
        return _jac_to_affine(X, Y, Z)


_g1_comb: Optional[_G1Comb] = None


def g1_mul_gen(k: int):
    """k * g1 through the fixed-base table."""
    global _g1_comb
    if _g1_comb is None:
        _g1_comb = _G1Comb((G1_X, G1_Y))
    return _g1_comb.mul(k % N)


def hash_to_g1(msg: bytes):
    """Deterministic try-and-increment hashing onto G1 (cofactor 1)."""
    for ctr in range(512):
        d = hashlib.sha256(_H2G1_TAG + ctr.to_bytes(2, "big") + msg).digest()
        x = int.from_bytes(d[:20], "big")
        if x >= P:
            continue
        rhs = (x * x * x + CURVE_B) % P
        y = pow(rhs, (P + 1) // 4, P)
        if y * y % P != rhs:
            continue
        if (y & 1) != (d[20] & 1):
            y = P - y
        return (x, y)
    raise RuntimeError("hash_to_g1 exhausted its counter")  # unreachable in practice


class G1MultiExp:
    """Simultaneous multi-exponentiation with per-base radix-16 tables.

    Built once per base set (e.g. per network-coding generation) and reused:
    combine() then costs one table lookup per base per exponent window.
    """

    def __init__(self, bases):
        tables = []
        zs = []
        jac_tables = []
        for b in bases:
            if b is None:
                jac_tables.append(None)
                continue
            row = [(b[0], b[1], 1)]
            X, Y, Z = b[0], b[1], 1
            for _ in range(14):
                X, Y, Z = _jac_add_mixed(X, Y, Z, b[0], b[1])
                row.append((X, Y, Z))
            jac_tables.append(row)
            zs.extend(ent[2] for ent in row)
        zinvs = iter(_batch_invert(zs)) if zs else iter(())
        for row in jac_tables:
            if row is None:
                tables.append(None)
                continue
            arow = []
            for X, Y, Z in row:
                zi = next(zinvs)
                zi2 = zi * zi % P
                arow.append((X * zi2 % P, Y * zi2 * zi % P))
            tables.append(arow)
        self.tables = tables

    def combine(self, scalars):
        scalars = [s % N for s in scalars]
        if len(scalars) != len(self.tables):
            raise ValueError("scalar count does not match base count")
        top = max(scalars, default=0)
        nwin = max(1, (top.bit_length() + 3) // 4)
        X, Y, Z = 1, 1, 0
        for w in range(nwin - 1, -1, -1):
            if Z:
                X, Y, Z = _jac_dbl(X, Y, Z)
                X, Y, Z = _jac_dbl(X, Y, Z)
                X, Y, Z = _jac_dbl(X, Y, Z)
                X, Y, Z = _jac_dbl(X, Y, Z)
            shift = 4 * w
            for tbl, s in zip(self.tables, scalars):
                if tbl is None:
                    continue
                d = (s >> shift) & 15
                if d:
                    px, py = tbl[d - 1]
                    X, Y, Z = _jac_add_mixed(X, Y, Z, px, py)
        return _jac_to_affine(X, Y, Z)


def g1_multi_exp(points, scalars):
    return G1MultiExp(points).combine(scalars)


# --- G2 arithmetic (over Fp2) ------------------------------------------------


def g2_on_twist(pt) -> bool:
    if pt is None:
        return True
    x, y = pt
    return f2_sub(f2_sqr(y), f2_add(f2_mul(f2_sqr(x), x), TWIST_B)) == F2_ZERO


def _jac2_dbl(X, Y, Z):
    if Y == F2_ZERO or Z == F2_ZERO:
        return (F2_ONE, F2_ONE, F2_ZERO)
    A = f2_sqr(X)
    B = f2_sqr(Y)
    C = f2_sqr(B)
    D = f2_scal(f2_sub(f2_sub(f2_sqr(f2_add(X, B)), A), C), 2)
    E = f2_scal(A, 3)
    X3 = f2_sub(f2_sqr(E), f2_scal(D, 2))
    Y3 = f2_sub(f2_mul(E, f2_sub(D, X3)), f2_scal(C, 8))
    Z3 = f2_scal(f2_mul(Y, Z), 2)
    return (X3, Y3, Z3)


def _jac2_add_mixed(X1, Y1, Z1, x2, y2):
    if Z1 == F2_ZERO:
        return (x2, y2, F2_ONE)
    Z1Z1 = f2_sqr(Z1)
    U2 = f2_mul(x2, Z1Z1)
    S2 = f2_mul(f2_mul(y2, Z1Z1), Z1)
    H = f2_sub(U2, X1)
    R = f2_sub(S2, Y1)
    if H == F2_ZERO:
        if R == F2_ZERO:
            return _jac2_dbl(X1, Y1, Z1)
        return (F2_ONE, F2_ONE, F2_ZERO)
    HH = f2_sqr(H)
    HHH = f2_mul(HH, H)
    V = f2_mul(X1, HH)
    X3 = f2_sub(f2_sub(f2_sqr(R), HHH), f2_scal(V, 2))
    Y3 = f2_sub(f2_mul(R, f2_sub(V, X3)), f2_mul(Y1, HHH))
    Z3 = f2_mul(Z1, H)
    return (X3, Y3, Z3)


def _jac2_to_affine(X, Y, Z):
    if Z == F2_ZERO:
        return None
    zi = f2_inv(Z)
    zi2 = f2_sqr(zi)
    return (f2_mul(X, zi2), f2_mul(Y, f2_mul(zi2, zi)))


def g2_neg(pt):
    return None if pt is None else (pt[0], f2_neg(pt[1]))


def g2_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    X, Y, Z = _jac2_add_mixed(a[0], a[1], F2_ONE, b[0], b[1])
    return _jac2_to_affine(X, Y, Z)


def g2_mul(pt, k: int, reduce_mod_n: bool = True):
    if reduce_mod_n:
        k %= N
    if pt is None or k == 0:
        return None
    if k < 0:
        pt = g2_neg(pt)
        k = -k
    neg = g2_neg(pt)
    X, Y, Z = F2_ONE, F2_ONE, F2_ZERO
    for d in _naf(k):
        X, Y, Z = _jac2_dbl(X, Y, Z)
        if d == 1:
            X, Y, Z = _jac2_add_mixed(X, Y, Z, pt[0], pt[1])
        elif d == -1:
            X, Y, Z = _jac2_add_mixed(X, Y, Z, neg[0], neg[1])
    return _jac2_to_affine(X, Y, Z)


def g2_in_subgroup(pt) -> bool:
    """Order-n membership; twist points have cofactor 2p-n, so this matters."""
    if pt is None:
        return True
    if not g2_on_twist(pt):
        return False
    return g2_mul(pt, N, reduce_mod_n=False) is None


class _G2Comb:
    def __init__(self, base, bits=164):
        self.rows = []
        cur = base
        for _ in range((bits + 3) // 4):
            row = [cur]
            acc = cur
            for _ in range(14):
                acc = g2_add(acc, cur)
                row.append(acc)
            self.rows.append(row)
            cur = g2_add(acc, cur)

    def mul(self, k: int):
        X, Y, Z = F2_ONE, F2_ONE, F2_ZERO
        j = 0
        while k:
            d = k & 15
            if d:
                px, py = self.rows[j][d - 1]
                X, Y, Z = _jac2_add_mixed(X, Y, Z, px, py)
            k >>= 4
            j += 1
        return _jac2_to_affine(X, Y, Z)


_g2_comb: Optional[_G2Comb] = None


def g2_mul_gen(k: int):
    global _g2_comb
    if _g2_comb is None:
        _g2_comb = _G2Comb((G2_X, G2_Y))
    return _g2_comb.mul(k % N)


# --- wrapper value types -----------------------------------------------------


def _f2_parity(y) -> int:
    return (y[0] & 1) if y[0] != 0 else (y[1] & 1)


@dataclass(frozen=True)
class G1Point:
    """Affine G1 point or the identity (point = None)."""

    point: Optional[tuple[int, int]]

    SIZE = 21

    def is_identity(self) -> bool:
        return self.point is None

    def add(self, other: "G1Point") -> "G1Point":
        return G1Point(g1_add(self.point, other.point))

    def neg(self) -> "G1Point":
        return G1Point(g1_neg(self.point))

    def mul(self, k: int) -> "G1Point":
        return G1Point(g1_mul(self.point, k))

    def to_bytes(self) -> bytes:
        if self.point is None:
            return b"\x00" * 21
        x, y = self.point
        return bytes([0x02 | (y & 1)]) + x.to_bytes(20, "big")

    @classmethod
    def from_bytes(cls, blob: bytes) -> "G1Point":
        if len(blob) != 21:
            raise ValueError("compressed G1 point must be 21 bytes")
        if blob == b"\x00" * 21:
            return cls(None)
        flag = blob[0]
        if flag not in (0x02, 0x03):
            raise ValueError("bad G1 compression flag")
        x = int.from_bytes(blob[1:], "big")
        if x >= P:
            raise ValueError("G1 x-coordinate out of range")
        rhs = (x * x * x + CURVE_B) % P
        y = pow(rhs, (P + 1) // 4, P)
        if y * y % P != rhs:
            raise ValueError("not a curve point")
        if (y & 1) != (flag & 1):
            y = P - y
        return cls((x, y))


@dataclass(frozen=True)
class G2Point:
    """Affine point in the order-n subgroup of the twist, or the identity."""

    point: Optional[tuple[tuple[int, int], tuple[int, int]]]

    SIZE = 41

    def is_identity(self) -> bool:
        return self.point is None

    def add(self, other: "G2Point") -> "G2Point":
        return G2Point(g2_add(self.point, other.point))

    def mul(self, k: int) -> "G2Point":
        return G2Point(g2_mul(self.point, k))

    def to_bytes(self) -> bytes:
        if self.point is None:
            return b"\x00" * 41
        x, y = self.point
        return (
            bytes([0x02 | _f2_parity(y)])
            + x[0].to_bytes(20, "big")
            + x[1].to_bytes(20, "big")
        )

    @classmethod
    def from_bytes(cls, blob: bytes, check_subgroup: bool = True) -> "G2Point":
        if len(blob) != 41:
            raise ValueError("compressed G2 point must be 41 bytes")
        if blob == b"\x00" * 41:
            return cls(None)
        flag = blob[0]
        if flag not in (0x02, 0x03):
            raise ValueError("bad G2 compression flag")
        x = (int.from_bytes(blob[1:21], "big"), int.from_bytes(blob[21:], "big"))
        if x[0] >= P or x[1] >= P:
            raise ValueError("G2 x-coordinate out of range")
        rhs = f2_add(f2_mul(f2_sqr(x), x), TWIST_B)
        y = f2_sqrt(rhs)
        if y is None:
            raise ValueError("not a twist point")
        if _f2_parity(y) != (flag & 1):
            y = f2_neg(y)
        pt = (x, y)
        if check_subgroup and not g2_in_subgroup(pt):
            raise ValueError("twist point outside the order-n subgroup")
        return cls(pt)


def g1_generator() -> G1Point:
    return G1Point((G1_X, G1_Y))


def g2_generator() -> G2Point:
    return G2Point((G2_X, G2_Y))
