"""Integer and modular-arithmetic helpers shared by the crypto modules."""

import hashlib
import random

_SMALL_PRIMES = [p for p in range(3, 2000) if all(p % d for d in range(2, p))]

_sysrand = random.SystemRandom()


def is_probable_prime(n: int, rounds: int = 40, rng=None) -> bool:
    """Miller-Rabin with trial division; error probability <= 4^-rounds."""
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n == sp:
            return True
        if n % sp == 0:
            return False
    rng = rng or _sysrand
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng=None) -> int:
    """Random prime with the top bit set (exact bit length)."""
    rng = rng or _sysrand
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(cand, rng=rng):
            return cand


def i2osp(x: int, length: int) -> bytes:
    return x.to_bytes(length, "big")


def os2ip(data: bytes) -> int:
    return int.from_bytes(data, "big")


def mgf1(seed: bytes, length: int, hash_name: str = "sha256") -> bytes:
    """Mask generation function from PKCS#1: counter-mode hash expansion."""
    h = hashlib.new(hash_name)
    out = bytearray()
    counter = 0
    while len(out) < length:
        c = h.copy()
        c.update(seed + counter.to_bytes(4, "big"))
        out.extend(c.digest())
        counter += 1
    return bytes(out[:length])


def naf(k: int) -> list[int]:
    """Non-adjacent form digits of k, least significant first (-1/0/1)."""
    out = []
    while k:
        if k & 1:
            d = 2 - (k & 3)
            out.append(d)
            k -= d
        else:
            out.append(0)
        k >>= 1
    return out


def sqrt_mod(a: int, p: int) -> int | None:
    """Square root mod a prime p = 3 (mod 4); None if a is a non-residue."""
    if p % 4 != 3:
        raise ValueError("sqrt_mod expects p = 3 mod 4")
    a %= p
    r = pow(a, (p + 1) // 4, p)
    if r * r % p == a:
        return r
    return None


class CombTable:
    """Fixed-base modular exponentiation via a radix-16 precomputed table.

    Stores g^(d * 16^j) mod m for every window position j and digit d, so an
    e-bit exponent costs about e/4 multiplications and no squarings.  Only
    worth building for long-lived system generators.
    """

    def __init__(self, base: int, modulus: int, max_bits: int):
        self.modulus = modulus
        self.max_bits = max_bits
        windows = (max_bits + 3) // 4
        table = []
        cur = base % modulus
        for _ in range(windows):
            row = [1] * 16
            for d in range(1, 16):
                row[d] = row[d - 1] * cur % modulus
            table.append(row)
            cur = row[15] * cur % modulus  # cur^16
        self.table = table

    def pow(self, exponent: int) -> int:
        if exponent < 0:
            raise ValueError("negative exponent")
        m = self.modulus
        acc = 1
        j = 0
        while exponent:
            d = exponent & 15
            if d:
                acc = acc * self.table[j][d] % m
            exponent >>= 4
            j += 1
        return acc
