"""Extension-field tower for the BN-160 pairing.

    Fp2  = Fp[i]/(i^2 + 1)          elements (a, b) = a + b*i
    Fp6  = Fp2[v]/(v^3 - xi)        elements (c0, c1, c2), xi = 1 + i
    Fp12 = Fp6[w]/(w^2 - v)         elements (d0, d1), so w^6 = xi

The curve parameter x is positive with NAF weight 5, which the cyclotomic
exponentiation exploits (inversion is conjugation there, so negative NAF
digits are free).  The hot multiply/square paths are written out over plain
ints; the readable Fp2-level helpers below them serve setup code and tests.
"""

# BN parameter and derived primes.  p = 36x^4+36x^3+24x^2+6x+1, n = p - 6x^2.
X_PARAM = 0x5FFDFFFFEF
P = 36 * X_PARAM**4 + 36 * X_PARAM**3 + 24 * X_PARAM**2 + 6 * X_PARAM + 1
N = 36 * X_PARAM**4 + 36 * X_PARAM**3 + 18 * X_PARAM**2 + 6 * X_PARAM + 1
TRACE = 6 * X_PARAM**2 + 1

assert P % 4 == 3 and P % 6 == 1

F2_ZERO = (0, 0)
F2_ONE = (1, 0)
XI = (1, 1)

F6_ZERO = (F2_ZERO, F2_ZERO, F2_ZERO)
F6_ONE = (F2_ONE, F2_ZERO, F2_ZERO)

F12_ONE = (F6_ONE, F6_ZERO)
GT_ONE = F12_ONE


# --- Fp2 helpers (cold paths) ------------------------------------------------


def f2_add(x, y):
    return ((x[0] + y[0]) % P, (x[1] + y[1]) % P)


def f2_sub(x, y):
    return ((x[0] - y[0]) % P, (x[1] - y[1]) % P)


def f2_neg(x):
    return ((-x[0]) % P, (-x[1]) % P)


def f2_mul(x, y):
    a0, a1 = x
    b0, b1 = y
    m0 = a0 * b0
    m1 = a1 * b1
    return ((m0 - m1) % P, ((a0 + a1) * (b0 + b1) - m0 - m1) % P)


def f2_sqr(x):
    a0, a1 = x
    return ((a0 + a1) * (a0 - a1) % P, 2 * a0 * a1 % P)


def f2_scal(x, c):
    return (x[0] * c % P, x[1] * c % P)


def f2_conj(x):
    return (x[0], (-x[1]) % P)


def f2_inv(x):
    a0, a1 = x
    d = pow(a0 * a0 + a1 * a1, -1, P)
    return (a0 * d % P, (-a1) * d % P)


def f2_mul_xi(x):
    a0, a1 = x
    return ((a0 - a1) % P, (a0 + a1) % P)


def f2_pow(x, e):
    r = F2_ONE
    for bit in bin(e)[2:]:
        r = f2_sqr(r)
        if bit == "1":
            r = f2_mul(r, x)
    return r


def f2_sqrt(a):
    """Square root in Fp2 or None.  Uses the norm trick for p = 3 mod 4."""
    a0, a1 = a
    if a1 == 0:
        r = pow(a0, (P + 1) // 4, P)
        if r * r % P == a0 % P:
            return (r, 0)
        r = pow((-a0) % P, (P + 1) // 4, P)
        if r * r % P == (-a0) % P:
            return (0, r)
        return None
    nrm = (a0 * a0 + a1 * a1) % P
    s = pow(nrm, (P + 1) // 4, P)
    if s * s % P != nrm:
        return None
    inv2 = (P + 1) // 2
    for sign in (1, -1):
        t = (a0 + sign * s) * inv2 % P
        x0 = pow(t, (P + 1) // 4, P)
        if x0 * x0 % P == t and x0 != 0:
            x1 = a1 * pow(2 * x0, -1, P) % P
            if f2_sqr((x0, x1)) == (a0 % P, a1 % P):
                return (x0, x1)
    return None


# --- Fp6 ---------------------------------------------------------------------


def f6_mul(a, b):
    """Karatsuba product, 6 complex multiplications, fully inlined."""
    (a00, a01), (a10, a11), (a20, a21) = a
    (b00, b01), (b10, b11), (b20, b21) = b
    # t_k = a_k * b_k
    m = a00 * b00
    n_ = a01 * b01
    t00 = m - n_
    t01 = (a00 + a01) * (b00 + b01) - m - n_
    m = a10 * b10
    n_ = a11 * b11
    t10 = m - n_
    t11 = (a10 + a11) * (b10 + b11) - m - n_
    m = a20 * b20
    n_ = a21 * b21
    t20 = m - n_
    t21 = (a20 + a21) * (b20 + b21) - m - n_
    # u = (a1+a2)(b1+b2), v = (a0+a1)(b0+b1), w = (a0+a2)(b0+b2)
    s0, s1 = a10 + a20, a11 + a21
    z0, z1 = b10 + b20, b11 + b21
    m = s0 * z0
    n_ = s1 * z1
    u0 = m - n_
    u1 = (s0 + s1) * (z0 + z1) - m - n_
    s0, s1 = a00 + a10, a01 + a11
    z0, z1 = b00 + b10, b01 + b11
    m = s0 * z0
    n_ = s1 * z1
    v0 = m - n_
    v1 = (s0 + s1) * (z0 + z1) - m - n_
    s0, s1 = a00 + a20, a01 + a21
    z0, z1 = b00 + b20, b01 + b21
    m = s0 * z0
    n_ = s1 * z1
    w0 = m - n_
    w1 = (s0 + s1) * (z0 + z1) - m - n_
    # r0 = t0 + xi*(u - t1 - t2); xi*(c0,c1) = (c0-c1, c0+c1)
    c0 = u0 - t10 - t20
    c1 = u1 - t11 - t21
    r00 = (t00 + c0 - c1) % P
    r01 = (t01 + c0 + c1) % P
    # r1 = v - t0 - t1 + xi*t2
    r10 = (v0 - t00 - t10 + t20 - t21) % P
    r11 = (v1 - t01 - t11 + t20 + t21) % P
    # r2 = w - t0 - t2 + t1
    r20 = (w0 - t00 - t20 + t10) % P
    r21 = (w1 - t01 - t21 + t11) % P
    return ((r00, r01), (r10, r11), (r20, r21))


def f6_add(a, b):
    return (
        ((a[0][0] + b[0][0]) % P, (a[0][1] + b[0][1]) % P),
        ((a[1][0] + b[1][0]) % P, (a[1][1] + b[1][1]) % P),
        ((a[2][0] + b[2][0]) % P, (a[2][1] + b[2][1]) % P),
    )


def f6_sub(a, b):
    return (
        ((a[0][0] - b[0][0]) % P, (a[0][1] - b[0][1]) % P),
        ((a[1][0] - b[1][0]) % P, (a[1][1] - b[1][1]) % P),
        ((a[2][0] - b[2][0]) % P, (a[2][1] - b[2][1]) % P),
    )


def f6_neg(a):
    return (
        ((-a[0][0]) % P, (-a[0][1]) % P),
        ((-a[1][0]) % P, (-a[1][1]) % P),
        ((-a[2][0]) % P, (-a[2][1]) % P),
    )


def f6_mul_v(a):
    c0, c1, c2 = a
    return (f2_mul_xi(c2), c0, c1)


def f6_inv(a):
    c0, c1, c2 = a
    aa = f2_sub(f2_sqr(c0), f2_mul_xi(f2_mul(c1, c2)))
    bb = f2_sub(f2_mul_xi(f2_sqr(c2)), f2_mul(c0, c1))
    cc = f2_sub(f2_sqr(c1), f2_mul(c0, c2))
    den = f2_add(f2_mul(c0, aa), f2_mul_xi(f2_add(f2_mul(c2, bb), f2_mul(c1, cc))))
    di = f2_inv(den)
    return (f2_mul(aa, di), f2_mul(bb, di), f2_mul(cc, di))


# --- Fp12 --------------------------------------------------------------------


def f12_mul(x, y):
    a0, a1 = x
    b0, b1 = y
    t0 = f6_mul(a0, b0)
    t1 = f6_mul(a1, b1)
    cross = f6_mul(f6_add(a0, a1), f6_add(b0, b1))
    return (f6_add(t0, f6_mul_v(t1)), f6_sub(f6_sub(cross, t0), t1))


def f12_sqr(x):
    a0, a1 = x
    t = f6_mul(a0, a1)
    r0 = f6_sub(
        f6_sub(f6_mul(f6_add(a0, a1), f6_add(a0, f6_mul_v(a1))), t), f6_mul_v(t)
    )
    return (r0, f6_add(t, t))


def f12_conj(x):
    return (x[0], f6_neg(x[1]))


def f12_inv(x):
    a0, a1 = x
    den = f6_sub(f6_mul(a0, a0), f6_mul_v(f6_mul(a1, a1)))
    di = f6_inv(den)
    return (f6_mul(a0, di), f6_neg(f6_mul(a1, di)))


def f12_pow(x, e):
    """Generic square-and-multiply; slow path for tests and odd exponents."""
    if e < 0:
        raise ValueError("negative exponent needs a unitary base; use cyc_exp")
    r = F12_ONE
    for bit in bin(e)[2:]:
        r = f12_sqr(r)
        if bit == "1":
            r = f12_mul(r, x)
    return r


# coefficient view: f = sum g_k w^k with g_k in Fp2,
# (d0, d1) = ((g0, g2, g4), (g1, g3, g5))


def f12_to_coeffs(x):
    (g0, g2, g4), (g1, g3, g5) = x
    return (g0, g1, g2, g3, g4, g5)


def f12_from_coeffs(g):
    return ((g[0], g[2], g[4]), (g[1], g[3], g[5]))


# Frobenius constants gamma1[k] = xi^(k (p-1)/6)
GAMMA1 = tuple(f2_pow(XI, k * (P - 1) // 6) for k in range(6))
GAMMA2 = tuple(f2_mul(f2_conj(GAMMA1[k]), GAMMA1[k]) for k in range(6))
GAMMA3 = tuple(f2_mul(GAMMA2[k], GAMMA1[k]) for k in range(6))


def f12_frob(x):
    g = f12_to_coeffs(x)
    out = tuple(f2_mul(f2_conj(g[k]), GAMMA1[k]) for k in range(6))
    return f12_from_coeffs(out)


def f12_frob2(x):
    g = f12_to_coeffs(x)
    out = tuple(f2_mul(g[k], GAMMA2[k]) for k in range(6))
    return f12_from_coeffs(out)


def f12_frob3(x):
    g = f12_to_coeffs(x)
    out = tuple(f2_mul(f2_conj(g[k]), GAMMA3[k]) for k in range(6))
    return f12_from_coeffs(out)


# --- cyclotomic subgroup ops -------------------------------------------------


def gs_sqr(x):
    """Granger-Scott squaring, valid only for unitary elements.

    Blocks (g0,g3),(g1,g4),(g2,g5) are squared in Fp4 = Fp2[s]/(s^2 - xi):
      (a + b s)^2 = (a^2 + xi b^2) + 2ab s
    and recombined as
      g0' = 3 A0 - 2 g0   g1' = 3 xi C1 + 2 g1   g2' = 3 B0 - 2 g2
      g3' = 3 A1 + 2 g3   g4' = 3 C0 - 2 g4      g5' = 3 B1 + 2 g5
    """
    (g0, g2, g4), (g1, g3, g5) = x
    g00, g01 = g0
    g10, g11 = g1
    g20, g21 = g2
    g30, g31 = g3
    g40, g41 = g4
    g50, g51 = g5

    # A = (g0 + g3 s)^2
    t00 = (g00 + g01) * (g00 - g01)
    t01 = 2 * g00 * g01
    t10 = (g30 + g31) * (g30 - g31)
    t11 = 2 * g30 * g31
    ab0 = g00 * g30 - g01 * g31
    ab1 = g00 * g31 + g01 * g30
    A0 = (t00 + t10 - t11, t01 + t10 + t11)
    A1 = (2 * ab0, 2 * ab1)

    # B = (g1 + g4 s)^2
    t00 = (g10 + g11) * (g10 - g11)
    t01 = 2 * g10 * g11
    t10 = (g40 + g41) * (g40 - g41)
    t11 = 2 * g40 * g41
    ab0 = g10 * g40 - g11 * g41
    ab1 = g10 * g41 + g11 * g40
    B0 = (t00 + t10 - t11, t01 + t10 + t11)
    B1 = (2 * ab0, 2 * ab1)

    # C = (g2 + g5 s)^2
    t00 = (g20 + g21) * (g20 - g21)
    t01 = 2 * g20 * g21
    t10 = (g50 + g51) * (g50 - g51)
    t11 = 2 * g50 * g51
    ab0 = g20 * g50 - g21 * g51
    ab1 = g20 * g51 + g21 * g50
    C0 = (t00 + t10 - t11, t01 + t10 + t11)
    C1 = (2 * ab0, 2 * ab1)

    h0 = ((3 * A0[0] - 2 * g00) % P, (3 * A0[1] - 2 * g01) % P)
    h3 = ((3 * A1[0] + 2 * g30) % P, (3 * A1[1] + 2 * g31) % P)
    h2 = ((3 * B0[0] - 2 * g20) % P, (3 * B0[1] - 2 * g21) % P)
    h5 = ((3 * B1[0] + 2 * g50) % P, (3 * B1[1] + 2 * g51) % P)
    # xi * C1
    xc0 = C1[0] - C1[1]
    xc1 = C1[0] + C1[1]
    h1 = ((3 * xc0 + 2 * g10) % P, (3 * xc1 + 2 * g11) % P)
    h4 = ((3 * C0[0] - 2 * g40) % P, (3 * C0[1] - 2 * g41) % P)
    return ((h0, h2, h4), (h1, h3, h5))


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


NAF_X = tuple(_naf(X_PARAM))


def cyc_exp_x(f):
    """f^x for unitary f, NAF digits with free inversion by conjugation."""
    fc = f12_conj(f)
    r = F12_ONE
    for d in NAF_X:
        r = gs_sqr(r)
        if d == 1:
            r = f12_mul(r, f)
        elif d == -1:
            r = f12_mul(r, fc)
    return r


def cyc_exp(f, e):
    """f^e for unitary f and e >= 0, NAF + Granger-Scott squarings."""
    if e == 0:
        return F12_ONE
    fc = f12_conj(f)
    r = F12_ONE
    for d in _naf(e):
        r = gs_sqr(r)
        if d == 1:
            r = f12_mul(r, f)
        elif d == -1:
            r = f12_mul(r, fc)
    return r


# --- GT public helpers -------------------------------------------------------

gt_mul = f12_mul
gt_inv = f12_conj  # GT elements are unitary


def gt_exp(f, e):
    e %= N
    return cyc_exp(f, e)


def gt_serialize(f) -> bytes:
    g = f12_to_coeffs(f)
    out = bytearray()
    for c in g:
        out += c[0].to_bytes(20, "big")
        out += c[1].to_bytes(20, "big")
    return bytes(out)


def gt_deserialize(blob: bytes):
    if len(blob) != 240:
        raise ValueError("GT element must be 240 bytes")
    vals = [int.from_bytes(blob[i : i + 20], "big") for i in range(0, 240, 20)]
    for v in vals:
        if v >= P:
            raise ValueError("GT coefficient out of range")
    g = tuple((vals[2 * k], vals[2 * k + 1]) for k in range(6))
    return f12_from_coeffs(g)
