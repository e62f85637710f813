"""Integer and mod-p polynomial arithmetic: factorization over F_p,
multifactor Hensel lifting over Z_p, resultants, integer factorization with
Pollard rho.  Dense ascending-coefficient lists throughout."""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import gmpy2

# ---------------------------------------------------------------- primes

def primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i in range(n + 1) if sieve[i]]

def is_probable_prime(n):
    return gmpy2.is_prime(int(n))

# ------------------------------------------------- integer polynomials (dense, ascending)

def pstrip(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a

def padd(a, b):
    m = max(len(a), len(b))
    return pstrip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)])

def pneg(a):
    return [-c for c in a]

def pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return pstrip(out)

def pscal(c, a):
    return pstrip([c * x for x in a])

def peval(a, x):
    r = 0
    for c in reversed(a):
        r = r * x + c
    return r

def pderiv(a):
    return pstrip([i * a[i] for i in range(1, len(a))])

# ---------------------------------------------------------- polys mod p (ascending, int coeffs in [0,p))

def mp_norm(a, p):
    return pstrip([c % p for c in a])

def mp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return pstrip(out)

def mp_divmod(a, b, p):
    # b monic-izable mod p
    a = list(a)
    binv = pow(b[-1], -1, p)
    db, da = len(b) - 1, len(a) - 1
    q = [0] * max(0, da - db + 1)
    for i in range(da - db, -1, -1):
        c = (a[i + db] * binv) % p
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    return pstrip(q), pstrip(a)

def mp_gcd(a, b, p):
    a, b = mp_norm(a, p), mp_norm(b, p)
    while b:
        a, b = b, mp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a

def mp_powmod(base, e, mod, p):
    result = [1]
    base = mp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = mp_divmod(mp_mul(result, base, p), mod, p)[1]
        base = mp_divmod(mp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result

def mp_roots(a, p):
    """Roots in F_p of squarefree part of a."""
    a = mp_norm(a, p)
    if not a:
        raise ValueError("zero poly")
    # linear-factor part: gcd(x^p - x, a)
    xp = mp_powmod([0, 1], p, a, p)
    g = mp_gcd(padd(xp, pneg([0, 1])), a, p)
    return sorted(_mp_split_linear(g, p))

def _mp_split_linear(g, p):
    # g = product of distinct monic linear factors
    d = len(g) - 1
    if d <= 0:
        return []
    if d == 1:
        return [(-g[0]) % p]
    rng = random.Random(0xC0FFEE ^ d ^ (p & 0xFFFF))
    while True:
        c = rng.randrange(p)
        h = mp_powmod([c, 1], (p - 1) // 2, g, p)
        h = padd(h, [p - 1])
        s = mp_gcd(h, g, p)
        if 0 < len(s) - 1 < d:
            t = mp_divmod(g, s, p)[0]
            return _mp_split_linear(s, p) + _mp_split_linear(t, p)

def mp_factor(a, p):
    """Full factorization of a mod p (monic factors, with multiplicity)."""
    a = mp_norm(a, p)
    lc = a[-1]
    a = [c * pow(lc, -1, p) % p for c in a]
    out = {}
    # squarefree decomposition via repeated gcd with derivative
    def sqfree_split(f):
        parts = []  # (squarefree poly, multiplicity)
        i = 1
        while len(f) - 1 > 0:
            d = mp_norm(pderiv(f), p)
            if not d:
                # f = g(x^p) = g(x)^p
                g = [f[j] for j in range(0, len(f), p)]
                for sq, m in sqfree_split(g):
                    parts.append((sq, m * p))
                return parts
            g = mp_gcd(f, d, p)
            w = mp_divmod(f, g, p)[0]
            j = 1
            while len(w) - 1 > 0:
                y = mp_gcd(w, g, p)
                z = mp_divmod(w, y, p)[0]
                if len(z) - 1 > 0:
                    parts.append((z, i * j))
                w = y
                g = mp_divmod(g, y, p)[0]
                j += 1
            f = g
            i *= p
        return parts
    for sq, mult in sqfree_split(a):
        for irr in _ddf_edf(sq, p):
            out[tuple(irr)] = out.get(tuple(irr), 0) + mult
    return lc, [(list(k), v) for k, v in sorted(out.items())]

def _ddf_edf(f, p):
    """Factor squarefree monic f mod p into irreducibles."""
    res = []
    x = [0, 1]
    d = 1
    h = x
    f = list(f)
    while len(f) - 1 >= 2 * d:
        h = mp_powmod(h, p, f, p)
        g = mp_gcd(padd(h, pneg(x)), f, p)
        if len(g) - 1 > 0:
            res.extend(_edf(g, d, p))
            f = mp_divmod(f, g, p)[0]
            h = mp_divmod(h, f, p)[1]
        d += 1
    if len(f) - 1 > 0:
        res.append(f)
    return res

def _edf(g, d, p, seed=1):
    """Equal-degree factorization: g = product of irreducibles of degree d."""
    n = (len(g) - 1) // d
    if n == 1:
        return [g]
    rng = random.Random(0xEDF ^ seed ^ (p & 0xFFFFF) ^ len(g))
    while True:
        a = [rng.randrange(p) for _ in range(len(g) - 1)] + [1]
        e = (p ** d - 1) // 2
        h = mp_powmod(a, e, g, p)
        h = padd(h, [p - 1])
        s = mp_gcd(h, g, p)
        if 0 < len(s) - 1 < len(g) - 1:
            t = mp_divmod(g, s, p)[0]
            return _edf(s, d, p, seed + 1) + _edf(t, d, p, seed + 2)

# ------------------------------------------------------- Hensel lifting mod p^k

def hensel_lift_factors(F, facs, p, k):
    """Lift pairwise-coprime monic factorization of monic F mod p to mod p^k.

    facs: list of monic polys mod p (with multiplicity folded in, i.e. product = F mod p).
    Returns factors mod p^k with product == F mod p^k.
    """
    if len(facs) == 1:
        return [ [c % p**k for c in F] ]
    # split into two halves, lift, recurse
    half = len(facs) // 2
    g = facs[0]
    for fi in facs[1:half]:
        g = mp_mul(g, fi, p)
    h = facs[half]
    for fi in facs[half + 1 :]:
        h = mp_mul(h, fi, p)
    G, H = _hensel_pair(F, g, h, p, k)
    left = hensel_lift_factors(G, facs[:half], p, k)
    right = hensel_lift_factors(H, facs[half:], p, k)
    return left + right

def _hensel_pair(F, g, h, p, k):
    """F monic == g*h mod p, g,h monic coprime mod p. Lift to mod p^k (quadratic)."""
    # bezout: u*g + v*h == 1 mod p
    u, v = _mp_bezout(g, h, p)
    pk = p
    g = [c % p for c in g]
    h = [c % p for c in h]
    while pk < p ** k:
        pk2 = min(pk * pk, p ** k)
        # e = F - g*h mod pk2
        e = padd([c % pk2 for c in F], pneg(_mul_mod(g, h, pk2)))
        e = [c % pk2 for c in e]
        # dg = v*e mod g, dh = u*e mod h (over Z/pk2)
        dg = _polymod_mod(_mul_mod(v, e, pk2), g, pk2)
        dh = _polymod_mod(_mul_mod(u, e, pk2), h, pk2)
        g = pstrip([(a + b) % pk2 for a, b in itertools.zip_longest(g, dg, fillvalue=0)])
        h = pstrip([(a + b) % pk2 for a, b in itertools.zip_longest(h, dh, fillvalue=0)])
        # lift bezout: w = u*g + v*h - 1
        w = padd(padd(_mul_mod(u, g, pk2), _mul_mod(v, h, pk2)), [-1])
        w = [c % pk2 for c in w]
        du = _polymod_mod(_mul_mod(u, pneg(w), pk2), h, pk2)
        dv = _polymod_mod(_mul_mod(v, pneg(w), pk2), g, pk2)
        u = pstrip([(a + b) % pk2 for a, b in itertools.zip_longest(u, du, fillvalue=0)])
        v = pstrip([(a + b) % pk2 for a, b in itertools.zip_longest(v, dv, fillvalue=0)])
        pk = pk2
    return g, h

def _mul_mod(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % m
    return pstrip(out)

def _polymod_mod(a, b, m):
    """a mod b over Z/m, b monic."""
    a = [c % m for c in a]
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = a[-1]
        if c:
            sh = len(a) - 1 - db
            for j, bj in enumerate(b):
                a[sh + j] = (a[sh + j] - c * bj) % m
        a.pop()
    return pstrip(a)

def _mp_bezout(g, h, p):
    """u,v with u*g + v*h = 1 mod p."""
    r0, r1 = mp_norm(g, p), mp_norm(h, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = mp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, mp_norm(padd(s0, pneg(mp_mul(q, s1, p))), p)
        t0, t1 = t1, mp_norm(padd(t0, pneg(mp_mul(q, t1, p))), p)
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def _vp(n, p):
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def _eval_real(A, x):
    import mpmath
    r = mpmath.mpf(0)
    for c in reversed(A):
        r = r * x + c
    return r


def _eval_cplx(A, x):
    import mpmath
    r = mpmath.mpc(0)
    for c in reversed(A):
        r = r * x + c
    return r


def _synth_div_mod(f, r, q):
    """f(w)/(w - r) mod q for monic f with f(r) == 0 allowed or not (remainder dropped)."""
    n = len(f) - 1
    out = [0] * n
    acc = 0
    for k in range(n, 0, -1):
        acc = (acc * r + f[k]) % q
        out[k - 1] = acc
    return pstrip(out)


def _shift_poly_mod(A, r, q):
    """A(r + w) as poly in w mod q (Horner in (w + r))."""
    res = []
    for c in reversed(A):
        # res = res * (w + r) + c
        new = [0] * (len(res) + 1)
        for i, rc in enumerate(res):
            new[i + 1] = (new[i + 1] + rc) % q
            new[i] = (new[i] + rc * r) % q
        new[0] = (new[0] + c) % q
        res = new
    return pstrip([c % q for c in res])


def mp_resultant(a, b, p):
    a, b = mp_norm(a, p), mp_norm(b, p)
    if not a or not b:
        return 0
    res = 1
    while len(b) - 1 > 0:
        da, db = len(a) - 1, len(b) - 1
        r = mp_divmod(a, b, p)[1]
        dr = len(r) - 1 if r else -1
        if not r:
            return 0
        res = res * pow(b[-1], da - dr, p) % p
        if (da * db) % 2:
            res = (-res) % p
        a, b = b, r
    return res * pow(b[0], len(a) - 1, p) % p


def _int_resultant(a, b):
    A = [Fraction(c) for c in a]
    B = [Fraction(c) for c in b]
    if not A or not B:
        return 0
    res = Fraction(1)
    while len(B) - 1 > 0:
        da, db = len(A) - 1, len(B) - 1
        # A mod B
        R = list(A)
        while len(R) - 1 >= db and any(R):
            cdeg = len(R) - 1
            coef = R[-1] / B[-1]
            for j in range(db + 1):
                R[cdeg - db + j] -= coef * B[j]
            R.pop()
            while R and R[-1] == 0:
                R.pop()
        dr = len(R) - 1 if R else -1
        if not R:
            return 0
        res *= B[-1] ** (da - dr)
        if (da * db) % 2:
            res = -res
        A, B = B, R
    res *= B[0] ** (len(A) - 1)
    assert res.denominator == 1
    return int(res)


def _f2_kernel(rows, width):
    """Kernel of the row-span map: vectors k (bitmask over rows) with sum k_i row_i = 0."""
    n = len(rows)
    aug = [(rows[i], 1 << i) for i in range(n)]
    pivots = {}
    kernel = []
    for r, tag in aug:
        for col, (pr, pt) in pivots.items():
            if r >> col & 1:
                r ^= pr
                tag ^= pt
        if r == 0:
            kernel.append(tag)
        else:
            low = _lowest_bit(r)
            pivots[low] = (r, tag)
    return kernel


def _lowest_bit(x):
    return (x & -x).bit_length() - 1


def _f2_independent(vecs):
    """Indices of a maximal independent subset (greedy in order)."""
    pivots = {}
    sel = []
    for i, v in enumerate(vecs):
        r = v
        for col, pr in pivots.items():
            if r >> col & 1:
                r ^= pr
        if r:
            pivots[_lowest_bit(r)] = r
            sel.append(i)
    return sel, len(sel)


def factor_int(n, fb_primes, rho_rounds=6):
    """Factor |n| completely; small primes by trial division, rest by Pollard rho.
    Returns dict prime -> exponent. Raises if a composite survives."""
    n = abs(int(n))
    assert n != 0
    out = {}
    for p in fb_primes:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if gmpy2.is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _rho(m)
        stack.extend([d, m // d])
    return out


def _rho(n):
    if n % 2 == 0:
        return 2
    rng = random.Random(n & 0xFFFFFFFF)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d

# ------------------------------------------------------------------ the engine
