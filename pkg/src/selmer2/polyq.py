"""Small exact polynomial helpers over Q (dense, ascending coefficients).

Internal module: just enough arithmetic for curve transforms, discriminants
and squarefreeness checks at the degrees this pipeline meets (<= ~30).
"""
from __future__ import annotations

from fractions import Fraction


def strip(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def add(a, b):
    n = max(len(a), len(b))
    return strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def neg(a):
    return [-c for c in a]


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return strip(out)


def scal(c, a):
    return strip([c * x for x in a])


def evaluate(a, x):
    r = 0
    for c in reversed(a):
        r = r * x + c
    return r


def derivative(a):
    return strip([i * a[i] for i in range(1, len(a))])


def divmod_exact(a, b):
    """Division over Q; returns (q, r)."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        if not a[-1]:
            a.pop()
            continue
        c = a[-1] / b[-1]
        sh = len(a) - len(b)
        q[sh] = c
        for j in range(len(b)):
            a[sh + j] -= c * b[j]
        a.pop()
    return strip(q), strip(a)


def gcd(a, b):
    """Monic gcd over Q."""
    a = strip([Fraction(c) for c in a])
    b = strip([Fraction(c) for c in b])
    while b:
        a, b = b, divmod_exact(a, b)[1]
    if a:
        lc = a[-1]
        a = [c / lc for c in a]
    return a


def resultant(a, b):
    """Res(a, b) over Q via the Euclidean recurrence."""
    a = strip([Fraction(c) for c in a])
    b = strip([Fraction(c) for c in b])
    if not a or not b:
        return Fraction(0)
    res = Fraction(1)
    while deg(b) > 0:
        da, db = deg(a), deg(b)
        r = divmod_exact(a, b)[1]
        if not r:
            return Fraction(0)
        res *= b[-1] ** (da - deg(r))
        if (da * db) % 2:
            res = -res
        a, b = b, r
    return res * b[0] ** deg(a)


def discriminant(a):
    """disc(a) = (-1)^(n(n-1)/2) Res(a, a') / lc(a)."""
    n = deg(a)
    if n < 1:
        raise ValueError("constant polynomial")
    res = resultant(a, derivative(a))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / Fraction(a[-1])


def is_squarefree(a) -> bool:
    return deg(gcd(a, derivative(a))) == 0
