"""Exact symmetric-pair algebra: the resolvent F of theta = sum of a root
pair (optionally + lambda * product) and the pair-product polynomial, via
integer linear algebra in Z[u,v]/(f(u), f*(u,v))."""
from __future__ import annotations

from fractions import Fraction



def _fr_polred(a, mod):
    a = list(a)
    d = len(mod) - 1
    while len(a) - 1 >= d:
        co = a[-1]
        if co:
            off = len(a) - 1 - d
            for j in range(d):
                a[off + j] -= co * mod[j]
        a.pop()
    while a and not a[-1]:
        a.pop()
    return a



def pair_algebra(fmon, lam=0):
    """For monic integer fmon (deg n) compute (Fmu, G2) where, for roots v,w of fmon,
    theta = v + w + lam*v*w runs over unordered pairs, Fmu = minimal poly of theta
    (monic, integer, degree n(n-1)/2), and G2 = rational poly with G2(theta) = v*w.
    Exact integer linear algebra in B = Z[u,v]/(f(u), f*(u,v))."""
    n = len(fmon) - 1
    D = n * (n - 1) // 2
    dimB = n * (n - 1)
    # f*(u,v) = f(v)/(v-u) in B; coefficients in u: q_j(u) = sum_{k>j} f_k u^(k-1-j)
    fstar = []  # fstar[j] = poly in u (ascending), j = v-degree < n
    for j in range(n):
        qj = [fmon[k] for k in range(j + 1, n + 1)]  # u^0..u^(n-1-j)
        fstar.append(qj)
    # reduction of u-powers: u^n = -(f_0 + ... + f_{n-1} u^{n-1})
    ured = [-c for c in fmon[:-1]]
    # element of B: dict (a,b) -> int, a < n (u-deg), b < n-1 (v-deg)
    def unorm(poly_u):
        # reduce a poly in u (list) mod f
        poly_u = list(poly_u)
        while len(poly_u) > n:
            c = poly_u.pop()
            for i, r in enumerate(ured):
                poly_u[len(poly_u) - n + i] += c * r
        return poly_u
    def mul_u(e):  # multiply element by u
        out = {}
        for (a, b), c in e.items():
            if a + 1 < n:
                out[(a + 1, b)] = out.get((a + 1, b), 0) + c
            else:
                for i, r in enumerate(ured):
                    if r:
                        out[(i, b)] = out.get((i, b), 0) + c * r
        return {k: v for k, v in out.items() if v}
    def mul_v(e):  # multiply element by v;  v^(n-1) = -(sum_{j<n-1} q_j(u) v^j)/1  (fstar monic in v)
        out = {}
        for (a, b), c in e.items():
            if b + 1 < n - 1:
                out[(a, b + 1)] = out.get((a, b + 1), 0) + c
            else:
                # v^{n-1} = - sum_{j<n-1} q_j(u) v^j   (q_{n-1} = 1)
                for j in range(n - 1):
                    qj = fstar[j]
                    # c * u^a * q_j(u) * v^j
                    prod = unorm([0] * a + [c * x for x in qj])
                    for i, val in enumerate(prod):
                        if val:
                            out[(i, j)] = out.get((i, j), 0) - val
        return {k: v for k, v in out.items() if v}
    def add(e1, e2):
        out = dict(e1)
        for k, v in e2.items():
            out[k] = out.get(k, 0) + v
            if not out[k]:
                del out[k]
        return out
    def tovec(e):
        vec = [0] * dimB
        for (a, b), c in e.items():
            vec[a * (n - 1) + b] = c
        return vec
    one = {(0, 0): 1}
    u_el = {(1, 0): 1} if n > 1 else None
    v_el = {(0, 1): 1}
    uv = mul_v({(1, 0): 1})
    s = add(add({(1, 0): 1}, {(0, 1): 1}), {k: lam * v for k, v in uv.items()} if lam else {})
    # powers of s
    powers = [one]
    cur = one
    def mul_by_s(e):
        out = {}
        for (a, b), c in e.items():
            pass
        # s*e = u*e + v*e + lam*uv*e ; uv*e = mul_u(mul_v(e))
        r = add(mul_u(e), mul_v(e))
        if lam:
            w = mul_u(mul_v(e))
            r = add(r, {k: lam * val for k, val in w.items()})
        return r
    for k in range(2 * D + 1):
        cur = mul_by_s(cur)
        powers.append(cur)
    vecs = [tovec(e) for e in powers]
    # find minimal monic dependency:  Fmu via exact Gaussian elimination over Q
    Fmu = _min_dependency(vecs, D)
    # G2: solve sum g_k s^k = uv  over first D powers
    g = _lin_solve(vecs[:D], tovec(uv))
    return Fmu, g

def _min_dependency(vecs, expect_deg):
    """Smallest k with vecs[k] in span(vecs[:k]); return monic dependency coeffs."""
    rows = []   # (pivot_index, vector as Fractions, combo over original indices)
    combos = []
    basis = []
    for k, v in enumerate(vecs):
        vv = [Fraction(c) for c in v]
        combo = {k: Fraction(1)}
        for (piv, bv, bc) in basis:
            if vv[piv]:
                coef = vv[piv] / bv[piv]
                vv = [a - coef * b for a, b in zip(vv, bv)]
                for i, c in bc.items():
                    combo[i] = combo.get(i, Fraction(0)) - coef * c
        nz = [i for i, c in enumerate(vv) if c]
        if not nz:
            # dependency found: sum combo_i * s^i = 0, combo_k = 1 (monic)
            assert k == expect_deg, (k, expect_deg)
            out = [0] * (k + 1)
            for i, c in combo.items():
                out[i] = c
            assert all(c.denominator == 1 for c in out if c), "F not integral"
            return [int(c) for c in out]
        basis.append((nz[0], vv, combo))
    raise RuntimeError("no dependency")

def _lin_solve(vecs, target):
    """Solve sum x_k vecs[k] = target exactly (consistent system)."""
    m = len(vecs)
    rows = [[Fraction(vecs[k][i]) for k in range(m)] + [Fraction(target[i])] for i in range(len(target))]
    piv = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    x = [Fraction(0)] * m
    for i, c in enumerate(piv):
        x[c] = rows[i][m]
    # verify consistency
    for i in range(r, len(rows)):
        assert not rows[i][m], "inconsistent system"
    return x

