"""Short-vector machinery: floating LLL with exact transforms, smooth
generic generators from the saturated order, and ideal-targeted relations."""
from __future__ import annotations

import math
import random
import time

import mpmath
import numpy as np
from fractions import Fraction

from .intpoly import factor_int, mp_roots, pstrip
import gmpy2

def lll_reduce_rows(rows, delta=0.75, max_sweeps=400000, resync=512):
    n = len(rows)
    m = len(rows[0])
    b = [r[:] for r in rows]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    mu = [[0.0] * n for _ in range(n)]
    B = [0.0] * n

    def gso():
        bs = [None] * n
        for i in range(n):
            bs_i = b[i][:]
            for j in range(i):
                if B[j] == 0:
                    mu[i][j] = 0 * b[0][0]
                    continue
                mm = sum(b[i][t] * bs[j][t] for t in range(m)) / B[j]
                mu[i][j] = mm
                for t in range(m):
                    bs_i[t] -= mm * bs[j][t]
            bs[i] = bs_i
            B[i] = sum(x * x for x in bs_i)

    def size_reduce(k, j):
        mm = mu[k][j]
        if abs(mm) > 0.5:
            q = int(round(float(mm))) if abs(mm) < 1e17 else int(mm)
            if q:
                for t in range(m):
                    b[k][t] -= q * b[j][t]
                for t in range(n):
                    U[k][t] -= q * U[j][t]
                for t in range(j):
                    mu[k][t] -= q * mu[j][t]
                mu[k][j] -= q

    gso()
    k = 1
    sweeps = 0
    since_sync = 0
    while k < n:
        sweeps += 1
        if sweeps > max_sweeps:
            break
        size_reduce(k, k - 1)
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            # swap with incremental mu/B updates
            muk = mu[k][k - 1]
            Bnew = B[k] + muk * muk * B[k - 1]
            b[k], b[k - 1] = b[k - 1], b[k]
            U[k], U[k - 1] = U[k - 1], U[k]
            for j in range(k - 1):
                mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
            if Bnew == 0:
                gso()
            else:
                mu_new = muk * B[k - 1] / Bnew
                B[k] = B[k - 1] * B[k] / Bnew
                B[k - 1] = Bnew
                mu[k][k - 1] = mu_new
                for i in range(k + 1, n):
                    t = mu[i][k]
                    mu[i][k] = mu[i][k - 1] - muk * t
                    mu[i][k - 1] = t + mu_new * mu[i][k]
            since_sync += 1
            if since_sync >= resync:
                gso()
                since_sync = 0
            k = max(k - 1, 1)
        else:
            for j in range(k - 2, -1, -1):
                size_reduce(k, j)
            k += 1
    return U


def fullfactor(v, FB, B, cap):
    out = {}
    for p in FB:
        if p * p > v:
            break
        while v % p == 0:
            out[p] = out.get(p, 0) + 1
            v //= p
    if v == 1:
        return out
    if v <= B:
        out[v] = out.get(v, 0) + 1
        return out
    if v <= cap and gmpy2.is_prime(int(v)):
        out[int(v)] = out.get(int(v), 0) + 1
        return out
    r = math.isqrt(v)
    if r * r == v and r <= cap and gmpy2.is_prime(int(r)):
        out[int(r)] = out.get(int(r), 0) + 2
        return out
    return None


def generic_generators(eng: Engine3, sat_basis, budget=30000, seed=11,
                       B=10**4, LPCAP=10**9, max_keep=900, verbose=True):
    """LLL-reduce the saturated order's Minkowski lattice and harvest
    short vectors with smooth norms."""
    t0 = time.time()
    D = eng.D
    digits0 = 1
    for row in sat_basis:
        for x in row:
            digits0 = max(digits0,
                          len(str(abs(x.numerator))), len(str(x.denominator)))
    mpmath.mp.dps = digits0 + 60
    roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(eng.Fmu)],
                             maxsteps=2000, extraprec=3000)
    # embedding matrix of the order basis: E[i][j] = sigma_j(b_i)
    E = [[_eval_frac_poly(row, r) for r in roots] for row in sat_basis]
    # stage 1: balance the coefficient lattice (integer entries, small range)
    den_all = 1
    for row in sat_basis:
        for x in row:
            den_all = den_all * x.denominator // math.gcd(den_all, x.denominator)
    int_rows = [[mpmath.mpf(int(x * den_all)) for x in row] for row in sat_basis]
    H1 = lll_reduce_rows(int_rows)
    basis1 = []
    for hrow in H1:
        vec = [Fraction(0)] * D
        for i, hi in enumerate(hrow):
            if hi:
                for j in range(D):
                    vec[j] += hi * sat_basis[i][j]
        basis1.append(vec)
    # stage 2: reduce the Minkowski embedding lattice, iterating with exact
    # row reconstruction until the reduction stabilizes
    if verbose:
        print(f"[lll] embedding built ({time.time()-t0:.0f}s), reducing...")
    Hacc = H1
    cur = basis1
    last_log = None
    for it in range(8):
        digits = 1
        for row in cur:
            for x in row:
                digits = max(digits, len(str(abs(x.numerator))),
                             len(str(x.denominator)))
        mpmath.mp.dps = digits + 50
        E = [[_eval_frac_poly(row, r) for r in roots] for row in cur]
        real_rows = []
        for i in range(D):
            row = []
            for t in range(D):
                row.append(mpmath.re(E[i][t]))
                row.append(mpmath.im(E[i][t]))
            real_rows.append(row)
        H2 = lll_reduce_rows(real_rows)
        Hacc = [[sum(H2[i][t] * Hacc[t][j] for t in range(D)) for j in range(D)]
                for i in range(D)]
        # rebuild cur exactly from Hacc over sat_basis
        cur = []
        for hrow in Hacc:
            vec = [Fraction(0)] * D
            for i, hi in enumerate(hrow):
                if hi:
                    for j in range(D):
                        vec[j] += hi * sat_basis[i][j]
            cur.append(vec)
        E2 = [[_eval_frac_poly(row, r) for r in roots] for row in cur[:1]]
        m0 = sum(mpmath.log(abs(v)) for v in E2[0])
        if verbose:
            print(f"[lll] pass {it}: leading lognorm {float(m0):.1f}")
        if last_log is not None and abs(float(m0) - last_log) < 0.5:
            break
        last_log = float(m0)
    H = Hacc
    mpmath.mp.dps = 80
    roots = eng.mu_roots
    if verbose:
        print(f"[lll] reduced ({time.time()-t0:.0f}s)")
    # reduced basis rows (as Fraction polys) and their embeddings (numpy)
    red_rows = []
    for hrow in H:
        vec = [Fraction(0)] * D
        for i, hi in enumerate(hrow):
            if hi:
                for j in range(D):
                    vec[j] += hi * sat_basis[i][j]
        red_rows.append(vec)
    R = np.array([[complex(E_val) for E_val in _embed_row(row, roots)]
                  for row in red_rows])
    lognorms = np.sum(np.log(np.abs(R)), axis=1)
    order = np.argsort(lognorms)
    if verbose:
        print("[lll] lognorms (first 8):", [f"{lognorms[i]:.1f}" for i in order[:8]])
    # candidate combos
    rng = random.Random(seed)
    FB = [p for p in eng.smalls if p <= B]
    seen = set()
    kept = 0
    # deterministic small combos over the best ~12 vectors, then random sparse
    best = list(order[:min(12, D)])
    combos = []
    for a in best:
        combos.append({a: 1})
    for ai in range(len(best)):
        for bi in range(ai + 1, len(best)):
            for sa in (1, -1):
                combos.append({best[ai]: 1, best[bi]: sa})
    for ai in range(len(best)):
        for bi in range(ai + 1, len(best)):
            for ci in range(bi + 1, len(best)):
                for sb in (1, -1):
                    for scc in (1, -1):
                        combos.append({best[ai]: 1, best[bi]: sb, best[ci]: scc})
    while len(combos) < budget:
        nnz = rng.choice((2, 3, 3, 4, 4, 5))
        idxs = rng.sample(range(D), nnz)
        combos.append({i: rng.choice((1, -1, 1, -1, 2, -2)) for i in idxs})
    X = np.zeros((len(combos), D))
    for ci, combo in enumerate(combos):
        for i, coef in combo.items():
            X[ci, i] = coef
    vals = X @ R
    lp = np.sum(np.log(np.maximum(np.abs(vals), 1e-300)), axis=1)
    # keep candidates with smallest log-norms
    cut = np.argsort(lp)
    added = 0
    e3 = eng
    for ci in cut:
        if added >= max_keep or lp[ci] > math.log(10) * 42:
            break
        combo = combos[ci]
        key = tuple(sorted(combo.items()))
        if key in seen:
            continue
        seen.add(key)
        # exact element: sum coef * red_rows[i]
        vec = [Fraction(0)] * D
        embs = [mpmath.mpc(0)] * D
        for i, coef in combo.items():
            Ri = _row_embs(red_rows, roots, i, _emb_cache)
            for j in range(D):
                vec[j] += coef * red_rows[i][j]
                embs[j] += coef * Ri[j]
        den = 1
        for x in vec:
            den = den * x.denominator // math.gcd(den, x.denominator)
        num = pstrip([int(x * den) for x in vec])
        if not num:
            continue
        nm_val = _exact_norm_from_embs(embs)
        if nm_val is None:
            continue
        fac = fullfactor(abs(nm_val), FB, B, LPCAP)
        if fac is None:
            continue
        if eng.add_generic(("L", added), num, den, nm_val):
            added += 1
    if verbose:
        print(f"[lll] kept {added} smooth generic gens of {len(combos)} combos "
              f"({time.time()-t0:.0f}s)")
    return added, red_rows, roots


def _eval_frac_poly(row, x):
    r = mpmath.mpc(0)
    for c in reversed(row):
        r = r * x + mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
    return r


def _embed_row(row, roots):
    return [_eval_frac_poly(row, r) for r in roots]


def _eval_mpc_frac(poly, x):
    r = mpmath.mpc(0)
    for c in reversed(poly):
        r = r * x + c
    return r


def ideal_lattice_generators(eng, red_rows, roots, primes, B=10**4, LPCAP=10**9,
                             per_prime=6, verbose=True):
    """For each allowed prime p with degree-1 ideals, LLL the ideal sublattice
    {x in O : x = 0 mod P} and harvest short smooth vectors (targeted
    relations; every factor-base column gets rows)."""
    import time as _t
    t0 = _t.time()
    D = eng.D
    FB = [p for p in eng.smalls if p <= B]
    added = 0

    # embeddings of the reduced order basis
    E = [[_eval_frac_poly(row, r) for r in roots] for row in red_rows]
    for p in primes:
        if not eng.prime_ok(p):
            continue
        # degree-1 roots of Fmu mod p
        try:
            rts = mp_roots(eng.Fmu, p)
        except Exception:
            continue
        for rt in rts[:1]:     # one ideal per prime is enough for relations
            # values b_i(rt) mod p (den of row must be invertible mod p)
            w = []
            ok = True
            for row in red_rows:
                den = 1
                for x in row:
                    den = den * x.denominator // math.gcd(den, x.denominator)
                if den % p == 0:
                    ok = False
                    break
                v = 0
                for c in reversed(row):
                    v = (v * rt + c.numerator * pow(c.denominator, -1, p)) % p
                w.append(v)
            if not ok:
                continue
            j0 = next((i for i in range(D) if w[i] % p), None)
            if j0 is None:
                continue
            inv = pow(w[j0], -1, p)
            lat_rows = []
            combos = []
            for i in range(D):
                if i == j0:
                    lat_rows.append([p * x for x in E[j0]])
                    combos.append({j0: p})
                else:
                    q = (w[i] * inv) % p
                    if q > p // 2:
                        q -= p
                    lat_rows.append([E[i][t] - q * E[j0][t] for t in range(D)])
                    combos.append({i: 1, j0: -q})
            rr = []
            for row in lat_rows:
                out = []
                for t in range(D):
                    out.append(mpmath.re(row[t]))
                    out.append(mpmath.im(row[t]))
                rr.append(out)
            H = lll_reduce_rows(rr, max_sweeps=40000)
            # candidate integer combos over the reduced ideal basis
            cand_combos = [{i: 1} for i in range(D)]
            for i in range(min(D, 8)):
                for j in range(i + 1, min(D, 8)):
                    for s in (1, -1):
                        cand_combos.append({i: 1, j: s})
            got = 0
            for cc_ in cand_combos:
                if got >= per_prime:
                    break
                hrow = [0] * D
                for i, s in cc_.items():
                    for t in range(D):
                        hrow[t] += s * H[i][t]
                combo = {}
                for i, hi in enumerate(hrow):
                    if hi:
                        for b_i, co in combos[i].items():
                            combo[b_i] = combo.get(b_i, 0) + hi * co
                vec = [Fraction(0)] * D
                embs = [mpmath.mpc(0)] * D
                for i, coef in combo.items():
                    if coef:
                        Ei = _row_embs(red_rows, roots, i, _emb_cache)
                        for j in range(D):
                            vec[j] += coef * red_rows[i][j]
                            embs[j] += coef * Ei[j]
                den = 1
                for x in vec:
                    den = den * x.denominator // math.gcd(den, x.denominator)
                num = pstrip([int(x * den) for x in vec])
                if not num:
                    continue
                nm_val = _exact_norm_from_embs(embs)
                if nm_val is None:
                    continue
                fac = fullfactor(abs(nm_val), FB, B, LPCAP)
                if fac is None:
                    continue
                if eng.add_generic(("I", p, rt, got), num, den, nm_val):
                    got += 1
                    added += 1
    if verbose:
        print(f"[ideal] added {added} targeted relations ({_t.time()-t0:.0f}s)")
    return added


_emb_cache: dict = {}


def _row_embs(red_rows, roots, i, cache):
    key = (id(red_rows), i)
    got = cache.get(key)
    if got is None:
        got = [_eval_frac_poly(red_rows[i], r) for r in roots]
        cache[key] = got
    return got


def _exact_norm_from_embs(embs):
    """Integer norm from the element's embedding values (|Nm| small by
    construction); None if reconstruction is uncertain."""
    nm = mpmath.mpc(1)
    for v in embs:
        nm *= v
    nm_re = mpmath.re(nm)
    if abs(mpmath.im(nm)) > mpmath.mpf(10) ** -6 * max(1, abs(nm_re)):
        return None
    nm_int = int(mpmath.nint(nm_re))
    if nm_int == 0:
        return None
    if abs(mpmath.mpf(nm_int) - nm_re) > mpmath.mpf("0.01") * max(1, abs(nm_re)) ** 0:
        if abs(mpmath.mpf(nm_int) - nm_re) > abs(nm_re) * mpmath.mpf(10) ** -20:
            return None
    return nm_int
