"""Order construction and saturation: the module closure of Z[mu, mtilde],
Hermite normal form over Q, and Pohst-Zassenhaus round-2 enlargement at the
known ramified primes and 2."""
from __future__ import annotations

import math
from fractions import Fraction

from .intpoly import pmul
from .pairalg import _fr_polred


def hnf_rows(rows, dim):
    """Hermite-normal-form basis (as list of Fraction vectors, row style, lower-tri-ish)
    of the Z-span of given Fraction row vectors. Scaled-integer HNF."""
    den = 1
    for r in rows:
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
    mat = [[int(x * den) for x in r] + [0]*(dim - len(r)) for r in rows]
    # integer HNF, column-major elimination
    basis = []
    for col in range(dim):
        # gather rows with leading nonzero at col
        while True:
            rows_at = [r for r in mat if r[col] != 0 and all(r[c] == 0 for c in range(col))]
            if len(rows_at) <= 1:
                break
            rows_at.sort(key=lambda r: abs(r[col]))
            r0 = rows_at[0]
            for r in rows_at[1:]:
                q = r[col] // r0[col]
                for i in range(col, dim):
                    r[i] -= q * r0[i]
            mat = [r for r in mat if any(r)]
        row0 = next((r for r in mat if r[col] != 0 and all(r[c] == 0 for c in range(col))), None)
        if row0 is not None:
            if row0[col] < 0:
                for i in range(dim):
                    row0[i] = -row0[i]
            basis.append(row0)
            mat = [r for r in mat if r is not row0]
    assert len(basis) == dim, f"rank {len(basis)} != {dim}"
    # Hermite normalization: reduce above-pivot entries (ascending pivots so
    # fill-in lands in columns that are normalized later)
    for i in range(dim):
        piv = basis[i][i]
        for k in range(i):
            q = (2 * basis[k][i] + piv) // (2 * piv)
            if q:
                for j in range(i, dim):
                    basis[k][j] -= q * basis[i][j]
    return [[Fraction(x, den) for x in r] for r in basis]


def order_with_m(eng, extra_gens=(), max_iter=80):
    """Z-module closure of Z[mu] + mtilde*Z[mu] + ... ; returns basis rows (Fraction, in mu-power coords)."""
    D = eng.D
    mt = [Fraction(co) for co in eng.g2frac]   # mtilde = nu*nu' as poly in mu
    rows = [[Fraction(1 if j == i else 0) for j in range(D)] for i in range(D)]
    basis = rows
    dets_seen = set()
    for it in range(max_iter):
        new_rows = list(basis)
        for r in basis:
            prod = _fr_polred(pmul(r, mt), eng.Fmu)
            new_rows.append(prod + [Fraction(0)]*(D - len(prod)))
            shift = _fr_polred(pmul(r, [Fraction(0), Fraction(1)]), eng.Fmu)
            new_rows.append(shift + [Fraction(0)]*(D - len(shift)))
        for g in extra_gens:
            for r in basis:
                prod = _fr_polred(pmul(r, g), eng.Fmu)
                new_rows.append(prod + [Fraction(0)]*(D - len(prod)))
        nb = hnf_rows(new_rows, D)
        det = Fraction(1)
        for i in range(D):
            det *= nb[i][i]
        if det in dets_seen:
            basis = nb
            break
        dets_seen.add(det)
        basis = nb
    else:
        raise RuntimeError("order closure did not stabilize")
    return basis, det



def mu_to_order_coords(vec_mu, basis):
    """Exact coords of a mu-poly (Fraction list) over echelon basis rows (pivot at col i)."""
    D = len(basis)
    v = list(vec_mu) + [Fraction(0)] * (D - len(vec_mu))
    out = [Fraction(0)] * D
    for i in range(D):
        c = v[i] / basis[i][i]
        out[i] = c
        if c:
            for j in range(i, D):
                v[j] -= c * basis[i][j]
    assert all(x == 0 for x in v), "not in lattice span"
    return out


def order_mult_table(basis, Fmu):
    """C[i][j] = exact integer O-coords of b_i b_j."""
    D = len(basis)
    FmuF = [Fraction(c) for c in Fmu]
    C = [[None] * D for _ in range(D)]
    for i in range(D):
        for j in range(i + 1):
            prod = _fr_polred(pmul(basis[i], basis[j]), FmuF)
            co = mu_to_order_coords(prod, basis)
            assert all(x.denominator == 1 for x in co), "order not closed under multiplication"
            row = [int(x) for x in co]
            C[i][j] = C[j][i] = row
    return C


def _vecmul(x, y, C, p):
    D = len(x)
    out = [0] * D
    for i in range(D):
        if x[i]:
            xi = x[i]
            Ci = C[i]
            for j in range(D):
                if y[j]:
                    xy = xi * y[j] % p
                    if xy:
                        cij = Ci[j]
                        for k in range(D):
                            if cij[k]:
                                out[k] = (out[k] + xy * cij[k]) % p
    return out


def _left_kernel(rows, p, D):
    """Vectors c with sum_i c_i rows[i] = 0 mod p."""
    aug = [([x % p for x in rows[i]], [1 if k == i else 0 for k in range(len(rows))])
           for i in range(len(rows))]
    piv = {}
    kernel = []
    for r, tag in aug:
        for col, (pr, pt) in piv.items():
            if r[col]:
                f = r[col] * pow(pr[col], -1, p) % p
                r = [(a - f * b) % p for a, b in zip(r, pr)]
                tag = [(a - f * b) % p for a, b in zip(tag, pt)]
        nz = next((c for c in range(D) if r[c]), None)
        if nz is None:
            kernel.append(tag)
        else:
            piv[nz] = (r, tag)
    return kernel


def _nullspace(rows, p, D):
    """Vectors c in F_p^D with rows . c = 0."""
    piv = {}
    for r in rows:
        r = [x % p for x in r]
        if not any(r):
            continue
        for col in sorted(piv):
            if r[col]:
                f = r[col]
                r = [(a - f * b) % p for a, b in zip(r, piv[col])]
        nz = next((c for c in range(D) if r[c]), None)
        if nz is None:
            continue
        inv = pow(r[nz], -1, p)
        r = [a * inv % p for a in r]
        for col in list(piv):
            if piv[col][nz]:
                f = piv[col][nz]
                piv[col] = [(a - f * b) % p for a, b in zip(piv[col], r)]
        piv[nz] = r
    free = [c for c in range(D) if c not in piv]
    out = []
    for fc in free:
        v = [0] * D
        v[fc] = 1
        for col, pr in piv.items():
            v[col] = (-pr[fc]) % p
        out.append(v)
    return out


def _hnf_int(rows, D):
    mat = [list(r) for r in rows if any(r)]
    basis = []
    for col in range(D):
        while True:
            rows_at = [r for r in mat if r[col] != 0 and all(r[c] == 0 for c in range(col))]
            if len(rows_at) <= 1:
                break
            rows_at.sort(key=lambda r: abs(r[col]))
            r0 = rows_at[0]
            for r in rows_at[1:]:
                q = r[col] // r0[col]
                if q:
                    for t in range(col, D):
                        r[t] -= q * r0[t]
            mat = [r for r in mat if any(r)]
        row0 = next((r for r in mat if r[col] != 0 and all(r[c] == 0 for c in range(col))), None)
        if row0 is None:
            raise ValueError("rank deficient")
        if row0[col] < 0:
            row0 = [-x for x in row0]
        basis.append(row0)
        mat = [r for r in mat if r is not row0]
    return basis


def saturate_at(basis, Fmu, p, max_rounds=400):
    """Enlarge order until p-maximal; returns (basis, rounds used)."""
    D = len(basis)
    m, pm = 1, p
    while pm < D:
        pm *= p
        m += 1
    for rnd in range(max_rounds):
        C = order_mult_table(basis, Fmu)
        Cp = [[[c % p for c in C[i][j]] for j in range(D)] for i in range(D)]

        def power_p(vec):
            result = None
            base = vec
            e = p
            while e:
                if e & 1:
                    result = base if result is None else _vecmul(result, base, Cp, p)
                e >>= 1
                if e:
                    base = _vecmul(base, base, Cp, p)
            return result

        L = [power_p([1 if k == i else 0 for k in range(D)]) for i in range(D)]
        Lm = L
        for _ in range(m - 1):
            Lm = [[sum(Lm[i][t] * L[t][j] for t in range(D)) % p for j in range(D)] for i in range(D)]
        rad = _left_kernel(Lm, p, D)
        gens = [[x % p for x in r] for r in rad] + \
               [[p if k == i else 0 for k in range(D)] for i in range(D)]
        R = _hnf_int(gens, D)
        # conditions: action of sum c_i b_i on I_p/pI_p vanishes
        conds = []
        for t in range(D):
            ys = []
            for i in range(D):
                v = [0] * D
                Rt = R[t]
                Ci = C[i]
                for j in range(D):
                    if Rt[j]:
                        rtj = Rt[j]
                        cij = Ci[j]
                        for k in range(D):
                            if cij[k]:
                                v[k] += rtj * cij[k]
                y = [0] * D
                for a in range(D):
                    assert v[a] % R[a][a] == 0, "product not in I_p"
                    q = v[a] // R[a][a]
                    y[a] = q
                    if q:
                        for b in range(a, D):
                            v[b] -= q * R[a][b]
                assert all(x == 0 for x in v)
                ys.append(y)
            for comp in range(D):
                row = [ys[i][comp] % p for i in range(D)]
                if any(row):
                    conds.append(row)
        ckern = _nullspace(conds, p, D)
        new_rows = [[Fraction(x) for x in row] for row in basis]
        changed = False
        for cvec in ckern:
            vec = [Fraction(0)] * D
            for i, ci in enumerate(cvec):
                if ci:
                    for j in range(D):
                        vec[j] += Fraction(ci) * basis[i][j]
            if not any(vec):
                continue
            vec = [x / p for x in vec]
            co_ok = True
            v = list(vec)
            out = []
            for i in range(D):
                c = v[i] / basis[i][i]
                out.append(c)
                if c:
                    for j in range(i, D):
                        v[j] -= c * basis[i][j]
            if all(x == 0 for x in v) and all(x.denominator == 1 for x in out):
                continue   # already in the lattice
            new_rows.append(vec)
            changed = True
        if not changed:
            return basis, rnd
        basis = hnf_rows(new_rows, D)
    raise RuntimeError("saturation did not stabilize")
