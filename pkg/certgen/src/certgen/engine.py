"""The kernel engine: generators of the global square-class machinery, prime
parity columns, quadratic characters, and the F_2 kernel extraction.

Generators name elements of M = Q[x]/(F) as (integer polynomial in the
scaled primitive element mu = lc(f) * theta, positive denominator).  Parity
columns track valuations at the prime ideals of M above each odd prime of the
support (Dedekind-gated, with ramified multiplicity blocks).  The norm-kernel
condition and class independence are decided by quadratic characters at
degree-1 places plus real-place signs."""
from __future__ import annotations

import math
from fractions import Fraction

import gmpy2
import mpmath

from .intpoly import (factor_int, hensel_lift_factors, mp_divmod, mp_factor,
                      mp_gcd, mp_mul, mp_norm, mp_resultant, mp_roots, padd,
                      peval, pmul, pneg, pscal, pstrip, pderiv, _f2_kernel,
                      _f2_independent, _polymod_mod, _shift_poly_mod,
                      _synth_div_mod, _vp, _int_resultant)
from .pairalg import pair_algebra, _fr_polred


def dedekind_index_free(F, p):
    lc, fac = mp_factor(F, p)
    g = [1]
    for gi, e in fac:
        g = mp_mul(g, gi, p)
    h = mp_divmod(mp_norm(F, p), g, p)[0]
    gl = [c if c <= p // 2 else c - p for c in g]
    hl = [c if c <= p // 2 else c - p for c in h]
    prod = [0] * (len(gl) + len(hl) - 1)
    for i, a in enumerate(gl):
        for j, b in enumerate(hl):
            prod[i + j] += a * b
    diff = padd(list(F), pneg(prod))
    T = mp_norm([c // p for c in diff], p)
    d = mp_gcd(mp_gcd(T, g, p), h, p)
    return len(d) - 1 == 0



def det_int(mat):
    """Exact integer determinant (fraction-free Bareiss)."""
    m = [row[:] for row in mat]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]



def _acc(d, fac, mult):
    for p, e in fac.items():
        d[p] = d.get(p, 0) + e * mult
    return d

def _scale_fac(fac, mult):
    return {p: e * mult for p, e in fac.items()}

def _disc(a):
    b = pderiv(a)
    res = _int_resultant(a, b)
    n = len(a) - 1
    lc = a[-1]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    assert res % lc == 0
    return sign * (res // lc)

def _polyred_int(a, mod):
    """Reduce integer poly a mod monic integer poly mod."""
    a = list(a)
    d = len(mod) - 1
    while len(a) - 1 >= d:
        co = a[-1]
        if co:
            off = len(a) - 1 - d
            for j in range(d):
                a[off + j] -= co * mod[j]
        a.pop()
    return pstrip(a)

class Gen:
    __slots__ = ("name", "num", "den", "value_fac", "value_sign", "kind")

    def __init__(self, name, num, den, value_fac, value_sign, kind):
        self.name = name
        self.num = tuple(num)       # integer poly in mu, reduced mod Fmu
        self.den = den              # positive integer; element = num(mu)/den
        self.value_fac = dict(value_fac)   # |Nm(element)| = prod p^e  (complete)
        self.value_sign = value_sign       # sign of Nm(element)
        self.kind = kind            # 'generic' | 'prod' | 'delta' | 'const'




class Engine:
    """Per-curve state: exact pair algebra, generator list, prime data."""

    def __init__(self, f_coeffs, S=(2,), verbose=True):
        self.f = pstrip([int(c) for c in f_coeffs])
        self.n = len(self.f) - 1
        self.c = self.f[-1]
        self.S = set(S)
        self.verbose = verbose
        n, c = self.n, self.c
        self.fmon = [self.f[i] * c ** (n - 1 - i) for i in range(n)] + [1]
        self.D = n * (n - 1) // 2
        self.Fmu, g2 = pair_algebra(self.fmon, lam=0)
        assert len(self.Fmu) - 1 == self.D
        den = 1
        for co in g2:
            den = den * co.denominator // math.gcd(den, co.denominator)
        self.e_den = den
        self.DG = pstrip([int(co * den) for co in g2])
        self.g2frac = [Fraction(co) for co in g2]
        self.discF = _disc(self.Fmu)
        self.discf = _disc(self.fmon)
        self.smalls = _primes_upto(10 ** 4)
        self.discf_fac = factor_int(self.discf, self.smalls)
        self.c_fac = factor_int(self.c, self.smalls) if abs(self.c) > 1 else {}
        self.gens: list[Gen] = []
        self._keys = set()
        self._pdata = {}
        self._skip = set()
        self._dedekind = {}
        if verbose:
            print(f"[engine] n={n} D={self.D}", flush=True)

    def sym_product(self, S):
        """num, den with S(u)S(v) = num(mu)/den for monic-or-not integral S (poly in nu)."""
        k = len(S) - 1
        e2 = self.g2frac            # nu nu' as Fraction poly in mu
        MU = [Fraction(0), Fraction(1)]
        # power sums p_m = u^m + v^m
        p = [[Fraction(2)], MU]
        for m in range(2, k + 1):
            pm = _fr_polred(padd(pmul(MU, p[m - 1]), pneg(pmul(e2, p[m - 2]))), self.Fmu)
            p.append(pm)
        e2pow = [[Fraction(1)]]
        for i in range(1, k + 1):
            e2pow.append(_fr_polred(pmul(e2pow[-1], e2), self.Fmu))
        out = []
        for i in range(k + 1):
            if S[i]:
                out = padd(out, pscal(Fraction(S[i] * S[i]), e2pow[i]))
        for i in range(k + 1):
            for j in range(i):
                if S[i] and S[j]:
                    term = pmul(e2pow[j], p[i - j])
                    out = padd(out, pscal(Fraction(S[i] * S[j]), term))
        out = _fr_polred(out, self.Fmu)
        den = 1
        for co in out:
            den = den * co.denominator // math.gcd(den, co.denominator)
        num = [int(co * den) for co in out]
        return pstrip(num), den

    # ------------------------------------------------- prime machinery (mu side)
    def prime_ok(self, p):
        """Is p usable for parity columns? (odd, not in S, Z[mu] p-maximal)"""
        if p in self.S or p == 2:
            return False
        if p in self._skip:
            return False
        if self.discF % p:
            return True
        ok = self._dedekind.get(p)
        if ok is None:
            ok = dedekind_index_free(self.Fmu, p)
            self._dedekind[p] = ok
            if not ok:
                self._skip.add(p)
        return ok

    def _prime_blocks(self, p, kneed):
        """Lifted block factorization of Fmu at an allowed prime p.
        Returns (K, [(block poly mod p^K, f_deg, e_ram)])."""
        cached = self._pdata.get(p)
        if cached is not None and cached[0] >= kneed:
            return cached
        lc, fac = mp_factor(self.Fmu, p)
        blocks = []
        for g, e in fac:
            if e == 1:
                blocks.append((g, len(g) - 1, 1))
            else:
                blk = g
                for _ in range(e - 1):
                    blk = mp_mul(blk, g, p)
                blocks.append((blk, len(g) - 1, e))
        K = max(kneed + 6, 12)
        lifted = hensel_lift_factors(self.Fmu, [b[0] for b in blocks], p, K)
        data = (K, [(lf, fd, e) for lf, (_, fd, e) in zip(lifted, blocks)])
        self._pdata[p] = data
        return data

    def parity_row(self, g: Gen):
        """dict (p, block_index) -> 1 for odd v_P(element)."""
        row = {}
        for p, vtot in sorted(g.value_fac.items()):
            if p in self.S or p == 2:
                continue
            if not self.prime_ok(p):
                return None
            K, blocks = self._prime_blocks(p, vtot + 4)
            pk = p ** K
            A = [x % pk for x in g.num]
            vden = _vp(g.den, p) if g.den % p == 0 else 0
            total = 0
            for bi, (lf, fdeg, e) in enumerate(blocks):
                R = _polymod_mod(A, lf, pk)
                if e == 1:
                    if not R:
                        raise RuntimeError(f"precision p={p}")
                    v = min(_vp(cc, p) for cc in R if cc)
                    if v >= K - 2:
                        raise RuntimeError(f"precision p={p}")
                    vP = v - e * vden
                else:
                    res = _res_modpk_block(lf, R, p, pk)
                    if res == 0:
                        raise RuntimeError(f"precision p={p} (ram)")
                    v = _vp(res, p)
                    if v >= K - 2:
                        raise RuntimeError(f"precision p={p} (ram)")
                    assert v % fdeg == 0, (p, v, fdeg)
                    vP = v // fdeg - e * vden
                total += vP * fdeg
                if vP % 2:
                    row[(p, bi)] = 1
            if total != vtot:
                raise RuntimeError(
                    f"support accounting p={p}: got {total} expected {vtot} ({g.name})")
        return row

    # ------------------------------------------------- characters
    def build_chars(self, n_m, n_n, qstart=2 ** 34):
        self.mchar, self.nchar = [], []
        q = qstart
        while len(self.mchar) < n_m or len(self.nchar) < n_n:
            q = int(gmpy2.next_prime(q))
            if self.discF % q == 0 or self.discf % q == 0 or self.e_den % q == 0 \
               or self.c % q == 0:
                continue
            if len(self.mchar) < n_m:
                for r in mp_roots(self.Fmu, q):
                    if len(self.mchar) < n_m:
                        self.mchar.append((q, r))
            if len(self.nchar) < n_n:
                for r in mp_roots(self.fmon, q):
                    if len(self.nchar) < n_n:
                        self.nchar.append((q, r))
        mpmath.mp.dps = 80
        self.mu_roots = mpmath.polyroots([mpmath.mpf(co) for co in reversed(self.Fmu)],
                                         maxsteps=1000, extraprec=600)
        self.nu_roots = mpmath.polyroots([mpmath.mpf(co) for co in reversed(self.fmon)],
                                         maxsteps=1000, extraprec=600)
        tol = mpmath.mpf(10) ** -40
        self.m_real = [mpmath.re(r) for r in self.mu_roots if abs(mpmath.im(r)) < tol]
        self.n_real = [mpmath.re(r) for r in self.nu_roots if abs(mpmath.im(r)) < tol]
        if self.verbose:
            print(f"[e3] chars: M {len(self.mchar)}+{len(self.m_real)}sgn, "
                  f"N {len(self.nchar)}+{len(self.n_real)}sgn")

    def m_char_bits(self, g: Gen):
        bits = 0
        for i, (q, r) in enumerate(self.mchar):
            v = peval(g.num, r) * pow(g.den % q, -1, q) % q
            j = gmpy2.jacobi(v, q)
            assert j != 0, (g.name, q)
            if j == -1:
                bits |= 1 << i
        off = len(self.mchar)
        for i, r in enumerate(self.m_real):
            val = _eval_mp(g.num, r)
            assert abs(val) > mpmath.mpf(10) ** -30
            if val < 0:
                bits |= 1 << (off + i)
        return bits

    def n_char_bits(self, g: Gen):
        """Characters of the norm map image: Nm(g)(nu = r) for degree-1 places,
        computed as Res_w(fmon(w)/(w - r), num(r + w)) / den^(n-1)."""
        bits = 0
        n = self.n
        for i, (q, r) in enumerate(self.nchar):
            cof = _synth_div_mod(self.fmon, r, q)
            Ash = _shift_poly_mod([x % q for x in g.num], r, q)
            val = mp_resultant(cof, Ash, q)
            if val == 0:
                return None
            val = val * pow(pow(g.den % q, -1, q), n - 1, q) % q
            if gmpy2.jacobi(val, q) == -1:
                bits |= 1 << i
        off = len(self.nchar)
        for i, r in enumerate(self.n_real):
            prod = mpmath.mpc(1)
            for w in self.nu_roots:
                if abs(w - r) < mpmath.mpf(10) ** -30:
                    continue
                prod = prod * _eval_mpc(g.num, r + w)
            rp = mpmath.re(prod)
            if not abs(rp) > mpmath.mpf(10) ** -25 * max(mpmath.mpf(1), abs(prod)):
                return None
            if rp < 0:
                bits |= 1 << (off + i)
        return bits

    # ------------------------------------------------- generator constructors
    def _add(self, name, num, den, value_fac, value_sign, kind):
        num = _polyred_int(num, self.Fmu)
        if not num:
            return False
        key = (tuple(num), den)
        if key in self._keys:
            return False
        self._keys.add(key)
        self.gens.append(Gen(name, num, den, value_fac, value_sign, kind))
        return True

    def add_generic(self, name, num, den, nm_value):
        fac = factor_int(abs(nm_value), self.smalls) if abs(nm_value) != 1 else {}
        return self._add(name, num, den, fac, 1 if nm_value > 0 else -1, "generic")

    def add_prod(self, name, stilde, value, value_fac):
        num, den = self.sym_product(stilde)
        vf = _scale_fac(value_fac, self.n - 1)
        sign = 1 if value > 0 else (-1) ** (self.n - 1)
        return self._add(name, num, den, vf, sign, "prod")

    def add_delta(self):
        e = self.e_den
        num = padd(pscal(e, [0, 0, 1]), pscal(-4, self.DG))
        return self._add(("delta",), num, e, dict(self.discf_fac),
                         1 if self.discf > 0 else -1, "delta")

    def add_const(self, t):
        fac = factor_int(t, self.smalls) if abs(t) != 1 else {}
        return self._add(("const", t), [t], 1, _scale_fac(fac, self.D),
                         1 if t > 0 else (-1) ** self.D, "const")

    # ------------------------------------------------- solve
    def solve(self, target=None):
        alive = []
        for g in self.gens:
            ln = mpmath.mpf(0)
            for r in self.mu_roots:
                ln += mpmath.log(abs(_eval_mpc(g.num, r)))
            ln -= self.D * mpmath.log(mpmath.mpf(g.den))
            claimed = sum(mpmath.log(mpmath.mpf(p)) * e for p, e in g.value_fac.items())
            if abs(ln - claimed) > mpmath.mpf(10) ** -5 * max(1, abs(claimed)) + mpmath.mpf(10) ** -10:
                if self.verbose:
                    print(f"[skip] norm mismatch {g.name}: {float(ln):.4f} vs {float(claimed):.4f}")
                continue
            try:
                row = self.parity_row(g)
            except RuntimeError as err:
                if self.verbose:
                    print(f"[skip] {g.name}: {err}")
                continue
            if row is None:
                continue
            nb = self.n_char_bits(g)
            if nb is None:
                continue
            alive.append((g, row, nb))
        cols = {}
        for _, row, _ in alive:
            for k in row:
                cols.setdefault(k, len(cols))
        npar, nnch = len(cols), len(self.nchar) + len(self.n_real)
        rows = []
        for g, row, nb in alive:
            bits = 0
            for k in row:
                bits |= 1 << cols[k]
            bits |= nb << npar
            rows.append(bits)
        if self.verbose:
            print(f"[e3] solve: {len(alive)} gens, {npar} parity cols, {nnch} norm chars")
        ker = _f2_kernel(rows, npar + nnch)
        ker.sort(key=lambda kv: bin(kv).count("1"))
        mbits = [self.m_char_bits(g) for g, _, _ in alive]
        mvecs = []
        for kv in ker:
            mb, i, k = 0, 0, kv
            while k:
                if k & 1:
                    mb ^= mbits[i]
                k >>= 1
                i += 1
            mvecs.append(mb)
        sel, rank = _f2_independent(mvecs)
        if self.verbose:
            print(f"[e3] kernel {len(ker)}, dim A-hat = {rank}"
                  + (f" (target {target})" if target else ""))
        self.alive = alive
        basis = []
        for bi in sel:
            kv = ker[bi]
            basis.append([alive[i][0] for i in range(len(alive)) if kv >> i & 1])
        return rank, basis




def _primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i:: i] = b"\x00" * len(sieve[i * i:: i])
    return [i for i in range(n + 1) if sieve[i]]


def _polyred_int(a, mod):
    a = list(a)
    d = len(mod) - 1
    while len(a) - 1 >= d:
        co = a[-1]
        if co:
            off = len(a) - 1 - d
            for j in range(d):
                a[off + j] -= co * mod[j]
        a.pop()
    return pstrip(a)


def _res_modpk_block(monic, R, p, pk):
    """Res(monic, R) mod p^k via the multiplication-matrix determinant."""
    if not R:
        return 0
    d = len(monic) - 1
    cols = []
    for i in range(d):
        xi = [0] * i + [1]
        col = _polymod_mod(_mulmod_int(xi, R, pk), monic, pk)
        col = col + [0] * (d - len(col))
        cols.append(col)
    mat = [[cols[j][i] % pk for j in range(d)] for i in range(d)]
    return det_int(mat) % pk


def _mulmod_int(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % m
    return pstrip(out)


def _eval_mp(poly, x):
    r = mpmath.mpf(0)
    for c in reversed(poly):
        r = r * x + c
    return r


def _eval_mpc(poly, x):
    r = mpmath.mpc(0)
    for c in reversed(poly):
        r = r * x + c
    return r
