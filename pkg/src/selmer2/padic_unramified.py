"""Exact arithmetic in unramified extensions of Q_2 at tracked absolute
precision: Hensel lifting, square testing, square roots, Frobenius.

Elements are coefficient vectors over a fixed monic lift of an irreducible
polynomial over F_2 (power basis), reduced mod 2^cap, together with a
denominator exponent `shift`: the value is vec(x)/2^shift, known mod
2^(cap - shift).  Since the power basis reduces to a residue-field basis,
the valuation of an element is the minimum 2-adic valuation of its
coordinates; that makes valuations certifiable at finite precision.

Unit squares are decided through the Teichmueller decomposition
u = tau * (1 + 2a): u is a square iff v(a) >= 1 and the residue of a/2 has
trace 0 (equivalently, u is a square mod 8), and a root is then constructed
by Newton iteration, which certifies the decision.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import HenselFailure, NotASquare, PrecisionExhausted

DEFAULT_PRECISION = 256
PRECISION_CEILING = 4096


def _bit_irreducible(mask: int, d: int) -> bool:
    """Is the degree-d poly with coefficient bits `mask | 1<<d` irreducible over F2?"""
    poly = mask | (1 << d)
    if d == 1:
        return True
    if not (poly & 1):
        return False
    # x^(2^k) mod poly, gcd tests (d is tiny here)
    def polymod(a):
        while a.bit_length() - 1 >= d:
            a ^= poly << (a.bit_length() - 1 - d)
        return a
    def polymulmod(a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a = polymod(a << 1)
        return r
    def gcd2(a, b):
        while b:
            if a.bit_length() < b.bit_length():
                a, b = b, a
                continue
            a ^= b << (a.bit_length() - b.bit_length())
        return a
    x = 2
    t = x
    for k in range(1, d // 2 + 1):
        t = polymulmod(t, t)
        if gcd2(poly, t ^ x) != 1:
            return False
    t = 2
    for k in range(d):
        t = polymulmod(t, t)
    return t == 2


def _pick_modulus(d: int) -> tuple[int, ...]:
    """Deterministic irreducible modulus of degree d: smallest coefficient mask."""
    for mask in range(1 << d):
        if _bit_irreducible(mask, d):
            return tuple(((mask >> i) & 1) for i in range(d)) + (1,)
    raise AssertionError("no irreducible polynomial found")


_FIELDS: dict[int, "UnramifiedField"] = {}


class UnramifiedField:
    """U_d: the unramified extension of Q_2 of degree d (residue field F_{2^d})."""

    def __init__(self, degree: int):
        if degree < 1:
            raise ValueError("degree must be positive")
        self.degree = degree
        self.modulus = _pick_modulus(degree)
        self.modulus_mask = sum(b << i for i, b in enumerate(self.modulus))
        self._frob_gen: dict[int, "UnramifiedElement"] = {}

    def __repr__(self):
        return f"U_{self.degree}"

    def __eq__(self, other):
        return isinstance(other, UnramifiedField) and other.degree == self.degree

    def __hash__(self):
        return hash(("U", self.degree))

    # ---- residue field F_{2^d}: elements are int bitmasks -------------
    def rmul(self, a: int, b: int) -> int:
        d = self.degree
        mod = self.modulus_mask
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> d & 1:
                a ^= mod
        return r

    def rpow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.rmul(r, a)
            a = self.rmul(a, a)
            e >>= 1
        return r

    def rtrace(self, a: int) -> int:
        t, cur = 0, a
        for _ in range(self.degree):
            t ^= cur
            cur = self.rmul(cur, cur)
        return t & 1 if self.degree == 1 else _parity_bit(t, self)

    # ---- element constructors -----------------------------------------
    def elt(self, vec, cap: int, shift: int = 0) -> "UnramifiedElement":
        d = self.degree
        vec = tuple(int(v) % (1 << cap) for v in vec) + (0,) * (d - len(vec))
        return UnramifiedElement(self, vec[:d], cap, shift)

    def zero(self, cap: int) -> "UnramifiedElement":
        return self.elt((0,) * self.degree, cap)

    def one(self, cap: int) -> "UnramifiedElement":
        return self.elt((1,) + (0,) * (self.degree - 1), cap)

    def gen(self, cap: int) -> "UnramifiedElement":
        if self.degree == 1:
            raise ValueError("Q2 has no generator")
        return self.elt((0, 1) + (0,) * (self.degree - 2), cap)

    def from_integer(self, n: int, cap: int) -> "UnramifiedElement":
        return self.elt((n % (1 << cap),) + (0,) * (self.degree - 1), cap)

    def from_rational(self, num: int, den: int, cap: int) -> "UnramifiedElement":
        v2 = 0
        den = int(den)
        num = int(num)
        if den == 0:
            raise ZeroDivisionError
        while den % 2 == 0:
            den //= 2
            v2 += 1
        inv = pow(den, -1, 1 << (cap + v2))
        return self.elt(((num * inv) % (1 << (cap + v2)),), cap + v2, v2).normalize()

    def from_residue(self, rmask: int, cap: int) -> "UnramifiedElement":
        return self.elt(tuple((rmask >> i) & 1 for i in range(self.degree)), cap)


def _parity_bit(mask: int, field: UnramifiedField) -> int:
    # trace lands in F_2 = {0,1} masks
    if mask not in (0, 1):
        raise AssertionError("trace did not land in F_2")
    return mask


def field(degree: int) -> UnramifiedField:
    f = _FIELDS.get(degree)
    if f is None:
        f = _FIELDS[degree] = UnramifiedField(degree)
    return f


@dataclass(frozen=True)
class UnramifiedElement:
    """Value = (sum vec[i] x^i) / 2^shift, with vec known mod 2^cap."""

    parent: UnramifiedField
    vec: tuple[int, ...]
    cap: int
    shift: int = 0

    def __post_init__(self):
        if self.cap < 1:
            object.__setattr__(self, "cap", 1)
        mask = (1 << self.cap) - 1
        if any(c < 0 or c > mask for c in self.vec):
            object.__setattr__(self, "vec", tuple(c & mask for c in self.vec))

    # -- core queries ----------------------------------------------------
    @property
    def prec(self) -> int:
        """Absolute 2-adic precision of the value."""
        return self.cap - self.shift

    def vec_valuation(self) -> int | None:
        """min_2-adic valuation of coordinates; None means >= cap (vec == 0)."""
        v = None
        for c in self.vec:
            if c:
                w = (c & -c).bit_length() - 1
                v = w if v is None or w < v else v
        return v

    def valuation(self) -> int | None:
        """Certified valuation of the value, or None if the element vanishes
        to working precision (valuation >= prec)."""
        v = self.vec_valuation()
        if v is None:
            return None
        return v - self.shift

    def is_exactly_zero(self) -> bool:
        return all(c == 0 for c in self.vec)

    def residue(self) -> int:
        """Image in the residue field (valuation must be >= 0)."""
        if self.shift:
            v = self.vec_valuation()
            if v is not None and v < self.shift:
                raise ValueError("negative valuation has no residue")
            return sum(((c >> self.shift) & 1) << i for i, c in enumerate(self.vec))
        return sum((c & 1) << i for i, c in enumerate(self.vec))

    # -- arithmetic --------------------------------------------------------
    def normalize(self) -> "UnramifiedElement":
        if self.shift == 0:
            return self
        v = self.vec_valuation()
        if v is None:
            # zero vector: value is O(2^(cap - shift)); renormalize to shift 0
            return UnramifiedElement(self.parent, self.vec, max(self.prec, 0), 0)
        t = min(v, self.shift)
        if t == 0:
            return self
        return UnramifiedElement(
            self.parent, tuple(c >> t for c in self.vec), self.cap - t, self.shift - t)

    def _aligned(self, other):
        if self.parent != other.parent:
            raise ValueError("field mismatch")
        s = max(self.shift, other.shift)
        da, db = s - self.shift, s - other.shift
        capa, capb = self.cap + da, other.cap + db
        cap = min(capa, capb)
        mask = (1 << cap) - 1
        va = tuple((c << da) & mask for c in self.vec)
        vb = tuple((c << db) & mask for c in other.vec)
        return va, vb, cap, s

    def __add__(self, other):
        va, vb, cap, s = self._aligned(other)
        mask = (1 << cap) - 1
        return UnramifiedElement(self.parent, tuple((a + b) & mask for a, b in zip(va, vb)),
                                 cap, s).normalize()

    def __sub__(self, other):
        va, vb, cap, s = self._aligned(other)
        mask = (1 << cap) - 1
        return UnramifiedElement(self.parent, tuple((a - b) & mask for a, b in zip(va, vb)),
                                 cap, s).normalize()

    def __neg__(self):
        mask = (1 << self.cap) - 1
        return UnramifiedElement(self.parent, tuple((-c) & mask for c in self.vec),
                                 self.cap, self.shift)

    def __mul__(self, other):
        if isinstance(other, int):
            mask = (1 << self.cap) - 1
            return UnramifiedElement(self.parent, tuple((c * other) & mask for c in self.vec),
                                     self.cap, self.shift).normalize()
        if self.parent != other.parent:
            raise ValueError("field mismatch")
        cap = min(self.cap, other.cap)
        mask = (1 << cap) - 1
        d = self.parent.degree
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(self.vec):
            if a:
                for j, b in enumerate(other.vec):
                    if b:
                        prod[i + j] = (prod[i + j] + a * b) & mask
        mod = self.parent.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                for i in range(d):
                    if mod[i]:
                        prod[k - d + i] = (prod[k - d + i] - c * mod[i]) & mask
            prod[k] = 0
        return UnramifiedElement(self.parent, tuple(prod[:d]), cap,
                                 self.shift + other.shift).normalize()

    __rmul__ = __mul__

    def inverse(self) -> "UnramifiedElement":
        v = self.vec_valuation()
        if v is None:
            raise PrecisionExhausted("cannot invert an element that vanishes to precision")
        cap2 = self.cap - v
        unit = tuple(c >> v for c in self.vec)
        x = _unit_inverse(self.parent, unit, cap2)
        # value = 2^(v - shift) * unit ; inverse = 2^(shift - v) * unit^-1
        s = v - self.shift
        if s <= 0:
            mask = (1 << (cap2 - s)) - 1
            return UnramifiedElement(self.parent, tuple((c << -s) & mask for c in x),
                                     cap2 - s, 0)
        return UnramifiedElement(self.parent, x, cap2, s)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = self.parent.one(self.cap)
        base = self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def with_cap(self, cap: int) -> "UnramifiedElement":
        """Truncate to a smaller cap (never fabricates precision)."""
        if cap >= self.cap:
            return self
        mask = (1 << cap) - 1
        return UnramifiedElement(self.parent, tuple(c & mask for c in self.vec),
                                 cap, self.shift)

    def congruent(self, other, bits: int) -> bool:
        """Are the two values congruent mod 2^bits (requires that much precision)?"""
        diff = self - other
        if diff.prec < bits:
            raise PrecisionExhausted(f"need {bits} bits, have {diff.prec}")
        v = diff.valuation()
        return v is None or v >= bits


# --------------------------------------------------------------------------
# module-level arithmetic helpers
# --------------------------------------------------------------------------

def _unit_inverse(K: UnramifiedField, vec: tuple[int, ...], cap: int) -> tuple[int, ...]:
    """Inverse of a unit coefficient vector mod 2^cap (Newton from residue)."""
    x = UnramifiedElement(K, vec, cap, 0)
    # residue inverse
    r = sum((c & 1) << i for i, c in enumerate(vec))
    if r == 0:
        raise PrecisionExhausted("not a unit")
    rinv = K.rpow(r, (1 << K.degree) - 2)
    y = K.from_residue(rinv, cap)
    k = 1
    two = K.from_integer(2, cap)
    while k < cap:
        # y <- y (2 - x y)
        y = y * (two - x * y)
        k *= 2
    return y.vec


def _newton_poly_root(poly, x0: UnramifiedElement, cap: int) -> UnramifiedElement:
    """Root of a monic-ish UElt polynomial near x0 (simple residue root)."""
    K = x0.parent
    x = x0
    for _ in range(cap.bit_length() + 2):
        fx = _poly_eval(poly, x)
        if fx.is_exactly_zero():
            break
        fpx = _poly_eval(_poly_derivative(poly), x)
        x = x - fx * fpx.inverse()
    fx = _poly_eval(poly, x)
    v = fx.valuation()
    if not (v is None or v >= cap - 1):
        raise PrecisionExhausted("Newton iteration did not certify the root")
    return x


def _poly_eval(poly, x: UnramifiedElement) -> UnramifiedElement:
    r = x.parent.zero(x.cap)
    for c in reversed(poly):
        r = r * x + c
    return r


def _poly_derivative(poly):
    return [c * i for i, c in enumerate(poly)][1:]


def frobenius(y: UnramifiedElement) -> UnramifiedElement:
    """The canonical lift of x -> x^2 on the residue field; fixes Q_2."""
    K = y.parent
    if K.degree == 1:
        return y
    img = _frobenius_gen(K, y.cap)
    # evaluate the coordinate polynomial of y at img
    r = K.zero(y.cap)
    for c in reversed(y.vec):
        r = r * img + K.from_integer(c, y.cap)
    return UnramifiedElement(K, r.vec, min(r.cap, y.cap), y.shift + r.shift).normalize()


def _frobenius_gen(K: UnramifiedField, cap: int) -> UnramifiedElement:
    cached = K._frob_gen.get(cap)
    if cached is not None:
        return cached
    bigger = [c for c in K._frob_gen if c >= cap]
    if bigger:
        img = K._frob_gen[min(bigger)]
        out = img.with_cap(cap)
        K._frob_gen[cap] = out
        return out
    mod_poly = [K.from_integer(b, cap) for b in K.modulus]
    x0 = K.from_residue(K.rmul(2, 2), cap)   # residue gen^2
    img = _newton_poly_root(mod_poly, x0, cap)
    K._frob_gen[cap] = img
    return img


def teichmuller(y: UnramifiedElement) -> UnramifiedElement:
    """The Teichmueller lift of the residue of y (y must be a unit)."""
    K = y.parent
    if y.valuation() != 0:
        raise ValueError("teichmuller lift needs a unit")
    q = 1 << K.degree
    if q == 2:
        return K.one(y.cap)
    cap = y.cap - y.shift
    x = K.from_residue(y.residue(), cap)
    # Newton for x^(q-1) = 1:  x <- x - (x^(q-1) - 1) / ((q-1) x^(q-2))
    one = K.one(cap)
    inv_qm1 = K.from_integer(pow(q - 1, -1, 1 << cap), cap)
    for _ in range(cap.bit_length() + 2):
        p2 = x ** (q - 2)
        fx = p2 * x - one
        if fx.is_exactly_zero():
            break
        x = x - fx * inv_qm1 * _inv(p2)
    return x


def _inv(x: UnramifiedElement) -> UnramifiedElement:
    return x.inverse()


def is_square(y: UnramifiedElement) -> bool:
    """True iff y is a square; decided by valuation parity and the unit class
    mod 8, certified by constructing the root when true."""
    v = y.valuation()
    if v is None:
        raise PrecisionExhausted("valuation not certified")
    if y.prec < v + 3:
        raise PrecisionExhausted(f"need precision >= v+3 = {v + 3}, have {y.prec}")
    if v % 2:
        return False
    try:
        _sqrt_unchecked(y)
        return True
    except NotASquare:
        return False


def sqrt(y: UnramifiedElement) -> UnramifiedElement:
    """Square root with deterministic sign (first nonzero coordinate has odd
    part congruent to 1 mod 4).  r*r = y to one bit below y's precision."""
    v = y.valuation()
    if v is None:
        raise PrecisionExhausted("valuation not certified")
    if v % 2:
        raise NotASquare("odd valuation")
    r = _sqrt_unchecked(y)
    # sign normalization
    for c in r.vec:
        if c:
            odd = c >> ((c & -c).bit_length() - 1)
            if odd % 4 == 3:
                r = -r
            break
    return r


def _sqrt_unchecked(y: UnramifiedElement) -> UnramifiedElement:
    K = y.parent
    v = y.valuation()
    if v is None or v % 2:
        raise NotASquare("odd valuation")
    yn = y.normalize()
    vv = yn.vec_valuation()
    unit = UnramifiedElement(K, tuple(c >> vv for c in yn.vec), yn.cap - vv, 0)
    tau = teichmuller(unit)
    w = unit * tau.inverse()          # w = 1 + 2a
    one = K.one(w.cap)
    a2 = (w - one)                    # 2a
    va = a2.valuation()
    if va is not None and va < 2:
        raise NotASquare("unit class mod 8 is not a square (level-1 obstruction)")
    # w = 1 + 4cc ; need trace of residue of cc to vanish
    if va is None:
        t = K.zero(w.cap)
    else:
        cc = UnramifiedElement(K, a2.vec, a2.cap, a2.shift + 2).normalize()
        if K.rtrace(cc.residue()) if K.degree > 1 else (cc.residue() & 1):
            raise NotASquare("unit class mod 8 is not a square (trace obstruction)")
        # solve t^2 + t = cc by Newton; the start must solve the Artin-Schreier
        # equation in the residue field (derivative 2t+1 is then a unit)
        ccres = cc.residue()
        t0res = next(r for r in range(1 << K.degree)
                     if K.rmul(r, r) ^ r == ccres)
        t = K.from_residue(t0res, w.cap)
        for _ in range(w.cap.bit_length() + 2):
            g = t * t + t - cc
            if g.is_exactly_zero():
                break
            gp = t * 2 + one
            t = t - g * gp.inverse()
    rt_unit = tau ** ((1 << K.degree) // 2) * (one + t * 2)
    # reconstruct: y = 2^(vv - shift) * unit ; sqrt = 2^((vv-shift)/2) * sqrt(unit)
    e = vv - yn.shift
    assert e % 2 == 0 and e == v
    r = rt_unit
    if e >= 0:
        mask_cap = r.cap
        r = UnramifiedElement(K, tuple((c << (e // 2)) & ((1 << (mask_cap + e // 2)) - 1)
                                       for c in r.vec), mask_cap + e // 2, r.shift)
    else:
        r = UnramifiedElement(K, r.vec, r.cap, r.shift + (-e) // 2)
    return r.normalize()


# --------------------------------------------------------------------------
# polynomials with UnramifiedElement coefficients (dense, ascending)
# --------------------------------------------------------------------------

def upoly_mul(a, b, K: UnramifiedField, cap: int):
    out = [K.zero(cap) for _ in range(len(a) + len(b) - 1)] if a and b else []
    for i, ai in enumerate(a):
        if ai.is_exactly_zero():
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return out


def upoly_add(a, b, K: UnramifiedField, cap: int):
    n = max(len(a), len(b))
    z = K.zero(cap)
    return [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)]


def upoly_neg(a):
    return [-c for c in a]


def upoly_divmod_monic(a, b, K: UnramifiedField, cap: int):
    """Division by a monic (unit-leading) polynomial b."""
    a = list(a)
    db = len(b) - 1
    lead_inv = b[-1].inverse()
    q = [K.zero(cap) for _ in range(max(0, len(a) - db))]
    while len(a) - 1 >= db:
        c = a[-1] * lead_inv
        sh = len(a) - 1 - db
        q[sh] = c
        for j in range(db + 1):
            a[sh + j] = a[sh + j] - c * b[j]
        a.pop()
    while a and a[-1].is_exactly_zero():
        a.pop()
    return q, a


def _upoly_trim(a):
    a = list(a)
    while a and a[-1].is_exactly_zero():
        a.pop()
    return a


def lift_residue_roots(qbar_factor_bits, Q_int_coeffs, N: int,
                       K: UnramifiedField | None = None):
    """(U_d, root) for one irreducible factor of Qbar: the root of the integer
    polynomial Q in U_d (d = factor degree) over the given residue root.

    When K is supplied the root is lifted inside K (the factor degree must
    divide K.degree); otherwise U_d with d = deg(factor) is used.
    """
    if N > PRECISION_CEILING:
        raise PrecisionExhausted(f"requested precision {N} above ceiling")
    bits = tuple(int(b) % 2 for b in qbar_factor_bits)
    d = len(bits) - 1
    if d < 1:
        raise ValueError("constant factor")
    if K is None:
        K = field(d)
    # residue roots of the factor inside K's residue field
    roots = [r for r in range(1 << K.degree)
             if _residue_poly_eval(bits, r, K) == 0]
    if len(roots) != d:
        raise ValueError("factor is not irreducible/split in the residue field")
    r0 = min(roots)
    poly = [K.from_integer(c, N) for c in Q_int_coeffs]
    root = _newton_poly_root(poly, K.from_residue(r0, N), N)
    return K, root


def _residue_poly_eval(bits, x: int, K: UnramifiedField) -> int:
    acc = 0
    for b in reversed(bits):
        acc = K.rmul(acc, x) ^ (b & 1)
    return acc


def lift_all_roots(Q_int_coeffs, qbar_factors, N: int):
    """All roots of Q in the compositum U_D (D = smallest degree splitting the
    reduction of Q), ordered by residue mask.  Returns (U_D, [roots])."""
    bits = tuple(int(c) % 2 for c in Q_int_coeffs)
    while bits and bits[-1] == 0:
        bits = bits[:-1]
    degq = len(bits) - 1
    K = None
    roots: list[int] = []
    for D in range(1, 25):
        K = field(D)
        roots = [r for r in range(1 << D) if _residue_poly_eval(bits, r, K) == 0]
        if len(roots) == degq:
            break
    else:
        raise ValueError("reduction of Q does not split in degree <= 24")
    poly = [K.from_integer(c, N) for c in Q_int_coeffs]
    lifted = [_newton_poly_root(poly, K.from_residue(r, N), N) for r in sorted(roots)]
    return K, lifted


def hensel_quadratic_factors(f_coeffs, betas, N: int):
    """Hensel factorization f = c prod q_i over the compositum, with monic
    quadratics q_i = x^2 + b_i x + c_i == (x - beta_i)^2 mod 4.

    betas: the lifted roots of Q (pairwise distinct residues).  Returns
    (c, [(b_i, c_i)]).
    """
    if N > PRECISION_CEILING:
        raise PrecisionExhausted(f"requested precision {N} above ceiling")
    if not betas:
        raise ValueError("no roots")
    K = betas[0].parent
    res = [b.residue() for b in betas]
    if len(set(res)) != len(res):
        raise HenselFailure("residue roots collide; input is not ordinary")
    c_int = int(f_coeffs[-1])
    if c_int % 2 == 0:
        raise HenselFailure("leading coefficient of the even model must be odd")
    cap = N
    c_inv = K.from_rational(1, c_int, cap)
    fhat = [K.from_integer(co, cap) * c_inv for co in f_coeffs]
    quadratics = []
    for beta in betas:
        g0 = [beta * beta, -(beta * 2), K.one(cap)]
        h0 = [K.one(cap)]
        for other in betas:
            if other is beta:
                continue
            h0 = upoly_mul(h0, [other * other, -(other * 2), K.one(cap)], K, cap)
        g, _h = _hensel_pair_lift(fhat, g0, h0, K, cap)
        quadratics.append((g[1], g[0]))
    # certify the product congruence
    prod = [K.one(cap)]
    for b_i, c_i in quadratics:
        prod = upoly_mul(prod, [c_i, b_i, K.one(cap)], K, cap)
    for co, target in zip(prod, fhat):
        diff = co - target
        v = diff.valuation()
        if not (v is None or v >= N - 8):
            raise HenselFailure("lifted factor product does not match f")
    return c_int, quadratics


def _hensel_pair_lift(F, g, h, K: UnramifiedField, cap: int):
    """Hensel lift of F = g*h from a mod-4 congruence (g, h monic, coprime
    mod 2).  The Bezout pair starts mod 2 and is refined together with the
    factors, so convergence starts linear and becomes quadratic; the loop
    runs on the observed error valuation."""
    u, v = _upoly_bezout_mod2(g, h, K, cap)

    def err():
        e = _upoly_trim(upoly_add(F, upoly_neg(upoly_mul(g, h, K, cap)), K, cap))
        if not e:
            return e, None
        vals = [x.valuation() for x in e]
        vals = [cap if x is None else x for x in vals]
        return e, min(vals)

    e, ev = err()
    last = -1
    for _ in range(4 * cap.bit_length() + 16):
        if not e or (ev is not None and ev >= cap):
            break
        dg = upoly_divmod_monic(upoly_mul(v, e, K, cap), g, K, cap)[1]
        dh = upoly_divmod_monic(upoly_mul(u, e, K, cap), h, K, cap)[1]
        g = upoly_add(g, dg, K, cap)
        h = upoly_add(h, dh, K, cap)
        w = upoly_add(upoly_add(upoly_mul(u, g, K, cap), upoly_mul(v, h, K, cap), K, cap),
                      [-K.one(cap)], K, cap)
        w = _upoly_trim(w)
        if w:
            du = upoly_divmod_monic(upoly_mul(u, upoly_neg(w), K, cap), h, K, cap)[1]
            dv = upoly_divmod_monic(upoly_mul(v, upoly_neg(w), K, cap), g, K, cap)[1]
            u = upoly_add(u, du, K, cap)
            v = upoly_add(v, dv, K, cap)
        e, ev_new = err()
        if ev_new is not None and ev_new <= ev and ev_new == last:
            raise HenselFailure("pair lift stalled")
        last = ev
        ev = ev_new
        if ev is None:
            break
    return g, h


def _upoly_bezout_mod2(g, h, K: UnramifiedField, cap: int):
    """u, v with u g + v h = 1 mod 2 (g, h coprime mod 2), lifted naively."""
    # Work in the residue field: polynomials over F_{2^d} as lists of masks.
    def reduce_mod2(poly):
        out = [c.residue() for c in poly]
        while out and out[-1] == 0:
            out.pop()
        return out

    def rdivmod(a, b):
        a = list(a)
        db = len(b) - 1
        binv = K.rpow(b[-1], (1 << K.degree) - 2)
        q = [0] * max(0, len(a) - db)
        while len(a) - 1 >= db:
            c = K.rmul(a[-1], binv)
            sh = len(a) - 1 - db
            q[sh] = c
            for j in range(db + 1):
                a[sh + j] ^= K.rmul(c, b[j])
            while a and a[-1] == 0:
                a.pop()
            if len(a) - 1 < sh + db and len(a) - 1 >= db and a and a[-1] == 0:
                a.pop()
        while a and a[-1] == 0:
            a.pop()
        return q, a

    g2, h2 = reduce_mod2(g), reduce_mod2(h)
    r0, r1 = g2, h2
    s0, s1 = [1], []
    t0, t1 = [], [1]
    def rpolymul(a, b):
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] ^= K.rmul(ai, bj)
        while out and out[-1] == 0:
            out.pop()
        return out
    def rpolyadd(a, b):
        n = max(len(a), len(b))
        out = [(a[i] if i < len(a) else 0) ^ (b[i] if i < len(b) else 0) for i in range(n)]
        while out and out[-1] == 0:
            out.pop()
        return out
    while r1:
        q, r = rdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, rpolyadd(s0, rpolymul(q, s1))
        t0, t1 = t1, rpolyadd(t0, rpolymul(q, t1))
    if len(r0) != 1:
        raise HenselFailure("factors are not coprime mod 2")
    inv = K.rpow(r0[0], (1 << K.degree) - 2)
    u = [K.from_residue(K.rmul(c, inv), cap) for c in s0]
    v = [K.from_residue(K.rmul(c, inv), cap) for c in t0]
    return u, v


# --------------------------------------------------------------------------
# subfield embeddings U_t -> U_D (t | D) with exact pullback
# --------------------------------------------------------------------------

class SubfieldMap:
    """The embedding of U_t into U_D sending the generator to the root of
    U_t's modulus with the smallest residue mask (deterministic)."""

    def __init__(self, sub: UnramifiedField, sup: UnramifiedField, cap: int):
        if sup.degree % sub.degree:
            raise ValueError("subfield degree must divide")
        self.sub, self.sup, self.cap = sub, sup, cap
        if sub.degree == 1:
            self.gen_image = sup.one(cap)
        elif sub.degree == sup.degree and sub.modulus == sup.modulus:
            self.gen_image = sup.gen(cap)
        else:
            bits = sub.modulus
            roots = [r for r in range(1 << sup.degree)
                     if _residue_poly_eval(bits, r, sup) == 0]
            if len(roots) != sub.degree:
                raise AssertionError("modulus does not split in the bigger field")
            poly = [sup.from_integer(b, cap) for b in bits]
            self.gen_image = _newton_poly_root(poly, sup.from_residue(min(roots), cap), cap)
        # power basis images and the pullback recipe
        self.basis = [self.sup.one(cap)]
        for _ in range(sub.degree - 1):
            self.basis.append(self.basis[-1] * self.gen_image)

    def embed(self, x: UnramifiedElement) -> UnramifiedElement:
        if x.parent != self.sub:
            raise ValueError("wrong field")
        r = self.sup.zero(self.cap)
        for c, b in zip(x.vec, self.basis):
            r = r + b * c
        cap = min(r.cap, x.cap - x.shift + r.shift + x.shift)
        return UnramifiedElement(self.sup, r.vec, cap, r.shift + x.shift).normalize()

    def pullback(self, y: UnramifiedElement, slack: int = 32) -> UnramifiedElement:
        """Express y (which must lie in the image to precision) in U_t."""
        if y.parent != self.sup:
            raise ValueError("wrong field")
        t, D = self.sub.degree, self.sup.degree
        yn = y.normalize()
        sh = yn.shift
        cap = min(self.cap, yn.cap)
        mask = (1 << cap) - 1
        # augmented system rows: [basis_0[i] .. basis_{t-1}[i] | y[i]]
        rows = [[self.basis[j].vec[i] & mask for j in range(t)] + [yn.vec[i] & mask]
                for i in range(D)]
        piv = {}
        for j in range(t):
            pr = next(i for i in range(D)
                      if i not in piv.values() and rows[i][j] % 2 == 1)
            piv[j] = pr
            inv = pow(rows[pr][j], -1, 1 << cap)
            for i in range(D):
                if i == pr:
                    continue
                f = (rows[i][j] * inv) & mask
                if f:
                    for k in range(t + 1):
                        rows[i][k] = (rows[i][k] - f * rows[pr][k]) & mask
        coords = [0] * t
        for j, pr in piv.items():
            inv = pow(rows[pr][j], -1, 1 << cap)
            coords[j] = (rows[pr][t] * inv) & mask
        for i in range(D):
            if i in piv.values():
                continue
            c = rows[i][t]
            if c and ((c & -c).bit_length() - 1) < cap - slack:
                raise PrecisionExhausted("value does not lie in the subfield to precision")
        return UnramifiedElement(self.sub, tuple(coords), cap, sh).normalize()


def norm_to_subfield(y: UnramifiedElement, t: int) -> UnramifiedElement:
    """Norm from U_D down to the degree-t subfield (t | D): the product of the
    D/t Frobenius^t-conjugates.  Result stays expressed inside U_D."""
    D = y.parent.degree
    if D % t:
        raise ValueError("not a subfield")
    r = y
    cur = y
    for _ in range(D // t - 1):
        for _ in range(t):
            cur = frobenius(cur)
        r = r * cur
    return r


def norm_class_tower(y: UnramifiedElement, sub_degree: int, cap: int | None = None):
    """Norm of y from its parent U_m down to U_k (k | m), pulled back to U_k."""
    K = y.parent
    nval = norm_to_subfield(y, sub_degree)
    smap = SubfieldMap(field(sub_degree), K, cap or nval.cap)
    return smap.pullback(nval)
