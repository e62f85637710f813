"""Square-class groups K^x (x) F_2 of unramified 2-adic fields.

For U_d the group has dimension d+2 with deterministic basis
[2, 1+2w_1, ..., 1+2w_d, 1+4w_0] where w_1..w_d lift the power basis of the
residue field and w_0 is the first basis monomial of nonzero trace; the last
entry is the class xi cutting out the unramified quadratic extension (for
Q_2 this is the class of 5).  Coordinates are extracted by peeling the unit
filtration: the mod-4 level is read off the residue of (u/tau - 1)/2, the
mod-8 level by the trace of the next digit; what is left is certified a
square by Hensel lifting.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import padic_unramified as padic
from .errors import PrecisionExhausted
from .f2_linalg import F2Vector
from .padic_unramified import UnramifiedElement, UnramifiedField, is_square, teichmuller


@dataclass(frozen=True)
class SquareClassGroup:
    field: UnramifiedField
    basis: tuple[UnramifiedElement, ...]
    xi_index: int

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class SquareClass:
    group: SquareClassGroup
    coords: F2Vector

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if other.group is not self.group and other.group != self.group:
            raise ValueError("different groups")
        return SquareClass(self.group, self.coords + other.coords)


_GROUPS: dict[tuple[int, int], SquareClassGroup] = {}


def square_class_group(K: UnramifiedField, cap: int = padic.DEFAULT_PRECISION) -> SquareClassGroup:
    """Basis of U_d^x (x) F_2: dimension d+2, xi stored at a recorded index."""
    key = (K.degree, cap)
    got = _GROUPS.get(key)
    if got is not None:
        return got
    d = K.degree
    basis = [K.from_integer(2, cap)]
    if d == 1:
        basis.append(K.from_integer(-1, cap))   # canonical Q_2 basis {2, -1, 5}
    else:
        for j in range(d):
            vec = [0] * d
            vec[j] = 2
            vec[0] += 1
            basis.append(K.elt(vec, cap))        # 1 + 2 x^j
    w0 = _first_trace_one_monomial(K)
    vec = [0] * d
    vec[w0] = 4
    vec[0] += 1
    basis.append(K.elt(vec, cap))            # 1 + 4 x^{w0}  (the class xi)
    grp = SquareClassGroup(K, tuple(basis), d + 1)
    _GROUPS[key] = grp
    return grp


def _first_trace_one_monomial(K: UnramifiedField) -> int:
    for j in range(K.degree):
        if _trace_bit(K, 1 << j):
            return j
    raise AssertionError("trace form is degenerate")


def _trace_bit(K: UnramifiedField, rmask: int) -> int:
    t, cur = 0, rmask
    for _ in range(K.degree):
        t ^= cur
        cur = K.rmul(cur, cur)
    if t not in (0, 1):
        raise AssertionError("trace not in F2")
    return t


def coordinates(y: UnramifiedElement, G: SquareClassGroup) -> SquareClass:
    """Coordinates of the class of y; reconstruction-checked via is_square."""
    K = G.field
    d = K.degree
    v = y.valuation()
    if v is None:
        raise PrecisionExhausted("valuation of y not certified")
    if y.prec < v + 3:
        raise PrecisionExhausted("need precision v+3 for square classes")
    bits = [0] * (d + 2)
    bits[0] = v % 2
    yn = y.normalize()
    vv = yn.vec_valuation()
    unit = UnramifiedElement(K, tuple(c >> vv for c in yn.vec), yn.cap - vv, 0)
    if d == 1:
        u8 = unit.vec[0] % 8
        if u8 % 4 == 3:
            bits[1] = 1
            u8 = (-u8) % 8
        if u8 == 5:
            bits[2] = 1
        cls = SquareClass(G, F2Vector(tuple(bits)))
        if not reconstruct_check(y, cls):
            raise AssertionError("square-class reconstruction failed")
        return cls
    tau = teichmuller(unit)
    w = unit * tau.inverse()              # 1 + 2a
    one = K.one(w.cap)
    a2 = w - one
    va = a2.valuation()
    if va is not None and va == 1:
        # level-1 digit: residue of a = (w-1)/2 in the power basis
        a = UnramifiedElement(K, a2.vec, a2.cap, a2.shift + 1).normalize()
        r = a.residue()
        for j in range(d):
            if (r >> j) & 1:
                bits[1 + j] = 1
        # divide by the matched level-1 basis part
        for j in range(d):
            if bits[1 + j]:
                w = w * _basis_unit_inverse(G, 1 + j, w.cap)
        a2 = w - one
        va = a2.valuation()
    if va is not None and va == 2:
        b = UnramifiedElement(K, a2.vec, a2.cap, a2.shift + 2).normalize()
        if _trace_bit(K, b.residue()):
            bits[d + 1] = 1
            w = w * _basis_unit_inverse(G, d + 1, w.cap)
    # what remains must be a square unit
    if not is_square(w * tau):
        raise AssertionError("square-class peeling failed to reach a square")
    return SquareClass(G, F2Vector(tuple(bits)))


def _basis_unit_inverse(G: SquareClassGroup, idx: int, cap: int) -> UnramifiedElement:
    b = G.basis[idx]
    return b.with_cap(cap).inverse() if b.cap > cap else b.inverse().with_cap(cap)


def class_of(y: UnramifiedElement, G: SquareClassGroup) -> F2Vector:
    return coordinates(y, G).coords


def reconstruct_check(y: UnramifiedElement, cls: SquareClass) -> bool:
    """Certify: y * prod basis^coord is a square."""
    G = cls.group
    z = y
    for b, bit in zip(G.basis, cls.coords.bits):
        if bit:
            z = z * b
    return is_square(z)


def unramified_class(G: SquareClassGroup) -> SquareClass:
    """The class xi whose square root generates the unramified quadratic
    extension: not a square in K, a square in U_{2d} (verified both ways)."""
    bits = [0] * G.dim
    bits[G.xi_index] = 1
    xi = G.basis[G.xi_index]
    if is_square(xi):
        raise AssertionError("xi is a square in K")
    up = padic.field(2 * G.field.degree)
    smap = padic.SubfieldMap(G.field, up, xi.cap)
    if not is_square(smap.embed(xi)):
        raise AssertionError("xi does not become a square in U_2d")
    return SquareClass(G, F2Vector(tuple(bits)))


def norm_class(y: UnramifiedElement, G_K: SquareClassGroup) -> SquareClass:
    """Class in G_K of the norm of y from its parent U_m down to K = U_k."""
    K = G_K.field
    m = y.parent.degree
    if m % K.degree:
        raise ValueError("not a tower")
    if m == K.degree:
        return coordinates(y, G_K)
    val = padic.norm_to_subfield(y, K.degree)
    smap = padic.SubfieldMap(K, y.parent, val.cap)
    return coordinates(smap.pullback(val), G_K)
