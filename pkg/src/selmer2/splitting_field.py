"""The splitting field L = U_D(sqrt d_1, ..., sqrt d_{g+1}) of the even model
over Q_2, its Galois group as explicit permutations of root labels, and the
orbit decomposition of unordered root pairs.

Good ordinary reduction confines every root of f to a quadratic extension of
U_D, so instead of factoring the big pair resolvent 2-adically the group is
assembled structurally: F_2 linear algebra on the square classes of the
quadratic discriminants d_i picks a basis of independent classes, explicit
square roots witness the dependent ones, and a Frobenius lift is resolved
sign-by-sign through certified ratios.  Elements of L are vectors over U_D
indexed by subsets of the basis classes.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import square_classes as sc
from .curve_model import CurveModel
from .errors import HenselFailure, InconsistentSigns, PrecisionExhausted
from .padic_unramified import (UnramifiedElement, frobenius,
                               hensel_quadratic_factors, lift_all_roots, sqrt)


# --------------------------------------------------------------------------
# L-algebra elements: dict mask -> U_D coefficient (mask over basis classes)
# --------------------------------------------------------------------------

class LElement:
    """Element of U_D(sqrt e_1, ..., sqrt e_m) as a subset-indexed vector."""

    __slots__ = ("sf", "comps")

    def __init__(self, sf: "SplittingField", comps: dict[int, UnramifiedElement]):
        self.sf = sf
        self.comps = {k: v for k, v in comps.items() if not v.is_exactly_zero()}

    # -- ring operations --
    def __add__(self, other):
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = out[k] + v if k in out else v
        return LElement(self.sf, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LElement(self.sf, {k: -v for k, v in self.comps.items()})

    def __mul__(self, other):
        if isinstance(other, (int, UnramifiedElement)):
            return LElement(self.sf, {k: v * other for k, v in self.comps.items()})
        out: dict[int, UnramifiedElement] = {}
        for ka, va in self.comps.items():
            for kb, vb in other.comps.items():
                k = ka ^ kb
                v = va * vb
                common = ka & kb
                j = 0
                while common:
                    if common & 1:
                        v = v * self.sf.basis_classes[j]
                    common >>= 1
                    j += 1
                out[k] = out[k] + v if k in out else v
        return LElement(self.sf, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = self.sf.l_one()
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def inverse(self) -> "LElement":
        """Invert by peeling conjugates one basis class at a time."""
        support = 0
        for k in self.comps:
            support |= k
        if support == 0:
            coeff = self.comps.get(0)
            if coeff is None:
                raise PrecisionExhausted("inverting a zero element")
            return LElement(self.sf, {0: coeff.inverse()})
        j = (support & -support).bit_length() - 1
        conj = self.conj_flip(j)
        prod = self * conj                      # no sqrt(e_j) component left
        return conj * prod.inverse()

    def conj_flip(self, j: int) -> "LElement":
        return LElement(self.sf, {k: (-v if (k >> j) & 1 else v)
                                  for k, v in self.comps.items()})

    def min_prec(self) -> int:
        if not self.comps:
            return 1 << 30
        return min(v.prec for v in self.comps.values())

    def frob(self) -> "LElement":
        """The chosen Frobenius lift applied to the element."""
        sf = self.sf
        out = sf.l_zero()
        for mask, coeff in self.comps.items():
            cur = LElement(sf, {0: frobenius(coeff)})
            j = 0
            mm = mask
            while mm:
                if mm & 1:
                    cj, wj = sf.frob_sign_data[j]
                    cur = cur * LElement(sf, {wj: cj})
                mm >>= 1
                j += 1
            out = out + cur
        return out

    def frob_power(self, k: int) -> "LElement":
        x = self
        order = self.sf.frob_order
        k %= order
        for _ in range(k):
            x = x.frob()
        return x

    def tau(self, j: int) -> "LElement":
        return self.conj_flip(j)

    def as_subfield_value(self, slack: int = 32) -> UnramifiedElement:
        """Certify the element lies in U_D (all sqrt components vanish)."""
        cap = self.min_prec()
        for mask, v in self.comps.items():
            if mask == 0:
                continue
            val = v.valuation()
            if val is not None and val < v.prec - slack:
                raise PrecisionExhausted("element has a certified sqrt component")
        base = self.comps.get(0)
        if base is None:
            return self.sf.base.zero(max(cap, 8))
        return base


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RootLabel:
    beta_index: int
    which: int          # 0 or 1
    is_marker: bool     # image of the point at infinity (ONE_RWP case)


@dataclass
class PairOrbit:
    pairs: tuple[tuple[int, int], ...]    # sorted label-index pairs
    diagonal: bool
    beta_orbit_id: int
    representative: tuple[int, int]

    @property
    def size(self) -> int:
        return len(self.pairs)


@dataclass
class PairOrbitDecomposition:
    orbits: list[PairOrbit]
    beta_pair_orbits: list[tuple[tuple[int, int], ...]]   # non-diagonal beta orbits
    beta_index_orbits: list[tuple[int, ...]]


class SplittingField:
    """Splitting data for the even model of a curve with good ordinary
    reduction at 2: Hensel pairing, square classes of the d_i, Frobenius
    sign resolution, root labels and the Galois permutation group."""

    def __init__(self, even_model: CurveModel, N: int, is_transform: bool):
        self.N = N
        self.even_model = even_model
        g = even_model.g
        K, betas = lift_all_roots(even_model.Q_coeffs, None, N)
        self.base = K
        self.betas = betas
        self.c, self.quadratics = hensel_quadratic_factors(even_model.f_coeffs, betas, N)
        self.scg = sc.square_class_group(K, N)
        # discriminants and their square-class words
        self.d = [b * b - c * 4 for (b, c) in self.quadratics]
        coords = []
        for di in self.d:
            if di.valuation() is None:
                raise PrecisionExhausted("discriminant vanishes to precision")
            coords.append(sc.coordinates(di, self.scg).coords)
        # greedy independent basis of the d-classes
        basis_idx: list[int] = []
        piv: dict[int, tuple[int, set[int]]] = {}
        words: list[set[int]] = []
        for i, cv in enumerate(coords):
            m = cv.mask()
            combo: set[int] = set()
            for col, (pm, pc) in piv.items():
                if (m >> col) & 1:
                    m ^= pm
                    combo ^= pc
            if m:
                col = (m & -m).bit_length() - 1
                piv[col] = (m, combo ^ {len(basis_idx)})
                combo = combo ^ {len(basis_idx)}
                basis_idx.append(i)
                words.append({len(basis_idx) - 1})
            else:
                words.append(set(combo))
        self.basis_idx = basis_idx
        self.m = len(basis_idx)
        self.basis_classes = [self.d[i] for i in basis_idx]
        # square witnesses: d_i = s_i^2 * prod e_j (j in word_i)
        self.words = [sum(1 << j for j in w) for w in words]
        self.sqrt_parts = []
        for i, di in enumerate(self.d):
            ratio = di
            for j in range(self.m):
                if (self.words[i] >> j) & 1:
                    ratio = ratio * self.basis_classes[j].inverse()
            self.sqrt_parts.append(sqrt(ratio))
        # Frobenius permutation of beta indices (via residues)
        res = [b.residue() for b in betas]
        self.sigma = []
        for i, b in enumerate(betas):
            fr = K.rmul(res[i], res[i])
            self.sigma.append(res.index(fr))
        # order of Frobenius on U_D
        self.frob_order = K.degree
        # sign data: frob(sqrt e_j) = C_j * sqrt(word W_j)
        self.frob_sign_data = []
        for j, bi in enumerate(basis_idx):
            ti = self.sigma[bi]
            self.frob_sign_data.append((self.sqrt_parts[ti], self.words[ti]))
        # labels
        self.labels: list[RootLabel] = []
        marker = self._locate_marker() if is_transform else None
        for i in range(g + 1):
            for j in (0, 1):
                self.labels.append(RootLabel(i, j, marker == (i, j)))
        self.is_transform = is_transform
        self._roots_cache: dict[int, LElement] = {}
        self.generators = galois_generators(self)
        self.group = _closure(self.generators, len(self.labels))
        expected = (1 << self.m) * self.base.degree
        if len(self.group) != expected:
            raise InconsistentSigns(
                f"group order {len(self.group)} != [L:Q2] = {expected}")

    # -- helpers --
    def l_zero(self) -> LElement:
        return LElement(self, {})

    def l_one(self) -> LElement:
        return LElement(self, {0: self.base.one(self.N)})

    def l_scalar(self, x: UnramifiedElement) -> LElement:
        return LElement(self, {0: x})

    def root_value(self, label_index: int) -> LElement:
        """alpha_{i,j} = (-b_i +/- r_i)/2 as an element of L."""
        got = self._roots_cache.get(label_index)
        if got is not None:
            return got
        lab = self.labels[label_index]
        i = lab.beta_index
        b_i, _c_i = self.quadratics[i]
        r = LElement(self, {self.words[i]: self.sqrt_parts[i]})
        minus_b = self.l_scalar(-b_i)
        num = minus_b + r if lab.which == 0 else minus_b - r
        val = LElement(self, {k: UnramifiedElement(v.parent, v.vec, v.cap, v.shift + 1)
                              for k, v in num.comps.items()})
        self._roots_cache[label_index] = val
        return val

    def _locate_marker(self):
        """Which label is the root 0 of the transformed model."""
        for i, (b_i, c_i) in enumerate(self.quadratics):
            vc = c_i.valuation()
            if vc is None or vc >= self.N - 8:
                # q_i = x^2 + b x with root 0; decide which sign gives 0
                r = self.sqrt_parts[i]
                if self.words[i] != 0:
                    raise HenselFailure("marker quadratic has irrational roots")
                plus = (-b_i + r)
                v_plus = plus.valuation()
                if v_plus is None or v_plus >= self.N - 8:
                    return (i, 0)
                return (i, 1)
        raise HenselFailure("transformed model has no root at 0")

    def finite_label_indices(self) -> list[int]:
        return [k for k, lab in enumerate(self.labels) if not lab.is_marker]


def build_splitting_field(even_model: CurveModel, N: int,
                          is_transform: bool) -> SplittingField:
    return SplittingField(even_model, N, is_transform)


def galois_generators(sf: SplittingField) -> list[tuple[int, ...]]:
    """Frobenius lift + sign flips as permutations of the label list."""
    nlab = len(sf.labels)
    idx = {(lab.beta_index, lab.which): k for k, lab in enumerate(sf.labels)}
    gens = []
    # Frobenius
    perm = [None] * nlab
    for k, lab in enumerate(sf.labels):
        i = lab.beta_index
        ti = sf.sigma[i]
        sign = _frob_sign(sf, i)
        which = lab.which if sign > 0 else 1 - lab.which
        perm[k] = idx[(ti, which)]
    gens.append(tuple(perm))
    # sign flips dual to the basis classes
    for j in range(sf.m):
        perm = [None] * nlab
        for k, lab in enumerate(sf.labels):
            i = lab.beta_index
            if (sf.words[i] >> j) & 1:
                perm[k] = idx[(i, 1 - lab.which)]
            else:
                perm[k] = k
        gens.append(tuple(perm))
    return gens


def _frob_sign(sf: SplittingField, i: int) -> int:
    """Sign in frob(r_i) = +/- r_{sigma(i)} for the chosen sqrt normalizations."""
    ti = sf.sigma[i]
    rho = frobenius(sf.sqrt_parts[i])
    word = 0
    for j in range(sf.m):
        if (sf.words[i] >> j) & 1:
            cj, wj = sf.frob_sign_data[j]
            common = word & wj
            word ^= wj
            rho = rho * cj
            jj = 0
            while common:
                if common & 1:
                    rho = rho * sf.basis_classes[jj]
                common >>= 1
                jj += 1
    if word != sf.words[ti]:
        raise InconsistentSigns("frobenius image has the wrong square-class word")
    ratio = rho * sf.sqrt_parts[ti].inverse()
    one = sf.base.one(ratio.prec if ratio.prec > 8 else 8)
    slack = 32
    d_plus = (ratio - one).valuation()
    d_minus = (ratio + one).valuation()
    thresh = min(ratio.prec, one.prec) - slack
    if d_plus is None or (d_plus is not None and d_plus >= thresh):
        return +1
    if d_minus is None or d_minus >= thresh:
        return -1
    raise InconsistentSigns("frobenius ratio is not +/-1 to working precision")


def _closure(gens: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


def pair_orbits(sf: SplittingField) -> PairOrbitDecomposition:
    """Orbit decomposition of unordered pairs of finite root labels, with
    diagonal flags and the map to beta-pair orbits."""
    finite = sf.finite_label_indices()
    pairs = sorted({tuple(sorted((a, b))) for ai, a in enumerate(finite)
                    for b in finite[ai + 1:]})
    # beta-index orbits under sigma
    g1 = len(sf.betas)
    seen_i = set()
    beta_index_orbits = []
    for i in range(g1):
        if i in seen_i:
            continue
        orb = []
        cur = i
        while cur not in seen_i:
            seen_i.add(cur)
            orb.append(cur)
            cur = sf.sigma[cur]
        beta_index_orbits.append(tuple(sorted(orb)))
    # beta-pair orbits (unordered pairs of distinct indices) under sigma
    bpairs = sorted({tuple(sorted((a, b))) for a in range(g1) for b in range(a + 1, g1)})
    seen_bp = set()
    beta_pair_orbits = []
    for bp in bpairs:
        if bp in seen_bp:
            continue
        orb = []
        cur = bp
        while cur not in seen_bp:
            seen_bp.add(cur)
            orb.append(cur)
            cur = tuple(sorted((sf.sigma[cur[0]], sf.sigma[cur[1]])))
        beta_pair_orbits.append(tuple(sorted(orb)))
    bp_id = {}
    for oid, orb in enumerate(beta_pair_orbits):
        for bp in orb:
            bp_id[bp] = oid
    bi_id = {}
    for oid, orb in enumerate(beta_index_orbits):
        for i in orb:
            bi_id[i] = oid
    # orbits of label pairs under the full group
    seen_p = set()
    orbits = []
    for p in pairs:
        if p in seen_p:
            continue
        orb = {p}
        frontier = [p]
        while frontier:
            nxt = []
            for q in frontier:
                for gperm in sf.generators:
                    img = tuple(sorted((gperm[q[0]], gperm[q[1]])))
                    if img not in orb:
                        orb.add(img)
                        nxt.append(img)
            frontier = nxt
        seen_p |= orb
        orb = tuple(sorted(orb))
        i0 = sf.labels[p[0]].beta_index
        i1 = sf.labels[p[1]].beta_index
        diag = i0 == i1
        oid = bi_id[i0] if diag else bp_id[tuple(sorted((i0, i1)))]
        orbits.append(PairOrbit(orb, diag, oid, orb[0]))
    orbits.sort(key=lambda o: (o.diagonal, o.representative))
    return PairOrbitDecomposition(orbits, beta_pair_orbits, beta_index_orbits)
