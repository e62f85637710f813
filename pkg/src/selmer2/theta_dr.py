"""Assembly of the reduction-pairing map on square classes and its kernel.

Each non-diagonal orbit of beta-pairs contributes one target component: the
unramified field K_i of degree equal to the orbit size, with its square-class
group modulo the unramified class xi.  A certificate element's component value
is the product of its evaluations over all root pairs lying above one fixed
representative beta-pair; by transitivity of norms this equals the sum of the
norms from the pair-field components, so no ramified pair fields are ever
materialized.  Diagonal orbits contribute nothing (their map is trivial).
"""
from __future__ import annotations

from dataclasses import dataclass

from . import padic_unramified as padic
from . import square_classes as sc
from .certificate import (KernelCertificate, GlobalElement,
                          check_resolvent_vanishes, evaluate_at_pair, pair_t_value)
from .curve_model import ModelTransform
from .f2_linalg import F2Matrix, F2Vector, kernel as f2_kernel, quotient_coordinates
from .splitting_field import LElement, PairOrbitDecomposition, SplittingField


@dataclass(frozen=True)
class ThetaComponent:
    beta_orbit: tuple[tuple[int, int], ...]
    field_degree: int
    group: sc.SquareClassGroup
    xi: F2Vector

    @property
    def quotient_dim(self) -> int:
        return self.group.dim - 1


@dataclass(frozen=True)
class ThetaTarget:
    components: tuple[ThetaComponent, ...]

    @property
    def total_dim(self) -> int:
        return sum(c.quotient_dim for c in self.components)


@dataclass(frozen=True)
class ThetaMatrix:
    matrix: F2Matrix
    rows: tuple[F2Vector, ...]


def build_target(dec: PairOrbitDecomposition, sf: SplittingField) -> ThetaTarget:
    comps = []
    for orbit in sorted(dec.beta_pair_orbits, key=lambda o: o[0]):
        t = len(orbit)
        K = padic.field(t)
        G = sc.square_class_group(K, sf.N)
        xi = sc.unramified_class(G).coords
        comps.append(ThetaComponent(tuple(orbit), t, G, xi))
    return ThetaTarget(tuple(comps))


class ThetaContext:
    """Caches pair values t_p and their resolvent checks across rows."""

    def __init__(self, sf: SplittingField, resolvent, transform: ModelTransform | None):
        self.sf = sf
        self.resolvent = resolvent
        self.transform = transform
        self._t: dict[tuple[int, int], LElement] = {}

    def t_value(self, pair: tuple[int, int]) -> LElement:
        got = self._t.get(pair)
        if got is None:
            got = pair_t_value(self.sf, pair, self.resolvent.lam, self.transform)
            check_resolvent_vanishes(self.resolvent, got, self.sf)
            self._t[pair] = got
        return got


def theta_component(e: GlobalElement, comp: ThetaComponent, ctx: ThetaContext,
                    rep: tuple[int, int] | None = None) -> F2Vector:
    """Quotient coordinates in K_i^x (x) F_2 / <xi> of the product of e over
    all root pairs above one representative beta-pair of the component.

    The value computed at any representative is pulled back to the orbit's
    base representative through the Frobenius before coordinatization, so the
    output does not depend on the choice."""
    sf = ctx.sf
    base_rep = comp.beta_orbit[0]
    if rep is None:
        rep = base_rep
    if rep not in comp.beta_orbit:
        raise ValueError("representative not in the component's orbit")
    a, b = rep
    finite = set(sf.finite_label_indices())
    val = sf.l_one()
    for x, lab in enumerate(sf.labels):
        if lab.beta_index != a or x not in finite:
            continue
        for y, lab2 in enumerate(sf.labels):
            if lab2.beta_index != b or y not in finite:
                continue
            pair = tuple(sorted((x, y)))
            val = val * evaluate_at_pair(e, ctx.t_value(pair), sf, ctx.resolvent)
    # shift back to the base representative
    k = 0
    cur = base_rep
    while cur != rep:
        cur = tuple(sorted((sf.sigma[cur[0]], sf.sigma[cur[1]])))
        k += 1
        if k > len(comp.beta_orbit):
            raise ValueError("representative unreachable from base")
    if k:
        val = val.frob_power(sf.frob_order - (k % sf.frob_order))
    base_val = val.as_subfield_value()
    # certified membership in U_t, then native coordinates
    sub = padic.field(comp.field_degree)
    smap = padic.SubfieldMap(sub, sf.base, sf.N)
    native = smap.pullback(base_val)
    cls = sc.coordinates(native, comp.group)
    full = quotient_coordinates(cls.coords, [comp.xi])
    # drop the xi pivot coordinate (identically zero in the quotient)
    pivot = (comp.xi.mask() & -comp.xi.mask()).bit_length() - 1
    return F2Vector(tuple(b for i, b in enumerate(full.bits) if i != pivot))


def theta_row(e: GlobalElement, target: ThetaTarget, ctx: ThetaContext) -> F2Vector:
    bits: list[int] = []
    for comp in target.components:
        q = theta_component(e, comp, ctx)
        bits.extend(q.bits)
    return F2Vector(tuple(bits))


@dataclass(frozen=True)
class KernelResult:
    dim: int
    kernel_basis: tuple[F2Vector, ...]
    matrix: ThetaMatrix
    target: ThetaTarget


def ker_theta_dr(cert: KernelCertificate, dec: PairOrbitDecomposition,
                 sf: SplittingField, transform: ModelTransform | None) -> KernelResult:
    """dim Ker(theta_dR) with the kernel basis and the assembled matrix."""
    target = build_target(dec, sf)
    ctx = ThetaContext(sf, cert.resolvent, transform)
    rows = tuple(theta_row(e, target, ctx) for e in cert.basis)
    width = target.total_dim
    # kernel of the TRANSPOSE action: vectors over basis elements
    # row per element; we need combos of elements mapping to zero
    cols = width
    mat = F2Matrix.from_rows_ncols(
        [F2Vector(tuple(r.bits[j] for r in rows)) for j in range(cols)],
        len(rows)) if rows else F2Matrix.from_rows_ncols([], 0)
    if rows:
        basis = f2_kernel(mat)
    else:
        basis = []
    return KernelResult(len(basis), tuple(basis),
                        ThetaMatrix(F2Matrix.from_rows_ncols(rows, width), rows), target)
