"""Global kernel certificates: parsing, 2-adic evaluation at root pairs, and
the partial (local-at-2) kernel verification.

Certificate elements travel in factored form, a list of (polynomial in the
resolvent's primitive element theta, integer exponent) pairs; evaluation maps
theta to t_p = alpha + alpha' + lambda alpha alpha' for a root pair p of the
splitting-field model and multiplies the factor values, keeping the 2-adic
precision loss bounded and auditable.
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from fractions import Fraction

# certificate rationals can exceed the interpreter's int<->str conversion guard
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), 2_000_000))

from . import polyq
from .curve_model import CurveModel, ModelTransform
from .errors import ComponentVanishes, CurveMismatch, PrecisionExhausted, SchemaError
from .splitting_field import LElement, SplittingField
from . import padic_unramified as padic

SLACK_BITS = 32


@dataclass(frozen=True)
class GlobalElement:
    factors: tuple[tuple[tuple[Fraction, ...], int], ...]

    def __mul__(self, other: "GlobalElement") -> "GlobalElement":
        return GlobalElement(self.factors + other.factors)


@dataclass(frozen=True)
class Resolvent:
    lam: int
    F_coeffs: tuple[Fraction, ...]


@dataclass(frozen=True)
class CertificateMetadata:
    rank_lower: int
    rank_upper: int
    ns_rank: int | None
    cl2_Kf2: int
    cl2_Kf: int
    provenance: str


@dataclass(frozen=True)
class KernelCertificate:
    curve_label: str | None
    P_coeffs: tuple[int, ...]
    Q_coeffs: tuple[int, ...]
    S: tuple[int, ...]
    resolvent: Resolvent
    basis: tuple[GlobalElement, ...]
    metadata: CertificateMetadata

    @property
    def dim(self) -> int:
        return len(self.basis)


def _parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise SchemaError(f"rational must be 'num/den' string or int, got {type(s)}")
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}") from exc


def parse_certificate(data, curve: CurveModel | None = None) -> KernelCertificate:
    """Parse and structurally validate a certificate JSON document."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("certificate must be a JSON object")
    if data.get("version") != 1:
        raise SchemaError("unsupported certificate version")
    try:
        cur = data["curve"]
        P = tuple(int(c) for c in cur["P"])
        Q = tuple(int(c) for c in cur["Q"])
        S = tuple(int(p) for p in data["S"])
        res = data["resolvent"]
        lam = int(res["lambda"])
        F = tuple(_parse_rational(c) for c in res["F"])
        basis_raw = data["basis"]
        md = data["metadata"]
        meta = CertificateMetadata(
            rank_lower=int(md["rank_lower"]),
            rank_upper=int(md["rank_upper"]),
            ns_rank=None if md.get("ns_rank") is None else int(md["ns_rank"]),
            cl2_Kf2=int(md["cl2_Kf2"]),
            cl2_Kf=int(md["cl2_Kf"]),
            provenance=str(md.get("provenance", "")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"certificate schema violation: {exc}") from exc
    if 2 not in S:
        raise SchemaError("S must contain 2")
    if lam < 0:
        raise SchemaError("lambda must be non-negative")
    basis = []
    for elt_raw in basis_raw:
        factors = []
        for pair in elt_raw:
            try:
                poly_raw, exp = pair
                poly = tuple(_parse_rational(c) for c in poly_raw)
                exp = int(exp)
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"bad factored element: {exc}") from exc
            if not any(poly):
                raise SchemaError("zero polynomial factor in basis element")
            if polyq.deg(list(poly)) >= len(F) - 1:
                raise SchemaError("factor degree not below deg F")
            factors.append((poly, exp))
        basis.append(GlobalElement(tuple(factors)))
    if not polyq.is_squarefree([Fraction(c) for c in F]):
        raise SchemaError("resolvent polynomial is not squarefree")
    cert = KernelCertificate(cur.get("label"), P, Q, S, Resolvent(lam, F),
                             tuple(basis), meta)
    if curve is not None:
        if tuple(curve.P_coeffs) != P or tuple(curve.Q_coeffs) != Q:
            raise CurveMismatch("certificate curve differs from the analyzed curve")
    return cert


# --------------------------------------------------------------------------
# evaluation at root pairs
# --------------------------------------------------------------------------

def pair_t_value(sf: SplittingField, pair: tuple[int, int], lam: int,
                 transform: ModelTransform | None) -> LElement:
    """t_p = alpha + alpha' + lam alpha alpha' for the original-model roots
    attached to the labels of the pair (inverting the shift in the one-RWP
    case)."""
    a = _original_root(sf, pair[0], transform)
    b = _original_root(sf, pair[1], transform)
    t = a + b
    if lam:
        t = t + (a * b) * lam
    return t


def _original_root(sf: SplittingField, label_index: int,
                   transform: ModelTransform | None) -> LElement:
    u = sf.root_value(label_index)
    if transform is None:
        return u
    beta = transform.beta
    return u.inverse() + sf.l_scalar(sf.base.from_integer(beta, sf.N))


def evaluate_at_pair(e: GlobalElement, t_p: LElement, sf: SplittingField,
                     resolvent: Resolvent) -> LElement:
    """prod p_i(t_p)^{e_i}; each factor value must be certifiably nonzero."""
    out = sf.l_one()
    for poly, exp in e.factors:
        val = _eval_poly_at(poly, t_p, sf)
        # nonvanishing must be certified
        ok = False
        for mask, comp in val.comps.items():
            v = comp.valuation()
            if v is not None and v < comp.prec - SLACK_BITS:
                ok = True
                break
        if not ok:
            raise ComponentVanishes("factor value vanishes to working precision")
        out = out * (val ** exp)
    return out


def _eval_poly_at(poly, t_p: LElement, sf: SplittingField) -> LElement:
    val = sf.l_zero()
    for c in reversed(poly):
        c = Fraction(c)
        val = val * t_p + sf.l_scalar(sf.base.from_rational(c.numerator, c.denominator, sf.N))
    return val


def check_resolvent_vanishes(resolvent: Resolvent, t_p: LElement, sf: SplittingField):
    """|F(t_p)| = 0 mod 2^(N - slack): ties the certificate to this curve."""
    val = _eval_poly_at(resolvent.F_coeffs, t_p, sf)
    for mask, comp in val.comps.items():
        v = comp.valuation()
        if v is not None and v < comp.prec - SLACK_BITS:
            raise CurveMismatch("resolvent does not vanish at a pair value")


# --------------------------------------------------------------------------
# local-at-2 kernel verification (necessary conditions only)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalKernelReport:
    """Per-element pass/fail of the local norm condition at 2.  This checks a
    necessary condition for membership in the global kernel; the report is
    explicitly partial (no global verification is attempted)."""
    element_results: tuple[bool, ...]
    note: str = "partially verified (local at 2 only)"

    @property
    def all_pass(self) -> bool:
        return all(self.element_results)


def verify_local_kernel(cert: KernelCertificate, sf: SplittingField,
                        transform: ModelTransform | None) -> LocalKernelReport:
    """For each basis element e and each root-orbit representative a:
    prod_{a' != a} e(t_{a,a'}) must be a square in Q_2(a)."""
    finite = sf.finite_label_indices()
    # orbits of finite labels under the group
    seen = set()
    reps = []
    for k in finite:
        if k in seen:
            continue
        orb = {k}
        frontier = [k]
        while frontier:
            nxt = []
            for x in frontier:
                for gperm in sf.generators:
                    y = gperm[x]
                    if y not in orb:
                        orb.add(y)
                        nxt.append(y)
            frontier = nxt
        seen |= orb
        reps.append((min(orb), len(orb)))
    results = []
    lam = cert.resolvent.lam
    tcache: dict[tuple[int, int], LElement] = {}
    for e in cert.basis:
        ok = True
        for rep, orbsize in reps:
            try:
                val = _norm_value_at_root(e, rep, sf, cert.resolvent, transform, tcache)
                if not _is_square_in_root_field(val, rep, orbsize, sf):
                    ok = False
                    break
            except (PrecisionExhausted, ComponentVanishes):
                raise
        results.append(ok)
    return LocalKernelReport(tuple(results))


def _norm_value_at_root(e, rep, sf, resolvent, transform, tcache) -> LElement:
    out = sf.l_one()
    for other in sf.finite_label_indices():
        if other == rep:
            continue
        key = tuple(sorted((rep, other)))
        t_p = tcache.get(key)
        if t_p is None:
            t_p = pair_t_value(sf, key, resolvent.lam, transform)
            check_resolvent_vanishes(resolvent, t_p, sf)
            tcache[key] = t_p
        out = out * evaluate_at_pair(e, t_p, sf, resolvent)
    return out


def _is_square_in_root_field(val: LElement, label_index: int, orbsize: int,
                             sf: SplittingField) -> bool:
    """Squareness of val in Q_2(alpha) = U_t(sqrt d_i), decided through the
    solvability of y = a + b sqrt(d): a^2 = (x0 +- sqrt(Nm val))/2."""
    lab = sf.labels[label_index]
    i = lab.beta_index
    word = sf.words[i]
    t = _beta_orbit_size(sf, i)
    if word == 0:
        # alpha lies in an unramified subfield: U_s with s = label orbit size
        sub = padic.field(orbsize)
        base = val.as_subfield_value()
        smap = padic.SubfieldMap(sub, sf.base, sf.N)
        return padic.is_square(smap.pullback(base))
    # support must be within {0, word}
    for mask, comp in val.comps.items():
        if mask in (0, word):
            continue
        v = comp.valuation()
        if v is not None and v < comp.prec - SLACK_BITS:
            raise PrecisionExhausted("norm value leaves the root field")
    x0 = val.comps.get(0, sf.base.zero(sf.N))
    x1s = val.comps.get(word)
    sub = padic.field(t)
    smap = padic.SubfieldMap(sub, sf.base, sf.N)
    d_sub = smap.pullback(sf.d[i])
    x0_sub = smap.pullback(x0)
    if x1s is None or _vanishes(x1s):
        return padic.is_square(x0_sub) or padic.is_square(x0_sub * d_sub)
    x1 = x1s * sf.sqrt_parts[i].inverse()
    x1_sub = smap.pullback(x1)
    if _vanishes(x0):
        # val = x1 sqrt(d): square iff x1^2 d is ... y^2 = x1 sqrt(d) needs
        # norm -x1^2 d to be square and the half-trace test with x0 = 0
        nrm = -(x1_sub * x1_sub * d_sub)
        if not padic.is_square(nrm):
            return False
        r = padic.sqrt(nrm)
        return padic.is_square(r * _half(sub, sf.N)) or padic.is_square(-r * _half(sub, sf.N))
    nrm = x0_sub * x0_sub - x1_sub * x1_sub * d_sub
    if not padic.is_square(nrm):
        return False
    r = padic.sqrt(nrm)
    half = _half(sub, sf.N)
    cand1 = (x0_sub + r) * half
    cand2 = (x0_sub - r) * half
    return padic.is_square(cand1) or padic.is_square(cand2)


def _half(K, cap):
    return K.from_rational(1, 2, cap)


def _vanishes(x) -> bool:
    v = x.valuation()
    return v is None or v >= x.prec - SLACK_BITS


def _beta_orbit_size(sf: SplittingField, i: int) -> int:
    size = 1
    cur = sf.sigma[i]
    while cur != i:
        size += 1
        cur = sf.sigma[cur]
    return size
