"""End-to-end orchestration: curve -> ordinary model -> splitting field ->
certificate evaluation -> kernel of theta_dR -> bounds report.

Precision follows a doubling retry policy: analyses start at the requested
bits (default 256) and retry at doubled precision on PrecisionExhausted, up
to the configured ceiling.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import certificate as cert_mod
from . import curve_model as cm
from . import splitting_field as sp
from . import theta_dr
from . import verdict as verdict_mod
from .errors import InconsistentSigns, NotOrdinaryPresentation, PrecisionExhausted
from .padic_unramified import DEFAULT_PRECISION, PRECISION_CEILING


@dataclass
class AnalysisResult:
    report: verdict_mod.BoundsReport
    kernel: theta_dr.KernelResult | None
    local_report: cert_mod.LocalKernelReport | None
    precision_used: int
    ordinary: bool


def _prepare(curve: cm.CurveModel, N: int):
    od = cm.check_good_ordinary_at_2(curve)
    if curve.case == cm.ONE_RWP:
        tr = cm.to_even_model(curve, od.beta_shift)
        sf = sp.build_splitting_field(tr.even_model, N, True)
        return sf, tr
    sf = sp.build_splitting_field(curve, N, False)
    return sf, None


def analyze(curve: cm.CurveModel, cert: cert_mod.KernelCertificate,
            precision: int = DEFAULT_PRECISION, verify: bool = False) -> AnalysisResult:
    """Full pipeline for one curve + certificate."""
    N = precision
    last_exc: Exception | None = None
    while N <= PRECISION_CEILING:
        try:
            return _analyze_at(curve, cert, N, verify)
        except (PrecisionExhausted, InconsistentSigns) as exc:
            # sign resolution failures force the same doubling retry
            last_exc = exc
            N *= 2
    raise PrecisionExhausted(f"precision ceiling reached: {last_exc}")


def _analyze_at(curve, cert, N, verify) -> AnalysisResult:
    md = cert.metadata
    try:
        sf, tr = _prepare(curve, N)
    except NotOrdinaryPresentation:
        # crude path only
        report = verdict_mod.build_report(
            curve.label or cert.curve_label, curve.g, curve.case, cert.dim,
            None, md.rank_lower, md.rank_upper, md.ns_rank)
        return AnalysisResult(report, None, None, N, False)
    dec = sp.pair_orbits(sf)
    local = cert_mod.verify_local_kernel(cert, sf, tr) if verify else None
    kr = theta_dr.ker_theta_dr(cert, dec, sf, tr)
    report = verdict_mod.build_report(
        curve.label or cert.curve_label, curve.g, curve.case, cert.dim,
        kr.dim, md.rank_lower, md.rank_upper, md.ns_rank)
    return AnalysisResult(report, kr, local, N, True)


def validate(curve: cm.CurveModel, cert: cert_mod.KernelCertificate,
             precision: int = DEFAULT_PRECISION) -> cert_mod.LocalKernelReport:
    """Local-at-2 verification of every certificate element."""
    N = precision
    last_exc: Exception | None = None
    while N <= PRECISION_CEILING:
        try:
            sf, tr = _prepare(curve, N)
            return cert_mod.verify_local_kernel(cert, sf, tr)
        except (PrecisionExhausted, InconsistentSigns) as exc:
            last_exc = exc
            N *= 2
    raise PrecisionExhausted(f"precision ceiling reached: {last_exc}")
