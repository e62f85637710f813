"""Dimension bookkeeping and finiteness verdicts.

Crude path: the S-cohomology dimension itself (one rational Weierstrass
point) or minus g (none), compared against (3g^2+g-2)/2 - rank.  Refined
path: dim Ker(theta_dR) compared against (3g^2+g+2)/2 - rank (one RWP) or
(3/2)g(g+1) - rank (no RWP).  Verdicts substitute the certificate's upper
rank bound, which is conservative.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, asdict

from .curve_model import ONE_RWP
from .errors import MissingRank

FINITE = "FINITE"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class BoundsReport:
    label: str | None
    genus: int
    case: str
    rank_lower: int
    rank_upper: int
    dim_A: int
    ker_theta: int | None
    crude_bound: int
    refined_bound: int | None
    threshold_crude: int
    threshold_refined: int | None
    verdict_crude: str
    verdict_refined: str | None
    verdict: str
    conditional_bk_dim: int | None
    expected_gap_note: int
    verdict_at_rank_lower: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    def to_tsv_row(self) -> str:
        ker = "" if self.ker_theta is None else str(self.ker_theta)
        return "\t".join([
            self.label or "", str(self.genus), self.case, str(self.dim_A), ker,
            str(self.crude_bound),
            "" if self.refined_bound is None else str(self.refined_bound),
            self.verdict])

    TSV_HEADER = "label\tg\tcase\tdim_A\tker_theta\tcrude_bound\trefined_bound\tverdict"


def crude_bound(dim_A: int, case: str, g: int) -> int:
    """dim_A for one RWP; dim_A - g for none (floored at 0)."""
    if case == ONE_RWP:
        return dim_A
    return max(dim_A - g, 0)


def refined_bound(ker_theta: int, case: str, g: int) -> int:
    """ker - 2 (one RWP) or ker - g - 1 (no RWP), floored at 0."""
    if case == ONE_RWP:
        return max(ker_theta - 2, 0)
    return max(ker_theta - g - 1, 0)


def crude_threshold(g: int, rank: int) -> int:
    return (3 * g * g + g - 2) // 2 - rank


def refined_threshold(case: str, g: int, rank: int) -> int:
    if case == ONE_RWP:
        return (3 * g * g + g + 2) // 2 - rank
    return (3 * g * (g + 1)) // 2 - rank


def finiteness_verdict(value: int, g: int, rank: int | None, case: str, path: str) -> str:
    """FINITE iff the strict inequality of the applicable corollary holds."""
    if rank is None:
        raise MissingRank("certificate metadata carries no rank bound")
    if path == "crude":
        return FINITE if value < crude_threshold(g, rank) else INCONCLUSIVE
    if path == "refined":
        return FINITE if value < refined_threshold(case, g, rank) else INCONCLUSIVE
    raise ValueError(f"unknown path {path!r}")


def conditional_bk_dim(g: int, ns_rank: int) -> int:
    """(g^2+g-2)/2 - ns_rank + 1 (reported only, never used in verdicts)."""
    return (g * g + g - 2) // 2 - ns_rank + 1


def build_report(label, g, case, dim_A, ker_theta, rank_lower, rank_upper,
                 ns_rank=None) -> BoundsReport:
    cb = crude_bound(dim_A, case, g)
    vc = finiteness_verdict(cb, g, rank_upper, case, "crude")
    if ker_theta is not None:
        rb = refined_bound(ker_theta, case, g)
        vr = finiteness_verdict(ker_theta, g, rank_upper, case, "refined")
        verdict = vr
        at_lower = finiteness_verdict(ker_theta, g, rank_lower, case, "refined")
        tr = refined_threshold(case, g, rank_upper)
    else:
        rb, vr, tr = None, None, None
        verdict = vc
        at_lower = finiteness_verdict(cb, g, rank_lower, case, "crude")
    return BoundsReport(
        label=label, genus=g, case=case,
        rank_lower=rank_lower, rank_upper=rank_upper,
        dim_A=dim_A, ker_theta=ker_theta,
        crude_bound=cb, refined_bound=rb,
        threshold_crude=crude_threshold(g, rank_upper),
        threshold_refined=tr,
        verdict_crude=vc, verdict_refined=vr, verdict=verdict,
        conditional_bk_dim=None if ns_rank is None else conditional_bk_dim(g, ns_rank),
        expected_gap_note=g - 1,
        verdict_at_rank_lower=at_lower)
