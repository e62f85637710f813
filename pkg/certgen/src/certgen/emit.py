"""Certificate JSON emission from an Engine3 basis."""
from __future__ import annotations
import json
from fractions import Fraction


def emit_certificate(eng, basis, curve_label, P, Q, S, metadata, path):
    c = eng.c
    D = eng.D
    Fq = [Fraction(eng.Fmu[i], c ** (D - i)) for i in range(D + 1)]
    assert Fq[-1] == 1

    def frac_str(x: Fraction) -> str:
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    elements = []
    for members in basis:
        factors = []
        for g in members:
            poly = [Fraction(co * c ** i, g.den) for i, co in enumerate(g.num)]
            factors.append([[frac_str(x) for x in poly], 1])
        elements.append(factors)
    doc = {
        "version": 1,
        "curve": {"label": curve_label, "P": list(P), "Q": list(Q)},
        "S": sorted(S),
        "resolvent": {"lambda": 0, "F": [frac_str(x) for x in Fq]},
        "basis": elements,
        "metadata": metadata,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
    return doc
