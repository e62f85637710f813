"""Certificate parsing, pair evaluation and the local kernel check, exercised
on the 216663 fixture."""
import json
import os

import pytest

from selmer2 import certificate as cert_mod
from selmer2 import curve_model as cm
from selmer2 import splitting_field as sp
from selmer2.errors import CurveMismatch, SchemaError

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "data", "fixtures")


def _load(label):
    with open(os.path.join(FIXTURES, f"{label}.curve.json")) as fh:
        curve = cm.curve_from_json(json.load(fh))
    with open(os.path.join(FIXTURES, f"{label}.cert.json")) as fh:
        cert = cert_mod.parse_certificate(json.load(fh), curve)
    return curve, cert


def _prepared(label, N=256):
    curve, cert = _load(label)
    od = cm.check_good_ordinary_at_2(curve)
    if curve.case == cm.ONE_RWP:
        tr = cm.to_even_model(curve, od.beta_shift)
        return curve, cert, sp.build_splitting_field(tr.even_model, N, True), tr
    return curve, cert, sp.build_splitting_field(curve, N, False), None


def test_parse_fixture_dimension():
    _, cert = _load("216663.a.216663.1")
    assert cert.dim == 6
    assert cert.S == (2,)
    assert cert.resolvent.lam == 0


def test_truncated_file_schema_error():
    with pytest.raises(SchemaError):
        cert_mod.parse_certificate('{"version": 1, "curve"')
    with pytest.raises(SchemaError):
        cert_mod.parse_certificate({"version": 1})


def test_curve_mismatch():
    curve = cm.parse_curve([0, -1, 0, 0, -2, -1], [1, 1, 0, 1])
    with open(os.path.join(FIXTURES, "216663.a.216663.1.cert.json")) as fh:
        with pytest.raises(CurveMismatch):
            cert_mod.parse_certificate(json.load(fh), curve)


def test_constant_element_evaluates_to_itself():
    curve, cert, sf, tr = _prepared("216663.a.216663.1")
    from fractions import Fraction
    one = cert_mod.GlobalElement(((tuple([Fraction(1)]), 1),))
    dec = sp.pair_orbits(sf)
    pair = dec.orbits[-1].representative
    t_p = cert_mod.pair_t_value(sf, pair, 0, tr)
    val = cert_mod.evaluate_at_pair(one, t_p, sf, cert.resolvent)
    base = val.as_subfield_value()
    diff = base - sf.base.one(sf.N)
    assert diff.valuation() is None or diff.valuation() >= base.prec - 8


def test_resolvent_vanishes_at_pairs():
    curve, cert, sf, tr = _prepared("216663.a.216663.1")
    dec = sp.pair_orbits(sf)
    for orbit in dec.orbits:
        t_p = cert_mod.pair_t_value(sf, orbit.representative, cert.resolvent.lam, tr)
        cert_mod.check_resolvent_vanishes(cert.resolvent, t_p, sf)   # no raise


def test_evaluation_multiplicative_and_square_invariant():
    curve, cert, sf, tr = _prepared("216663.a.216663.1")
    import selmer2.square_classes as sc
    from fractions import Fraction
    dec = sp.pair_orbits(sf)
    pair = next(o for o in dec.orbits if not o.diagonal).representative
    t_p = cert_mod.pair_t_value(sf, pair, 0, tr)
    e1, e2 = cert.basis[3], cert.basis[4]
    v1 = cert_mod.evaluate_at_pair(e1, t_p, sf, cert.resolvent)
    v2 = cert_mod.evaluate_at_pair(e2, t_p, sf, cert.resolvent)
    v12 = cert_mod.evaluate_at_pair(e1 * e2, t_p, sf, cert.resolvent)
    diff = v12 - v1 * v2
    for comp in diff.comps.values():
        v = comp.valuation()
        assert v is None or v >= comp.prec - 40


def test_galois_conjugate_pairs():
    """Values at two pairs in one orbit are Galois-conjugate."""
    curve, cert, sf, tr = _prepared("216663.a.216663.1")
    dec = sp.pair_orbits(sf)
    orbit = next(o for o in dec.orbits if not o.diagonal)
    p0 = orbit.representative
    e = cert.basis[3]
    t0 = cert_mod.pair_t_value(sf, p0, 0, tr)
    val0 = cert_mod.evaluate_at_pair(e, t0, sf, cert.resolvent)
    # frobenius generator permutation
    perm = sf.generators[0]
    p1 = tuple(sorted((perm[p0[0]], perm[p0[1]])))
    if p1 in orbit.pairs and p1 != p0:
        t1 = cert_mod.pair_t_value(sf, p1, 0, tr)
        val1 = cert_mod.evaluate_at_pair(e, t1, sf, cert.resolvent)
        diff = val0.frob() - val1
        for comp in diff.comps.values():
            v = comp.valuation()
            assert v is None or v >= comp.prec - 48


def test_local_kernel_fixture_passes_and_checker_can_fail():
    curve, cert, sf, tr = _prepared("216663.a.216663.1")
    report = cert_mod.verify_local_kernel(cert, sf, tr)
    assert report.all_pass
    assert "partial" in report.note
    # planted non-member: theta itself (the identity polynomial)
    from fractions import Fraction
    theta = cert_mod.GlobalElement(((tuple([Fraction(0), Fraction(1)]), 1),))
    bad = cert_mod.KernelCertificate(
        cert.curve_label, cert.P_coeffs, cert.Q_coeffs, cert.S,
        cert.resolvent, (theta,), cert.metadata)
    rep2 = cert_mod.verify_local_kernel(bad, sf, tr)
    assert not rep2.all_pass


def test_constant_square_passes_local_kernel():
    curve, cert, sf, tr = _prepared("216663.a.216663.1")
    from fractions import Fraction
    nine = cert_mod.GlobalElement(((tuple([Fraction(9)]), 1),))
    c9 = cert_mod.KernelCertificate(
        cert.curve_label, cert.P_coeffs, cert.Q_coeffs, cert.S,
        cert.resolvent, (nine,), cert.metadata)
    assert cert_mod.verify_local_kernel(c9, sf, tr).all_pass
