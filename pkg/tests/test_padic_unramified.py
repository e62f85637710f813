"""Tests for unramified 2-adic arithmetic, Hensel lifting and square roots."""
import random

import pytest

from selmer2 import padic_unramified as P
from selmer2.errors import HenselFailure, NotASquare


def test_is_square_q2_examples():
    K = P.field(1)
    assert P.is_square(K.from_integer(17, 64))
    assert not P.is_square(K.from_integer(2, 64))
    assert not P.is_square(K.from_integer(-1, 64))


def test_is_square_brute_force_oracle_q2():
    """Agreement with enumeration of squares mod 2^7 (unit part mod 8 rule)."""
    K = P.field(1)
    squares = {(x * x) % 128 for x in range(128)}
    for u in range(1, 128, 2):     # units
        got = P.is_square(K.from_integer(u, 64))
        want = any((u - s) % 128 == 0 or (u * pow(s, -1, 128)) % 8 == 1
                   for s in squares if s % 2 == 1)
        assert got == (u % 8 == 1), u
        assert got == want


def test_is_square_brute_force_oracle_u2():
    """Enumerate residues mod 2^7 in U_2 and compare (acceptance 7b, small)."""
    K = P.field(2)
    cap = 7
    squares = set()
    for a in range(1 << cap):
        for b in range(1 << cap):
            x = K.elt((a, b), cap)
            sq = x * x
            squares.add((sq.vec[0] % (1 << cap), sq.vec[1] % (1 << cap))
                        if sq.shift == 0 else None)
    rng = random.Random(9)
    for _ in range(60):
        a, b = rng.randrange(128), rng.randrange(128)
        if a % 2 == 0 and b % 2 == 0:
            continue
        x = K.elt((a, b), 64)
        got = P.is_square(x)
        want = (a % 128, b % 128) in squares
        assert got == want, (a, b, got, want)


def test_sqrt_examples():
    K = P.field(1)
    r = P.sqrt(K.from_integer(9, 64))
    assert ((r * r) - K.from_integer(9, 64)).valuation() is None
    odd = r.vec[0] >> ((r.vec[0] & -r.vec[0]).bit_length() - 1)
    assert odd % 4 == 1      # deterministic sign rule
    r17 = P.sqrt(K.from_integer(17, 64))
    d = (r17 * r17) - K.from_integer(17, 64)
    assert d.valuation() is None or d.valuation() >= r17.prec - 1
    assert r17.vec[0] % 4 == 1
    with pytest.raises(NotASquare):
        P.sqrt(K.from_integer(2, 64))


def test_sqrt_random_units_all_fields():
    rng = random.Random(31)
    for d in (1, 2, 3, 4):
        K = P.field(d)
        for _ in range(25):
            vec = tuple(rng.randrange(1 << 40) for _ in range(d))
            x = K.elt(vec, 96)
            if x.valuation() is None:
                continue
            y = x * x
            r = P.sqrt(y)
            diff = (r * r) - y
            assert diff.valuation() is None or diff.valuation() >= y.prec - 2


def test_square_times_square_invariance():
    rng = random.Random(13)
    K = P.field(2)
    for _ in range(40):
        yv = tuple(rng.randrange(1 << 30) for _ in range(2))
        zv = tuple(rng.randrange(1, 1 << 30) for _ in range(2))
        y, z = K.elt(yv, 96), K.elt(zv, 96)
        if y.valuation() is None or z.valuation() is None:
            continue
        assert P.is_square(y * z * z) == P.is_square(y)


def test_frobenius_fixes_q2_and_has_order_d():
    for d in (2, 3, 4):
        K = P.field(d)
        x = K.from_integer(123456789, 128)
        assert (P.frobenius(x) - x).valuation() is None
        g = K.gen(128) + K.from_integer(7, 128)
        y = g
        for _ in range(d):
            y = P.frobenius(y)
        assert (y - g).valuation() is None


def test_frobenius_teichmuller_compat():
    K = P.field(2)
    t = P.teichmuller(K.gen(96))
    assert (P.frobenius(t) - t * t).valuation() is None


def test_lift_residue_roots():
    # Qbar factor x gives the rational root branch of Q = x^3+x^2+x
    K, root = P.lift_residue_roots((0, 1), (0, 1, 1, 1), 96)
    assert K.degree == 1
    assert root.valuation() is None or root.valuation() >= 90   # root is 0
    # Qbar factor x^2+x+1: Teichmueller-type cube root of unity
    K2, beta = P.lift_residue_roots((1, 1, 1), (1, 1, 1), 96)
    assert K2.degree == 2
    val = beta * beta + beta + K2.one(96)
    assert val.valuation() is None or val.valuation() >= 90


def test_lift_reducible_factor_rejected():
    with pytest.raises(ValueError):
        P.lift_residue_roots((1, 0, 1), (1, 0, 1), 64)   # x^2+1 = (x+1)^2


def test_hensel_quadratics_216663_transform():
    fprime = (0, 4, -7, 14, -13, 6, -3)
    K, betas = P.lift_all_roots((0, 1, 1, 1), None, 128)
    c, quads = P.hensel_quadratic_factors(fprime, betas, 128)
    assert c == -3 and len(quads) == 3
    # q_i == (x - beta_i)^2 mod 4
    for beta, (b, cc) in zip(betas, quads):
        assert ((b + beta * 2)).valuation() is None or (b + beta * 2).valuation() >= 2
        d = cc - beta * beta
        assert d.valuation() is None or d.valuation() >= 2


def test_hensel_product_identity_random_models():
    """c prod q_i == f mod 2^N for random ordinary models (acceptance 7a, small)."""
    rng = random.Random(77)
    from selmer2 import curve_model as cm
    checked = 0
    while checked < 6:
        g = rng.choice((2, 3))
        Q = [rng.randint(-3, 3) for _ in range(g + 1)] + [1]
        P_ = [rng.randint(-5, 5) for _ in range(2 * g + 2)] + [rng.choice((-1, 1))]
        try:
            c = cm.parse_curve(P_, Q)
            if c.case != cm.NO_RWP:
                continue
            od = cm.check_good_ordinary_at_2(c)
        except Exception:
            continue
        N = 128
        K, betas = P.lift_all_roots(c.Q_coeffs, None, N)
        lc, quads = P.hensel_quadratic_factors(c.f_coeffs, betas, N)
        prod = [K.one(N)]
        for b, cc in quads:
            prod = P.upoly_mul(prod, [cc, b, K.one(N)], K, N)
        for co, fi in zip(prod, c.f_coeffs):
            diff = co * lc - K.from_integer(fi, N)
            assert diff.valuation() is None or diff.valuation() >= N - 10
        checked += 1


def test_hensel_collision_raises():
    K = P.field(1)
    betas = [K.from_integer(1, 64), K.from_integer(3, 64)]   # same residue
    with pytest.raises(HenselFailure):
        P.hensel_quadratic_factors((1, 0, 0, 0, 1), betas, 64)


def test_norm_functoriality_small_towers():
    """Nm_{U4/U2} then Nm_{U2/Q2} equals Nm_{U4/Q2} (on class level)."""
    import selmer2.square_classes as sc
    rng = random.Random(4)
    U4, U2, Q2 = P.field(4), P.field(2), P.field(1)
    G1 = sc.square_class_group(Q2, 128)
    for _ in range(10):
        vec = tuple(rng.randrange(1, 1 << 20) for _ in range(4))
        y = U4.elt(vec, 128)
        if y.valuation() is None:
            continue
        direct = sc.norm_class(y, G1)
        mid = P.norm_class_tower(y, 2)
        via = sc.norm_class(mid, G1)
        assert direct.coords == via.coords
