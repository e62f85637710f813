import random

from selmer2 import padic_unramified as P
from selmer2 import square_classes as sc


def test_dims_d_plus_2():
    for d in (1, 2, 3, 4):
        G = sc.square_class_group(P.field(d), 128)
        assert G.dim == d + 2


def test_q2_basis_and_coordinates():
    K = P.field(1)
    G = sc.square_class_group(K, 128)
    # representable by {2, -1, 5}
    assert [b.vec[0] if b.vec[0] < 2**64 else b.vec[0] - 2**128 for b in G.basis][:1] == [2]
    assert sc.coordinates(K.from_integer(4, 128), G).coords.is_zero()
    assert sc.coordinates(K.from_integer(10, 128), G).coords.bits == (1, 0, 1)
    assert sc.coordinates(K.from_integer(-8, 128), G).coords.bits == (1, 1, 0)


def test_coordinates_homomorphism_and_square_invariance():
    rng = random.Random(11)
    for d in (1, 2, 3):
        K = P.field(d)
        G = sc.square_class_group(K, 128)
        for _ in range(20):
            y = K.elt(tuple(rng.randrange(1, 1 << 24) for _ in range(d)), 128)
            z = K.elt(tuple(rng.randrange(1, 1 << 24) for _ in range(d)), 128)
            if y.valuation() is None or z.valuation() is None:
                continue
            cy = sc.coordinates(y, G).coords
            cz = sc.coordinates(z, G).coords
            cyz = sc.coordinates(y * z, G).coords
            assert (cy + cz) == cyz
            assert sc.coordinates(y * z * z, G).coords == cy
            assert sc.reconstruct_check(y, sc.coordinates(y, G))


def test_unramified_class():
    K = P.field(1)
    G = sc.square_class_group(K, 128)
    xi = sc.unramified_class(G)
    assert not xi.coords.is_zero()
    # class of 5 for Q2
    assert xi.coords.bits == (0, 0, 1)
    for d in (2, 3):
        Gd = sc.square_class_group(P.field(d), 128)
        xid = sc.unramified_class(Gd)
        assert not xid.coords.is_zero()


def test_unramified_class_uniqueness():
    """Any unit satisfying (not square in K) + (square in U_2d) has xi's class."""
    K = P.field(2)
    G = sc.square_class_group(K, 128)
    xi = sc.unramified_class(G).coords
    smap = P.SubfieldMap(K, P.field(4), 128)
    rng = random.Random(5)
    found = 0
    while found < 5:
        y = K.elt(tuple(rng.randrange(1, 1 << 16) for _ in range(2)), 128)
        v = y.valuation()
        if v is None or v != 0:
            continue
        if not P.is_square(y) and P.is_square(smap.embed(y)):
            assert sc.coordinates(y, G).coords == xi
            found += 1


def test_norm_class_identity_and_squares():
    K = P.field(2)
    Gq = sc.square_class_group(P.field(1), 128)
    G2 = sc.square_class_group(K, 128)
    y = K.gen(128) * 3 + K.one(128) * 2
    assert sc.norm_class(y, G2).coords == sc.coordinates(y, G2).coords
    sq = y * y
    assert sc.norm_class(sq, Gq).coords.is_zero()


def test_norm_class_teichmuller():
    K = P.field(2)
    Gq = sc.square_class_group(P.field(1), 128)
    t = P.teichmuller(K.gen(128))
    # norm = t * frobenius(t) = t^3 = 1
    assert sc.norm_class(t, Gq).coords.is_zero()
