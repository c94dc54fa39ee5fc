"""Curve group law, orders, enumeration, and group structure."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from edschar.curve import (
    EllipticCurve,
    GroupStructure,
    Point,
    curve_order,
    enumerate_points,
    group_structure,
    max_order_point,
    point_order,
)
from edschar.curve import _count_points  # independent slow counter
from edschar.field import field

E5 = EllipticCurve(field(5), 1, 1)  # y^2 = x^3 + x + 1
E5_B = EllipticCurve(field(5), 0, 1)  # y^2 = x^3 + 1
E13 = EllipticCurve(field(13), 2, 3)
E1009 = EllipticCurve(field(1009), 5, 7)


# -- construction ------------------------------------------------------------------


def test_rejects_singular_curves():
    with pytest.raises(ValueError):
        EllipticCurve(field(5), 0, 0)  # discriminant 0
    with pytest.raises(ValueError):
        EllipticCurve(field(7), 0, 7)  # b = 0 mod 7
    with pytest.raises(ValueError):
        EllipticCurve(field(5), 3, 1)  # 4*27 + 27 = 135 = 0 mod 5


def test_rejects_composite_modulus():
    with pytest.raises(ValueError):
        EllipticCurve(15, 1, 1)


def test_coefficients_canonicalized():
    e = EllipticCurve(field(5), 6, -4)
    assert (e.a, e.b) == (1, 1)
    assert e == E5


def test_contains_and_validate():
    assert E5.contains(None)  # infinity
    assert E5.contains(Point(0, 1))
    assert not E5.contains(Point(1, 1))
    with pytest.raises(ValueError):
        E5.validate_point(Point(1, 1))


# -- group law (frozen oracles on y^2 = x^3 + x + 1 over F_5) ------------------------


def test_doubling_frozen():
    # chord-tangent: lambda = (3*0 + 1) / (2*1) = 3, x3 = 9 - 0 = 4, y3 = 3*(0-4)-1 = 2
    assert E5.add(Point(0, 1), Point(0, 1)) == Point(4, 2)


def test_triple_frozen():
    p = Point(0, 1)
    assert E5.mul(3, p) == E5.add(E5.add(p, p), p) == Point(2, 1)


def test_identity_and_inverse():
    p = Point(0, 1)
    assert E5.add(p, None) == p
    assert E5.add(None, p) == p
    assert E5.add(None, None) is None
    assert E5.add(p, Point(0, 4)) is None  # inverse pair
    assert E5.neg(p) == Point(0, 4)
    assert E5.neg(None) is None


def test_scalar_edge_cases():
    p = Point(0, 1)
    assert E5.mul(0, p) is None
    assert E5.mul(1, p) == p
    assert E5.mul(-1, p) == E5.neg(p)
    assert E5.mul(9, p) is None  # ord(P) = 9
    assert E5.mul(-3, p) == E5.neg(E5.mul(3, p))
    assert E5.mul(5, None) is None


def test_add_closure_and_commutativity_exhaustive():
    pts = enumerate_points(E13)
    for p1, p2 in itertools.product(pts, repeat=2):
        s = E13.add(p1, p2)
        assert E13.contains(s)
        assert s == E13.add(p2, p1)


def test_associativity_exhaustive_f13():
    pts = enumerate_points(E13)
    for p1, p2, p3 in itertools.product(pts, repeat=3):
        assert E13.add(E13.add(p1, p2), p3) == E13.add(p1, E13.add(p2, p3))


_BASE_1009 = next(pt for x in range(1009) for pt in E1009.lift_x(x))
_PTS_1009 = [E1009.mul(k, _BASE_1009) for k in range(1, 40)]


@settings(max_examples=60)
@given(
    st.integers(min_value=-500, max_value=500),
    st.integers(min_value=-500, max_value=500),
)
def test_scalar_mul_homomorphism(m, n):
    p = _PTS_1009[7]
    assert E1009.mul(m + n, p) == E1009.add(E1009.mul(m, p), E1009.mul(n, p))


# -- orders and enumeration ------------------------------------------------------------


def test_point_order_frozen():
    assert point_order(E5, None) == 1
    assert point_order(E5, Point(0, 1)) == 9
    assert point_order(E5_B, Point(0, 1)) == 3  # [2](0,1) = (0,4) = -P


def test_point_order_matches_brute_force():
    for pt in enumerate_points(E13):
        order = point_order(E13, pt)
        q = pt
        steps = 1
        while q is not None:
            q = E13.add(q, pt)
            steps += 1
        if pt is None:
            assert order == 1
        else:
            assert order == steps
            assert E13.mul(order, pt) is None
            assert all(E13.mul(k, pt) is not None for k in range(1, order))


def test_enumerate_points_frozen():
    pts = enumerate_points(E5)
    assert len(pts) == 9
    assert None in pts
    assert all(E5.contains(pt) for pt in pts)
    assert len(set(pts)) == 9


def test_enumeration_hasse_bound_all_curves_f7():
    p = 7
    count_curves = 0
    for a in range(p):
        for b in range(p):
            if (4 * a**3 + 27 * b**2) % p == 0:
                continue
            curve = EllipticCurve(field(p), a, b)
            n = len(enumerate_points(curve))
            assert abs(n - p - 1) <= 2 * p**0.5
            assert curve_order(curve) == n
            count_curves += 1
    assert count_curves == p * p - p  # the singular locus has exactly p pairs


def test_singular_pair_count_f5():
    singular = sum(
        (4 * a**3 + 27 * b**2) % 5 == 0 for a in range(5) for b in range(5)
    )
    assert singular == 5


def test_enumeration_guard():
    with pytest.raises(ValueError):
        enumerate_points(EllipticCurve(field(1_000_003), 1, 1))


def test_group_order_annihilates_every_point():
    n = curve_order(E13)
    for pt in enumerate_points(E13):
        assert E13.mul(n, pt) is None


def test_curve_order_bsgs_matches_enumeration():
    # p > 10**4 forces the baby-step giant-step path; compare with direct count
    for a, b in [(1, 1), (3, 5)]:
        curve = EllipticCurve(field(10_007), a, b)
        assert curve_order(curve) == _count_points(curve)


def test_curve_order_cached():
    e = EllipticCurve(field(10_007), 2, 9)
    assert curve_order(e) == curve_order(e)


# -- group structure ----------------------------------------------------------------


def test_group_structure_frozen_cyclic():
    s = group_structure(E5)
    assert (s.m, s.l) == (9, 1)
    assert s.size == 9
    assert point_order(E5, s.gen_m) == 9
    assert s.gen_l is None


def test_group_structure_properties_exhaustive_f11():
    p = 11
    for a in range(p):
        for b in range(p):
            if (4 * a**3 + 27 * b**2) % p == 0:
                continue
            curve = EllipticCurve(field(p), a, b)
            s = group_structure(curve)
            assert isinstance(s, GroupStructure)
            assert s.m % s.l == 0
            assert s.m * s.l == curve_order(curve) == s.size
            assert (p - 1) % s.l == 0  # pairing constraint
            assert point_order(curve, s.gen_m) == s.m
            if s.l > 1:
                assert point_order(curve, s.gen_l) == s.l
            # the M*L combinations regenerate the whole group exactly
            combos = set()
            row = None
            for _ in range(s.l):
                q = row
                for _ in range(s.m):
                    combos.add(q)
                    q = curve.add(q, s.gen_m)
                row = curve.add(row, s.gen_l)
            assert combos == set(enumerate_points(curve))


def test_full_two_torsion_curve_has_even_l():
    # y^2 = x^3 - x = x(x-1)(x+1) over F_5: three 2-torsion points
    curve = EllipticCurve(field(5), -1, 0)
    two_torsion = [pt for pt in enumerate_points(curve) if pt is not None and pt.y == 0]
    assert len(two_torsion) == 3
    s = group_structure(curve)
    assert s.l % 2 == 0
    assert (s.m, s.l) == (4, 2)


def test_max_order_point_is_lex_first():
    for curve in (E5, E13, EllipticCurve(field(5), -1, 0)):
        pt, order = max_order_point(curve)
        orders = {
            q: point_order(curve, q)
            for q in enumerate_points(curve)
            if q is not None
        }
        best = max(orders.values())
        assert order == best == point_order(curve, pt)
        lex_first = min((q for q, o in orders.items() if o == best), key=lambda q: (q.x, q.y))
        assert pt == lex_first


# -- point sampling ----------------------------------------------------------------


class _FakeRng:
    """Deterministic stand-in with the single-argument randrange protocol."""

    def __init__(self, values):
        self.values = list(values)

    def randrange(self, n):
        return self.values.pop(0) % n


def test_random_point_on_curve():
    rng = _FakeRng(range(100))
    pt = E13.random_point(rng)
    assert pt is not None
    assert E13.contains(pt)


def test_random_point_nonzero_y_skips_two_torsion():
    curve = EllipticCurve(field(13), -1, 0)  # has three 2-torsion points
    rng = _FakeRng(list(range(200)))
    pt = curve.random_point(rng, nonzero_y=True, max_tries=200)
    assert pt is not None and pt.y != 0


def test_random_point_exhausts_on_all_two_torsion_curve():
    # y^2 = x^3 + x over F_5 = x(x-2)(x+2): every affine point has y = 0
    curve = EllipticCurve(field(5), 1, 0)
    affine = [pt for pt in enumerate_points(curve) if pt is not None]
    assert all(pt.y == 0 for pt in affine)
    rng = _FakeRng(list(range(64)))
    assert curve.random_point(rng, nonzero_y=True, max_tries=64) is None


def test_lift_x_shapes():
    assert E5.lift_x(0) == [Point(0, 1), Point(0, 4)]
    assert E5.lift_x(1) == []  # rhs(1) = 3, a nonresidue mod 5
    curve = EllipticCurve(field(5), -1, 0)
    assert curve.lift_x(0) == [Point(0, 0)]  # double root


def test_point_value_semantics():
    assert Point(2, 3) == Point(2, 3)
    assert Point(2, 3) != Point(3, 2)
    assert len({Point(1, 1), Point(1, 1)}) == 1
    with pytest.raises(Exception):
        Point(1, 2).x = 5  # frozen
