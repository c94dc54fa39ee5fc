"""Coefficient-space division polynomials vs. the pointwise evaluators."""

import random

import numpy as np
import pytest

from edschar.curve import EllipticCurve
from edschar.eds import PsiEvaluator
from edschar.field import field
from edschar.harness import largest_prime_below
from edschar.symbolic import XPoly, division_poly_tower, psi_symbolic


# -- XPoly arithmetic against a naive dict reference ---------------------------------


def _naive_mul(a, b, p):
    out = {}
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] = (out.get(i + j, 0) + ca * cb) % p
    n = max(out) + 1 if out else 1
    return [out.get(k, 0) for k in range(n)]


def test_xpoly_arithmetic_matches_naive():
    rng = random.Random(11)
    p = 97
    for _ in range(25):
        a = [rng.randrange(p) for _ in range(rng.randrange(1, 9))]
        b = [rng.randrange(p) for _ in range(rng.randrange(1, 9))]
        pa, pb = XPoly(a, p), XPoly(b, p)
        n = max(len(a), len(b))
        want_add = [( (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)]
        want_sub = [( (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
        assert (pa + pb) == XPoly(want_add, p)
        assert (pa - pb) == XPoly(want_sub, p)
        assert (pa * pb) == XPoly(_naive_mul(a, b, p), p)


def test_xpoly_trim_degree_zero():
    p = 13
    z = XPoly([0, 0, 0], p)
    assert z.is_zero() and z.degree == -1
    assert len(z.c) == 1  # trimmed to a single coefficient
    q = XPoly([3, 0, 5, 0, 0], p)
    assert q.degree == 2 and list(q.c) == [3, 0, 5]
    assert q.scale(0).is_zero()
    assert q.scale(2) == XPoly([6, 0, 10], p)
    assert q.scale(-1) == XPoly([10, 0, 8], p)


def test_xpoly_eval_horner():
    p = 101
    rng = random.Random(5)
    coeffs = [rng.randrange(p) for _ in range(12)]
    q = XPoly(coeffs, p)
    for x0 in (0, 1, 2, 57, 100):
        want = sum(c * pow(x0, i, p) for i, c in enumerate(coeffs)) % p
        assert q.eval(x0) == want


def test_xpoly_mul_overflow_guard():
    p = largest_prime_below(1 << 62)
    a = XPoly([1, 1], p)
    with pytest.raises(ValueError):
        _ = a * a


def test_fold_preserves_values_on_field():
    p = 13
    rng = random.Random(2)
    coeffs = [rng.randrange(p) for _ in range(3 * p + 2)]
    q = XPoly(coeffs, p)
    folded = q.fold()
    assert len(folded.c) <= p
    for x0 in range(p):
        assert folded.eval(x0) == q.eval(x0)
    # small polynomials fold to themselves
    small = XPoly([1, 2, 3], p)
    assert small.fold() is small


# -- frozen base polynomials ----------------------------------------------------------


def test_tower_base_entries_frozen():
    curve = EllipticCurve(field(5), 1, 1)
    tower = division_poly_tower(curve, 4)
    assert tower[0] == (0, XPoly([0], 5))
    assert tower[1] == (0, XPoly([1], 5))
    assert tower[2] == (1, XPoly([2], 5))
    # 3x^4 + 6Ax^2 + 12Bx - A^2 with A = B = 1, mod 5
    assert tower[3] == (0, XPoly([4, 2, 1, 0, 3], 5))
    # 4(x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3), coefficient of y
    assert tower[4] == (1, XPoly([-36, -16, -20, 80, 20, 0, 4], 5))


# -- degree and leading-coefficient laws ------------------------------------------------


def test_degrees_and_leading_coefficients():
    curve = EllipticCurve(field(10007), 3, 7)
    tower = division_poly_tower(curve, 20)
    p = 10007
    for n in range(1, 21):
        t, f = tower[n]
        assert t == (0 if n % 2 else 1)
        want_deg = (n * n - 1) // 2 if n % 2 else (n * n - 4) // 2
        assert f.degree == want_deg
        assert int(f.c[-1]) == n % p


# -- agreement with the pointwise evaluator ----------------------------------------------


@pytest.mark.parametrize("p,a,b", [(13, 2, 1), (97, 5, 3), (1009, 11, 17)])
def test_symbolic_matches_evaluator(p, a, b):
    curve = EllipticCurve(field(p), a, b)
    tower = division_poly_tower(curve, 30, fold=(p == 13))
    checked = 0
    for x in range(p):
        pts = curve.lift_x(x)
        if not pts:
            continue
        for pt in pts[:1]:
            if pt.y == 0:
                continue
            ev = PsiEvaluator(curve, pt)
            for n in range(31):
                assert psi_symbolic(curve, pt, n, tower) == ev.psi(n)
            checked += 1
        if checked >= 6:
            break
    assert checked >= 1


def test_folded_tower_matches_unfolded_everywhere():
    curve = EllipticCurve(field(13), 2, 1)
    plain = division_poly_tower(curve, 15)
    folded = division_poly_tower(curve, 15, fold=True)
    for n in range(16):
        t_plain, f_plain = plain[n]
        t_fold, f_fold = folded[n]
        assert t_plain == t_fold
        assert all(f_plain.eval(x) == f_fold.eval(x) for x in range(13))
        assert f_fold.degree < 13 or f_fold.is_zero()


def test_tower_recurrence_spot_check():
    # psi_7 = psi_5 psi_3^3 - psi_2^2 psi_4^3 / y-bookkeeping: verify values only
    curve = EllipticCurve(field(1009), 11, 17)
    tower = division_poly_tower(curve, 12)
    rng = random.Random(9)
    for _ in range(20):
        x = rng.randrange(1009)
        pts = curve.lift_x(x)
        if not pts or pts[0].y == 0:
            continue
        pt = pts[0]
        ev = PsiEvaluator(curve, pt)
        n = rng.randrange(12) + 1
        assert psi_symbolic(curve, pt, n, tower) == ev.psi(n)


def test_int64_dtype_stability():
    curve = EllipticCurve(field(10007), 3, 7)
    tower = division_poly_tower(curve, 16)
    for _, f in tower:
        assert f.c.dtype == np.int64
        assert int(f.c.min()) >= 0 and int(f.c.max()) < 10007
