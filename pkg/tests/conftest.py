"""Shared fixtures: two hand-verified views over F_5.

Fixture A: y^2 = x^3 + x + 1, P = (0, 1), ord(P) = 9.
Fixture B: y^2 = x^3 + 2x + 1, P = (0, 1), ord(P) = 7, with the first eight
sequence values worked out by hand from the closed forms and the halving
recurrences: 1, 2, 1, 1, 2, 1, 0, 4.
"""

import pytest

from edschar.curve import EllipticCurve, Point
from edschar.eds import EdsView
from edschar.field import field


@pytest.fixture(scope="session")
def f5_view() -> EdsView:
    curve = EllipticCurve(field(5), 1, 1)
    return EdsView(curve, Point(0, 1))


@pytest.fixture(scope="session")
def f5_r7_view() -> EdsView:
    curve = EllipticCurve(field(5), 2, 1)
    return EdsView(curve, Point(0, 1))
