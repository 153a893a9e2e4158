import math
from fractions import Fraction as F

import pytest

from quartic_orbits.errors import ContractError, ZeroFormError
from quartic_orbits.forms import (
    GRAM_MATRIX,
    MONOMIALS,
    ProjectivePoint,
    QuarticForm,
    Region,
    SignatureTriple,
    b_polar,
    exact_rank,
    gram_signature,
    q_value,
    region_of,
)
from quartic_orbits.sampling import random_quartic, random_rational


X4, X3Y, X2Y2, XY3, Y4 = MONOMIALS


def test_q_value_examples():
    assert q_value(Y4) == 0
    # Y^2 (a X^2 + b XY + c Y^2) has q = a^2/6
    a, b, c = F(3), F(-7, 2), F(5)
    assert q_value(QuarticForm(0, 0, a, b, c)) == a * a / 6
    # XY(X-Y)(X-rY) at r = 1/2
    assert q_value(QuarticForm(0, 1, F(-3, 2), F(1, 2), 0)) == F(1, 8)
    # (X^2+Y^2)(X^2+r^2 Y^2) at r = 2
    assert q_value(QuarticForm(1, 0, 5, 0, 4)) == F(73, 6)


def test_q_homogeneous_of_degree_two(rng):
    for _ in range(50):
        f = random_quartic(rng)
        lam = random_rational(rng)
        assert q_value(f.scale(lam)) == lam * lam * q_value(f)


def test_b_polar_examples():
    assert b_polar(X4, Y4) == 1
    assert b_polar(-1 * Y4, QuarticForm(0, 0, 3, 0, 1)) == 0


def test_b_polar_polarizes_q(rng):
    for _ in range(50):
        f = random_quartic(rng)
        assert b_polar(f, f) == q_value(f)
    for _ in range(20):
        f = random_quartic(rng).as_floats()
        scale = max(1.0, abs(float(q_value(f))))
        assert abs(b_polar(f, f) - q_value(f)) <= 1e-12 * scale


def test_b_polar_symmetric_bilinear(rng):
    for _ in range(20):
        u, v, w = (random_quartic(rng) for _ in range(3))
        lam = random_rational(rng)
        assert b_polar(u, v) == b_polar(v, u)
        assert b_polar(u.scale(lam) + w, v) == lam * b_polar(u, v) + b_polar(w, v)


def test_ambient_signature_is_2_3():
    assert gram_signature(MONOMIALS) == SignatureTriple(2, 3, 0)
    assert GRAM_MATRIX[0][4] == 1
    assert GRAM_MATRIX[1][3] == F(-1, 4)
    assert GRAM_MATRIX[2][2] == F(1, 6)


def test_region_of_examples():
    assert region_of(ProjectivePoint(Y4)) is Region.EINSTEIN
    # Y(X^2+Y^2)(X-Y): q = -1/3
    assert region_of(QuarticForm(0, 1, -1, 1, -1)) is Region.ADS
    assert region_of(X2Y2) is Region.H22


def test_region_of_rejects_zero_form():
    with pytest.raises(ZeroFormError):
        region_of(QuarticForm(0, 0, 0, 0, 0))


def test_region_of_scale_invariant(rng):
    for _ in range(30):
        f = random_quartic(rng)
        lam = F(0)
        while lam == 0:
            lam = random_rational(rng)
        assert region_of(f) is region_of(f.scale(lam))
        g = f.as_floats()
        assert region_of(g) is region_of(g.scale(7.25))


def test_gram_signature_examples():
    assert gram_signature([QuarticForm(0, 0, 0, -4, 0)]) == (0, 0, 1)
    # the two tangent directions at the triple-root point
    assert gram_signature(
        [QuarticForm(0, 0, 0, 0, -1), QuarticForm(0, 0, 3, 0, 1)]
    ) == (0, 1, 1)
    # the three flow velocities at (X^2+Y^2)(X^2+4Y^2)
    vh = QuarticForm(-4, 0, 0, 0, 16)
    vp = QuarticForm(0, -4, 0, -10, 0)
    ve = QuarticForm(0, 6, 0, 6, 0)
    assert gram_signature([vh, vp, ve]) == (2, 1, 0)


def test_gram_signature_respanning_invariance(rng):
    vecs = [QuarticForm(-4, 0, 0, 0, 16), QuarticForm(0, -4, 0, -10, 0),
            QuarticForm(0, 6, 0, 6, 0)]
    want = gram_signature(vecs)
    for _ in range(20):
        # random invertible rational recombination of the same span
        while True:
            m = [[random_rational(rng) for _ in range(3)] for _ in range(3)]
            det = (
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            )
            if det != 0:
                break
        new = [
            m[i][0] * vecs[0] + m[i][1] * vecs[1] + m[i][2] * vecs[2]
            for i in range(3)
        ]
        assert gram_signature(new) == want
        assert exact_rank(new) == 3


def test_gram_signature_modulo_contract():
    light = QuarticForm(0, 0, 0, -4, 0)  # q-null
    spacelike = QuarticForm(0, 0, 1, 0, 0)
    # X^2Y^2 is not b-orthogonal to itself (q = 1/6), so it cannot be a
    # quotient direction for a span containing it
    with pytest.raises(ContractError):
        gram_signature([spacelike], modulo=spacelike)
    # a valid quotient: the null direction orthogonal to the span
    assert gram_signature([light, spacelike], modulo=light) == (0, 1, 0)


def test_gram_signature_float_mode():
    vecs = [
        QuarticForm(-4.0, 0.0, 0.0, 0.0, 16.0),
        QuarticForm(0.0, -4.0, 0.0, -10.0, 0.0),
        QuarticForm(0.0, 6.0, 0.0, 6.0, 0.0),
    ]
    assert gram_signature(vecs) == (2, 1, 0)
    assert gram_signature([QuarticForm(0.0, 0.0, 0.0, -4.0, 0.0)]) == (0, 0, 1)


def test_projective_equality():
    p = ProjectivePoint(QuarticForm(F(1, 2), 0, F(3, 4), 0, 1))
    q = ProjectivePoint(QuarticForm(2, 0, 3, 0, 4))
    assert p == q
    assert p != ProjectivePoint(QuarticForm(2, 0, 3, 0, 5))
    fa = ProjectivePoint(QuarticForm(*(float(c) for c in (2, 0, 3, 0, 4))))
    assert fa.proportional_to(p, 1e-9)
    with pytest.raises(ZeroFormError):
        ProjectivePoint(QuarticForm(0, 0, 0, 0, 0))


def test_evaluate_and_pretty():
    f = QuarticForm(1, 0, -2, 0, 1)  # (X^2 - Y^2)^2
    assert f.evaluate(1, 1) == 0
    assert f.evaluate(2, 1) == 9
    assert "X^4" in f.pretty()


def test_unit_scaled_norm():
    f = QuarticForm(3.0, 0.0, 4.0, 0.0, 0.0)
    g = f.unit_scaled()
    assert math.isclose(g.norm(), 1.0)
