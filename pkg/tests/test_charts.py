from fractions import Fraction as F

import pytest

from quartic_orbits.charts import (
    GeometrySet,
    MinkPoint,
    chart_q,
    patch_embed,
    patch_project,
    quadruple_chart_point,
    sample_orbit,
    sample_quadruple_curve,
    sample_triple_surface,
    triple_chart_point,
)
from quartic_orbits.classify import Stratum, classify
from quartic_orbits.errors import DomainError, OutOfChartError
from quartic_orbits.forms import (
    MONOMIALS,
    ProjectivePoint,
    QuarticForm,
    gram_signature,
    q_value,
)
from quartic_orbits.sampling import random_rational


def test_chart_metric_signature():
    # the chart directions X^3Y, X^2Y^2, XY^3 form a Lorentzian 3-space
    assert gram_signature(MONOMIALS[1:4]) == (1, 2, 0)


def test_patch_embed_examples():
    assert patch_embed(MinkPoint(0, 0, 0)) == ProjectivePoint(QuarticForm(1, 0, 0, 0, 0))
    u = F(2, 3)
    w = MinkPoint(-4 * u, 6 * u * u, -4 * u**3)
    target = QuarticForm(1, -4 * u, 6 * u * u, -4 * u**3, u**4)
    assert patch_embed(w) == ProjectivePoint(target)


def test_patch_embed_lands_on_quadric(rng):
    for _ in range(40):
        w = MinkPoint(*(random_rational(rng) for _ in range(3)))
        assert q_value(patch_embed(w).rep) == 0
    for _ in range(10):
        w = MinkPoint(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3))
        assert abs(float(q_value(patch_embed(w).rep))) < 1e-12


def test_patch_project_examples():
    f = QuarticForm(1, -4, 6, -4, 1)  # (X - Y)^4
    assert patch_project(ProjectivePoint(f)) == MinkPoint(-4, 6, -4)
    with pytest.raises(OutOfChartError):
        patch_project(ProjectivePoint(QuarticForm(0, 0, 0, 0, 1)))
    with pytest.raises(DomainError):
        patch_project(ProjectivePoint(QuarticForm(1, 0, 0, 0, 1)))  # q != 0


def test_patch_round_trip(rng):
    for _ in range(30):
        w = MinkPoint(*(random_rational(rng) for _ in range(3)))
        assert patch_project(patch_embed(w)) == w
    wf = MinkPoint(0.25, -1.5, 2.0)
    back = patch_project(patch_embed(wf))
    assert max(abs(a - b) for a, b in zip(back, wf)) < 1e-12


def test_sample_quadruple_curve():
    gs = sample_quadruple_curve((-1, 1), n=21)
    assert gs.kind == "curve"
    assert len(gs.points) == 21
    assert gs.connectivity == [(k, k + 1) for k in range(20)]
    assert gs.points[0] == quadruple_chart_point(F(-1))
    # u = 1 is the last grid point and maps to (-4, 6, -4)
    assert gs.points[-1] == MinkPoint(-4, 6, -4)
    for w in gs.points[::5]:
        d = classify(patch_embed(w))
        assert d.stratum is Stratum.EIN_QUADRUPLE


def test_sample_curve_needs_two_points():
    with pytest.raises(ValueError):
        sample_quadruple_curve((-1, 1), n=1)


def test_sample_triple_surface():
    gs = sample_triple_surface((-1, 1), (-1, 1), n=5, m=5)
    assert gs.kind == "surface"
    assert len(gs.points) == 25
    assert len(gs.connectivity) == 2 * 4 * 4
    # (u, v) = (0, 1) -> chart point of X^3(X - Y)
    assert triple_chart_point(0, 1) == MinkPoint(-1, 0, 0)
    # diagonal grid points degenerate onto the curve
    grid = [F(-1) + F(1, 2) * k for k in range(5)]
    for u in grid:
        assert triple_chart_point(u, u) == quadruple_chart_point(u)
    # off-diagonal points are triple-root forms
    d = classify(patch_embed(triple_chart_point(grid[0], grid[3])))
    assert d.stratum is Stratum.EIN_TRIPLE


def test_surface_is_ruled_by_curve_tangents(rng):
    from quartic_orbits.forms import exact_rank
    from quartic_orbits.roots import InfiniteRoot, RealRoot, from_roots

    for _ in range(20):
        u, v = random_rational(rng), random_rational(rng)
        if u == v:
            continue
        w = triple_chart_point(u, v)
        f = patch_embed(w).rep
        curve_pt = from_roots((RealRoot(u, 4),))
        direction = from_roots((InfiniteRoot(1), RealRoot(u, 3)))
        assert exact_rank([f, curve_pt, direction]) == 2


def test_sample_orbit_quadruple_seed_stays_on_curve():
    gs = sample_orbit(QuarticForm(0, 0, 0, 0, 1), count=60, seed=11, audit=False)
    assert gs.metadata["on_quadric"]
    assert gs.metadata["kept"] + gs.metadata["dropped_out_of_chart"] == 60
    for w in gs.points:
        b3, b2, b1 = w.as_floats()
        u = -b3 / 4.0
        scale = max(1.0, abs(b2), abs(b1))
        assert abs(b2 - 6 * u * u) <= 1e-7 * scale
        assert abs(b1 + 4 * u**3) <= 1e-7 * scale


def test_sample_orbit_determinism_and_audit():
    a = sample_orbit(QuarticForm(0, 1, -6, 12, 0), count=40, seed=7)
    b = sample_orbit(QuarticForm(0, 1, -6, 12, 0), count=40, seed=7)
    assert [p.as_floats() for p in a.points] == [p.as_floats() for p in b.points]
    assert a.audits == b.audits
    assert a.audits and set(a.audits) == {"ein_open"}
    c = sample_orbit(QuarticForm(0, 1, -6, 12, 0), count=40, seed=8)
    assert [p.as_floats() for p in c.points] != [p.as_floats() for p in a.points]


def test_sample_orbit_ads_seed_theta_consistency():
    from quartic_orbits.roots import theta_star

    seed_form = QuarticForm(0, 1, -2, 2, 0)  # z = 1 + i
    want = theta_star(seed_form)
    gs = sample_orbit(seed_form, count=30, seed=5)
    assert set(gs.audits) == {"ads_generic"}
    assert not gs.metadata["on_quadric"]
    for five in gs.metadata["coefficient_vectors"]:
        got = theta_star(QuarticForm(*five))
        assert abs(got - want) <= 1e-9


def test_sample_orbit_validates_input():
    with pytest.raises(ValueError):
        sample_orbit(QuarticForm(0, 0, 0, 0, 1), count=0, seed=1)
    with pytest.raises(DomainError):
        sample_orbit(QuarticForm(0, 0, 0, 0, 0), count=5, seed=1)


def test_geometry_set_validates_connectivity():
    with pytest.raises(ValueError):
        GeometrySet(kind="curve", points=[MinkPoint(0, 0, 0)], connectivity=[(0, 1)])


def test_chart_q_matches_embedded_q():
    w = MinkPoint(F(1, 2), F(-2, 3), F(4))
    f = patch_embed(w).rep
    # on the chart, q restricted to the three middle coefficients
    assert chart_q(w) == -F(1, 2) * w.b1 * w.b3 + F(1, 6) * w.b2 * w.b2
    assert q_value(f) == 0
