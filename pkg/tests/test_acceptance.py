"""Acceptance suite: one test per numbered criterion, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.  Heavier
criteria delegate to the package's own verification checks (the same code the
``verify`` CLI command runs) so the suite and the CLI cannot drift apart.

Criterion 6 is asserted with the stated signature table verbatim.  It is
expected to fail on exactly one entry: the four-distinct-real-roots family,
stated as (1,2,0), computes to (2,1,0) under the pinned conventions (see the
hand-checkable construction in test_classify.py and the repository notes).
"""

import math
from fractions import Fraction as F

from quartic_orbits.classify import Stratum, classify
from quartic_orbits.forms import QuarticForm
from quartic_orbits.verify import (
    check_ambient_signature,
    check_chart_exports,
    check_degenerate_radicals,
    check_equivariance,
    check_freeness,
    check_negative_region_leaves,
    check_null_quadric_table,
    check_orbit_separation,
    check_orthogonal_frame,
    check_quadratic_form_closed_forms,
    check_tangent_line_membership,
)

STATED_PARAMS = (F(1, 3), F(1, 2), F(2), F(5, 7))


def _report(name: str, ok: bool, detail: str = "") -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f" :: {detail}"
    print(line)
    return ok


def test_c01_quadratic_form_closed_forms():
    # exact at r in {1/3, 1/2, 2, 5/7}; float null angle at 1e-12 relative
    r = check_quadratic_form_closed_forms(STATED_PARAMS)
    assert _report("c01 quadratic-form closed forms", r.passed, r.detail)


def test_c02_ambient_signature():
    r = check_ambient_signature()
    assert _report("c02 ambient signature (2,3,0)", r.passed, r.detail)


def test_c03_equivariance_exact():
    # 10^3 random rational (g, f): exact q-invariance; rep5 orthogonality and
    # multiplicativity, exact
    r = check_equivariance(n=1000)
    assert _report("c03 equivariance and 5x5 representation", r.passed, r.detail)


def test_c04_null_quadric_table():
    # (1,(0,0,1)) at Y^4; (2,(0,1,1)) at XY^3; (3,(1,2,0)) at the folded-angle
    # pi/6 representative in float mode with q-tolerance 1e-9
    r = check_null_quadric_table()
    assert _report("c04 null-quadric stratum table", r.passed, r.detail)


def test_c05_negative_region_leaves():
    # r in {0, 1/2, 1}: q = r^2/6 - 1/2 < 0, elliptic-velocity q = -2 - 2r^2
    # exactly, orbit signature (1,2,0)
    r = check_negative_region_leaves()
    assert _report("c05 negative-region leaves", r.passed, r.detail)


#: the stated signature table for the seven positive-region representatives
STATED_POSITIVE_TABLE = (
    (QuarticForm(1, 0, 2, 0, 1), Stratum.H_PAIR_EQUAL, (2, 0, 0)),
    (QuarticForm(0, 0, 1, 0, 0), Stratum.H_TWO_DOUBLE_REAL, (1, 1, 0)),
    (QuarticForm(1, 0, 5, 0, 4), Stratum.H_PAIR_DISTINCT, (2, 1, 0)),
    (QuarticForm(0, 1, F(-5, 4), F(1, 4), 0), Stratum.H_FOUR_REAL, (1, 2, 0)),
    (QuarticForm(0, 0, 1, -1, 0), Stratum.H_DOUBLE_REAL_TWO_SIMPLE, (1, 1, 1)),
    (QuarticForm(0, 0, 1, 0, 1), Stratum.H_DOUBLE_REAL_PAIR, (1, 1, 1)),
    (QuarticForm(0, 1, -4, 5, 0), Stratum.H_TWO_REAL_PAIR, (1, 2, 0)),
)


def test_c06_positive_region_table_as_stated():
    mismatches = []
    for f, stratum, stated in STATED_POSITIVE_TABLE:
        d = classify(f)
        assert d.stratum is stratum
        if tuple(d.signature) != stated:
            mismatches.append(
                f"{stratum.value}: stated {stated}, computed {tuple(d.signature)}"
            )
    ok = _report(
        "c06 positive-region signature table (as stated)",
        not mismatches,
        "; ".join(mismatches),
    )
    assert ok, (
        "computed Gram signatures disagree with the stated table: "
        + "; ".join(mismatches)
        + ".  The four-real value is provable by hand at roots {-1,0,1,inf}: "
        "the hyperbolic velocity -2(X^3Y + XY^3) has q = -2 < 0 and is "
        "b-orthogonal to the parabolic and elliptic velocities, whose 2x2 "
        "Gram block has determinant -4 < 0, forcing signature (2,1,0)."
    )


def test_c07_degenerate_radicals():
    # exact: a 1-dimensional lightlike radical spanned by a signed combination
    # of the hyperbolic and parabolic velocities at XY^2(X-Y), and by the
    # hyperbolic velocity at Y^2(X^2+Y^2)
    r = check_degenerate_radicals()
    assert _report("c07 degenerate-orbit radicals", r.passed, r.detail)


def test_c08_orthogonal_frame():
    # r in {2, 3}: the three stated combinations are pairwise b-orthogonal
    # with q-signs (-, +, +), exact
    r = check_orthogonal_frame()
    assert _report("c08 orthogonal frame on q>0 leaves", r.passed, r.detail)


def test_c09_tangent_line_membership():
    # 10^2 random triple-root forms lie on tangent lines of the
    # quadruple-root curve (exact rank-2 membership)
    r = check_tangent_line_membership(n=100)
    assert _report("c09 tangent-line membership", r.passed, r.detail)


def test_c10_orbit_separation_and_freeness():
    # 10^3 random pairs per stratum; 10^3 probe trials per free stratum;
    # the elliptic stabilizer of the doubled pair must be detected
    r1 = check_orbit_separation(pairs_per_stratum=1000)
    r2 = check_freeness(trials=1000)
    ok = _report(
        "c10 orbit separation and freeness",
        r1.passed and r2.passed,
        "; ".join(x.detail for x in (r1, r2) if x.detail),
    )
    assert ok


def test_c11_chart_exports():
    # surface diagonal coincides with the curve; every curve sample is a
    # quadruple-root point and every off-diagonal surface sample a triple-root
    # point; export bytes are deterministic for a fixed configuration
    r = check_chart_exports()
    assert _report("c11 chart exports and reclassification", r.passed, r.detail)


def test_theta_boundary_float_surrogate():
    # companion to c01: cos(theta) = ±sqrt(3)/2 puts q within 1e-12 of zero
    for sign in (1.0, -1.0):
        f = QuarticForm(0.0, 1.0, -2.0 * sign * math.sqrt(3.0) / 2.0, 1.0, 0.0)
        from quartic_orbits.forms import q_value

        assert abs(float(q_value(f))) <= 1e-12
