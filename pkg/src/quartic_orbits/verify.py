"""Built-in verification suite: every quantitative claim, recomputed.

Each check recomputes a closed-form value, a signature, or an invariance
property from scratch and compares against the expected result.  The checks
deliberately route all bilinear-form evaluations through the ``forms`` module
attributes so that fault-injection tests (e.g. a sign error patched into the
polarization) are caught here.
"""

from __future__ import annotations

import math
import random
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import charts, export, forms
from .action import ELLIPTIC_GEN, SubgroupKind, act, lie_act, one_param, rep5
from .classify import (
    Stratum,
    _stratum_and_data,
    classify,
    free_action_probe,
    orbit_signature,
    orbit_tangent_basis,
    same_orbit,
)
from .forms import MONOMIALS, QuarticForm, SignatureTriple
from .roots import ConjugatePair, InfiniteRoot, RealRoot, from_roots
from .sampling import (
    distinct_rationals,
    random_form_in_stratum,
    random_quartic,
    random_rational_element,
)

DEFAULT_PARAMS = (Fraction(1, 3), Fraction(1, 2), Fraction(2), Fraction(5, 7))


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}" + (f" :: {self.detail}" if self.detail else "")


def _expect(condition: bool, message: str, failures: list) -> None:
    if not condition:
        failures.append(message)


def _result(name: str, failures: list) -> CheckResult:
    if failures:
        return CheckResult(name, False, "; ".join(failures[:4]))
    return CheckResult(name, True)


# ---------------------------------------------------------------------------
# the individual checks
# ---------------------------------------------------------------------------

def check_quadratic_form_closed_forms(params=DEFAULT_PARAMS) -> CheckResult:
    """q on the four closed-form families, exact at rational parameters."""
    fails: list = []
    for r in params:
        r = Fraction(r)
        a, b, c = r, r + 1, r - 2
        f = QuarticForm(0, 0, a, b, c)  # Y^2 (a X^2 + b XY + c Y^2)
        _expect(
            forms.q_value(f) == a * a / 6,
            f"double-real family at a={a}: {forms.q_value(f)} != {a * a / 6}",
            fails,
        )
        if r not in (0, 1):
            f = from_roots(
                (RealRoot(0), RealRoot(1), RealRoot(r), InfiniteRoot(1))
            )
            want = (r * r - r + 1) / 6
            _expect(
                forms.q_value(f) == want,
                f"four-real family at r={r}: {forms.q_value(f)} != {want}",
                fails,
            )
        f = from_roots((ConjugatePair(0, 1, 1), ConjugatePair(0, abs(r) + 1, (abs(r) + 1) ** 2)))
        rr = abs(r) + 1
        want = 2 * rr * rr + (1 + rr * rr) ** 2 / 6
        _expect(
            forms.q_value(f) == want,
            f"two-pair family at r={rr}: {forms.q_value(f)} != {want}",
            fails,
        )
    for m in (Fraction(1), Fraction(2)):
        for cos in (Fraction(0), Fraction(1, 2), Fraction(3, 5), Fraction(-3, 5)):
            f = QuarticForm(0, 1, -2 * m * cos, m * m, 0)
            want = Fraction(2, 3) * m * m * (cos * cos - Fraction(3, 4))
            _expect(
                forms.q_value(f) == want,
                f"angle family at m={m}, cos={cos}: {forms.q_value(f)} != {want}",
                fails,
            )
    for sign in (1.0, -1.0):
        cos = sign * math.sqrt(3.0) / 2.0
        f = QuarticForm(0.0, 1.0, -2.0 * cos, 1.0, 0.0)
        _expect(
            abs(float(forms.q_value(f))) <= 1e-12,
            f"float null angle: |q| = {abs(float(forms.q_value(f))):.2e} > 1e-12",
            fails,
        )
    return _result("quadratic-form closed forms", fails)


def check_ambient_signature() -> CheckResult:
    sig = forms.gram_signature(MONOMIALS)
    ok = sig == SignatureTriple(2, 3, 0)
    return CheckResult(
        "ambient signature (2,3,0)", ok, "" if ok else f"got {tuple(sig)}"
    )


def check_equivariance(n: int = 1000, seed: int = 2024) -> CheckResult:
    """Exact invariance of q, and the 5x5 representation in O(2,3)."""
    rng = random.Random(seed)
    fails: list = []
    for k in range(n):
        g = random_rational_element(rng)
        f = random_quartic(rng)
        if forms.q_value(act(g, f)) != forms.q_value(f):
            fails.append(f"q changed under the action at trial {k}")
            break
    gram = [[forms.b_polar(u, v) for v in MONOMIALS] for u in MONOMIALS]
    for k in range(50):
        g = random_rational_element(rng)
        m = rep5(g)
        mtbm = [
            [
                sum(m[i][r] * gram[i][j] * m[j][s] for i in range(5) for j in range(5))
                for s in range(5)
            ]
            for r in range(5)
        ]
        if mtbm != gram:
            fails.append(f"rep5 does not preserve the Gram matrix (trial {k})")
            break
    for k in range(25):
        g, h = random_rational_element(rng), random_rational_element(rng)
        lhs = rep5(g @ h)
        prod = [
            [sum(rep5(g)[i][t] * rep5(h)[t][j] for t in range(5)) for j in range(5)]
            for i in range(5)
        ]
        if lhs != prod:
            fails.append(f"rep5 is not multiplicative (trial {k})")
            break
    return _result("action equivariance and the 5x5 representation", fails)


def check_null_quadric_table() -> CheckResult:
    """Dimensions and signatures of the three null-quadric strata."""
    fails: list = []
    d = classify(QuarticForm(0, 0, 0, 0, 1))  # Y^4
    _expect(
        d.stratum is Stratum.EIN_QUADRUPLE and (d.dim, d.signature) == (1, (0, 0, 1)),
        f"quadruple-root point: {d.stratum}, {(d.dim, tuple(d.signature))}",
        fails,
    )
    d = classify(QuarticForm(0, 0, 0, 1, 0))  # X Y^3
    _expect(
        d.stratum is Stratum.EIN_TRIPLE and (d.dim, d.signature) == (2, (0, 1, 1)),
        f"triple-root point: {d.stratum}, {(d.dim, tuple(d.signature))}",
        fails,
    )
    f = QuarticForm(0.0, 1.0, -math.sqrt(3.0), 1.0, 0.0)  # folded angle pi/6
    d = classify(f, mode="float", tol=1e-9, on_boundary="snap")
    _expect(
        d.stratum is Stratum.EIN_OPEN,
        f"open-orbit representative classified as {d.stratum}",
        fails,
    )
    dim, sig = orbit_signature(f, tol=1e-9)
    _expect(
        (dim, sig) == (3, (1, 2, 0)),
        f"open-orbit (dim, sig) = {(dim, tuple(sig))}",
        fails,
    )
    return _result("null-quadric stratum table", fails)


def check_negative_region_leaves() -> CheckResult:
    """The leaves through Y(X^2+Y^2)(X-rY): q, the elliptic velocity, signature."""
    fails: list = []
    for r in (Fraction(0), Fraction(1, 2), Fraction(1)):
        f = from_roots((InfiniteRoot(1), RealRoot(r), ConjugatePair(0, 1, 1)))
        q = forms.q_value(f)
        _expect(
            q == r * r / 6 - Fraction(1, 2) and q < 0,
            f"q at r={r}: {q}",
            fails,
        )
        v = lie_act(ELLIPTIC_GEN, f)
        _expect(
            forms.q_value(v) == -2 - 2 * r * r,
            f"elliptic velocity at r={r}: q = {forms.q_value(v)}",
            fails,
        )
        d = classify(f)
        _expect(
            d.stratum is Stratum.ADS_GENERIC
            and (d.dim, d.signature) == (3, (1, 2, 0)),
            f"descriptor at r={r}: {d.stratum}, {(d.dim, tuple(d.signature))}",
            fails,
        )
    return _result("negative-region leaves", fails)


_POSITIVE_REPRESENTATIVES = (
    (QuarticForm(1, 0, 2, 0, 1), Stratum.H_PAIR_EQUAL, (2, (2, 0, 0))),
    (QuarticForm(0, 0, 1, 0, 0), Stratum.H_TWO_DOUBLE_REAL, (2, (1, 1, 0))),
    (QuarticForm(1, 0, 5, 0, 4), Stratum.H_PAIR_DISTINCT, (3, (2, 1, 0))),
    (QuarticForm(0, 1, Fraction(-5, 4), Fraction(1, 4), 0), Stratum.H_FOUR_REAL, (3, (2, 1, 0))),
    (QuarticForm(0, 0, 1, -1, 0), Stratum.H_DOUBLE_REAL_TWO_SIMPLE, (3, (1, 1, 1))),
    (QuarticForm(0, 0, 1, 0, 1), Stratum.H_DOUBLE_REAL_PAIR, (3, (1, 1, 1))),
    (QuarticForm(0, 1, -4, 5, 0), Stratum.H_TWO_REAL_PAIR, (3, (1, 2, 0))),
)


def check_positive_region_table() -> CheckResult:
    """Signatures of the seven positive-region strata, from Gram matrices."""
    fails: list = []
    for f, stratum, expected in _POSITIVE_REPRESENTATIVES:
        d = classify(f)
        _expect(
            d.stratum is stratum,
            f"{f.pretty()} classified as {d.stratum}, wanted {stratum}",
            fails,
        )
        _expect(
            (d.dim, tuple(d.signature)) == expected,
            f"{stratum.value}: computed {(d.dim, tuple(d.signature))}, wanted {expected}",
            fails,
        )
    return _result("positive-region stratum table", fails)


def check_degenerate_radicals() -> CheckResult:
    """The two degenerate orbits carry a 1-dimensional lightlike radical.

    At X*Y^2*(X-Y) the radical is spanned by a signed combination of the
    hyperbolic and parabolic velocities; at Y^2*(X^2+Y^2) by the hyperbolic
    velocity itself.  Orthogonality is checked exactly against the full span.
    """
    fails: list = []
    f = QuarticForm(0, 0, 1, -1, 0)  # X Y^2 (X - Y)
    h, p, e = orbit_tangent_basis(f)
    radical = None
    for w in (h + p, h - p):
        if forms.q_value(w) == 0 and all(
            forms.b_polar(w, v) == 0 for v in (h, p, e)
        ):
            radical = w
            break
    _expect(radical is not None, "no lightlike radical combination of h and p", fails)
    dim, sig = orbit_signature(f)
    _expect(
        (dim, sig) == (3, (1, 1, 1)),
        f"signature at the double+two-simple point: {(dim, tuple(sig))}",
        fails,
    )

    f = QuarticForm(0, 0, 1, 0, 1)  # Y^2 (X^2 + Y^2)
    h, p, e = orbit_tangent_basis(f)
    _expect(
        forms.q_value(h) == 0
        and all(forms.b_polar(h, v) == 0 for v in (h, p, e)),
        "hyperbolic velocity is not a lightlike radical at the double+pair point",
        fails,
    )
    dim, sig = orbit_signature(f)
    _expect(
        (dim, sig) == (3, (1, 1, 1)),
        f"signature at the double+pair point: {(dim, tuple(sig))}",
        fails,
    )
    return _result("degenerate-orbit radicals", fails)


def check_orthogonal_frame() -> CheckResult:
    """Known orthogonal frame on the two-real-plus-pair orbits with q > 0."""
    fails: list = []
    for r in (Fraction(2), Fraction(3)):
        f = from_roots((InfiniteRoot(1), RealRoot(r), ConjugatePair(0, 1, 1)))
        vh = QuarticForm(0, -2, 0, 2, -4 * r)
        vp = QuarticForm(0, 0, -3, 2 * r, -1)
        ve = QuarticForm(1, -2 * r, 0, -2 * r, -1)
        h, p, e = orbit_tangent_basis(f)
        _expect(vh == h, f"hyperbolic velocity mismatch at r={r}", fails)
        _expect(vp == p, f"parabolic velocity mismatch at r={r}", fails)
        _expect(
            ve == -e or ve == e,
            f"elliptic velocity mismatch (even up to sign) at r={r}",
            fails,
        )
        c1 = (7 * r + 3 * r**3) * vh + (6 - 2 * r * r) * vp + (5 + r * r) * ve
        c2 = 4 * vp + ve
        c3 = vh
        for i, u in enumerate((c1, c2, c3)):
            for v in (c1, c2, c3)[i + 1 :]:
                _expect(
                    forms.b_polar(u, v) == 0,
                    f"frame vectors not orthogonal at r={r}",
                    fails,
                )
        signs = tuple(
            1 if forms.q_value(v) > 0 else (-1 if forms.q_value(v) < 0 else 0)
            for v in (c1, c2, c3)
        )
        _expect(signs == (-1, 1, 1), f"frame signs {signs} at r={r}", fails)
    return _result("orthogonal frame on q>0 leaves", fails)


def check_tangent_line_membership(n: int = 100, seed: int = 77) -> CheckResult:
    """Triple-root forms lie on tangent lines of the quadruple-root curve."""
    rng = random.Random(seed)
    fails: list = []
    for _ in range(n):
        u, v = distinct_rationals(rng, 2)
        f = from_roots((RealRoot(u, 3), RealRoot(v)))
        curve = from_roots((RealRoot(u, 4),))
        direction = from_roots((InfiniteRoot(1), RealRoot(u, 3)))  # Y (X-uY)^3
        if forms.exact_rank([f, curve, direction]) != 2:
            fails.append(f"tangency fails at u={u}, v={v}")
            break
    # the configuration with the triple root at infinity
    f = from_roots((InfiniteRoot(3), RealRoot(Fraction(1, 2))))
    if forms.exact_rank(
        [f, QuarticForm(0, 0, 0, 0, 1), QuarticForm(0, 0, 0, 1, 0)]
    ) != 2:
        fails.append("tangency fails with the triple root at infinity")
    return _result("tangent-line membership of triple-root forms", fails)


_FREE_REPRESENTATIVES = {
    Stratum.EIN_OPEN: QuarticForm(0, 1, -6, 12, 0),
    Stratum.ADS_GENERIC: QuarticForm(0, 1, -2, 2, 0),
    Stratum.H_PAIR_DISTINCT: QuarticForm(1, 0, 5, 0, 4),
    Stratum.H_FOUR_REAL: QuarticForm(0, 1, Fraction(-5, 4), Fraction(1, 4), 0),
    Stratum.H_DOUBLE_REAL_TWO_SIMPLE: QuarticForm(0, 0, 1, -1, 0),
    Stratum.H_DOUBLE_REAL_PAIR: QuarticForm(0, 0, 1, 0, 1),
    Stratum.H_TWO_REAL_PAIR: QuarticForm(0, 1, -4, 5, 0),
}


def check_orbit_separation(pairs_per_stratum: int = 1000, seed: int = 5150) -> CheckResult:
    """same_orbit holds along the action, for every stratum."""
    rng = random.Random(seed)
    fails: list = []
    for stratum in Stratum:
        for k in range(pairs_per_stratum):
            f = random_form_in_stratum(rng, stratum)
            g = random_rational_element(rng)
            if not same_orbit(act(g, f), f):
                fails.append(f"orbit invariance fails in {stratum.value} (trial {k})")
                break
    return _result("orbit separation under the action", fails)


def check_freeness(trials: int = 1000, seed: int = 31) -> CheckResult:
    """No nontrivial element fixes points of the free strata; the known
    elliptic stabilizer of the doubled pair is detected."""
    fails: list = []
    for stratum, f in _FREE_REPRESENTATIVES.items():
        probe = free_action_probe(f, trials=trials, seed=seed)
        _expect(
            probe.ok,
            f"found a stabilizer in {stratum.value}: {probe.witness}",
            fails,
        )
    stab = one_param(SubgroupKind.ELLIPTIC_E, 0.7)
    probe = free_action_probe(
        QuarticForm(1, 0, 2, 0, 1), trials=0, candidates=(stab,)
    )
    _expect(
        not probe.ok and probe.witness is not None,
        "elliptic stabilizer of the doubled pair went undetected",
        fails,
    )
    return _result("freeness probes", fails)


def check_chart_exports(out_dir=None) -> CheckResult:
    """Curve/surface exports: diagonal degeneration, audits, determinism."""
    fails: list = []
    with tempfile.TemporaryDirectory() as tmp:
        base = Path(out_dir) if out_dir else Path(tmp)
        curve = charts.sample_quadruple_curve((-1.5, 1.5), n=61)
        surface = charts.sample_triple_surface((-1.5, 1.5), (-1.5, 1.5), n=25, m=25)
        # diagonal of the surface grid reproduces the curve parametrization
        diag_ok = all(
            charts.triple_chart_point(u, u) == charts.quadruple_chart_point(u)
            for u in [Fraction(-3, 2) + Fraction(3, 60) * k for k in range(61)]
        )
        _expect(diag_ok, "surface diagonal does not reproduce the curve", fails)
        for w in curve.points:
            p = charts.patch_embed(w)
            stratum = _stratum_and_data(p.rep, 1e-9, "raise", 1e-7)[0]
            if stratum is not Stratum.EIN_QUADRUPLE:
                fails.append(f"curve sample at {w} classifies as {stratum.value}")
                break
        n, m = surface.metadata["samples"]
        grid_u = [Fraction(-3, 2) + Fraction(3, n - 1) * i for i in range(n)]
        grid_v = [Fraction(-3, 2) + Fraction(3, m - 1) * j for j in range(m)]
        bad = None
        for i, u in enumerate(grid_u):
            for j, v in enumerate(grid_v):
                w = surface.points[i * m + j]
                p = charts.patch_embed(w)
                stratum = _stratum_and_data(p.rep, 1e-9, "raise", 1e-7)[0]
                want = Stratum.EIN_QUADRUPLE if u == v else Stratum.EIN_TRIPLE
                if stratum is not want:
                    bad = (u, v, stratum)
                    break
            if bad:
                break
        _expect(bad is None, f"surface sample misclassified: {bad}", fails)
        paths1 = [
            export.write_csv(curve, base / "curve_a.csv"),
            export.write_obj(surface, base / "surface_a.obj"),
        ]
        curve2 = charts.sample_quadruple_curve((-1.5, 1.5), n=61)
        surface2 = charts.sample_triple_surface((-1.5, 1.5), (-1.5, 1.5), n=25, m=25)
        paths2 = [
            export.write_csv(curve2, base / "curve_b.csv"),
            export.write_obj(surface2, base / "surface_b.obj"),
        ]
        for p1, p2 in zip(paths1, paths2):
            if p1.read_bytes() != p2.read_bytes():
                fails.append(f"non-deterministic bytes: {p1.name} vs {p2.name}")
    return _result("chart exports and reclassification", fails)


ALL_CHECKS = (
    check_quadratic_form_closed_forms,
    check_ambient_signature,
    check_equivariance,
    check_null_quadric_table,
    check_negative_region_leaves,
    check_positive_region_table,
    check_degenerate_radicals,
    check_orthogonal_frame,
    check_tangent_line_membership,
    check_orbit_separation,
    check_freeness,
    check_chart_exports,
)


def run_all(params=None, pairs_per_stratum: int = 1000, trials: int = 1000):
    """Run every check; exceptions count as failures of the raising check."""
    results = []
    for fn in ALL_CHECKS:
        kwargs = {}
        if fn is check_quadratic_form_closed_forms and params:
            kwargs["params"] = tuple(params)
        if fn is check_orbit_separation:
            kwargs["pairs_per_stratum"] = pairs_per_stratum
        if fn is check_freeness:
            kwargs["trials"] = trials
        try:
            results.append(fn(**kwargs))
        except Exception as exc:  # a crash is a failed check, not a crash of the suite
            results.append(CheckResult(fn.__name__, False, f"raised {exc!r}"))
    return results
