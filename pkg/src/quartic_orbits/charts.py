"""Affine chart on the null quadric and geometry sampling for exports.

The chart removes the lightcone of [Y^4] and identifies the rest of the
quadric with a flat Lorentzian 3-space: a point (b3, b2, b1) corresponds to
the quartic X^4 + b3*X^3*Y + b2*X^2*Y^2 + b1*X*Y^3 - (qw/2)*Y^4 where
qw = -b1*b3/2 + b2^2/6 is the chart metric (signature (1,2)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .action import random_lie_vector
from .action import act as _act
from .errors import DomainError, OutOfChartError
from .forms import ProjectivePoint, QuarticForm, as_point, q_value
from .scalars import HALF, SIXTH, is_exact


class MinkPoint(NamedTuple):
    """Coordinates in the affine chart {a4 = 1} of the null quadric."""

    b3: object
    b2: object
    b1: object

    def as_floats(self):
        return (float(self.b3), float(self.b2), float(self.b1))


def chart_q(w: MinkPoint):
    """The flat Lorentzian metric of the chart: -b1*b3/2 + b2^2/6."""
    return -HALF * (w.b1 * w.b3) + SIXTH * w.b2 * w.b2


def patch_embed(w: MinkPoint) -> ProjectivePoint:
    """Chart point -> projective point on the null quadric (q_value = 0)."""
    qw = chart_q(w)
    half = Fraction(1, 2) if is_exact(qw) else 0.5
    return ProjectivePoint(QuarticForm(1, w.b3, w.b2, w.b1, -half * qw))


def patch_project(p, tol: float = 1e-9) -> MinkPoint:
    """Inverse chart map; requires q = 0 and a4 != 0 (off the lightcone of [Y^4])."""
    point = as_point(p)
    f = point.rep
    if f.is_exact():
        if q_value(f) != 0:
            raise DomainError("the point is not on the null quadric")
        if f.a4 == 0:
            raise OutOfChartError("the point lies on the removed lightcone (a4 = 0)")
        a4 = Fraction(f.a4) if not isinstance(f.a4, Fraction) else f.a4
        return MinkPoint(f.a3 / a4, f.a2 / a4, f.a1 / a4)
    g = f.unit_scaled()
    if abs(float(q_value(g))) > tol:
        raise DomainError("the point is not on the null quadric")
    if abs(g.a4) <= tol:
        raise OutOfChartError("the point lies on the removed lightcone (a4 ~ 0)")
    return MinkPoint(g.a3 / g.a4, g.a2 / g.a4, g.a1 / g.a4)


@dataclass
class GeometrySet:
    """Sampled geometry ready for export: points, connectivity, bookkeeping."""

    kind: str  # "curve" | "surface" | "cloud"
    points: list
    connectivity: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    audits: list = field(default_factory=list)

    def __post_init__(self):
        n = len(self.points)
        for simplex in self.connectivity:
            if any(not 0 <= i < n for i in simplex):
                raise ValueError("connectivity index out of range")


def _grid(lo, hi, n):
    lo, hi = Fraction(str(lo)), Fraction(str(hi))
    if n < 2:
        raise ValueError("need at least 2 samples")
    step = (hi - lo) / (n - 1)
    return [lo + k * step for k in range(n)]


def quadruple_chart_point(u) -> MinkPoint:
    """Chart image of [(X - uY)^4]."""
    return MinkPoint(-4 * u, 6 * u * u, -4 * u**3)


def triple_chart_point(u, v) -> MinkPoint:
    """Chart image of [(X - uY)^3 (X - vY)]."""
    return MinkPoint(-(3 * u + v), 3 * u * u + 3 * u * v, -(u**3 + 3 * u * u * v))


def sample_quadruple_curve(u_range=(-1.5, 1.5), n: int = 200) -> GeometrySet:
    """Polyline along the quadruple-root curve u -> (-4u, 6u^2, -4u^3)."""
    us = _grid(u_range[0], u_range[1], n)
    points = [quadruple_chart_point(u) for u in us]
    segments = [(k, k + 1) for k in range(n - 1)]
    return GeometrySet(
        kind="curve",
        points=points,
        connectivity=segments,
        metadata={
            "family": "quadruple-root curve",
            "u_range": (float(us[0]), float(us[-1])),
            "samples": n,
        },
    )


def sample_triple_surface(
    u_range=(-1.5, 1.5), v_range=(-1.5, 1.5), n: int = 200, m: int = 200
) -> GeometrySet:
    """Triangulated grid of chart images of [(X-uY)^3 (X-vY)].

    The diagonal u = v degenerates onto the quadruple-root curve, which is
    the singular locus of this ruled surface.
    """
    us = _grid(u_range[0], u_range[1], n)
    vs = _grid(v_range[0], v_range[1], m)
    points = [triple_chart_point(u, v) for u in us for v in vs]
    triangles = []
    for i in range(n - 1):
        for j in range(m - 1):
            p00 = i * m + j
            p10 = (i + 1) * m + j
            p01 = i * m + (j + 1)
            p11 = (i + 1) * m + (j + 1)
            triangles.append((p00, p10, p01))
            triangles.append((p10, p11, p01))
    return GeometrySet(
        kind="surface",
        points=points,
        connectivity=triangles,
        metadata={
            "family": "tangent-line surface of the quadruple-root curve",
            "u_range": (float(us[0]), float(us[-1])),
            "v_range": (float(vs[0]), float(vs[-1])),
            "samples": (n, m),
        },
    )


def sample_orbit(
    f: QuarticForm,
    count: int,
    seed,
    radius: float = 1.0,
    tol: float = 1e-9,
    audit: bool = True,
) -> GeometrySet:
    """Random orbit samples of f in chart coordinates.

    Null-quadric samples go through patch_project and out-of-chart hits are
    dropped (and counted); other samples are reported as the a4-normalized
    coefficient triple with the full 5-vector kept in metadata.  Each kept
    point optionally carries a reclassification audit.
    """
    from .classify import classify  # local import: charts stay classifier-free

    if count < 1:
        raise ValueError("count must be positive")
    if f.is_zero():
        raise DomainError("cannot sample the orbit of the zero form")
    rng = random.Random(seed)
    on_quadric = (q_value(f) == 0) if f.is_exact() else (
        abs(float(q_value(f.unit_scaled()))) <= tol
    )
    chart_tol = max(tol, 1e-7)
    points, audits, fives = [], [], []
    dropped = 0
    uncertain = 0
    for _ in range(count):
        g = random_lie_vector(rng, radius).exp()
        h = _act(g, f)
        hf = h.unit_scaled()
        if abs(hf.a4) <= chart_tol:
            dropped += 1
            continue
        if on_quadric:
            try:
                points.append(patch_project(ProjectivePoint(hf), tol=chart_tol))
            except OutOfChartError:
                dropped += 1
                continue
        else:
            points.append(MinkPoint(hf.a3 / hf.a4, hf.a2 / hf.a4, hf.a1 / hf.a4))
            fives.append(hf.coeffs)
        if audit:
            try:
                audits.append(
                    classify(hf, mode="float", tol=tol, on_boundary="snap").stratum.value
                )
            except Exception:
                audits.append("uncertain")
                uncertain += 1
    meta = {
        "family": "orbit cloud",
        "seed": seed,
        "radius": radius,
        "requested": count,
        "kept": len(points),
        "dropped_out_of_chart": dropped,
        "audit_uncertain": uncertain,
        "on_quadric": on_quadric,
    }
    if fives:
        meta["coefficient_vectors"] = [tuple(map(float, c)) for c in fives]
    return GeometrySet(
        kind="cloud",
        points=points,
        metadata=meta,
        audits=audits if audit else [],
    )
