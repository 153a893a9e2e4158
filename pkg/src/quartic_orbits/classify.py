"""Orbit stratification of projective quartics under the Mobius action.

Every projective point falls in exactly one stratum, decided by its root
multiplicity pattern plus, for the two-simple-real-roots-and-a-pair pattern,
the sign of the invariant quadratic form.  Orbit dimension and induced
signature are always recomputed from tangent vectors and Gram matrices, then
cross-checked against the expected table; a disagreement raises instead of
trusting either side.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .action import (
    ELLIPTIC_GEN,
    HYPERBOLIC_GEN,
    INF,
    PARABOLIC_GEN,
    GroupElement,
    act,
    lie_act,
    random_lie_vector,
)
from .errors import (
    BoundaryUncertainError,
    DomainError,
    InternalConsistencyError,
)
from .forms import (
    ProjectivePoint,
    QuarticForm,
    Region,
    SignatureTriple,
    as_point,
    gram_signature,
    in_span,
    q_value,
    span_rank,
)
from .roots import (
    ConjugatePair,
    InfiniteRoot,
    RealRoot,
    RootMultiset,
    RootStructure,
    _map_pair_to_zero_inf,
    _normalize_pair_distinct,
    _transform_pair,
    canonical_cross_ratio,
    float_root_analysis,
    from_roots,
    hyp_distance,
    mobius_normalize,
    pair_cosh_distance,
    root_structure_exact,
    roots_of,
    theta_star_with_key,
)
from .scalars import exact_sqrt, is_exact


class Stratum(Enum):
    EIN_QUADRUPLE = "ein_quadruple"
    EIN_TRIPLE = "ein_triple"
    EIN_OPEN = "ein_open"
    ADS_GENERIC = "ads_generic"
    H_PAIR_EQUAL = "h_pair_equal"
    H_PAIR_DISTINCT = "h_pair_distinct"
    H_FOUR_REAL = "h_four_real"
    H_TWO_DOUBLE_REAL = "h_two_double_real"
    H_DOUBLE_REAL_TWO_SIMPLE = "h_double_real_two_simple"
    H_DOUBLE_REAL_PAIR = "h_double_real_pair"
    H_TWO_REAL_PAIR = "h_two_real_pair"


class InvariantKind(Enum):
    THETA_STAR = "theta_star"
    CROSS_RATIO = "cross_ratio"
    HYP_DISTANCE = "hyp_distance"
    NONE = "none"


@dataclass(frozen=True)
class Invariant:
    """Continuous orbit parameter; exact_key is a rational surrogate when available
    (cos^2 theta*, the cross-ratio itself, or cosh of the distance)."""

    kind: InvariantKind
    value: object = None
    exact_key: object = None


@dataclass(frozen=True)
class OrbitDescriptor:
    region: Region
    stratum: Stratum
    dim: int
    signature: SignatureTriple
    parameter: Invariant
    canonical_form: QuarticForm
    normalizer: GroupElement
    structure: RootStructure


#: expected (dimension, signature) per stratum; classification recomputes and
#: cross-checks, it never reads answers from this table.
#
# The four-real entry is (2,1,0), not Lorentzian: at the symmetric
# configuration with roots {-1, 0, 1, inf} the hyperbolic velocity
# -2(X^3 Y + X Y^3) is timelike (q = -2) and orthogonal to the parabolic and
# elliptic velocities, whose 2x2 Gram block has determinant -4 < 0.
EXPECTED_DIM_SIG = {
    Stratum.EIN_QUADRUPLE: (1, SignatureTriple(0, 0, 1)),
    Stratum.EIN_TRIPLE: (2, SignatureTriple(0, 1, 1)),
    Stratum.EIN_OPEN: (3, SignatureTriple(1, 2, 0)),
    Stratum.ADS_GENERIC: (3, SignatureTriple(1, 2, 0)),
    Stratum.H_PAIR_EQUAL: (2, SignatureTriple(2, 0, 0)),
    Stratum.H_PAIR_DISTINCT: (3, SignatureTriple(2, 1, 0)),
    Stratum.H_FOUR_REAL: (3, SignatureTriple(2, 1, 0)),
    Stratum.H_TWO_DOUBLE_REAL: (2, SignatureTriple(1, 1, 0)),
    Stratum.H_DOUBLE_REAL_TWO_SIMPLE: (3, SignatureTriple(1, 1, 1)),
    Stratum.H_DOUBLE_REAL_PAIR: (3, SignatureTriple(1, 1, 1)),
    Stratum.H_TWO_REAL_PAIR: (3, SignatureTriple(1, 2, 0)),
}

_STRUCTURE_STRATUM = {
    RootStructure.QUADRUPLE_REAL: Stratum.EIN_QUADRUPLE,
    RootStructure.TRIPLE_PLUS_SIMPLE: Stratum.EIN_TRIPLE,
    RootStructure.TWO_DOUBLE_REAL: Stratum.H_TWO_DOUBLE_REAL,
    RootStructure.DOUBLE_PLUS_TWO_SIMPLE: Stratum.H_DOUBLE_REAL_TWO_SIMPLE,
    RootStructure.DOUBLE_PLUS_PAIR: Stratum.H_DOUBLE_REAL_PAIR,
    RootStructure.FOUR_SIMPLE_REAL: Stratum.H_FOUR_REAL,
    RootStructure.TWO_DISTINCT_PAIRS: Stratum.H_PAIR_DISTINCT,
    RootStructure.DOUBLE_PAIR: Stratum.H_PAIR_EQUAL,
}

_REGION_OF_STRATUM = {
    Stratum.EIN_QUADRUPLE: Region.EINSTEIN,
    Stratum.EIN_TRIPLE: Region.EINSTEIN,
    Stratum.EIN_OPEN: Region.EINSTEIN,
    Stratum.ADS_GENERIC: Region.ADS,
}

FREE_STRATA = frozenset(
    {
        Stratum.EIN_OPEN,
        Stratum.ADS_GENERIC,
        Stratum.H_PAIR_DISTINCT,
        Stratum.H_FOUR_REAL,
        Stratum.H_DOUBLE_REAL_TWO_SIMPLE,
        Stratum.H_DOUBLE_REAL_PAIR,
        Stratum.H_TWO_REAL_PAIR,
    }
)


def region_of_stratum(stratum: Stratum) -> Region:
    return _REGION_OF_STRATUM.get(stratum, Region.H22)


def orbit_tangent_basis(f: QuarticForm):
    """Velocity vectors of the hyperbolic, parabolic, and elliptic flows at f."""
    if f.is_zero():
        raise DomainError("tangent vectors need a nonzero form")
    return (
        lie_act(HYPERBOLIC_GEN, f),
        lie_act(PARABOLIC_GEN, f),
        lie_act(ELLIPTIC_GEN, f),
    )


def orbit_signature(f: QuarticForm, tol: float = 1e-9):
    """(orbit dimension, induced signature) computed from the tangent span.

    The projective orbit dimension is rank(span + R f) - 1.  On the null
    quadric the conformal metric lives on the quotient by R f, so the span is
    quotiented whenever f itself is a tangent direction; off the quadric the
    span meets R f trivially and the raw Gram signature applies.
    """
    vectors = list(orbit_tangent_basis(f))
    dim = span_rank(vectors + [f], tol) - 1
    if f.is_exact():
        null = q_value(f) == 0
    else:
        null = abs(float(q_value(f.unit_scaled()))) <= tol
    f_tangent = in_span(f, vectors, tol)
    if null and f_tangent:
        sig = gram_signature(vectors, modulo=f, tol=tol)
    else:
        if not null and f_tangent:
            raise InternalConsistencyError(
                "a non-null point cannot lie in its own b-orthogonal tangent span"
            )
        sig = gram_signature(vectors, tol=tol)
    return dim, sig


def _stratum_and_data(f: QuarticForm, tol, on_boundary, cluster_delta):
    """(stratum, structure, roots-or-None, q) without signatures.

    In exact mode the multiplicity pattern alone decides everything except
    the two-simple-plus-pair split, so root locations are left lazy (None);
    callers that need them fetch roots_of(f).
    """
    if f.is_exact():
        structure = root_structure_exact(f)
        q = q_value(f)
        if structure is RootStructure.TWO_SIMPLE_PLUS_PAIR:
            if q == 0:
                stratum = Stratum.EIN_OPEN
            else:
                stratum = Stratum.ADS_GENERIC if q < 0 else Stratum.H_TWO_REAL_PAIR
        else:
            stratum = _STRUCTURE_STRATUM[structure]
            expected_region = region_of_stratum(stratum)
            if (expected_region is Region.EINSTEIN) != (q == 0):
                raise InternalConsistencyError(
                    f"root pattern {structure.value} disagrees with q = {q}"
                )
        return stratum, structure, None, q

    g = f.unit_scaled()
    rs, ambiguous = float_root_analysis(g, cluster_delta)
    if ambiguous:
        raise BoundaryUncertainError(
            "root multiplicities are ambiguous at float precision"
        )
    structure = rs.structure()
    q = q_value(g)
    if structure is RootStructure.TWO_SIMPLE_PLUS_PAIR:
        if abs(q) <= tol:
            if on_boundary == "snap":
                return Stratum.EIN_OPEN, structure, rs, q
            raise BoundaryUncertainError(
                f"|q| = {abs(q):.3e} is within tolerance of the null quadric"
            )
        stratum = Stratum.ADS_GENERIC if q < 0 else Stratum.H_TWO_REAL_PAIR
        return stratum, structure, rs, q
    stratum = _STRUCTURE_STRATUM[structure]
    if region_of_stratum(stratum) is Region.EINSTEIN:
        if abs(q) > 100 * tol:
            raise BoundaryUncertainError(
                "degenerate root pattern with q clearly nonzero"
            )
    elif q < -tol:
        raise BoundaryUncertainError("positive-region root pattern with q < 0")
    return stratum, structure, rs, q


_PARAMETRIZED = frozenset(
    {
        Stratum.EIN_OPEN,
        Stratum.ADS_GENERIC,
        Stratum.H_TWO_REAL_PAIR,
        Stratum.H_FOUR_REAL,
        Stratum.H_PAIR_DISTINCT,
    }
)


def _parameter_of(stratum: Stratum, f: QuarticForm, rs: RootMultiset | None) -> Invariant:
    if stratum not in _PARAMETRIZED:
        return Invariant(InvariantKind.NONE)
    if rs is None:
        rs = roots_of(f)
    if stratum in (Stratum.EIN_OPEN, Stratum.ADS_GENERIC, Stratum.H_TWO_REAL_PAIR):
        theta, cos2 = theta_star_with_key(f, rs)
        return Invariant(
            InvariantKind.THETA_STAR,
            theta,
            cos2 if is_exact(cos2) else None,
        )
    if stratum is Stratum.H_FOUR_REAL:
        value = canonical_cross_ratio(rs)
        return Invariant(
            InvariantKind.CROSS_RATIO, value, value if is_exact(value) else None
        )
    p1, p2 = rs.pair_entries()
    d = hyp_distance(p1.location(), p2.location())
    cosh = pair_cosh_distance(p1, p2)
    return Invariant(InvariantKind.HYP_DISTANCE, d, cosh if is_exact(cosh) else None)


def _theta_normalizer(f: QuarticForm, rs: RootMultiset):
    """Normalizer for the two-real-plus-pair strata: reals to {0, inf},
    the pair to the unit circle, folded into the first quadrant."""
    r0, r1 = (
        INF if isinstance(e, InfiniteRoot) else e.value for e in rs.real_entries()
    )
    g = _map_pair_to_zero_inf(r0, r1)
    pair = _transform_pair(g, rs.pair_entries()[0])
    m = exact_sqrt(pair.nrm) if is_exact(pair.nrm) else None
    if m is None:
        m = math.sqrt(float(pair.nrm))
    scale = GroupElement(1, 0, 0, m)
    g = scale @ g
    pair = _transform_pair(scale, pair)
    if float(pair.re) < 0:
        fold = GroupElement(0, -1, 1, 0)
        g = fold @ g
        pair = _transform_pair(fold, pair)
    canonical = from_roots(
        (RealRoot(0), InfiniteRoot(1), ConjugatePair(pair.re, pair.im, pair.nrm))
    )
    return g, canonical


def _canonical_data(stratum: Stratum, f: QuarticForm, rs: RootMultiset, parameter):
    """(normalizer, canonical_form) for each stratum."""
    if stratum is Stratum.EIN_QUADRUPLE:
        g, _ = mobius_normalize(f, "inf4")
        return g, QuarticForm(0, 0, 0, 0, 1)
    if stratum is Stratum.EIN_TRIPLE:
        g, _ = mobius_normalize(f, "inf3,0")
        return g, QuarticForm(0, 0, 0, 1, 0)
    if stratum is Stratum.H_TWO_DOUBLE_REAL:
        g, _ = mobius_normalize(f, "0,inf,double")
        return g, QuarticForm(0, 0, 1, 0, 0)
    if stratum is Stratum.H_DOUBLE_REAL_TWO_SIMPLE:
        g, _ = mobius_normalize(f, "inf2,0,1")
        return g, QuarticForm(0, 0, 1, -1, 0)
    if stratum is Stratum.H_DOUBLE_REAL_PAIR:
        g, _ = mobius_normalize(f, "inf2,i")
        return g, QuarticForm(0, 0, 1, 0, 1)
    if stratum is Stratum.H_PAIR_EQUAL:
        g, _ = mobius_normalize(f, "i2")
        return g, QuarticForm(1, 0, 2, 0, 1)
    if stratum is Stratum.H_PAIR_DISTINCT:
        g = _normalize_pair_distinct(rs)
        r = float(_transform_pair(g, rs.pair_entries()[1]).im)
        if abs(r - 1.0) < 1e-12:  # the first pair is the one that moved to r*i
            r = float(_transform_pair(g, rs.pair_entries()[0]).im)
        canonical = from_roots(
            (ConjugatePair(0, 1, 1), ConjugatePair(0.0, r, r * r))
        )
        return g, canonical
    if stratum is Stratum.H_FOUR_REAL:
        g, _ = mobius_normalize(f, "0,1,r,inf")
        r = parameter.value
        canonical = from_roots(
            (RealRoot(0), RealRoot(1), RealRoot(r), InfiniteRoot(1))
        )
        return g, canonical
    return _theta_normalizer(f, rs)


def classify(
    p,
    mode: str = "auto",
    tol: float = 1e-9,
    on_boundary: str = "raise",
    cluster_delta: float = 1e-7,
    check: bool = True,
) -> OrbitDescriptor:
    """Full orbit descriptor of a projective point.

    ``mode`` is "exact", "float", or "auto" (exact iff the lift is rational).
    In float mode a point within ``tol`` of the null quadric raises
    BoundaryUncertainError unless ``on_boundary="snap"`` maps it onto the
    quadric; refusing is the default because snapping silently corrupts
    stratum statistics.
    """
    point = as_point(p)
    f = point.rep
    if mode == "float" and f.is_exact():
        f = f.as_floats()
    elif mode == "exact" and not f.is_exact():
        raise DomainError("exact mode needs rational coefficients")
    elif mode not in ("auto", "exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")

    stratum, structure, rs, _ = _stratum_and_data(f, tol, on_boundary, cluster_delta)
    if rs is None:
        rs = roots_of(f)
    dim, sig = orbit_signature(f, tol)
    if check:
        expected = EXPECTED_DIM_SIG[stratum]
        if (dim, sig) != expected:
            raise InternalConsistencyError(
                f"computed (dim, signature) {(dim, sig)} for {stratum} "
                f"do not match the expected {expected}"
            )
    parameter = _parameter_of(stratum, f, rs)
    normalizer, canonical = _canonical_data(stratum, f, rs, parameter)
    if check:
        image = ProjectivePoint(act(normalizer, f))
        ctol = 0.0 if (image.is_exact() and canonical.is_exact()) else 1e-6
        if not image.proportional_to(canonical, ctol):
            raise InternalConsistencyError(
                "normalizer does not carry the input to its canonical form"
            )
    return OrbitDescriptor(
        region=region_of_stratum(stratum),
        stratum=stratum,
        dim=dim,
        signature=sig,
        parameter=parameter,
        canonical_form=canonical,
        normalizer=normalizer,
        structure=structure,
    )


def _parameters_agree(a: Invariant, b: Invariant, tol) -> bool:
    if a.kind is not b.kind:
        return False
    if a.kind is InvariantKind.NONE:
        return True
    if a.exact_key is not None and b.exact_key is not None:
        return a.exact_key == b.exact_key
    return abs(float(a.value) - float(b.value)) <= tol


def same_orbit(p1, p2, tol: float = 1e-9) -> bool:
    """True when both points carry the same stratum and orbit parameter."""
    f1, f2 = as_point(p1).rep, as_point(p2).rep
    s1, _, rs1, _ = _stratum_and_data(f1, tol, "raise", 1e-7)
    s2, _, rs2, _ = _stratum_and_data(f2, tol, "raise", 1e-7)
    if s1 is not s2:
        return False
    return _parameters_agree(
        _parameter_of(s1, f1, rs1), _parameter_of(s2, f2, rs2), tol
    )


class ProbeResult(NamedTuple):
    ok: bool
    witness: GroupElement | None

    def __bool__(self) -> bool:  # noqa: D105 - truthiness is the verdict
        return self.ok


def free_action_probe(
    p,
    trials: int = 1000,
    seed=0,
    radius: float = 1.0,
    tol: float = 1e-9,
    candidates=(),
) -> ProbeResult:
    """Look for a nontrivial group element fixing the point.

    Samples ``trials`` random elements (plus any explicit ``candidates``) and
    returns ok=False with the offending element if one fixes the point
    projectively within ``tol``.
    """
    point = as_point(p)
    f = point.rep
    rng = random.Random(seed)

    def stream():
        yield from candidates
        for _ in range(trials):
            yield random_lie_vector(rng, radius).exp()

    for g in stream():
        if g.is_identity(1e-12):
            continue
        if ProjectivePoint(act(g, f)).proportional_to(point, tol):
            return ProbeResult(False, g)
    return ProbeResult(True, None)
