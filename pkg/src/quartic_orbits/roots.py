"""Root structure of real binary quartics on the projective line over C.

Roots live on the complex projective line: real numbers, the point at
infinity (multiplicity = 4 minus the degree of f(x, 1)), and conjugate pairs
stored by their upper-half-plane representative.  Multiplicity patterns are
decided exactly over the rationals by squarefree decomposition and Sturm
counts; locations are refined numerically and re-verified against the exact
coefficients whenever they are rational.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .action import INF, GroupElement, _hmul, act
from .errors import (
    DomainError,
    InternalConsistencyError,
    StructureMismatchError,
    ZeroFormError,
)
from .forms import QuarticForm, q_value
from .scalars import exact_sqrt, is_exact, rationalize

_RATIONALIZE_DEN = 10**8


# ---------------------------------------------------------------------------
# exact univariate helpers (dense descending coefficient lists over Z;
# rational inputs are cleared to primitive integer polynomials, which makes
# the gcd/Sturm chains an order of magnitude faster than Fraction arithmetic)
# ---------------------------------------------------------------------------

def _trim(p):
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def _degree(p):
    return len(p) - 1


def _int_clear(p):
    """Rational coefficient list -> primitive integer list (same roots)."""
    if all(type(c) is int for c in p):
        ints = _trim(list(p))
    else:
        fracs = [c if isinstance(c, Fraction) else Fraction(c) for c in p]
        den = 1
        for c in fracs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = _trim([int(c.numerator * (den // c.denominator)) for c in fracs])
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _int_deriv(p):
    d = _degree(p)
    return [c * (d - i) for i, c in enumerate(p[:-1])]


def _int_primitive(p):
    g = 0
    for c in p:
        g = math.gcd(g, c)
    return [c // g for c in p] if g > 1 else list(p)


def _int_rem_scaled(p, q):
    """rem(p, q) times a positive integer constant."""
    r = _trim(list(p))
    lc = q[0]
    steps = 0
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        head = r[0]
        qq = list(q[1:]) + [0] * k
        r = _trim([lc * a - head * b for a, b in zip(r[1:], qq)])
        steps += 1
    if lc < 0 and steps % 2 == 1:
        r = [-a for a in r]
    return r


def _int_gcd(p, q):
    a, b = _int_primitive(_trim(list(p))), _int_primitive(_trim(list(q)))
    while b:
        a, b = b, _int_primitive(_int_rem_scaled(a, b))
    if a and a[0] < 0:
        a = [-c for c in a]
    return a


def _int_divexact(p, q):
    """Quotient p // q assuming exact divisibility over Z (Gauss)."""
    r = list(p)
    m = len(q)
    out = []
    while len(r) >= m:
        c = r[0] // q[0]
        out.append(c)
        r = [a - c * b for a, b in zip(r[1:m], q[1:])] + r[m:]
    return out


def _int_divides(p, q) -> bool:
    """Does the primitive polynomial q divide p exactly?"""
    return not _int_rem_scaled(p, q)


def _int_eval_rational(p, num: int, den: int) -> int:
    """p(num/den) * den^deg(p), an integer vanishing iff num/den is a root."""
    acc = 0
    dpow = 1
    for c in p:
        acc = acc * num + c * dpow
        dpow *= den
    return acc


def squarefree_decomposition(p):
    """[(primitive integer factor, multiplicity)] by repeated-gcd descent.

    Factors are squarefree, pairwise coprime, with positive leading
    coefficient; p may have rational coefficients.
    """
    p = _int_clear(p)
    if not p:
        raise ZeroDivisionError("zero polynomial")
    if p[0] < 0:
        p = [-c for c in p]
    if _degree(p) == 0:
        return []
    gs = [p]
    while _degree(gs[-1]) > 0:
        gs.append(_int_gcd(gs[-1], _int_deriv(gs[-1])))
    bs = [_int_divexact(gs[i], gs[i + 1]) for i in range(len(gs) - 1)]
    out = []
    for i, b in enumerate(bs):
        nxt = bs[i + 1] if i + 1 < len(bs) else [1]
        c = _int_divexact(b, nxt)
        if _degree(c) > 0:
            if c[0] < 0:
                c = [-x for x in c]
            out.append((_int_primitive(c), i + 1))
    return out


def sturm_real_root_count(p) -> int:
    """Number of distinct real roots of a squarefree rational polynomial."""
    p = _int_clear(p)
    if _degree(p) <= 0:
        return 0
    chain = [p, _trim(_int_deriv(p))]
    while chain[-1] and _degree(chain[-1]) > 0:
        r = _int_rem_scaled(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_int_primitive([-c for c in r]))

    def variations(signs):
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    at_pinf = [(1 if q[0] > 0 else -1) for q in chain if q]
    at_minf = [
        (1 if q[0] > 0 else -1) * (1 if _degree(q) % 2 == 0 else -1)
        for q in chain
        if q
    ]
    return variations(at_minf) - variations(at_pinf)


# ---------------------------------------------------------------------------
# root entries and multisets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealRoot:
    value: object
    mult: int = 1


@dataclass(frozen=True)
class InfiniteRoot:
    mult: int = 1


@dataclass(frozen=True)
class ConjugatePair:
    """Upper-half-plane representative of a conjugate pair of roots.

    ``nrm`` is the squared modulus re^2 + im^2; it is kept separately because
    it (with re) stays rational under rational Mobius maps even when im does
    not.  Exactly one of ``im``/``nrm`` may be omitted.
    """

    re: object
    im: object = None
    nrm: object = None
    mult: int = 1

    def __post_init__(self):
        if self.im is None:
            if self.nrm is None:
                raise DomainError("a pair needs im or nrm")
            im2 = self.nrm - self.re * self.re
            if not im2 > 0:
                raise DomainError("nrm must exceed re^2 for a non-real pair")
            im = exact_sqrt(im2)
            object.__setattr__(
                self, "im", im if im is not None else math.sqrt(float(im2))
            )
        if not float(self.im) > 0:
            raise DomainError("pair representative must be in the open upper half-plane")
        if self.nrm is None:
            object.__setattr__(self, "nrm", self.re * self.re + self.im * self.im)

    def location(self) -> complex:
        return complex(float(self.re), float(self.im))

    def is_exact(self) -> bool:
        return is_exact(self.re) and is_exact(self.nrm)


def _entry_key(e):
    if isinstance(e, RealRoot):
        return (0, float(e.value), 0.0)
    if isinstance(e, InfiniteRoot):
        return (1, 0.0, 0.0)
    return (2, float(e.re), float(e.im))


class RootStructure(Enum):
    """Multiplicity pattern of the four roots, with real/pair tags."""

    QUADRUPLE_REAL = "4R"
    TRIPLE_PLUS_SIMPLE = "3R+1R"
    TWO_DOUBLE_REAL = "2R+2R"
    DOUBLE_PLUS_TWO_SIMPLE = "2R+1R+1R"
    DOUBLE_PLUS_PAIR = "2R+pair"
    TWO_SIMPLE_PLUS_PAIR = "1R+1R+pair"
    FOUR_SIMPLE_REAL = "1R+1R+1R+1R"
    TWO_DISTINCT_PAIRS = "pair+pair"
    DOUBLE_PAIR = "pair^2"


_PATTERN_TABLE = {
    ((4,), ()): RootStructure.QUADRUPLE_REAL,
    ((1, 3), ()): RootStructure.TRIPLE_PLUS_SIMPLE,
    ((2, 2), ()): RootStructure.TWO_DOUBLE_REAL,
    ((1, 1, 2), ()): RootStructure.DOUBLE_PLUS_TWO_SIMPLE,
    ((2,), (1,)): RootStructure.DOUBLE_PLUS_PAIR,
    ((1, 1), (1,)): RootStructure.TWO_SIMPLE_PLUS_PAIR,
    ((1, 1, 1, 1), ()): RootStructure.FOUR_SIMPLE_REAL,
    ((), (1, 1)): RootStructure.TWO_DISTINCT_PAIRS,
    ((), (2,)): RootStructure.DOUBLE_PAIR,
}


def _pattern_of(real_mults, pair_mults) -> RootStructure:
    key = (tuple(sorted(real_mults)), tuple(sorted(pair_mults)))
    try:
        return _PATTERN_TABLE[key]
    except KeyError:
        raise StructureMismatchError(
            f"impossible root pattern for a real quartic: {key}"
        ) from None


@dataclass(frozen=True)
class RootMultiset:
    """Conjugation-closed multiset of the four roots."""

    entries: tuple = field(default=())

    def __post_init__(self):
        entries = tuple(sorted(self.entries, key=_entry_key))
        object.__setattr__(self, "entries", entries)
        total = sum(
            e.mult * (2 if isinstance(e, ConjugatePair) else 1) for e in entries
        )
        if total != 4:
            raise DomainError(f"root multiplicities must sum to 4, got {total}")

    def real_entries(self):
        return [e for e in self.entries if isinstance(e, (RealRoot, InfiniteRoot))]

    def pair_entries(self):
        return [e for e in self.entries if isinstance(e, ConjugatePair)]

    def structure(self) -> RootStructure:
        real_mults = [e.mult for e in self.real_entries()]
        pair_mults = [e.mult for e in self.pair_entries()]
        return _pattern_of(real_mults, pair_mults)

    def is_exact(self) -> bool:
        for e in self.entries:
            if isinstance(e, RealRoot) and not is_exact(e.value):
                return False
            if isinstance(e, ConjugatePair) and not e.is_exact():
                return False
        return True

    def approx_equal(self, other: "RootMultiset", tol: float = 1e-7) -> bool:
        if len(self.entries) != len(other.entries):
            return False
        for a, b in zip(self.entries, other.entries):
            if type(a) is not type(b) or a.mult != b.mult:
                return False
            if isinstance(a, RealRoot):
                if abs(float(a.value) - float(b.value)) > tol * max(
                    1.0, abs(float(a.value))
                ):
                    return False
            elif isinstance(a, ConjugatePair):
                da = abs(a.location() - b.location())
                if da > tol * max(1.0, abs(a.location())):
                    return False
        return True


# ---------------------------------------------------------------------------
# forms <-> roots
# ---------------------------------------------------------------------------

def from_roots(roots) -> QuarticForm:
    """Quartic with the given roots (product of linear/quadratic factors)."""
    entries = roots.entries if isinstance(roots, RootMultiset) else tuple(roots)
    RootMultiset(entries)  # validates total multiplicity
    poly = [1]
    for e in entries:
        if isinstance(e, RealRoot):
            factor = [1, -e.value]
        elif isinstance(e, InfiniteRoot):
            factor = [0, 1]
        else:
            factor = [1, -2 * e.re, e.nrm]
        for _ in range(e.mult):
            poly = _hmul(poly, factor)
    return QuarticForm(*poly)


def _finite_part(f: QuarticForm):
    """(descending coefficients of f(x,1), multiplicity at infinity)."""
    if f.is_zero():
        raise ZeroFormError("the zero form has no roots")
    coeffs = list(f.coeffs)
    if f.is_exact():
        p = _trim(coeffs)
    else:
        scale = max(abs(float(c)) for c in coeffs)
        i = 0
        while i < len(coeffs) and abs(float(coeffs[i])) <= 1e-12 * scale:
            i += 1
        p = coeffs[i:]
    return p, 4 - _degree(p) if p else 4


def root_structure_exact(f: QuarticForm) -> RootStructure:
    """Multiplicity pattern via squarefree decomposition and Sturm counts."""
    if not f.is_exact():
        raise DomainError("exact structure requires rational coefficients")
    p, m_inf = _finite_part(f)
    real_mults = [m_inf] if m_inf > 0 else []
    pair_mults = []
    if _degree(p) > 0:
        for factor, mult in squarefree_decomposition(p):
            n_real = sturm_real_root_count(factor)
            real_mults.extend([mult] * n_real)
            pair_mults.extend([mult] * ((_degree(factor) - n_real) // 2))
    return _pattern_of(real_mults, pair_mults)


def _exact_quadratic_roots(q):
    """Entries for a squarefree rational quadratic (exact where possible)."""
    a, b, c = (Fraction(x) for x in q)
    disc = b * b - 4 * a * c
    center = -b / (2 * a)
    if disc > 0:
        s = exact_sqrt(disc)
        if s is not None:
            r1, r2 = (-b - s) / (2 * a), (-b + s) / (2 * a)
            return [("real", r1), ("real", r2)]
        sf = math.sqrt(float(disc))
        return [
            ("real", float(center) - sf / (2 * float(a))),
            ("real", float(center) + sf / (2 * float(a))),
        ]
    nrm = c / a
    im = exact_sqrt(nrm - center * center)
    if im is None:
        im = math.sqrt(float(nrm - center * center))
    return [("pair", (center, im, nrm))]


def _newton_polish(coeffs, z, iters: int = 8):
    """Refine a simple root of the float polynomial; companion-matrix output
    can be off by ~1e-6 on ill-conditioned quartics."""
    for _ in range(iters):
        p, dp = 0.0 + 0.0j, 0.0 + 0.0j
        for c in coeffs:
            dp = dp * z + p
            p = p * z + c
        if dp == 0:
            return z
        step = p / dp
        z = z - step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return z


def _try_rational(x: float):
    for bound in (10**6, _RATIONALIZE_DEN):
        yield rationalize(x, bound)


def _double_precision_roots(q):
    qf = [float(c) for c in q]
    return [_newton_polish(qf, z) for z in np.roots(qf)]


def _high_precision_roots(q):
    """Clustered roots defeat double precision; redo with 50-digit arithmetic."""
    from mpmath import mp, mpf, polyroots

    with mp.workdps(50):
        rts = polyroots([mpf(c) for c in q], maxsteps=100, extraprec=80)
        return [complex(r) for r in rts]


def _extract_factor_roots(q, n_real, approx):
    approx = np.asarray(approx, dtype=complex)
    order = np.argsort(np.abs(approx.imag), kind="stable")
    real_like = sorted(approx[order[:n_real]].real.tolist())
    pair_like = [z for z in approx[order[n_real:]] if z.imag > 0]

    out = []
    inexact = 0
    remaining = list(q)
    for x in real_like:
        for cand in _try_rational(x):
            if _int_eval_rational(remaining, cand.numerator, cand.denominator) == 0:
                out.append(("real", cand))
                remaining = _int_divexact(
                    remaining, [cand.denominator, -cand.numerator]
                )
                break
        else:
            out.append(("real", float(x)))
            inexact += 1
    if _degree(remaining) == 2 and len(pair_like) * 2 == _degree(remaining):
        quad = _exact_quadratic_roots(remaining)
        return out + quad, inexact
    for z in sorted(pair_like, key=lambda w: (w.real, w.imag)):
        found = False
        for re_c, nrm_c in zip(_try_rational(z.real), _try_rational(abs(z) ** 2)):
            quad = _int_clear([1, -2 * re_c, nrm_c])
            if _degree(quad) == 2 and _int_divides(q, quad):
                im = exact_sqrt(nrm_c - re_c * re_c)
                if im is None:
                    im = math.sqrt(float(nrm_c - re_c * re_c))
                out.append(("pair", (re_c, im, nrm_c)))
                found = True
                break
        if not found:
            out.append(("pair", (float(z.real), float(z.imag), float(abs(z)) ** 2)))
            inexact += 1
    return out, inexact


def _squarefree_factor_roots(q, n_real):
    """Root locations of a squarefree rational factor, exact when verifiable."""
    d = _degree(q)
    if d == 1:
        return [("real", -Fraction(q[1]) / Fraction(q[0]))]
    if d == 2:
        return _exact_quadratic_roots(q)
    out, inexact = _extract_factor_roots(q, n_real, _double_precision_roots(q))
    if inexact:
        out, _ = _extract_factor_roots(q, n_real, _high_precision_roots(q))
    return out


def _roots_exact(f: QuarticForm) -> RootMultiset:
    p, m_inf = _finite_part(f)
    entries = []
    if m_inf > 0:
        entries.append(InfiniteRoot(mult=m_inf))
    if _degree(p) > 0:
        for factor, mult in squarefree_decomposition(p):
            n_real = sturm_real_root_count(factor)
            for kind, data in _squarefree_factor_roots(factor, n_real):
                if kind == "real":
                    entries.append(RealRoot(data, mult))
                else:
                    re, im, nrm = data
                    entries.append(ConjugatePair(re, im, nrm, mult))
    return RootMultiset(tuple(entries))


def _cluster_indices(points, delta):
    """Union-find clustering with a relative distance threshold."""
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            thr = delta * max(1.0, abs(points[i]), abs(points[j]))
            if abs(points[i] - points[j]) <= thr:
                pi, pj = find(i), find(j)
                if pi != pj:
                    parent[pi] = pj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def float_root_analysis(f: QuarticForm, delta: float = 1e-7):
    """(RootMultiset, ambiguous) for a float quartic, by cluster analysis.

    ``ambiguous`` is set when distinct clusters sit inside the gray zone just
    outside the merge threshold, i.e. when the multiplicity pattern is not
    trustworthy at this precision.
    """
    g = f.unit_scaled()
    p, m_inf = _finite_part(g)
    entries = []
    if m_inf > 0:
        entries.append(InfiniteRoot(mult=m_inf))
    ambiguous = False
    if _degree(p) > 0:
        pts = np.roots([float(c) for c in p]).tolist()
        clusters = _cluster_indices(pts, delta)
        centers = []
        for idx in clusters:
            z = sum(pts[i] for i in idx) / len(idx)
            centers.append((z, len(idx)))
        for (z1, _), (z2, _) in _all_pairs(centers):
            gap = abs(z1 - z2)
            if gap < 50 * delta * max(1.0, abs(z1), abs(z2)):
                ambiguous = True
        used = [False] * len(centers)
        for i, (z, mult) in enumerate(centers):
            if used[i]:
                continue
            if abs(z.imag) <= delta * max(1.0, abs(z)):
                entries.append(RealRoot(float(z.real), mult))
                used[i] = True
            elif z.imag > 0:
                used[i] = True
                for j, (w, wm) in enumerate(centers):
                    if not used[j] and w.imag < 0 and wm == mult:
                        if abs(w.conjugate() - z) <= 10 * delta * max(1.0, abs(z)):
                            used[j] = True
                            break
                entries.append(
                    ConjugatePair(float(z.real), float(abs(z.imag)), None, mult)
                )
    try:
        rs = RootMultiset(tuple(entries))
    except DomainError:
        # conjugate clusters merged asymmetrically; flag instead of guessing
        raise StructureMismatchError(
            "could not form a conjugation-closed root multiset at this precision"
        )
    return rs, ambiguous


def _all_pairs(items):
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            yield items[i], items[j]


def roots_of(f: QuarticForm, delta: float = 1e-7) -> RootMultiset:
    """Roots of f on the projective line, with multiplicity at infinity."""
    if f.is_zero():
        raise ZeroFormError("the zero form has no roots")
    if f.is_exact():
        return _roots_exact(f)
    rs, _ = float_root_analysis(f, delta)
    return rs


# ---------------------------------------------------------------------------
# Mobius maps on roots
# ---------------------------------------------------------------------------

def _transform_pair(g: GroupElement, e: ConjugatePair) -> ConjugatePair:
    a, b, c, d = g.entries()
    den = c * c * e.nrm + 2 * c * d * e.re + d * d
    re2 = (a * c * e.nrm + (a * d + b * c) * e.re + b * d) / den
    nrm2 = (a * a * e.nrm + 2 * a * b * e.re + b * b) / den
    im2 = g.det() * e.im / den
    return ConjugatePair(re2, im2, nrm2, e.mult)


def transform_roots(g: GroupElement, rs: RootMultiset) -> RootMultiset:
    """Image of a root multiset under the Mobius map of g (exactness-preserving)."""
    entries = []
    for e in rs.entries:
        if isinstance(e, ConjugatePair):
            entries.append(_transform_pair(g, e))
        else:
            x = INF if isinstance(e, InfiniteRoot) else e.value
            img = g.mobius(x)
            entries.append(
                InfiniteRoot(e.mult) if img is INF else RealRoot(img, e.mult)
            )
    return RootMultiset(tuple(entries))


def _map_pair_to_zero_inf(z0, zinf) -> GroupElement:
    """Orientation-preserving Mobius map sending z0 -> 0 and zinf -> infinity."""
    if zinf is INF:
        return GroupElement(1, -z0, 0, 1)
    if z0 is INF:
        return GroupElement(0, 1, -1, zinf)
    if zinf > z0:
        return GroupElement(1, -z0, -1, zinf)
    return GroupElement(-1, z0, -1, zinf)


def _three_point_map(p0, p1, pinf) -> GroupElement | None:
    """Mobius map p0 -> 0, p1 -> 1, pinf -> infinity, or None if orientation fails."""
    if p0 is INF:
        a, b, c, d = 0, p1 - pinf, 1, -pinf
    elif p1 is INF:
        a, b, c, d = 1, -p0, 1, -pinf
    elif pinf is INF:
        a, b, c, d = 1, -p0, 0, p1 - p0
    else:
        a, b = p1 - pinf, -p0 * (p1 - pinf)
        c, d = p1 - p0, -pinf * (p1 - p0)
    if a * d - b * c <= 0:
        return None
    return GroupElement(a, b, c, d)


_TARGET_ALIASES = {
    "inf4": "inf4",
    "inf3,0": "inf3,0",
    "0,inf,z": "0,inf,z",
    "0,1,r,inf": "0,1,r,inf",
    "0,inf,double": "0,inf,double",
    "inf2,0,1": "inf2,0,1",
    "inf2,i": "inf2,i",
    "i2": "i2",
    "i,ri": "i,ri",
}


def _canonical_target(tag: str) -> str:
    tag = tag.replace("∞", "inf").replace(" ", "")
    if tag not in _TARGET_ALIASES:
        raise ValueError(f"unknown canonical-form target {tag!r}")
    return tag


def _real_locations(rs: RootMultiset):
    return [INF if isinstance(e, InfiniteRoot) else e.value for e in rs.real_entries()]


def mobius_normalize(f: QuarticForm, target: str):
    """Move f to the canonical root configuration named by ``target``.

    Returns (g, act(g, f)); the root structure must admit the target.
    """
    tag = _canonical_target(target)
    rs = roots_of(f)
    structure = rs.structure()

    if tag == "inf4":
        if structure is not RootStructure.QUADRUPLE_REAL:
            raise StructureMismatchError("target needs a quadruple root")
        (entry,) = rs.real_entries()
        if isinstance(entry, InfiniteRoot):
            g = GroupElement.identity()
        else:
            g = GroupElement(0, 1, -1, entry.value)
    elif tag == "inf3,0":
        if structure is not RootStructure.TRIPLE_PLUS_SIMPLE:
            raise StructureMismatchError("target needs a triple plus a simple real root")
        locs = {e.mult: (INF if isinstance(e, InfiniteRoot) else e.value)
                for e in rs.real_entries()}
        triple, simple = locs[3], locs[1]
        if triple is INF:
            g = GroupElement(1, -simple, 0, 1)
        elif simple is INF:
            g = GroupElement(0, 1, -1, triple)
        else:
            g = _map_pair_to_zero_inf(simple, triple)
    elif tag == "0,inf,z":
        if structure is not RootStructure.TWO_SIMPLE_PLUS_PAIR:
            raise StructureMismatchError("target needs two simple real roots and a pair")
        r0, r1 = _real_locations(rs)
        g = _map_pair_to_zero_inf(r0, r1)
    elif tag == "0,inf,double":
        if structure is not RootStructure.TWO_DOUBLE_REAL:
            raise StructureMismatchError("target needs two double real roots")
        d0, d1 = _real_locations(rs)
        g = _map_pair_to_zero_inf(d0, d1)
    elif tag == "inf2,0,1":
        if structure is not RootStructure.DOUBLE_PLUS_TWO_SIMPLE:
            raise StructureMismatchError("target needs a double and two simple real roots")
        double = next(
            (INF if isinstance(e, InfiniteRoot) else e.value)
            for e in rs.real_entries() if e.mult == 2
        )
        simples = [
            (INF if isinstance(e, InfiniteRoot) else e.value)
            for e in rs.real_entries() if e.mult == 1
        ]
        g = _three_point_map(simples[0], simples[1], double)
        if g is None:
            g = _three_point_map(simples[1], simples[0], double)
        if g is None:
            raise StructureMismatchError("no orientation-preserving normalization exists")
    elif tag == "inf2,i":
        if structure is not RootStructure.DOUBLE_PLUS_PAIR:
            raise StructureMismatchError("target needs a double real root and a pair")
        (entry,) = [e for e in rs.real_entries() if e.mult == 2]
        if isinstance(entry, InfiniteRoot):
            g1 = GroupElement.identity()
        else:
            g1 = GroupElement(0, 1, -1, entry.value)
        pair = transform_roots(g1, rs).pair_entries()[0]
        g = GroupElement(1, -pair.re, 0, pair.im) @ g1
    elif tag == "i2":
        if structure is not RootStructure.DOUBLE_PAIR:
            raise StructureMismatchError("target needs a doubled conjugate pair")
        pair = rs.pair_entries()[0]
        g = GroupElement(1, -pair.re, 0, pair.im)
    elif tag == "i,ri":
        if structure is not RootStructure.TWO_DISTINCT_PAIRS:
            raise StructureMismatchError("target needs two distinct conjugate pairs")
        g = _normalize_pair_distinct(rs)
    elif tag == "0,1,r,inf":
        if structure is not RootStructure.FOUR_SIMPLE_REAL:
            raise StructureMismatchError("target needs four distinct real roots")
        g = _normalize_four_real(rs)
    else:  # pragma: no cover
        raise AssertionError(tag)

    return g, act(g, f)


def _normalize_pair_distinct(rs: RootMultiset) -> GroupElement:
    p1, p2 = rs.pair_entries()
    g1 = GroupElement(1, -p1.re, 0, p1.im)
    wz = _transform_pair(g1, p2).location()
    hat = (wz - 1j) / (wz + 1j)  # disk coordinate centered at i
    t = cmath.phase(hat) / 2.0   # the rotation fixing i turns the disk by -2t
    g2 = GroupElement(math.cos(t), -math.sin(t), math.sin(t), math.cos(t))
    g = g2 @ g1
    # fold r <-> 1/r so the second pair lands at r*i with r > 1
    if float(_transform_pair(g, p2).im) < 1.0:
        g = GroupElement(0, -1, 1, 0) @ g
    return g


def _normalize_four_real(rs: RootMultiset) -> GroupElement:
    locs = _real_locations(rs)
    target = canonical_cross_ratio(rs)
    exact = all(x is INF or is_exact(x) for x in locs) and is_exact(target)
    for p0, p1, p2, pinf in itertools.permutations(locs):
        g = _three_point_map(p0, p1, pinf)
        if g is None:
            continue
        img = g.mobius(p2)
        if img is INF:
            continue
        if exact:
            if img == target:
                return g
        elif abs(float(img) - float(target)) <= 1e-9 * max(1.0, abs(float(target))):
            return g
    raise StructureMismatchError("no orientation-preserving normalization found")


# ---------------------------------------------------------------------------
# continuous invariants
# ---------------------------------------------------------------------------

def _cross_ratio_one_ordering(a, b, c, d):
    """(a-c)(b-d) / ((a-d)(b-c)) with infinity handled by cancellation."""
    num, den = 1, 1
    for x, y, top in ((a, c, True), (b, d, True), (a, d, False), (b, c, False)):
        if x is INF or y is INF:
            continue
        if top:
            num = num * (x - y)
        else:
            den = den * (x - y)
    # each infinite point knocks out one numerator and one denominator factor
    if is_exact(num) and is_exact(den):
        return Fraction(num) / Fraction(den)
    return num / den


def canonical_cross_ratio(rs: RootMultiset):
    """Cross-ratio representative in (0, 1/2] of four distinct real roots."""
    reals = rs.real_entries()
    if len(reals) != 4 or any(e.mult != 1 for e in reals) or rs.pair_entries():
        raise StructureMismatchError("needs four distinct real roots (infinity allowed)")
    a, b, c, d = _real_locations(rs)
    lam = _cross_ratio_one_ordering(a, b, c, d)
    one = Fraction(1) if is_exact(lam) else 1.0
    candidates = {lam, one - lam, one / lam, one / (one - lam),
                  (lam - one) / lam, lam / (lam - one)}
    in_unit = [v for v in candidates if 0 < v < 1]
    return min(in_unit)


def theta_star(f: QuarticForm):
    """Folded angle of the pair root after sending the two real roots to {0, inf}.

    Returns min(theta, pi - theta) in (0, pi/2]; only this fold survives the
    residual freedom of the normalization.
    """
    theta, _ = theta_star_with_key(f)
    return theta


def theta_star_with_key(f: QuarticForm, rs: RootMultiset | None = None):
    """(theta_star, cos^2 theta_star) -- the key stays rational for exact input."""
    if rs is None:
        rs = roots_of(f)
    if rs.structure() is not RootStructure.TWO_SIMPLE_PLUS_PAIR:
        raise StructureMismatchError("needs two simple real roots and one pair")
    r0, r1 = _real_locations(rs)
    g = _map_pair_to_zero_inf(r0, r1)
    pair = transform_roots(g, rs).pair_entries()[0]
    theta = math.atan2(float(pair.im), float(pair.re))
    theta = min(theta, math.pi - theta)
    cos2 = pair.re * pair.re / pair.nrm
    _check_theta_region(f, cos2)
    return theta, cos2


def _check_theta_region(f, cos2):
    q = q_value(f)
    if is_exact(q) and is_exact(cos2):
        lhs = 1 if q > 0 else (-1 if q < 0 else 0)
        rhs_val = cos2 - Fraction(3, 4)
        rhs = 1 if rhs_val > 0 else (-1 if rhs_val < 0 else 0)
        if lhs != rhs:
            raise InternalConsistencyError("sign(q) disagrees with the angle criterion")
    else:
        qf = float(q_value(f.unit_scaled() if not f.is_exact() else f))
        rhs_val = float(cos2) - 0.75
        if abs(qf) > 1e-9 and abs(rhs_val) > 1e-9 and (qf > 0) != (rhs_val > 0):
            raise InternalConsistencyError("sign(q) disagrees with the angle criterion")


def hyp_distance(z1, z2) -> float:
    """Hyperbolic distance between two points of the upper half-plane."""
    z1, z2 = complex(z1), complex(z2)
    if z1.imag <= 0 or z2.imag <= 0:
        raise DomainError("points must lie in the open upper half-plane")
    d2 = abs(z1 - z2) ** 2
    return math.acosh(1.0 + d2 / (2.0 * z1.imag * z2.imag))


def pair_cosh_distance(p1: ConjugatePair, p2: ConjugatePair):
    """cosh of the hyperbolic distance; rational whenever Im(z1)*Im(z2) is."""
    y2prod = (p1.nrm - p1.re * p1.re) * (p2.nrm - p2.re * p2.re)
    s = exact_sqrt(y2prod) if is_exact(y2prod) else None
    if s is None:
        s = math.sqrt(float(y2prod))
    return 1 + (p1.nrm + p2.nrm - 2 * p1.re * p2.re - 2 * s) / (2 * s)


def _ray_direction(z: complex, x) -> complex:
    """Unit tangent at z of the hyperbolic geodesic ray [z, x)."""
    if x is INF or (isinstance(x, float) and math.isinf(x)):
        return 1j
    x = float(x)
    if abs(z.real - x) <= 1e-14 * max(1.0, abs(z), abs(x)):
        return -1j  # vertical geodesic, heading down to the boundary
    center = (abs(z) ** 2 - x * x) / (2.0 * (z.real - x))
    tangent = 1j * (z - center)  # counterclockwise; ccw motion exits at center - R
    if x > center:
        tangent = -tangent
    return tangent / abs(tangent)


def ray_angle(z, x1, x2) -> float:
    """Unsigned angle in [0, pi] at z between the geodesic rays [z,x1) and [z,x2)."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("vertex must lie in the open upper half-plane")
    if x1 == x2 or (x1 is INF and x2 is INF):
        raise DomainError("the two boundary points must be distinct")
    d1 = _ray_direction(z, x1)
    d2 = _ray_direction(z, x2)
    c = (d1 * d2.conjugate()).real
    return math.acos(max(-1.0, min(1.0, c)))
