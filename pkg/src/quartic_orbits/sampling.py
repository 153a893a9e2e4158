"""Seeded random generators of rational group elements and stratified forms.

Everything here is deterministic given the caller's random.Random instance,
and produces exact rational data so that downstream checks can assert exact
equalities.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .action import GroupElement, act
from .classify import Stratum
from .forms import QuarticForm
from .roots import ConjugatePair, InfiniteRoot, RealRoot, from_roots


def random_rational(rng: random.Random, max_num: int = 6, max_den: int = 4) -> Fraction:
    num = rng.randint(-max_num, max_num)
    den = rng.randint(1, max_den)
    return Fraction(num, den)


def distinct_rationals(rng: random.Random, k: int, max_num: int = 8) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < k:
        v = random_rational(rng, max_num=max_num)
        if v not in out:
            out.append(v)
    return out


def random_rational_element(rng: random.Random, max_num: int = 4) -> GroupElement:
    """Random element with determinant exactly one (rational entries)."""
    while True:
        a = random_rational(rng, max_num=max_num)
        if a != 0:
            break
    b = random_rational(rng, max_num=max_num)
    c = random_rational(rng, max_num=max_num)
    d = (1 + b * c) / a
    return GroupElement(a, b, c, d)


def random_quartic(rng: random.Random, max_num: int = 9) -> QuarticForm:
    while True:
        f = QuarticForm(*(random_rational(rng, max_num=max_num) for _ in range(5)))
        if not f.is_zero():
            return f


def _random_pair(rng: random.Random, mult: int = 1) -> ConjugatePair:
    re = random_rational(rng, max_num=4)
    y2 = Fraction(rng.randint(1, 9), rng.randint(1, 3))
    return ConjugatePair(re, math.sqrt(float(y2)), re * re + y2, mult)


def _random_theta_pair(rng: random.Random, region: str) -> ConjugatePair:
    """Pair at {0, inf}-normalized position with cos^2(theta) pinned by region."""
    t = Fraction(rng.randint(1, 6), rng.randint(1, 3))
    sign = rng.choice((1, -1))
    if region == "einstein":  # cos^2 = 3/4 exactly: re = 3t, |z|^2 = 12 t^2
        re, nrm = 3 * t * sign, 12 * t * t
    elif region == "ads":  # cos^2 < 3/4
        re = sign * t
        nrm = t * t * Fraction(rng.randint(2, 6))  # cos^2 = 1/k <= 1/2
    else:  # cos^2 > 3/4
        re = sign * t
        nrm = t * t * (1 + Fraction(1, rng.randint(4, 12)))  # cos^2 = 1/(1+eps)
    y2 = nrm - re * re
    return ConjugatePair(re, math.sqrt(float(y2)), nrm)


def random_form_in_stratum(rng: random.Random, stratum: Stratum) -> QuarticForm:
    """Exact rational representative of the stratum, with random parameters."""
    maybe_inf = rng.random() < 0.2
    if stratum is Stratum.EIN_QUADRUPLE:
        if maybe_inf:
            roots = [InfiniteRoot(4)]
        else:
            roots = [RealRoot(random_rational(rng), 4)]
    elif stratum is Stratum.EIN_TRIPLE:
        t, s = distinct_rationals(rng, 2)
        roots = [InfiniteRoot(3), RealRoot(s)] if maybe_inf else [
            RealRoot(t, 3), RealRoot(s)
        ]
    elif stratum in (Stratum.EIN_OPEN, Stratum.ADS_GENERIC, Stratum.H_TWO_REAL_PAIR):
        region = {
            Stratum.EIN_OPEN: "einstein",
            Stratum.ADS_GENERIC: "ads",
            Stratum.H_TWO_REAL_PAIR: "h22",
        }[stratum]
        roots = [RealRoot(0), InfiniteRoot(1), _random_theta_pair(rng, region)]
    elif stratum is Stratum.H_FOUR_REAL:
        vals = distinct_rationals(rng, 4)
        roots = [RealRoot(v) for v in vals]
        if maybe_inf:
            roots = [InfiniteRoot(1)] + roots[:3]
    elif stratum is Stratum.H_TWO_DOUBLE_REAL:
        u, v = distinct_rationals(rng, 2)
        roots = [InfiniteRoot(2), RealRoot(v, 2)] if maybe_inf else [
            RealRoot(u, 2), RealRoot(v, 2)
        ]
    elif stratum is Stratum.H_DOUBLE_REAL_TWO_SIMPLE:
        u, v, w = distinct_rationals(rng, 3)
        roots = [RealRoot(u, 2), RealRoot(v), RealRoot(w)]
        if maybe_inf:
            roots = [InfiniteRoot(2), RealRoot(v), RealRoot(w)]
    elif stratum is Stratum.H_DOUBLE_REAL_PAIR:
        u = random_rational(rng)
        base = InfiniteRoot(2) if maybe_inf else RealRoot(u, 2)
        roots = [base, _random_pair(rng)]
    elif stratum is Stratum.H_PAIR_EQUAL:
        roots = [_random_pair(rng, mult=2)]
    elif stratum is Stratum.H_PAIR_DISTINCT:
        while True:
            p1, p2 = _random_pair(rng), _random_pair(rng)
            if (p1.re, p1.nrm) != (p2.re, p2.nrm):
                break
        roots = [p1, p2]
    else:
        raise ValueError(f"unknown stratum {stratum!r}")
    f = from_roots(roots)
    if rng.random() < 0.3:
        # shift/scale away from the canonical position (still exact rational)
        shift = GroupElement(1, random_rational(rng), 0, 1)
        scale = GroupElement(Fraction(rng.randint(1, 4), rng.randint(1, 3)), 0, 0, 1)
        f = act(shift @ scale, f)
    return f
