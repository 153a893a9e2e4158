"""The irreducible 5-dimensional Mobius action on binary quartics.

Group elements are 2x2 real matrices of positive determinant considered up to
scale (the quotient is the orientation-preserving Mobius group).  The action
on a quartic f is substitution by the adjugate,

    (g . f)(v) = f(adj(g) v) / det(g)^2,

which is scale-free in g, exact over the rationals, sends the roots of f
forward through the Mobius map of g, and preserves q_value.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import DomainError
from .forms import MONOMIALS, QuarticForm
from .scalars import is_exact

INF = float("inf")  # boundary point at infinity for Mobius maps on roots


def _hmul(p, q):
    """Product of homogeneous binary polynomials given as coefficient lists.

    Lists are ordered ``[X^d, X^(d-1) Y, ..., Y^d]``.
    """
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


@dataclass(frozen=True)
class GroupElement:
    """Matrix [[a, b], [c, d]] with ad - bc > 0, up to scale."""

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        if self.det() <= 0:
            raise DomainError("group elements must have positive determinant")

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1, 0, 0, 1)

    def det(self):
        return self.a * self.d - self.b * self.c

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def is_exact(self) -> bool:
        return all(is_exact(e) for e in self.entries())

    def normalized_entries(self):
        """Float entries rescaled to determinant one (sign-ambiguous)."""
        s = 1.0 / math.sqrt(float(self.det()))
        return tuple(float(e) * s for e in self.entries())

    def inverse(self) -> "GroupElement":
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def same_element(self, other: "GroupElement", tol: float = 0.0) -> bool:
        """Projective equality (proportional entries)."""
        u, v = self.entries(), other.entries()
        if tol == 0.0 and self.is_exact() and other.is_exact():
            return all(
                u[i] * v[j] == u[j] * v[i] for i in range(4) for j in range(i + 1, 4)
            )
        un = self.normalized_entries()
        vn = other.normalized_entries()
        dplus = max(abs(x - y) for x, y in zip(un, vn))
        dminus = max(abs(x + y) for x, y in zip(un, vn))
        return min(dplus, dminus) <= max(tol, 1e-12)

    def is_identity(self, tol: float = 0.0) -> bool:
        return self.same_element(GroupElement.identity(), tol)

    def mobius(self, x):
        """Image of a boundary point (real or INF) under x -> (ax+b)/(cx+d)."""
        a, b, c, d = self.entries()
        if x is INF or (isinstance(x, float) and math.isinf(x)):
            return a / c if c != 0 else INF
        den = c * x + d
        if den == 0:
            return INF
        num = a * x + b
        if is_exact(num) and is_exact(den):
            return Fraction(num) / Fraction(den)
        return num / den


class SubgroupKind(Enum):
    """The one-parameter subgroups fixing i, infinity, and {0, infinity}."""

    ELLIPTIC_E = "elliptic"
    PARABOLIC_P = "parabolic"
    HYPERBOLIC_H = "hyperbolic"


@dataclass(frozen=True)
class LieVector:
    """Traceless 2x2 matrix [[alpha, beta], [gamma, -alpha]]."""

    alpha: object
    beta: object
    gamma: object

    def entries(self):
        return (self.alpha, self.beta, self.gamma, -self.alpha)

    def coords(self):
        return (self.alpha, self.beta, self.gamma)

    def scale(self, s) -> "LieVector":
        return LieVector(s * self.alpha, s * self.beta, s * self.gamma)

    def exp(self) -> "GroupElement":
        """Closed-form 2x2 exponential (x^2 = (alpha^2 + beta*gamma) * I)."""
        disc = float(self.alpha) ** 2 + float(self.beta) * float(self.gamma)
        a, b, g = (float(v) for v in self.coords())
        if disc > 0:
            w = math.sqrt(disc)
            ch, sh = math.cosh(w), math.sinh(w) / w
            return GroupElement(ch + sh * a, sh * b, sh * g, ch - sh * a)
        if disc < 0:
            w = math.sqrt(-disc)
            co, si = math.cos(w), math.sin(w) / w
            return GroupElement(co + si * a, si * b, si * g, co - si * a)
        return GroupElement(1 + a, b, g, 1 - a)


#: generators of the hyperbolic, parabolic and elliptic one-parameter subgroups
HYPERBOLIC_GEN = LieVector(1, 0, 0)
PARABOLIC_GEN = LieVector(0, 1, 0)
ELLIPTIC_GEN = LieVector(0, -1, 1)


def sl2_basis():
    """A basis of the traceless 2x2 matrices, as flow generators."""
    return (HYPERBOLIC_GEN, PARABOLIC_GEN, ELLIPTIC_GEN)


def _act_on_coeffs(entries, coeffs):
    a, b, c, d = entries
    u = [d, -b]   # image of X under the adjugate
    v = [-c, a]   # image of Y
    upow = [[1], u]
    vpow = [[1], v]
    for _ in range(3):
        upow.append(_hmul(upow[-1], u))
        vpow.append(_hmul(vpow[-1], v))
    out = [0, 0, 0, 0, 0]
    for i, coeff in enumerate(coeffs):
        if coeff == 0:
            continue
        term = _hmul(upow[4 - i], vpow[i])
        for k, t in enumerate(term):
            out[k] = out[k] + coeff * t
    return out


def act(g: GroupElement, f: QuarticForm) -> QuarticForm:
    """Apply g to f so that roots move forward through the Mobius map of g."""
    entries = g.entries()
    if all(is_exact(e) for e in entries) and f.is_exact():
        # clear denominators of g (scale-free) and of f (restored at the end)
        # so the inner sums run over plain integers
        gden = 1
        for e in entries:
            e = Fraction(e)
            gden = gden * e.denominator // math.gcd(gden, e.denominator)
        ge = [int(Fraction(e) * gden) for e in entries]
        fden = 1
        for c in f.coeffs:
            c = Fraction(c)
            fden = fden * c.denominator // math.gcd(fden, c.denominator)
        fc = [int(Fraction(c) * fden) for c in f.coeffs]
        det = ge[0] * ge[3] - ge[1] * ge[2]
        scale = det * det * fden
        out = _act_on_coeffs(ge, fc)
        return QuarticForm(*(Fraction(t, scale) for t in out))
    det = g.det()
    out = _act_on_coeffs(entries, f.coeffs)
    if det != 1:
        scale = det * det
        if is_exact(scale) and not isinstance(scale, Fraction):
            scale = Fraction(scale)
        out = [t / scale for t in out]
    return QuarticForm(*out)


def rep5(g: GroupElement):
    """Matrix of act(g, .) in the monomial basis, as nested lists (det 1)."""
    cols = [act(g, m).coeffs for m in MONOMIALS]
    return [[cols[j][i] for j in range(5)] for i in range(5)]


def lie_act(x: LieVector, f: QuarticForm) -> QuarticForm:
    """Derivative at t = 0 of act(exp(t x), f), as a closed-form derivation."""
    a4, a3, a2, a1, a0 = f.coeffs
    dfdx = [4 * a4, 3 * a3, 2 * a2, a1]      # cubic, [X^3 .. Y^3]
    dfdy = [a3, 2 * a2, 3 * a1, 4 * a0]
    al, be, ga = x.coords()
    tx = _hmul([al, be], dfdx)               # (alpha X + beta Y) df/dX
    ty = _hmul([ga, -al], dfdy)              # (gamma X - alpha Y) df/dY
    return QuarticForm(*(-(p + q) for p, q in zip(tx, ty)))


def one_param(kind: SubgroupKind, t) -> GroupElement:
    """Element at time t of the elliptic, parabolic, or hyperbolic subgroup."""
    if kind is SubgroupKind.ELLIPTIC_E:
        tf = float(t)
        return GroupElement(math.cos(tf), -math.sin(tf), math.sin(tf), math.cos(tf))
    if kind is SubgroupKind.PARABOLIC_P:
        return GroupElement(1, t, 0, 1)
    if kind is SubgroupKind.HYPERBOLIC_H:
        e = math.exp(float(t))
        return GroupElement(e, 0.0, 0.0, 1.0 / e)
    raise ValueError(f"unknown subgroup kind {kind!r}")


def generator_of(kind: SubgroupKind) -> LieVector:
    return {
        SubgroupKind.ELLIPTIC_E: ELLIPTIC_GEN,
        SubgroupKind.PARABOLIC_P: PARABOLIC_GEN,
        SubgroupKind.HYPERBOLIC_H: HYPERBOLIC_GEN,
    }[kind]


def random_lie_vector(rng: random.Random, radius: float) -> LieVector:
    """Uniform draw from the ball of the given radius in (alpha, beta, gamma)."""
    while True:
        v = (rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        n = math.sqrt(sum(c * c for c in v))
        if n > 0:
            break
    r = radius * rng.random() ** (1.0 / 3.0)
    return LieVector(*(c * r / n for c in v))


def random_element(seed, radius: float = 1.0) -> GroupElement:
    """Deterministic random group element, exp of a ball-sampled generator."""
    if not radius > 0:
        raise ValueError("radius must be positive")
    rng = random.Random(seed)
    return random_lie_vector(rng, radius).exp()
