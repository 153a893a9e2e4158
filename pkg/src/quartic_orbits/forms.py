"""Real binary quartics and the invariant quadratic form of signature (2,3).

A quartic a4*X^4 + a3*X^3*Y + a2*X^2*Y^2 + a1*X*Y^3 + a0*Y^4 is stored as the
coefficient tuple (a4, a3, a2, a1, a0).  The Mobius-invariant quadratic form

    q(f) = 2*a4*a0 - a1*a3/2 + a2^2/6

is nondegenerate of signature (2,3) on the 5-dimensional coefficient space;
its sign splits projective space into the null quadric and the two open
regions on either side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import ContractError, ZeroFormError
from .scalars import HALF, QUARTER, SIXTH, all_exact, format_scalar, is_exact

_MONOMIAL_NAMES = ("X^4", "X^3*Y", "X^2*Y^2", "X*Y^3", "Y^4")


@dataclass(frozen=True)
class QuarticForm:
    """Coefficient vector (a4, a3, a2, a1, a0) of a real binary quartic."""

    a4: object
    a3: object
    a2: object
    a1: object
    a0: object

    @classmethod
    def from_coeffs(cls, coeffs) -> "QuarticForm":
        coeffs = tuple(coeffs)
        if len(coeffs) != 5:
            raise ValueError("a quartic needs exactly 5 coefficients (a4..a0)")
        return cls(*coeffs)

    @property
    def coeffs(self):
        return (self.a4, self.a3, self.a2, self.a1, self.a0)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_exact(self) -> bool:
        return all_exact(self.coeffs)

    def evaluate(self, x, y):
        a4, a3, a2, a1, a0 = self.coeffs
        return (
            a4 * x**4 + a3 * x**3 * y + a2 * x**2 * y**2 + a1 * x * y**3 + a0 * y**4
        )

    def as_floats(self) -> "QuarticForm":
        return QuarticForm(*(float(c) for c in self.coeffs))

    def norm(self) -> float:
        return math.sqrt(sum(float(c) ** 2 for c in self.coeffs))

    def unit_scaled(self) -> "QuarticForm":
        """Float copy rescaled to unit Euclidean coefficient norm."""
        n = self.norm()
        if n == 0.0:
            raise ZeroFormError("cannot normalize the zero form")
        return QuarticForm(*(float(c) / n for c in self.coeffs))

    def __add__(self, other: "QuarticForm") -> "QuarticForm":
        return QuarticForm(*(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "QuarticForm") -> "QuarticForm":
        return QuarticForm(*(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "QuarticForm":
        return QuarticForm(*(-c for c in self.coeffs))

    def scale(self, s) -> "QuarticForm":
        return QuarticForm(*(s * c for c in self.coeffs))

    def __rmul__(self, s) -> "QuarticForm":
        return self.scale(s)

    def pretty(self) -> str:
        terms = []
        for c, name in zip(self.coeffs, _MONOMIAL_NAMES):
            if c == 0:
                continue
            cs = format_scalar(c) if not isinstance(c, float) else repr(c)
            terms.append(f"({cs})*{name}")
        return " + ".join(terms) if terms else "0"


ZERO_FORM = QuarticForm(0, 0, 0, 0, 0)

#: X^4, X^3Y, X^2Y^2, XY^3, Y^4
MONOMIALS = tuple(
    QuarticForm(*(1 if i == k else 0 for i in range(5))) for k in range(5)
)


def q_value(f: QuarticForm):
    """The invariant quadratic form 2*a4*a0 - a1*a3/2 + a2^2/6."""
    a4, a3, a2, a1, a0 = f.coeffs
    return 2 * a4 * a0 - HALF * (a1 * a3) + SIXTH * a2 * a2


def b_polar(u: QuarticForm, v: QuarticForm):
    """Symmetric polarization of q_value: b(f,f) = q(f)."""
    return (
        u.a4 * v.a0
        + u.a0 * v.a4
        - QUARTER * (u.a1 * v.a3 + u.a3 * v.a1)
        + SIXTH * u.a2 * v.a2
    )


#: Gram matrix of b_polar in the monomial basis, exact.
GRAM_MATRIX = tuple(
    tuple(b_polar(MONOMIALS[i], MONOMIALS[j]) for j in range(5)) for i in range(5)
)


class Region(Enum):
    """Side of the null quadric a projective point lies on."""

    EINSTEIN = "einstein"  # q = 0
    ADS = "ads"            # q < 0
    H22 = "h22"            # q > 0


class SignatureTriple(NamedTuple):
    """(negative, positive, radical) dimensions of a restricted bilinear form."""

    n_neg: int
    n_pos: int
    n_rad: int


@dataclass(frozen=True)
class ProjectivePoint:
    """A nonzero quartic up to real scale."""

    rep: QuarticForm

    def __post_init__(self):
        if self.rep.is_zero():
            raise ZeroFormError("the zero form does not define a projective point")

    def is_exact(self) -> bool:
        return self.rep.is_exact()

    def proportional_to(self, other: "ProjectivePoint | QuarticForm", tol: float = 0.0) -> bool:
        f = self.rep.coeffs
        g = other.rep.coeffs if isinstance(other, ProjectivePoint) else other.coeffs
        if tol == 0.0 and all_exact(f) and all_exact(g):
            for i in range(5):
                for j in range(i + 1, 5):
                    if f[i] * g[j] != f[j] * g[i]:
                        return False
            return True
        fa = np.array([float(c) for c in f])
        ga = np.array([float(c) for c in g])
        nf, ng = np.linalg.norm(fa), np.linalg.norm(ga)
        if nf == 0.0 or ng == 0.0:
            return False
        fa /= nf
        ga /= ng
        d = min(np.max(np.abs(fa - ga)), np.max(np.abs(fa + ga)))
        return d <= max(tol, 1e-12)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.proportional_to(other)


def as_point(p) -> ProjectivePoint:
    if isinstance(p, ProjectivePoint):
        return p
    if isinstance(p, QuarticForm):
        return ProjectivePoint(p)
    raise TypeError(f"expected a quartic or projective point, got {type(p)!r}")


def region_of(p, tol=Fraction(1, 10**9)) -> Region:
    """Decide the region from the sign of q; |q| <= tol counts as the null quadric.

    Exact lifts are decided by exact sign (tol ignored); float lifts are first
    rescaled to unit coefficient norm, which makes the threshold scale-free.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    point = as_point(p)
    f = point.rep
    if f.is_exact():
        q = q_value(f)
        if q == 0:
            return Region.EINSTEIN
        return Region.ADS if q < 0 else Region.H22
    q = q_value(f.unit_scaled())
    if abs(q) <= tol:
        return Region.EINSTEIN
    return Region.ADS if q < 0 else Region.H22


# ---------------------------------------------------------------------------
# linear algebra over the 5-dimensional coefficient space
# ---------------------------------------------------------------------------

def _echelon_basis(vectors: Sequence[QuarticForm]) -> list[QuarticForm]:
    """Basis of the span, by exact Gaussian elimination (rationals only)."""
    rows: list[list[Fraction]] = []
    basis: list[QuarticForm] = []
    pivots: list[int] = []
    for v in vectors:
        row = [Fraction(c) for c in v.coeffs]
        for r, p in zip(rows, pivots):
            if row[p] != 0:
                factor = row[p] / r[p]
                row = [a - factor * b for a, b in zip(row, r)]
        pivot = next((i for i, c in enumerate(row) if c != 0), None)
        if pivot is not None:
            rows.append(row)
            pivots.append(pivot)
            basis.append(v)
    return basis


def exact_rank(vectors: Sequence[QuarticForm]) -> int:
    return len(_echelon_basis(vectors))


def float_rank(vectors: Sequence[QuarticForm], tol: float = 1e-9) -> int:
    mat = np.array([[float(c) for c in v.coeffs] for v in vectors], dtype=float)
    norms = np.linalg.norm(mat, axis=1)
    keep = norms > 0
    if not np.any(keep):
        return 0
    mat = mat[keep] / norms[keep][:, None]
    s = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(s > tol * s[0]))


def span_rank(vectors: Sequence[QuarticForm], tol: float = 1e-9) -> int:
    if all(v.is_exact() for v in vectors):
        return exact_rank(vectors)
    return float_rank(vectors, tol)


def in_span(v: QuarticForm, vectors: Sequence[QuarticForm], tol: float = 1e-9) -> bool:
    if v.is_exact() and all(w.is_exact() for w in vectors):
        return exact_rank(list(vectors) + [v]) == exact_rank(vectors)
    return float_rank(list(vectors) + [v], tol) == float_rank(list(vectors), tol)


def _signs_of_eigenvalues_exact(gram: list[list[Fraction]]) -> SignatureTriple:
    """Count eigenvalue signs of an exact symmetric matrix.

    Uses the characteristic polynomial (Faddeev-LeVerrier) and Descartes'
    rule, which is exact because symmetric matrices have only real roots.
    """
    k = len(gram)
    if k == 0:
        return SignatureTriple(0, 0, 0)
    ident = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    coeffs = [Fraction(1)]  # char poly lambda^k + c1 lambda^(k-1) + ... + ck
    m = [row[:] for row in ident]
    a_m = None
    for step in range(1, k + 1):
        if step > 1:
            m = [[a_m[i][j] + (coeffs[step - 1] if i == j else 0) for j in range(k)]
                 for i in range(k)]
        a_m = [[sum(gram[i][t] * m[t][j] for t in range(k)) for j in range(k)]
               for i in range(k)]
        c = -Fraction(sum(a_m[i][i] for i in range(k)), step)
        coeffs.append(c)
    # p(x) = sum coeffs[i] * x^(k-i); zero eigenvalues = trailing zero coeffs
    n_zero = 0
    while n_zero < k and coeffs[k - n_zero] == 0:
        n_zero += 1
    reduced = coeffs[: k - n_zero + 1]

    def variations(seq):
        signs = [1 if c > 0 else -1 for c in seq if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    n_pos = variations(reduced)
    alternating = [c if (len(reduced) - 1 - i) % 2 == 0 else -c
                   for i, c in enumerate(reduced)]
    n_neg = variations(alternating)
    return SignatureTriple(n_neg, n_pos, n_zero)


def _signs_of_eigenvalues_float(gram: np.ndarray, tol: float) -> SignatureTriple:
    if gram.size == 0:
        return SignatureTriple(0, 0, 0)
    eig = np.linalg.eigvalsh(gram)
    thr = tol * max(1.0, float(np.max(np.abs(eig))))
    n_neg = int(np.sum(eig < -thr))
    n_pos = int(np.sum(eig > thr))
    n_rad = len(eig) - n_neg - n_pos
    return SignatureTriple(n_neg, n_pos, n_rad)


def gram_signature(
    vectors: Iterable[QuarticForm],
    modulo: QuarticForm | None = None,
    tol: float = 1e-9,
) -> SignatureTriple:
    """Signature of q restricted to span(vectors)/(span ∩ R*modulo).

    With ``modulo`` given, b_polar must vanish between it and every vector
    (checked); the quotient then carries a well-defined induced form.
    """
    vectors = list(vectors)
    if not vectors:
        raise ValueError("need at least one vector")
    exact = all(v.is_exact() for v in vectors) and (modulo is None or modulo.is_exact())

    if modulo is not None:
        for v in vectors:
            val = b_polar(modulo, v)
            ok = (val == 0) if exact else abs(float(val)) <= tol * max(
                1.0, modulo.norm() * v.norm()
            )
            if not ok:
                raise ContractError(
                    "quotient direction is not b-orthogonal to the span"
                )

    if exact:
        if modulo is not None and not modulo.is_zero() and in_span(modulo, vectors):
            chain = _echelon_basis([modulo] + vectors)
            basis = chain[1:]  # complement of the quotient direction in the span
        else:
            basis = _echelon_basis(vectors)
        gram = [[Fraction(b_polar(u, v)) for v in basis] for u in basis]
        return _signs_of_eigenvalues_exact(gram)

    mat = np.array([[float(c) for c in v.coeffs] for v in vectors], dtype=float)
    if modulo is not None and not modulo.is_zero():
        m = np.array([float(c) for c in modulo.coeffs])
        m = m / np.linalg.norm(m)
        if in_span(modulo.as_floats(), [v.as_floats() for v in vectors], tol):
            mat = mat - np.outer(mat @ m, m)
    norms = np.linalg.norm(mat, axis=1)
    mat = mat[norms > tol * max(1.0, float(np.max(norms, initial=0.0)))]
    if mat.shape[0] == 0:
        return SignatureTriple(0, 0, 0)
    # orthonormal basis of the span, then the Gram matrix under b_polar
    u, s, _ = np.linalg.svd(mat.T, full_matrices=False)
    rank = int(np.sum(s > tol * s[0]))
    basis = [QuarticForm(*u[:, i]) for i in range(rank)]
    gram = np.array(
        [[float(b_polar(x, y)) for y in basis] for x in basis], dtype=float
    )
    return _signs_of_eigenvalues_float(gram, tol)


def gram_matrix(vectors: Sequence[QuarticForm]):
    """Pairwise b_polar values, in the order given."""
    return [[b_polar(u, v) for v in vectors] for u in vectors]
