"""Exact arithmetic on SL(2,Z): classification, powers, Chebyshev-type
power coefficients and fixed vectors.

All entries are arbitrary-precision Python integers; every operation is a
pure function on immutable values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .errors import IdentityHasNoDistinguishedVector, NonUnimodular, NotUnipotent

__all__ = [
    "Mat2Z",
    "MatClass",
    "ChebPair",
    "classify",
    "chebyshev_coeffs",
    "mat_pow",
    "fixed_vector",
    "parse_matrix",
]


@dataclass(frozen=True)
class Mat2Z:
    """2x2 integer matrix with determinant +1.

    The determinant condition is checked at construction; intermediate
    non-unimodular matrices (such as B - I) are handled as raw tuples by
    the callers that need them.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise NonUnimodular(f"det {self!r} != 1")

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def norm(self) -> int:
        """Max-norm: the largest absolute entry."""
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def transpose(self) -> "Mat2Z":
        return Mat2Z(self.a, self.c, self.b, self.d)

    def inverse(self) -> "Mat2Z":
        # adjugate == inverse since det == 1
        return Mat2Z(self.d, -self.b, -self.c, self.a)

    def __mul__(self, other: "Mat2Z") -> "Mat2Z":
        return Mat2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Mat2Z":
        return Mat2Z(-self.a, -self.b, -self.c, -self.d)

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def __pow__(self, k: int) -> "Mat2Z":
        return mat_pow(self, k)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = Mat2Z(1, 0, 0, 1)


@dataclass(frozen=True)
class MatClass:
    """Trace trichotomy of an SL(2,Z) element.

    kind is one of "hyperbolic", "unipotent", "finite_order".

    * hyperbolic: |trace| > 2; ``sign`` is the sign of the trace.
    * unipotent: |trace| = 2 and the matrix is not +/-I; ``sign`` is +1
      when the matrix itself is unipotent (trace 2) and -1 when its
      negative is (trace -2).
    * finite_order: |trace| < 2, or the matrix is +/-I; ``order`` is the
      exact order in SL(2,Z), always one of 1, 2, 3, 4, 6.
    """

    kind: str
    sign: int = 0
    order: int = 0

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind == "hyperbolic"

    @property
    def is_unipotent(self) -> bool:
        return self.kind == "unipotent"

    @property
    def is_finite_order(self) -> bool:
        return self.kind == "finite_order"


_FINITE_ORDER_BY_TRACE = {0: 4, 1: 6, -1: 3}


def classify(T: Mat2Z) -> MatClass:
    """Classify T by the trace trichotomy.

    The eigenvalues of T are roots of x^2 - t*x + 1: real and off the unit
    circle iff |t| > 2, both equal to +/-1 iff |t| = 2, and complex roots
    of unity iff |t| < 2 (orders 3, 4 or 6 by the trace value).
    """
    t = T.trace
    if abs(t) > 2:
        return MatClass("hyperbolic", sign=1 if t > 0 else -1)
    if t == 2:
        if T == IDENTITY:
            return MatClass("finite_order", order=1)
        return MatClass("unipotent", sign=1)
    if t == -2:
        if T == -IDENTITY:
            return MatClass("finite_order", order=2)
        return MatClass("unipotent", sign=-1)
    return MatClass("finite_order", order=_FINITE_ORDER_BY_TRACE[t])


@dataclass(frozen=True)
class ChebPair:
    """Coefficients (alpha_k, beta_k) with T^k = alpha_k*T + beta_k*I.

    For trace t they satisfy alpha_0 = 0, alpha_1 = 1,
    alpha_{k+1} = t*alpha_k - alpha_{k-1}, and beta_k = -alpha_{k-1}.
    """

    alpha: int
    beta: int


def chebyshev_coeffs(t: int, k: int) -> ChebPair:
    """Exact (alpha_k, beta_k) for trace t and exponent k >= 0."""
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    if k == 0:
        return ChebPair(0, 1)
    prev, cur = 0, 1  # alpha_0, alpha_1
    for _ in range(k - 1):
        prev, cur = cur, t * cur - prev
    return ChebPair(cur, -prev)


def mat_pow(T: Mat2Z, k: int) -> Mat2Z:
    """Exact k-th power, any integer k, by binary exponentiation."""
    if k < 0:
        return mat_pow(T.inverse(), -k)
    result = IDENTITY
    base = T
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def _primitive(v: tuple[int, int]) -> tuple[int, int]:
    g = gcd(v[0], v[1])
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    v = (v[0] // g, v[1] // g)
    lead = v[0] if v[0] != 0 else v[1]
    if lead < 0:
        v = (-v[0], -v[1])
    return v


def fixed_vector(M: Mat2Z) -> tuple[int, int]:
    """Primitive integer vector fixed by the unipotent representative of M.

    M must be unipotent up to sign and different from +/-I.  When
    trace(M) = -2 the vector returned is the fixed vector of -M; callers
    that need the sign pattern consult classify(M).sign.  The sign of the
    result is normalized so its first nonzero coordinate is positive.
    """
    cls = classify(M)
    if not cls.is_unipotent:
        if cls.is_finite_order and cls.order in (1, 2):
            raise IdentityHasNoDistinguishedVector(str(M))
        raise NotUnipotent(str(M))
    N = M if cls.sign == 1 else -M
    # kernel of N - I; N - I is nonzero (N != I) with rank 1
    a, b, c, d = N.a - 1, N.b, N.c, N.d - 1
    if a != 0 or b != 0:
        v = (b, -a)
    else:
        v = (d, -c)
    return _primitive(v)


_MATRIX_RE = re.compile(
    r"^\[\[(-?\d+),(-?\d+)\],\[(-?\d+),(-?\d+)\]\]$"
)


def parse_matrix(text: str) -> Mat2Z:
    """Parse the "[[a,b],[c,d]]" literal format (whitespace tolerated)."""
    compact = re.sub(r"\s+", "", text)
    m = _MATRIX_RE.match(compact)
    if m is None:
        raise ValueError(f"not a matrix literal: {text!r}")
    return Mat2Z(*(int(g) for g in m.groups()))
