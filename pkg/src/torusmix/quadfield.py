"""Exact real quadratic field arithmetic and eigen-decompositions.

Elements are p + q*sqrt(d) with rational p, q and a fixed square-free
d > 1.  The Galois conjugation sigma sends sqrt(d) to -sqrt(d); for a
hyperbolic SL(2,Z) eigenvalue lambda it satisfies sigma(lambda) = 1/lambda.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, sqrt

from .errors import NotHyperbolic
from .intmat import Mat2Z

__all__ = ["QuadVal", "EigenData", "eigen_data", "squarefree_decompose"]


def squarefree_decompose(m: int) -> tuple[int, int]:
    """Write m > 0 as s^2 * d with d square-free; returns (s, d)."""
    if m <= 0:
        raise ValueError("need a positive integer")
    s, d = 1, 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return s, d * m


@dataclass(frozen=True)
class QuadVal:
    """Element p + q*sqrt(d) of the real quadratic field Q(sqrt(d)).

    Arithmetic is closed within a fixed d; mixing two different fields is
    a programming error and raises ValueError.  Rational values (q = 0)
    combine freely with any field.
    """

    p: Fraction
    q: Fraction
    d: int

    @staticmethod
    def rational(x, d: int = 1) -> "QuadVal":
        return QuadVal(Fraction(x), Fraction(0), d)

    def _coerce(self, other) -> "QuadVal":
        if isinstance(other, QuadVal):
            if other.d != self.d and other.q != 0 and self.q != 0:
                raise ValueError(f"mixed fields d={self.d} and d={other.d}")
            return QuadVal(other.p, other.q, self.d if other.q == 0 else other.d)
        return QuadVal(Fraction(other), Fraction(0), self.d)

    def __add__(self, other) -> "QuadVal":
        o = self._coerce(other)
        d = self.d if self.q != 0 or o.q == 0 else o.d
        return QuadVal(self.p + o.p, self.q + o.q, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadVal":
        return QuadVal(-self.p, -self.q, self.d)

    def __sub__(self, other) -> "QuadVal":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QuadVal":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QuadVal":
        o = self._coerce(other)
        d = self.d if self.q != 0 or o.q == 0 else o.d
        return QuadVal(
            self.p * o.p + self.q * o.q * d,
            self.p * o.q + self.q * o.p,
            d,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadVal":
        """Galois conjugation sigma: sqrt(d) -> -sqrt(d)."""
        return QuadVal(self.p, -self.q, self.d)

    def field_norm(self) -> Fraction:
        """p^2 - d*q^2 = self * sigma(self)."""
        return self.p * self.p - self.d * self.q * self.q

    def inverse(self) -> "QuadVal":
        n = self.field_norm()
        if n == 0:
            raise ZeroDivisionError("zero or degenerate quadratic value")
        return QuadVal(self.p / n, -self.q / n, self.d)

    def __truediv__(self, other) -> "QuadVal":
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int) -> "QuadVal":
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadVal.rational(1, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def sign(self) -> int:
        """Exact sign of the real number p + q*sqrt(d)."""
        if self.q == 0:
            return 0 if self.p == 0 else (1 if self.p > 0 else -1)
        if self.p == 0:
            return 1 if self.q > 0 else -1
        if self.p > 0 and self.q > 0:
            return 1
        if self.p < 0 and self.q < 0:
            return -1
        # opposite signs: compare p^2 against d*q^2
        n = self.field_norm()
        if n == 0:
            # impossible for square-free d > 1 with q != 0
            raise ArithmeticError("sqrt(d) rational?")
        return (1 if n > 0 else -1) * (1 if self.p > 0 else -1)

    def __abs__(self) -> "QuadVal":
        return self if self.sign() >= 0 else -self

    def __lt__(self, other) -> bool:
        return (self - self._coerce(other)).sign() < 0

    def __gt__(self, other) -> bool:
        return (self - self._coerce(other)).sign() > 0

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * sqrt(self.d)

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        return f"{self.p}{'+' if self.q >= 0 else ''}{self.q}*sqrt({self.d})"


QuadMat = tuple[tuple[QuadVal, QuadVal], tuple[QuadVal, QuadVal]]


def _qmat_conj(M: QuadMat) -> QuadMat:
    return tuple(tuple(x.conj() for x in row) for row in M)


def _qmat_mul(A: QuadMat, B: QuadMat) -> QuadMat:
    return tuple(
        tuple(
            A[i][0] * B[0][j] + A[i][1] * B[1][j]
            for j in range(2)
        )
        for i in range(2)
    )


def _qmat_apply(M: QuadMat, v) -> tuple[QuadVal, QuadVal]:
    return (
        M[0][0] * v[0] + M[0][1] * v[1],
        M[1][0] * v[0] + M[1][1] * v[1],
    )


@dataclass(frozen=True)
class EigenData:
    """Spectral data of a hyperbolic M: M = lam*P_plus + (1/lam)*P_minus.

    lam is the eigenvalue with |lam| > 1 (negative when trace < -2);
    P_plus and P_minus are the rank-one spectral projections, exchanged
    entrywise by Galois conjugation.
    """

    d: int
    lam: QuadVal
    p_plus: QuadMat
    p_minus: QuadMat

    def power_apply(self, k: int, v: tuple[int, int]) -> tuple[QuadVal, QuadVal]:
        """M^k v computed as lam^k P+ v + lam^-k P- v (exact)."""
        lk = self.lam ** k
        pv = _qmat_apply(self.p_plus, [QuadVal.rational(x, self.d) for x in v])
        mv = _qmat_apply(self.p_minus, [QuadVal.rational(x, self.d) for x in v])
        return (lk * pv[0] + lk.inverse() * mv[0], lk * pv[1] + lk.inverse() * mv[1])


def eigen_data(M: Mat2Z) -> EigenData:
    """Exact eigen-decomposition of a hyperbolic matrix.

    The discriminant t^2 - 4 is written s^2 * d with d square-free; d = 1
    would force lam = +/-1 and cannot occur for |t| > 2, which is asserted.
    Callers following the transported-frequency convention pass the
    transpose of the dynamical matrix.
    """
    t = M.trace
    if abs(t) <= 2:
        raise NotHyperbolic(str(M))
    s, d = squarefree_decompose(t * t - 4)
    assert d > 1, "hyperbolic discriminant cannot be a perfect square"
    # sqrt(t^2-4) = s*sqrt(d); lam and 1/lam are (t +/- s*sqrt(d))/2 and
    # the one with |lam| > 1 takes the sign of t on the surd term.
    sgn = 1 if t > 0 else -1
    lam = QuadVal(Fraction(t, 2), Fraction(sgn * s, 2), d)
    lam_inv = lam.conj()  # lam * sigma(lam) = (t^2 - s^2 d)/4 = 1
    denom = lam - lam_inv
    one = QuadVal.rational(1, d)
    zero = QuadVal.rational(0, d)
    ident: QuadMat = ((one, zero), (zero, one))
    m_ent = ((M.a, M.b), (M.c, M.d))
    p_plus = tuple(
        tuple(
            (QuadVal.rational(m_ent[i][j], d) - (lam_inv if i == j else zero)) / denom
            for j in range(2)
        )
        for i in range(2)
    )
    p_minus = tuple(
        tuple(ident[i][j] - p_plus[i][j] for j in range(2)) for i in range(2)
    )
    return EigenData(d=d, lam=lam, p_plus=p_plus, p_minus=p_minus)
