"""Symbolic matrix sequences indexed by n.

Two shapes are supported: matrices whose entries are integer polynomials
in n (PolyMatFamily), and a fixed SL(2,Z) base raised to a polynomial
exponent a(n) (PowerFamily).  Products of unipotent powers normalize into
the polynomial shape via B^a = I + a*(B - I); hyperbolic powers never do
and are handled analytically by the deciders instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotPolynomial
from .intmat import IDENTITY, Mat2Z, classify, mat_pow
from .polynomials import IntPoly, parse_poly

__all__ = [
    "PolyMatFamily",
    "PowerFamily",
    "FamilyTuple",
    "expand_unipotent_products",
    "family_power",
    "evaluate",
    "parse_family",
]


@dataclass(frozen=True)
class PolyMatFamily:
    """2x2 matrix with IntPoly entries and determinant identically 1."""

    pa: IntPoly
    pb: IntPoly
    pc: IntPoly
    pd: IntPoly

    def __post_init__(self):
        det = self.pa * self.pd - self.pb * self.pc
        if det != IntPoly.const(1):
            raise ValueError(f"family determinant is {det}, not 1")

    @staticmethod
    def constant(M: Mat2Z) -> "PolyMatFamily":
        return PolyMatFamily(*(IntPoly.const(x) for x in M.entries()))

    def entries(self) -> tuple[IntPoly, IntPoly, IntPoly, IntPoly]:
        return (self.pa, self.pb, self.pc, self.pd)

    def transpose_entries(self) -> tuple[IntPoly, IntPoly, IntPoly, IntPoly]:
        return (self.pa, self.pc, self.pb, self.pd)

    def __mul__(self, other: "PolyMatFamily") -> "PolyMatFamily":
        return PolyMatFamily(
            self.pa * other.pa + self.pb * other.pc,
            self.pa * other.pb + self.pb * other.pd,
            self.pc * other.pa + self.pd * other.pc,
            self.pc * other.pb + self.pd * other.pd,
        )

    def __call__(self, n: int) -> Mat2Z:
        return Mat2Z(self.pa(n), self.pb(n), self.pc(n), self.pd(n))

    @property
    def is_constant(self) -> bool:
        return all(p.is_constant for p in self.entries())

    def __str__(self) -> str:
        return f"[[{self.pa},{self.pb}],[{self.pc},{self.pd}]]"


@dataclass(frozen=True)
class PowerFamily:
    """The sequence base^{a(n)} for a fixed SL(2,Z) base."""

    base: Mat2Z
    exponent: IntPoly

    def __call__(self, n: int) -> Mat2Z:
        return mat_pow(self.base, self.exponent(n))

    def __str__(self) -> str:
        return f"{self.base}^({self.exponent})"


@dataclass(frozen=True)
class FamilyTuple:
    """Ordered families sharing the index n."""

    families: tuple

    def __post_init__(self):
        if not self.families:
            raise ValueError("empty family tuple")

    def __len__(self) -> int:
        return len(self.families)

    def __iter__(self):
        return iter(self.families)


def evaluate(F, n: int) -> Mat2Z:
    """Exact evaluation of either family shape at integer n."""
    return F(n)


def _constant_parity(p: IntPoly) -> int | None:
    """Parity of p(n) when independent of n, else None.

    p(n) mod 2 is constant exactly when every coefficient of degree >= 1
    is even; p(n) and p(n+1) differ by sums of such coefficients.
    """
    if all(c % 2 == 0 for c in p.coeffs[1:]):
        return p.coeff(0) % 2
    return None


def expand_unipotent_products(factors: list[PowerFamily]) -> PolyMatFamily:
    """Normalize a product of unipotent powers into polynomial entries.

    Each factor B^{a(n)} with B unipotent expands to I + a(n)*(B - I).
    Bases equal to -I, or to a negated unipotent, contribute a global sign
    (-1)^{a(n)} and are accepted only when the parity of a(n) does not
    depend on n; hyperbolic or other finite-order bases raise
    NotPolynomial.
    """
    acc = PolyMatFamily.constant(IDENTITY)
    sign = 1
    for factor in factors:
        B = factor.base
        a = factor.exponent
        cls = classify(B)
        if cls.is_hyperbolic:
            raise NotPolynomial(f"hyperbolic base {B}")
        if cls.is_finite_order and cls.order not in (1, 2):
            raise NotPolynomial(f"finite-order base {B}")
        if cls.is_finite_order:
            if cls.order == 1:
                continue
            U = None  # B == -I: pure sign contribution
        elif cls.sign == 1:
            U = B
        else:
            U = -B
        if cls.is_finite_order or cls.sign == -1:
            parity = _constant_parity(a)
            if parity is None:
                raise NotPolynomial(
                    f"sign (-1)^({a}) of base {B} alternates with n"
                )
            if parity == 1:
                sign = -sign
        if U is not None:
            one = IntPoly.const(1)
            term = PolyMatFamily(
                one + a * IntPoly.const(U.a - 1),
                a * IntPoly.const(U.b),
                a * IntPoly.const(U.c),
                one + a * IntPoly.const(U.d - 1),
            )
            acc = acc * term
    if sign == -1:
        acc = PolyMatFamily(*(-p for p in acc.entries()))
    return acc


def family_power(F: PolyMatFamily, k: int) -> PolyMatFamily:
    """Symbolic k-th power of a polynomial family, k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    result = F
    for _ in range(k - 1):
        result = result * F
    return result


def parse_family(text: str) -> PolyMatFamily:
    """Parse "[[p, q],[r, s]]" with polynomial entries.

    Entries may be expressions in n or plain integers; commas inside
    coefficient lists are not supported here (use expression syntax).
    """
    compact = text.strip()
    if not (compact.startswith("[[") and compact.endswith("]]")):
        raise ValueError(f"not a family literal: {text!r}")
    inner = compact[2:-2]
    row_parts = inner.split("],[")
    if len(row_parts) != 2:
        raise ValueError(f"not a 2x2 family: {text!r}")
    entries = []
    for row in row_parts:
        cols = _split_top_level(row)
        if len(cols) != 2:
            raise ValueError(f"row {row!r} is not two entries")
        entries.extend(parse_poly(c) for c in cols)
    return PolyMatFamily(*entries)


def _split_top_level(row: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in row:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]
