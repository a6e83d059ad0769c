"""Integer polynomials in the sequence index n, with exact evaluation.

Input is accepted either as a coefficient list "[c0,c1,c2]" (constant
term first) or as an expression over n limited to integers, +, -, * and ^.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass

__all__ = ["IntPoly", "parse_poly"]


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial over Z, coefficients stored constant-term first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @staticmethod
    def const(c: int) -> "IntPoly":
        return IntPoly((c,))

    @staticmethod
    def n() -> "IntPoly":
        return IntPoly((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, n: int) -> int:
        value = 0
        for c in reversed(self.coeffs):
            value = value * n + c
        return value

    def __add__(self, other) -> "IntPoly":
        other = self._coerce(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(size)))

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "IntPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "IntPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "IntPoly":
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            for j, cj in enumerate(other.coeffs):
                out[i + j] += ci * cj
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = IntPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    @staticmethod
    def _coerce(x) -> "IntPoly":
        if isinstance(x, IntPoly):
            return x
        if isinstance(x, int):
            return IntPoly.const(x)
        raise TypeError(f"cannot combine IntPoly with {type(x).__name__}")

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                term = f"{mag}n" + (f"^{i}" if i > 1 else "")
                parts.append(("-" if c < 0 else "") + term)
        out = parts[0]
        for p in parts[1:]:
            out += ("+" + p) if not p.startswith("-") else p
        return out


def _from_ast(node) -> IntPoly:
    if isinstance(node, ast.Expression):
        return _from_ast(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return IntPoly.const(node.value)
        raise ValueError(f"non-integer constant {node.value!r}")
    if isinstance(node, ast.Name):
        if node.id == "n":
            return IntPoly.n()
        raise ValueError(f"unknown variable {node.id!r}")
    if isinstance(node, ast.UnaryOp):
        operand = _from_ast(node.operand)
        if isinstance(node.op, ast.USub):
            return -operand
        if isinstance(node.op, ast.UAdd):
            return operand
        raise ValueError("unsupported unary operator")
    if isinstance(node, ast.BinOp):
        left, right = _from_ast(node.left), _from_ast(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Pow):
            if not right.is_constant or right.coeff(0) < 0:
                raise ValueError("exponent must be a nonnegative integer")
            return left ** right.coeff(0)
        raise ValueError("unsupported operator")
    raise ValueError(f"unsupported syntax: {ast.dump(node)}")


def parse_poly(text: str) -> IntPoly:
    """Parse a coefficient list "[c0,c1,...]" or an expression in n."""
    text = text.strip()
    if text.startswith("["):
        inner = text[1:-1].strip()
        if text[-1] != "]":
            raise ValueError(f"unterminated coefficient list: {text!r}")
        if not inner:
            return IntPoly(())
        return IntPoly(tuple(int(tok) for tok in inner.split(",")))
    # expression form; ** and ^ both accepted for powers
    expr = text.replace("^", "**")
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"not a polynomial expression: {text!r}") from exc
    return _from_ast(tree)
