"""Brute-force ground truth on the 2-torus.

Characters chi_x(xi) = exp(2*pi*i*<x,xi>) are indexed by integer
frequency vectors x.  Transport under an automorphism T sends chi_x to
chi_{tT x}, so every correlation integral of trigonometric polynomials
collapses to exact integer bookkeeping on frequencies.  Indicator sets
are modeled as finite unions of axis-aligned (1/q)-cells, which have
exact rational measure, closed-form Fourier coefficients and exact
transport on any (1/Q)-lattice with q | Q.
"""

from __future__ import annotations

import cmath
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import pi

import numpy as np

from .errors import CommutingUnipotents, ResolutionMismatch
from .intmat import Mat2Z, classify, fixed_vector

__all__ = [
    "Freq",
    "QC",
    "TrigPoly",
    "GridSet",
    "char_correlation",
    "trig_correlation",
    "trig_projection",
    "grid_fourier",
    "lattice_correlation",
    "limit_two_unipotents",
]

Freq = tuple[int, int]


@dataclass(frozen=True)
class QC:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re=0, im=0) -> "QC":
        return QC(Fraction(re), Fraction(im))

    def __add__(self, other: "QC") -> "QC":
        return QC(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QC") -> "QC":
        return QC(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "QC") -> "QC":
        return QC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conj(self) -> "QC":
        return QC(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


QC_ZERO = QC.of(0)
QC_ONE = QC.of(1)


class TrigPoly:
    """Finitely supported frequency-coefficient table (exact complex)."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: dict[Freq, QC] | None = None):
        self._coeffs = {
            x: c for x, c in (coeffs or {}).items() if not c.is_zero
        }

    @staticmethod
    def character(x: Freq, coeff: QC = QC_ONE) -> "TrigPoly":
        return TrigPoly({x: coeff})

    @staticmethod
    def constant(c) -> "TrigPoly":
        return TrigPoly({(0, 0): c if isinstance(c, QC) else QC.of(c)})

    def coeff(self, x: Freq) -> QC:
        return self._coeffs.get(x, QC_ZERO)

    @property
    def support(self) -> list[Freq]:
        return sorted(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __len__(self) -> int:
        return len(self._coeffs)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        out = dict(self._coeffs)
        for x, c in other.items():
            out[x] = out.get(x, QC_ZERO) + c
        return TrigPoly(out)

    def scale(self, c: QC) -> "TrigPoly":
        return TrigPoly({x: v * c for x, v in self.items()})

    def mean(self) -> QC:
        return self.coeff((0, 0))

    def l2_norm_sq(self) -> Fraction:
        return sum((c.abs_sq() for c in self._coeffs.values()), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, TrigPoly) and self._coeffs == other._coeffs

    def __repr__(self) -> str:
        return f"TrigPoly({self._coeffs!r})"


def char_correlation(xs: list[Freq], y: Freq, Ms: list[Mat2Z]) -> int:
    """Exact correlation of transported characters: 1 iff the frequency
    sum tT_1 x_1 + ... + tT_k x_k + y vanishes, else 0."""
    if len(xs) != len(Ms):
        raise ValueError("frequency/matrix length mismatch")
    s0, s1 = y
    for x, M in zip(xs, Ms):
        tx = M.transpose().apply(x)
        s0 += tx[0]
        s1 += tx[1]
    return 1 if s0 == 0 and s1 == 0 else 0


def trig_correlation(fs: list[TrigPoly], Ms: list[Mat2Z]) -> QC:
    """Exact value of the correlation integral of f_1(T_1 xi) ... f_k(T_k xi)
    f_{k+1}(xi).

    Works on the character basis: the integral picks out frequency tuples
    whose transported sum vanishes.  Partial transported sums are folded
    through a dictionary, so the cost is bounded by the largest
    intermediate table times the largest support.
    """
    if len(fs) != len(Ms) + 1:
        raise ValueError("need k transported factors plus one plain factor")
    table: dict[Freq, QC] = {(0, 0): QC_ONE}
    for f, M in zip(fs, Ms):
        tM = M.transpose()
        nxt: dict[Freq, QC] = {}
        for s, acc in table.items():
            for x, c in f.items():
                tx = tM.apply(x)
                key = (s[0] + tx[0], s[1] + tx[1])
                prev = nxt.get(key, QC_ZERO)
                nxt[key] = prev + acc * c
        table = nxt
    last = fs[-1]
    total = QC_ZERO
    for s, acc in table.items():
        total = total + acc * last.coeff((-s[0], -s[1]))
    return total


_MAX_FINITE_ORBIT = 12  # finite orbits close within 6 steps (max order 6)


def _finite_orbit(tM: Mat2Z, x: Freq) -> list[Freq] | None:
    orbit = [x]
    cur = x
    for _ in range(_MAX_FINITE_ORBIT):
        cur = tM.apply(cur)
        if cur == x:
            return orbit
        orbit.append(cur)
    return None


def trig_projection(f: TrigPoly, T: Mat2Z) -> TrigPoly:
    """Orthogonal projection onto the T-invariant subspace.

    On characters the projection keeps frequencies with finite orbits
    under the transpose, averaging each orbit: for hyperbolic T only the
    zero frequency survives, for unipotent T exactly the fixed line, and
    for finite-order T every orbit is finite.
    """
    cls = classify(T)
    if cls.is_hyperbolic:
        return TrigPoly({(0, 0): f.coeff((0, 0))})
    tM = T.transpose()
    out: dict[Freq, QC] = {}
    seen: set[Freq] = set()
    for x, _ in f.items():
        if x in seen:
            continue
        orbit = _finite_orbit(tM, x)
        if orbit is None:
            continue
        seen.update(orbit)
        total = QC_ZERO
        for y in orbit:
            total = total + f.coeff(y)
        avg = total * QC.of(Fraction(1, len(orbit)))
        for y in orbit:
            out[y] = out.get(y, QC_ZERO) + avg
    return TrigPoly(out)


class GridSet:
    """Finite union of axis-aligned (1/q)-cells on the torus."""

    __slots__ = ("q", "cells")

    def __init__(self, q: int, cells):
        if q < 1:
            raise ValueError("resolution must be >= 1")
        cells = frozenset((int(i), int(j)) for i, j in cells)
        for i, j in cells:
            if not (0 <= i < q and 0 <= j < q):
                raise ValueError(f"cell {(i, j)} out of range for q={q}")
        self.q = q
        self.cells = cells

    @property
    def measure(self) -> Fraction:
        return Fraction(len(self.cells), self.q * self.q)

    @staticmethod
    def full(q: int = 1) -> "GridSet":
        return GridSet(q, [(i, j) for i in range(q) for j in range(q)])

    @staticmethod
    def rect(x0, x1, y0, y1, q: int) -> "GridSet":
        """Rectangle [x0,x1] x [y0,y1] with endpoints multiples of 1/q."""
        bounds = [Fraction(v) * q for v in (x0, x1, y0, y1)]
        if any(b.denominator != 1 for b in bounds):
            raise ValueError("rectangle endpoints must be multiples of 1/q")
        i0, i1, j0, j1 = (int(b) for b in bounds)
        if not (0 <= i0 < i1 <= q and 0 <= j0 < j1 <= q):
            raise ValueError("rectangle out of [0,1] range or empty")
        return GridSet(q, [(i, j) for i in range(i0, i1) for j in range(j0, j1)])

    def boundary_edges(self) -> int:
        """Number of cell edges adjacent to the complement (torus sense)."""
        count = 0
        for i, j in self.cells:
            for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                if ((i + di) % self.q, (j + dj) % self.q) not in self.cells:
                    count += 1
        return count

    def column_counts(self) -> list[int]:
        counts = [0] * self.q
        for i, _ in self.cells:
            counts[i] += 1
        return counts

    def row_counts(self) -> list[int]:
        counts = [0] * self.q
        for _, j in self.cells:
            counts[j] += 1
        return counts

    def to_json(self) -> str:
        return json.dumps({"q": self.q, "cells": sorted(self.cells)})

    @staticmethod
    def from_json(text: str) -> "GridSet":
        data = json.loads(text)
        return GridSet(data["q"], [tuple(c) for c in data["cells"]])

    _RECT_RE = re.compile(
        r"^rect\s+(\S+)\s+(\S+)\s+(\S+)\s+(\S+)\s*@\s*(\d+)$"
    )

    @staticmethod
    def parse(text: str) -> "GridSet":
        """Parse JSON {"q":..,"cells":..} or "rect x0 x1 y0 y1 @ q"."""
        text = text.strip()
        if text.startswith("{"):
            return GridSet.from_json(text)
        m = GridSet._RECT_RE.match(text)
        if m is None:
            raise ValueError(f"not a grid set: {text!r}")
        x0, x1, y0, y1 = (Fraction(g) for g in m.groups()[:4])
        return GridSet.rect(x0, x1, y0, y1, int(m.group(5)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GridSet)
            and self.q == other.q
            and self.cells == other.cells
        )

    def __repr__(self) -> str:
        return f"GridSet(q={self.q}, cells={len(self.cells)})"


def _interval_transform(x: int, i: int, q: int) -> complex:
    """Integral of exp(-2*pi*i*x*t) over [i/q, (i+1)/q]."""
    if x == 0:
        return 1.0 / q
    a = -2j * pi * x
    return (cmath.exp(a * (i + 1) / q) - cmath.exp(a * i / q)) / a


def grid_fourier(G: GridSet, x: Freq) -> complex:
    """Fourier coefficient of the indicator of G at frequency x.

    Closed-form product of one-dimensional character integrals per cell;
    deterministic float evaluation with absolute error below 1e-12 at
    desk-scale resolutions.
    """
    x1, x2 = x
    col = {}
    row = {}
    total = 0.0 + 0.0j
    for i, j in G.cells:
        if i not in col:
            col[i] = _interval_transform(x1, i, G.q)
        if j not in row:
            row[j] = _interval_transform(x2, j, G.q)
        total += col[i] * row[j]
    return total


def _fourier_decay_constant(G: GridSet) -> float:
    """C with |Ghat(x)| <= C / max(1, |x|_inf) for every frequency x.

    One factor of the product form is bounded by 1/(pi*|x_m|) for the
    coordinate realizing |x|_inf, the other by the cell width 1/q; there
    are at most |cells| terms.
    """
    return len(G.cells) / (G.q * pi)


def lattice_correlation(
    Gs: list[GridSet], Ms: list[Mat2Z], Q: int
) -> tuple[Fraction, float]:
    """Lattice estimate of mu(G_0 \\cap M_1^{-1}G_1 \\cap ...).

    Counts points p of the (1/Q)-lattice with p in G_0 and M_i p in G_i
    for all i, in exact modular integer arithmetic; the count divided by
    Q^2 is returned as an exact rational.

    The reported error bound is (2/Q) * sum_i per_i with
    per_i = boundary_edges(G_i)/q_i * stretch(M_i^{-1}), where stretch is
    the maximum column absolute sum of the inverse matrix.  Each boundary
    edge of G_i pulls back to a segment crossing at most stretch * Q/q_i
    lattice cells, and only cells meeting the pulled-back boundary can be
    miscounted; the bound is O(1/Q) by construction (halving under
    Q-doubling) and validated empirically rather than claimed sharp.
    """
    if len(Gs) != len(Ms) + 1:
        raise ValueError("need k+1 grid sets for k matrices")
    for G in Gs:
        if Q % G.q != 0:
            raise ResolutionMismatch(f"Q={Q} not a multiple of q={G.q}")

    def mask_table(G: GridSet) -> np.ndarray:
        t = np.zeros((G.q, G.q), dtype=bool)
        for i, j in G.cells:
            t[i, j] = True
        return t

    base = Gs[0]
    base_tab = mask_table(base)
    tabs = [mask_table(G) for G in Gs[1:]]
    u = np.arange(Q, dtype=np.int64)
    count = 0
    chunk = max(1, (1 << 22) // Q)
    for start in range(0, Q, chunk):
        ub = u[start : start + chunk]
        iu = (ub * base.q) // Q
        jv = (u * base.q) // Q
        mask = base_tab[iu[:, None], jv[None, :]]
        for G, tab, M in zip(Gs[1:], tabs, Ms):
            a, b, c, d = (e % Q for e in M.entries())
            U = (a * ub[:, None] + b * u[None, :]) % Q
            V = (c * ub[:, None] + d * u[None, :]) % Q
            mask &= tab[(U * G.q) // Q, (V * G.q) // Q]
        count += int(mask.sum())
    estimate = Fraction(count, Q * Q)
    bound = 0.0
    for G, M in zip(Gs[1:], Ms):
        inv = M.inverse()
        stretch = max(abs(inv.a) + abs(inv.c), abs(inv.b) + abs(inv.d))
        bound += G.boundary_edges() / G.q * stretch
    return estimate, 2.0 * bound / Q


def _fourier_of(obj, x: Freq) -> complex:
    if isinstance(obj, TrigPoly):
        return complex(obj.coeff(x))
    return grid_fourier(obj, x)


def _is_exact(obj) -> bool:
    return isinstance(obj, TrigPoly)


def _axis_marginal_weights(G: GridSet, v: Freq) -> dict | None:
    """Cell weights of the projection of 1_G onto functions invariant
    along an axis-aligned frequency line v, or None if v is not axis
    aligned.  The projection is the marginal in the complementary
    coordinate, piecewise constant on the grid."""
    if v in ((1, 0), (-1, 0)):
        counts = G.column_counts()
        return {(i, j): Fraction(counts[i], G.q) for i in range(G.q) for j in range(G.q)}
    if v in ((0, 1), (0, -1)):
        counts = G.row_counts()
        return {(i, j): Fraction(counts[j], G.q) for i in range(G.q) for j in range(G.q)}
    return None


def _weighted_fourier(cells_w: dict, q: int, x: Freq) -> complex:
    x1, x2 = x
    col = {}
    row = {}
    total = 0.0 + 0.0j
    for (i, j), weight in cells_w.items():
        if weight == 0:
            continue
        if i not in col:
            col[i] = _interval_transform(x1, i, q)
        if j not in row:
            row[j] = _interval_transform(x2, j, q)
        total += float(weight) * col[i] * row[j]
    return total


def _grid_reduced_series(f: GridSet, g: GridSet, h: GridSet, v, w, R) -> tuple[complex, float]:
    """Double series with the inner sum over the v-line done exactly.

    sum_i fhat(x - iv) ghat(iv) is the Fourier coefficient of f * Pg at
    x, where Pg is the projection of g onto the v-invariant functions (a
    marginal when v is axis aligned), so only the outer sum over j is
    truncated; its tail decays like 1/j^2.
    """
    pg = _axis_marginal_weights(g, v)
    assert pg is not None
    if f.q != g.q:
        # refine onto a common grid by rescaling cell indices
        raise ResolutionMismatch("grid sets must share a resolution here")
    weights = {cell: pg[cell] for cell in f.cells}
    total = 0.0 + 0.0j
    for j in range(-R, R + 1):
        hj = grid_fourier(h, (j * w[0], j * w[1]))
        if hj == 0:
            continue
        total += _weighted_fourier(weights, f.q, (-j * w[0], -j * w[1])) * hj
    mass = sum(weights.values(), Fraction(0))
    k_u = float(mass) / (f.q * pi)
    k_h = _fourier_decay_constant(h)
    w_inf = max(abs(w[0]), abs(w[1]))
    tail = 2.0 * k_u * k_h / (w_inf * w_inf * max(R, 1))
    return total, tail


def limit_two_unipotents(f, g, h, T: Mat2Z, S: Mat2Z, R: int) -> tuple[complex, float]:
    """Truncated limit of the triple correlation for noncommuting
    unipotents: sum over |i|,|j| <= R of
    fhat(-i*v - j*w) * ghat(i*v) * hhat(j*w),
    with v, w the fixed frequencies of tT and tS.

    Exact (tail 0) when all three inputs are trigonometric polynomials.
    When all three are grid sets and one fixed line is axis aligned, the
    sum along that line is evaluated in closed form (the invariant
    projection of a grid set is a marginal), so only the transverse sum
    is truncated and its 1/R tail is reported; otherwise both indices
    are truncated with a coarser rigorous tail bound.
    """
    if T * S == S * T:
        raise CommutingUnipotents(f"{T} and {S} commute")
    v = fixed_vector(T.transpose())
    w = fixed_vector(S.transpose())
    if all(isinstance(obj, GridSet) for obj in (f, g, h)):
        if _axis_marginal_weights(g, v) is not None and f.q == g.q:
            return _grid_reduced_series(f, g, h, v, w, R)
        if _axis_marginal_weights(h, w) is not None and f.q == h.q:
            # symmetric role swap: project h along its own line instead
            return _grid_reduced_series(f, h, g, w, v, R)
    total = 0.0 + 0.0j
    for i in range(-R, R + 1):
        gi = _fourier_of(g, (i * v[0], i * v[1]))
        if gi == 0:
            continue
        for j in range(-R, R + 1):
            hj = _fourier_of(h, (j * w[0], j * w[1]))
            if hj == 0:
                continue
            fx = _fourier_of(f, (-i * v[0] - j * w[0], -i * v[1] - j * w[1]))
            total += fx * gi * hj
    if _is_exact(f) and _is_exact(g) and _is_exact(h):
        # supports are finite; residual terms beyond R are summed exactly
        tail = _exact_trig_tail(f, g, h, v, w, R)
        return total, tail
    return total, _grid_tail_bound(f, g, h, v, w, R)


def _exact_trig_tail(f, g, h, v, w, R) -> float:
    """Absolute sum of series terms outside the truncation box (exact
    inputs only); zero whenever the supports fit inside the box."""
    det = v[0] * w[1] - v[1] * w[0]
    tail = Fraction(0)
    i_hits = set()
    for (x1, x2), _ in g.items():
        # x = i*v needs x parallel to v with integer ratio
        if x1 * v[1] == x2 * v[0]:
            i = x1 // v[0] if v[0] else x2 // v[1]
            if (i * v[0], i * v[1]) == (x1, x2):
                i_hits.add(i)
    j_hits = set()
    for (x1, x2), _ in h.items():
        if x1 * w[1] == x2 * w[0]:
            j = x1 // w[0] if w[0] else x2 // w[1]
            if (j * w[0], j * w[1]) == (x1, x2):
                j_hits.add(j)
    assert det != 0
    for i in i_hits:
        for j in j_hits:
            if abs(i) <= R and abs(j) <= R:
                continue
            term = (
                f.coeff((-i * v[0] - j * w[0], -i * v[1] - j * w[1]))
                * g.coeff((i * v[0], i * v[1]))
                * h.coeff((j * w[0], j * w[1]))
            )
            tail += abs(complex(term))
    return float(tail)


_ZETA_3_2 = 2.6123753486854883


def _decay_data(obj) -> tuple[float, float]:
    """(mean magnitude bound, decay constant K) for tail majorization."""
    if isinstance(obj, TrigPoly):
        mu = float(sum((c.abs_sq() for _, c in obj.items()), Fraction(0))) ** 0.5
        K = max(
            (abs(complex(c)) * max(1, abs(x[0]), abs(x[1])) for x, c in obj.items()),
            default=0.0,
        )
        return mu, K
    return float(obj.measure), _fourier_decay_constant(obj)


def _grid_tail_bound(f, g, h, v, w, R) -> float:
    """Rigorous over-estimate of the absolute tail of the double series.

    Uses |fhat(-iv-jw)| <= Kf / (c * max(|i|,|j|)) with c derived from the
    inverse of the integer matrix [v w] (v, w independent since T, S do
    not commute), |ghat(iv)| <= Kg/|i| and |hhat(jw)| <= Kh/|j|, then
    max(|i|,|j|) >= sqrt(|i||j|) to split the double sum.
    """
    mu_f, K_f = _decay_data(f)
    mu_g, K_g = _decay_data(g)
    mu_h, K_h = _decay_data(h)
    det = abs(v[0] * w[1] - v[1] * w[0])
    adj_max = max(abs(v[0]), abs(v[1]), abs(w[0]), abs(w[1]))
    c = det / (2.0 * adj_max)
    # axis terms (j = 0 or i = 0, the other index beyond R)
    axis = (mu_h * K_f * K_g + mu_g * K_f * K_h) * 2.0 / (c * max(R, 1))
    # interior terms with max(|i|,|j|) > R
    interior = (
        K_f
        * K_g
        * K_h
        / c
        * 2.0
        * (4.0 / max(R, 1) ** 0.5)
        * (2.0 * _ZETA_3_2)
    )
    return axis + interior
