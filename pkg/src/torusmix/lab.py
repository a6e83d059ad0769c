"""Experiments: recurrence scans, Rokhlin-type ratio reports, order-2
mixing counterexamples, unipotent word search and orthogonalization
moduli for cyclic hyperbolic subgroups.

Unlike the deciders, most outputs here are numeric reports with error
bounds rather than verdicts; classifications are only asserted when the
bounds separate the candidates.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .deciders import Verdict, decide_joint_powers, witness_same_modulus_triple
from .errors import (
    CommutingInputs,
    NonHyperbolicSample,
    NotHyperbolic,
    ZeroFrequencyPresent,
)
from .families import PolyMatFamily
from .intmat import IDENTITY, Mat2Z, classify, fixed_vector, mat_pow
from .oracle import QC_ZERO, GridSet, TrigPoly, char_correlation, lattice_correlation
from .polynomials import IntPoly

__all__ = [
    "ScanReport",
    "conjecture_scan",
    "RokhlinReport",
    "rokhlin_report",
    "Order2Report",
    "order2_counterexample",
    "find_unipotent",
    "KrengelCertificate",
    "krengel_orthogonal",
]

CSV_HEADER = "# torusmix-report v1"


@dataclass(frozen=True)
class ScanReport:
    """Per-n correlation estimates with bounds and a theory comparison.

    limit_kind is "constant", "two-point" or "undetermined"; limit_values
    holds the exactly computed candidate limits when theory applies.  The
    plateau lists the n whose transported grids are fine enough to trust
    (matrix norm times grid resolution between sqrt(Q) and Q/16): below
    it the finite-n correlation has not converged to the limit, above it
    the lattice no longer resolves the pulled-back cells.
    """

    pair_kind: str
    rows: tuple  # (n, Fraction estimate, float bound)
    limit_kind: str
    limit_values: tuple
    plateau: tuple
    comparisons: dict

    def to_csv(self) -> str:
        lines = [CSV_HEADER, "n,estimate,error_bound"]
        for n, est, bound in self.rows:
            lines.append(f"{n},{float(est):.12g},{bound:.6g}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "pair_kind": self.pair_kind,
            "rows": [
                {"n": n, "estimate": str(est), "error_bound": bound}
                for n, est, bound in self.rows
            ],
            "limit_kind": self.limit_kind,
            "limit_values": [str(v) for v in self.limit_values],
            "plateau": list(self.plateau),
            "comparisons": {k: str(v) for k, v in self.comparisons.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _reflected_measure(D: GridSet) -> Fraction:
    """mu(D intersect -D) on the cell grid."""
    q = D.q
    hits = sum(
        1 for (i, j) in D.cells if ((q - 1 - i) % q, (q - 1 - j) % q) in D.cells
    )
    return Fraction(hits, q * q)


def _invariant_mass(D: GridSet, v: tuple[int, int]) -> Fraction | None:
    """Squared L2 norm of the projection of 1_D onto the functions
    invariant under a unipotent with transposed fixed frequency v.

    Exact for axis-aligned fixed lines (the projection is the marginal
    along the complementary coordinate); None otherwise.
    """
    if v in ((1, 0), (-1, 0)):
        counts = D.column_counts()
    elif v in ((0, 1), (0, -1)):
        counts = D.row_counts()
    else:
        return None
    q = D.q
    return sum(Fraction(c, q) ** 2 for c in counts) * Fraction(1, q)


def _classify_pair(T: Mat2Z, S: Mat2Z, D: GridSet):
    mu = D.measure
    if T == S:
        if classify(T).is_hyperbolic:
            return "equal-hyperbolic", "constant", (mu * mu,)
        return "equal-nonhyperbolic", "undetermined", ()
    if T == -S:
        if classify(T).is_hyperbolic:
            return (
                "negatives-hyperbolic",
                "two-point",
                (mu * mu, _reflected_measure(D) * mu),
            )
        return "negatives-nonhyperbolic", "undetermined", ()
    cT, cS = classify(T), classify(S)
    if cT.is_hyperbolic and cS.is_hyperbolic:
        return "hyperbolic/hyperbolic", "constant", (mu**3,)
    if cT.is_unipotent and cS.is_hyperbolic or cS.is_unipotent and cT.is_hyperbolic:
        U, cU = (T, cT) if cT.is_unipotent else (S, cS)
        mass = None
        if cU.sign == 1:  # trace -2 alternates sign with n
            mass = _invariant_mass(D, fixed_vector(U.transpose()))
        if mass is not None:
            return "unipotent/hyperbolic", "constant", (mu * mass,)
        return "unipotent/hyperbolic", "undetermined", ()
    if cT.is_unipotent and cS.is_unipotent:
        return "unipotent/unipotent", "undetermined", ()
    return "other", "undetermined", ()


def conjecture_scan(T: Mat2Z, S: Mat2Z, D: GridSet, n_max: int, Q: int) -> ScanReport:
    """Estimate mu(D intersect T^n D intersect S^n D) for n = 1..n_max.

    A lattice point p lies in T^n D iff T^{-n} p lies in D, so each n is
    one lattice_correlation call with the inverse powers.  The applicable
    theoretical limit (product of measures, projection mass, or the
    two-point alternation for T = -S) is attached when computable.
    """
    rows = []
    plateau = []
    lo, hi = isqrt(Q), Q // 16
    for n in range(1, n_max + 1):
        Ms = [mat_pow(T, -n), mat_pow(S, -n)]
        est, bound = lattice_correlation([D, D, D], Ms, Q)
        rows.append((n, est, bound))
        scale = D.q * max(M.norm for M in Ms)
        if lo <= scale <= hi:
            plateau.append(n)
    mu = D.measure
    pair_kind, limit_kind, values = _classify_pair(T, S, D)
    comparisons = {
        "mu^2": mu * mu,
        "mu^3": mu**3,
        "mu(D&-D)*mu": _reflected_measure(D) * mu,
    }
    return ScanReport(
        pair_kind=pair_kind,
        rows=tuple(rows),
        limit_kind=limit_kind,
        limit_values=values,
        plateau=tuple(plateau),
        comparisons=comparisons,
    )


@dataclass(frozen=True)
class RokhlinReport:
    """Per-n norm-versus-eigenvalue ratios ||T_n|| / lambda_n^{gamma_n}.

    gamma_n is the minimal exponent gap min |a_i(n) - a_j(n)| over
    0 <= i < j <= k with a_0 = 0.  The ratio is bracketed by an exact
    dyadic interval for lambda_n, so the trend flag is conservative.
    The vanishing of the ratio is sufficient for joint mixing, never
    necessary.
    """

    rows: tuple  # (n, norm, gamma, ratio_lo, ratio_hi)
    trend: str  # "->0" | "bounded" | "unbounded"

    def to_csv(self) -> str:
        lines = [CSV_HEADER, "n,norm,gamma,ratio_lo,ratio_hi"]
        for n, norm, gamma, rlo, rhi in self.rows:
            lines.append(f"{n},{norm},{gamma},{rlo:.6g},{rhi:.6g}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "rows": [
                {
                    "n": n,
                    "norm": norm,
                    "gamma": gamma,
                    "ratio_lo": rlo,
                    "ratio_hi": rhi,
                }
                for n, norm, gamma, rlo, rhi in self.rows
            ],
            "trend": self.trend,
            "note": "sufficient-only",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


_DYADIC_BITS = 20


def _lambda_interval(T: Mat2Z) -> tuple[float, float]:
    """Enclosing dyadic interval for the eigenvalue modulus |lambda| > 1."""
    t = abs(T.trace)
    r = isqrt((t * t - 4) << (2 * _DYADIC_BITS))
    scale = float(1 << _DYADIC_BITS)
    return (t + r / scale) / 2, (t + (r + 1) / scale) / 2


def _safe_ratio(norm: int, lam: float, gamma: int) -> float:
    try:
        return math.exp(math.log(norm) - gamma * math.log(lam))
    except OverflowError:
        return math.inf


def rokhlin_report(family: PolyMatFamily, exps: list[IntPoly], n_range) -> RokhlinReport:
    rows = []
    for n in n_range:
        T = family(n)
        if not classify(T).is_hyperbolic:
            raise NonHyperbolicSample(f"family member at n={n}: {T}")
        values = [0] + [a(n) for a in exps]
        gamma = min(
            abs(values[i] - values[j])
            for i in range(len(values))
            for j in range(i + 1, len(values))
        )
        lam_lo, lam_hi = _lambda_interval(T)
        rows.append(
            (n, T.norm, gamma, _safe_ratio(T.norm, lam_hi, gamma),
             _safe_ratio(T.norm, lam_lo, gamma))
        )
    if not rows:
        raise ValueError("empty n range")
    his = [r[4] for r in rows]
    los = [r[3] for r in rows]
    mid = len(rows) // 2
    if his[-1] <= 1e-3 or his[-1] * 100 < his[0]:
        trend = "->0"
    elif los[-1] >= 1.8 * max(los[mid], 1e-12) and los[-1] > los[0]:
        trend = "unbounded"
    else:
        trend = "bounded"
    return RokhlinReport(rows=tuple(rows), trend=trend)


@dataclass(frozen=True)
class Order2Report:
    """Three conjugates of one hyperbolic matrix that are pairwise
    jointly mixing yet fail joint mixing as a triple."""

    triple: tuple
    witness: tuple
    pair_verdicts: tuple
    verified_n: tuple

    def to_dict(self) -> dict:
        return {
            "triple": [str(h) for h in self.triple],
            "witness": [list(x) for x in self.witness],
            "pair_verdicts": [v.to_dict() for v in self.pair_verdicts],
            "verified_n": list(self.verified_n),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def order2_counterexample(g: Mat2Z, h: Mat2Z) -> Order2Report:
    """Conjugates h_i = g^{-i} h g^i sharing |trace|: every pair is
    jointly mixing but the triple is not, so mixing of order 2 fails.

    Requires g, h hyperbolic with gh != hg and g^2 h != h g^2 (the
    second guarantees the conjugates stay pairwise distinct up to sign).
    """
    for M in (g, h):
        if not classify(M).is_hyperbolic:
            raise NotHyperbolic(str(M))
    if g * h == h * g:
        raise CommutingInputs("g and h commute")
    g2 = g * g
    if g2 * h == h * g2:
        raise CommutingInputs("g^2 and h commute")
    triple = tuple(mat_pow(g, -i) * h * mat_pow(g, i) for i in (1, 2, 3))
    witness = witness_same_modulus_triple(list(triple))
    step = 2 if h.trace < 0 else 1
    verified = []
    for n in range(step, 31, step):
        Ms = [mat_pow(hi, n) for hi in triple]
        assert char_correlation(list(witness), (0, 0), Ms) == 1
        verified.append(n)
    pairs = tuple(
        decide_joint_powers([triple[i], triple[j]])
        for i in range(3)
        for j in range(i + 1, 3)
    )
    assert all(v.answer == "JointlyMixing" for v in pairs)
    return Order2Report(
        triple=triple,
        witness=witness,
        pair_verdicts=pairs,
        verified_n=tuple(verified),
    )


def find_unipotent(generators: list[Mat2Z], L: int) -> list[int] | None:
    """Breadth-first search for a unipotent word over the generators.

    Words are lists of nonzero indices: +i means generators[i-1], -i its
    inverse.  Reduced words (no immediate backtracking) are enumerated by
    (length, lexicographic) order with matrix-value deduplication; the
    first word whose matrix has |trace| = 2 and is not +/-I is returned,
    None if no such word exists up to length L (a semidecision only).
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    letters = []
    for i in range(len(generators)):
        letters.append(i + 1)
        letters.append(-(i + 1))

    def mat_of(letter: int) -> Mat2Z:
        base = generators[abs(letter) - 1]
        return base if letter > 0 else base.inverse()

    seen = {IDENTITY}
    frontier = [((), IDENTITY)]
    for _ in range(L):
        nxt = []
        for word, M in frontier:
            for letter in letters:
                if word and word[-1] == -letter:
                    continue
                N = M * mat_of(letter)
                if N in seen:
                    continue
                seen.add(N)
                new_word = word + (letter,)
                if abs(N.trace) == 2 and N != IDENTITY and N != -IDENTITY:
                    return list(new_word)
                nxt.append((new_word, N))
        frontier = nxt
    return None


@dataclass(frozen=True)
class KrengelCertificate:
    """Orthogonalization modulus for f along the cyclic group of T.

    transport_set lists the k != 0 with tT^k mapping one support
    frequency of f onto another; modulus = 1 + max|transport_set| makes
    every nonzero multiple of it miss the set, so the corresponding
    correlations vanish exactly.  checked_k records the multiples
    verified by exact computation.
    """

    modulus: int
    transport_set: tuple
    checked_k: tuple

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "transport_set": list(self.transport_set),
            "checked_k": list(self.checked_k),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _self_correlation(f: TrigPoly, tpow: Mat2Z):
    """Exact <f o T^k, f> = sum_x fhat(x) * conj(fhat(tT^k x))."""
    total = QC_ZERO
    for x, c in f.items():
        total = total + c * f.coeff(tpow.apply(x)).conj()
    return total


def krengel_orthogonal(f: TrigPoly, T: Mat2Z, check_limit: int = 50) -> KrengelCertificate:
    if not f.coeff((0, 0)).is_zero:
        raise ZeroFrequencyPresent(
            "the zero frequency is fixed by every power, so a nonzero mean "
            "forces a nonzero self-correlation"
        )
    if not classify(T).is_hyperbolic:
        raise NotHyperbolic(str(T))
    support = f.support
    if not support:
        return KrengelCertificate(1, (), ())
    tT = T.transpose()
    max_norm = max(max(abs(x[0]), abs(x[1])) for x in support)
    supp_set = set(support)
    hits = []
    prev = {x: x for x in support}
    cur = {x: tT.apply(x) for x in support}
    k = 1
    while True:
        if any(v in supp_set for v in cur.values()):
            hits.append(k)
        # once every transported frequency grew past the support and past
        # its predecessor, the trace recurrence v_{k+1} = t*v_k - v_{k-1}
        # with |t| >= 3 keeps it growing, so no further hits can occur
        done = all(
            max(abs(cur[x][0]), abs(cur[x][1]))
            > max(max_norm, max(abs(prev[x][0]), abs(prev[x][1])))
            for x in support
        )
        if done:
            break
        assert k < 10_000, "transport search failed to terminate"
        prev, cur = cur, {x: tT.apply(v) for x, v in cur.items()}
        k += 1
    transport = sorted(set(hits) | {-h for h in hits})
    modulus = 1 + max((abs(b) for b in transport), default=0)
    checked = []
    for k in range(modulus, check_limit + 1, modulus):
        for signed in (k, -k):
            corr = _self_correlation(f, mat_pow(tT, signed))
            assert corr.is_zero, f"nonzero correlation at k={signed}"
            checked.append(signed)
    return KrengelCertificate(
        modulus=modulus,
        transport_set=tuple(transport),
        checked_k=tuple(sorted(checked)),
    )
