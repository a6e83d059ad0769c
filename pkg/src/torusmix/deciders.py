"""Exact decision procedures for mixing, joint mixing and relative joint
mixing of SL(2,Z) sequences.

Every negative verdict carries a machine-checkable witness: an integer
frequency tuple making the transported frequency sum vanish along an
arithmetic progression of n recorded in the reasons.  All decisions are
exact; the only arithmetic is integer, rational and quadratic-field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    NotCommuting,
    NotHyperbolic,
    NotUnipotent,
    SharedModulusPairOnly,
    TracesDiffer,
)
from .families import PolyMatFamily
from .intmat import IDENTITY, Mat2Z, classify, fixed_vector
from .linalg import smallest_kernel_witness
from .polynomials import IntPoly
from .quadfield import eigen_data

__all__ = [
    "Verdict",
    "MIXING",
    "NOT_MIXING",
    "JOINTLY_MIXING",
    "NOT_JOINTLY_MIXING",
    "RELATIVELY_JOINTLY_MIXING",
    "NOT_RELATIVELY_JOINTLY_MIXING",
    "SUFFICIENT_CONDITION_HOLDS",
    "UNKNOWN",
    "decide_element_mixing",
    "decide_polyfamily_mixing",
    "decide_joint_powers",
    "witness_same_modulus_triple",
    "decide_joint_polyfamilies",
    "decide_commuting_joint",
    "check_rokhlin_sufficient",
    "decide_relative_joint_unipotent",
]

MIXING = "Mixing"
NOT_MIXING = "NotMixing"
JOINTLY_MIXING = "JointlyMixing"
NOT_JOINTLY_MIXING = "NotJointlyMixing"
RELATIVELY_JOINTLY_MIXING = "RelativelyJointlyMixing"
NOT_RELATIVELY_JOINTLY_MIXING = "NotRelativelyJointlyMixing"
SUFFICIENT_CONDITION_HOLDS = "SufficientConditionHolds"
UNKNOWN = "Unknown"

_NEGATIVE = {NOT_MIXING, NOT_JOINTLY_MIXING, NOT_RELATIVELY_JOINTLY_MIXING}


@dataclass(frozen=True)
class Verdict:
    """Decision outcome with optional witness and machine-readable reasons.

    The witness of a negative verdict is a tuple of integer vectors
    (x_1, ..., x_k, y); for relative verdicts it is (alpha, z).  Reasons
    use stable colon-separated codes, e.g. "EqualUpToSign:0,1" or
    "ValidOnProgression:0 mod 2".
    """

    answer: str
    witness: tuple | None = None
    reasons: tuple = ()

    def __post_init__(self):
        if self.answer in _NEGATIVE and self.witness is None:
            raise ValueError(f"{self.answer} verdict requires a witness")

    @property
    def positive(self) -> bool:
        return self.answer not in _NEGATIVE and self.answer != UNKNOWN

    def to_dict(self) -> dict:
        return {
            "answer": self.answer,
            "witness": [list(v) for v in self.witness] if self.witness else None,
            "reasons": list(self.reasons),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _progression(residue: int, modulus: int) -> str:
    return f"ValidOnProgression:{residue} mod {modulus}"


def _element_witness(T: Mat2Z) -> tuple[tuple, tuple, str]:
    """Non-mixing witness (x, y) and validity progression for a
    non-hyperbolic T."""
    cls = classify(T)
    if cls.is_unipotent:
        v = fixed_vector(T.transpose())
        if cls.sign == 1:
            # tT^n v = v for all n
            return v, (-v[0], -v[1]), _progression(0, 1)
        # tT^n v = (-1)^n v; cancel on even n
        return v, (-v[0], -v[1]), _progression(0, 2)
    m = cls.order
    x = (1, 0)
    return x, (-1, 0), _progression(0, m)


def decide_element_mixing(T: Mat2Z) -> Verdict:
    """A single toral automorphism sequence T^n mixes iff T is hyperbolic.

    Otherwise some nonzero frequency x returns to itself under tT^n along
    an arithmetic progression, so the correlation of chi_x with chi_{-x}
    does not decay; that (x, y) pair is the witness.
    """
    cls = classify(T)
    if cls.is_hyperbolic:
        return Verdict(MIXING, reasons=("Hyperbolic",))
    x, y, prog = _element_witness(T)
    code = "UnipotentFixedFrequency" if cls.is_unipotent else f"FiniteOrder:{cls.order}"
    return Verdict(NOT_MIXING, witness=(x, y), reasons=(code, prog))


def _transpose_coeff_rows(F: PolyMatFamily, degrees: range) -> list[list[int]]:
    pa, pc, pb, pd = F.transpose_entries()
    rows = []
    for k in degrees:
        rows.append([pa.coeff(k), pc.coeff(k)])
        rows.append([pb.coeff(k), pd.coeff(k)])
    return rows


def _max_degree(F: PolyMatFamily) -> int:
    return max(p.degree for p in F.entries())


def decide_polyfamily_mixing(F: PolyMatFamily) -> Verdict:
    """Mixing test for a family with polynomial entries.

    The frequency identity tF(n)x + y = 0 holds for infinitely many n iff
    it holds as a polynomial identity in n.  The degree >= 1 coefficients
    give a linear system in x alone; y is then forced by the constant
    part.  A nonzero rational kernel vector, scaled to primitive
    integers, is the witness.
    """
    rows = _transpose_coeff_rows(F, range(1, _max_degree(F) + 1))
    x = smallest_kernel_witness(rows, 2)
    if x is None:
        return Verdict(MIXING, reasons=("NoKernel",))
    pa, pc, pb, pd = F.transpose_entries()
    y = (
        -(pa.coeff(0) * x[0] + pc.coeff(0) * x[1]),
        -(pb.coeff(0) * x[0] + pd.coeff(0) * x[1]),
    )
    return Verdict(
        NOT_MIXING, witness=(x, y), reasons=("KernelWitness", _progression(0, 1))
    )


def witness_same_modulus_triple(Ts: list[Mat2Z]) -> tuple[tuple, tuple, tuple]:
    """Cancellation witness for three hyperbolic matrices sharing |trace|.

    After normalizing traces positive, each tT_i splits as
    lam*P_{i,+} + lam^{-1}*P_{i,-} over the common field Q(sqrt(d)).  The
    identity sum_i tT_i^n x_i = 0 for all n is equivalent to
    sum_i P_{i,+} x_i = 0 (its Galois conjugate is the P_- equation), a
    4x6 rational system whose kernel has dimension >= 2, so a nonzero
    integer solution always exists.

    When any input trace is negative the witness is valid on even n only;
    callers consult the trace signs.
    """
    if len(Ts) == 2:
        raise SharedModulusPairOnly(
            "two matrices with a shared modulus admit no cancellation witness"
        )
    if len(Ts) != 3:
        raise ValueError("need exactly three matrices")
    traces = [abs(T.trace) for T in Ts]
    if len(set(traces)) != 1:
        raise TracesDiffer(f"traces {[T.trace for T in Ts]}")
    if traces[0] <= 2:
        raise NotHyperbolic("shared-modulus witness needs |trace| > 2")
    for i in range(3):
        for j in range(i + 1, 3):
            if Ts[i] == Ts[j] or Ts[i] == -Ts[j]:
                raise ValueError(f"inputs {i} and {j} are equal up to sign")
    norm = [T if T.trace > 0 else -T for T in Ts]
    eds = [eigen_data(T.transpose()) for T in norm]
    # rows: rational and surd parts of the two P_+ equations
    rows = []
    for r in range(2):
        rat = []
        surd = []
        for ed in eds:
            for c in range(2):
                entry = ed.p_plus[r][c]
                rat.append(entry.p)
                surd.append(entry.q)
        rows.append(rat)
        rows.append(surd)
    sol = smallest_kernel_witness(rows, 6)
    assert sol is not None, "4x6 system cannot have full column rank"
    return (sol[0], sol[1]), (sol[2], sol[3]), (sol[4], sol[5])


def _embed(k: int, i: int, x: tuple, y: tuple) -> tuple:
    vecs = [(0, 0)] * k
    vecs[i] = x
    return tuple(vecs) + (y,)


def decide_joint_powers(Ts: list[Mat2Z]) -> Verdict:
    """Joint mixing of the power sequences T_1^n, ..., T_k^n.

    Holds exactly when every T_i is hyperbolic, no two agree up to sign,
    and no three share an eigenvalue modulus (equivalently |trace|, which
    determines |lambda| monotonically).  Each failure mode produces an
    explicit cancellation witness.
    """
    k = len(Ts)
    if k < 1:
        raise ValueError("need at least one matrix")
    for i, T in enumerate(Ts):
        cls = classify(T)
        if not cls.is_hyperbolic:
            x, y, prog = _element_witness(T)
            return Verdict(
                NOT_JOINTLY_MIXING,
                witness=_embed(k, i, x, y),
                reasons=(f"NonHyperbolicFactor:{i}", prog),
            )
    for i in range(k):
        for j in range(i + 1, k):
            if Ts[i] == Ts[j]:
                vecs = [(0, 0)] * k
                vecs[i], vecs[j] = (1, 0), (-1, 0)
                return Verdict(
                    NOT_JOINTLY_MIXING,
                    witness=tuple(vecs) + ((0, 0),),
                    reasons=(f"EqualUpToSign:{i},{j}", _progression(0, 1)),
                )
            if Ts[i] == -Ts[j]:
                # tT_j^n = (-1)^n tT_i^n, so equal frequencies cancel on odd n
                vecs = [(0, 0)] * k
                vecs[i] = vecs[j] = (1, 0)
                return Verdict(
                    NOT_JOINTLY_MIXING,
                    witness=tuple(vecs) + ((0, 0),),
                    reasons=(f"EqualUpToSign:{i},{j}", _progression(1, 2)),
                )
    by_modulus: dict[int, list[int]] = {}
    for i, T in enumerate(Ts):
        by_modulus.setdefault(abs(T.trace), []).append(i)
    for indices in by_modulus.values():
        if len(indices) >= 3:
            a, b, c = indices[:3]
            xa, xb, xc = witness_same_modulus_triple([Ts[a], Ts[b], Ts[c]])
            vecs = [(0, 0)] * k
            vecs[a], vecs[b], vecs[c] = xa, xb, xc
            even = any(Ts[i].trace < 0 for i in (a, b, c))
            prog = _progression(0, 2) if even else _progression(0, 1)
            return Verdict(
                NOT_JOINTLY_MIXING,
                witness=tuple(vecs) + ((0, 0),),
                reasons=(f"ThreeSharedModulus:{a},{b},{c}", prog),
            )
    return Verdict(JOINTLY_MIXING, reasons=("AllHyperbolicAtMostTwoPerModulus",))


def decide_joint_polyfamilies(Fs: list[PolyMatFamily]) -> Verdict:
    """Joint mixing for families with polynomial entries.

    The identity tF_1(n)x_1 + ... + tF_k(n)x_k + y = 0 for infinitely
    many n is a polynomial identity; its degree >= 1 coefficients give a
    rational system in (x_1, ..., x_k) and the constant part determines y.
    """
    k = len(Fs)
    if k < 1:
        raise ValueError("need at least one family")
    maxdeg = max(_max_degree(F) for F in Fs)
    rows = []
    for deg in range(1, maxdeg + 1):
        row1, row2 = [], []
        for F in Fs:
            pa, pc, pb, pd = F.transpose_entries()
            row1.extend([pa.coeff(deg), pc.coeff(deg)])
            row2.extend([pb.coeff(deg), pd.coeff(deg)])
        rows.append(row1)
        rows.append(row2)
    sol = smallest_kernel_witness(rows, 2 * k)
    if sol is None:
        return Verdict(JOINTLY_MIXING, reasons=("NoKernel",))
    xs = [(sol[2 * i], sol[2 * i + 1]) for i in range(k)]
    y0 = y1 = 0
    for F, x in zip(Fs, xs):
        pa, pc, pb, pd = F.transpose_entries()
        y0 += pa.coeff(0) * x[0] + pc.coeff(0) * x[1]
        y1 += pb.coeff(0) * x[0] + pd.coeff(0) * x[1]
    return Verdict(
        NOT_JOINTLY_MIXING,
        witness=tuple(xs) + ((-y0, -y1),),
        reasons=("KernelWitness", _progression(0, 1)),
    )


def decide_commuting_joint(Ts: list[Mat2Z]) -> Verdict:
    """Joint mixing criterion for pairwise commuting matrices.

    For commuting tuples, joint mixing of the power sequences holds iff
    every T_i and every quotient T_i^{-1} T_j (i != j) is hyperbolic.
    Commuting hyperbolic matrices share irrational eigenlines, so a
    non-hyperbolic quotient can only be +/-I, i.e. T_j = +/-T_i, which
    yields a direct cancellation witness.
    """
    k = len(Ts)
    if k < 1:
        raise ValueError("need at least one matrix")
    for i in range(k):
        for j in range(i + 1, k):
            if Ts[i] * Ts[j] != Ts[j] * Ts[i]:
                raise NotCommuting(f"inputs {i} and {j} do not commute")
    for i, T in enumerate(Ts):
        if not classify(T).is_hyperbolic:
            x, y, prog = _element_witness(T)
            return Verdict(
                NOT_JOINTLY_MIXING,
                witness=_embed(k, i, x, y),
                reasons=(f"NonHyperbolicFactor:{i}", prog),
            )
    for i in range(k):
        for j in range(i + 1, k):
            Q = Ts[i].inverse() * Ts[j]
            if classify(Q).is_hyperbolic:
                continue
            # commuting hyperbolic matrices share eigenlines, so the
            # quotient is hyperbolic or +/-I
            assert Q == IDENTITY or Q == -IDENTITY
            vecs = [(0, 0)] * k
            if Q == IDENTITY:
                vecs[i], vecs[j] = (1, 0), (-1, 0)
                prog = _progression(0, 1)
            else:
                vecs[i] = vecs[j] = (1, 0)
                prog = _progression(1, 2)
            return Verdict(
                NOT_JOINTLY_MIXING,
                witness=tuple(vecs) + ((0, 0),),
                reasons=(f"EqualUpToSign:{i},{j}", prog),
            )
    return Verdict(JOINTLY_MIXING, reasons=("AllQuotientsHyperbolic",))


def _abs_dominant_eigen(T: Mat2Z):
    """(|lambda|, d) for hyperbolic T as an exact quadratic value."""
    ed = eigen_data(T)
    lam = ed.lam
    return (lam if lam.sign() > 0 else -lam), ed.d


def _log_terms_equal(lam_i, d_i, c_i: int, lam_j, d_j, c_j: int) -> bool:
    """Whether c_i*log|lam_i| == c_j*log|lam_j| exactly.

    Both |lam| > 1 so the logs are positive; coefficients of opposite
    sign (or exactly one zero) can never match.  Equal-field values are
    compared by exact powers; distinct square-free fields can never agree
    because a power of a degree-2 unit is irrational.
    """
    if c_i == 0 and c_j == 0:
        return True
    if c_i == 0 or c_j == 0 or (c_i > 0) != (c_j > 0):
        return False
    if d_i != d_j:
        return False
    return lam_i ** abs(c_i) == lam_j ** abs(c_j)


def check_rokhlin_sufficient(Ts: list[Mat2Z], exps: list[IntPoly]) -> Verdict:
    """Sufficient joint-mixing test for T_1^{a_1(n)}, ..., T_k^{a_k(n)}.

    Holds when log|lam_i|*a_i(n) - log|lam_j|*a_j(n) diverges for every
    pair, including each i against the zero exponent.  The combined
    polynomial is nonconstant iff some degree >= 1 coefficient pair
    differs, which is decided exactly in the quadratic fields.  Returns
    Unknown when some gap stays constant: the condition is sufficient,
    not necessary.
    """
    if len(Ts) != len(exps):
        raise ValueError("matrix/exponent length mismatch")
    if not Ts:
        raise ValueError("need at least one matrix")
    data = []
    for T in Ts:
        if not classify(T).is_hyperbolic:
            raise NotHyperbolic(str(T))
        data.append(_abs_dominant_eigen(T))
    failures = []
    for i, a in enumerate(exps):
        if a.is_constant:
            failures.append(f"ConstantGap:0,{i + 1}")
    for i in range(len(Ts)):
        for j in range(i + 1, len(Ts)):
            li, di = data[i]
            lj, dj = data[j]
            top = max(exps[i].degree, exps[j].degree)
            diverges = any(
                not _log_terms_equal(
                    li, di, exps[i].coeff(deg), lj, dj, exps[j].coeff(deg)
                )
                for deg in range(1, top + 1)
            )
            if not diverges:
                failures.append(f"ConstantGap:{i + 1},{j + 1}")
    if failures:
        return Verdict(UNKNOWN, reasons=tuple(failures))
    return Verdict(SUFFICIENT_CONDITION_HOLDS, reasons=("AllGapsDiverge",))


def decide_relative_joint_unipotent(Us: list[Mat2Z], exps: list[IntPoly]) -> Verdict:
    """Relative joint mixing of U_1^{a_1(n)}, ..., U_k^{a_k(n)} for
    genuinely unipotent U_i (trace exactly 2, not the identity).

    Writing v_i for the fixed frequency of tU_i, the obstruction is a
    nonzero integer tuple alpha with
    sum_i alpha_i * a_i(n) * v_i + z = 0 for all n; the degree >= 1
    coefficients give a rational system in alpha and z absorbs the
    constant part.
    """
    if len(Us) != len(exps):
        raise ValueError("matrix/exponent length mismatch")
    k = len(Us)
    if k < 1:
        raise ValueError("need at least one matrix")
    vs = []
    for U in Us:
        cls = classify(U)
        if not (cls.is_unipotent and cls.sign == 1):
            raise NotUnipotent(
                f"{U} is not unipotent with trace 2; trace -2 inputs carry "
                "an alternating sign and are out of scope"
            )
        vs.append(fixed_vector(U.transpose()))
    maxdeg = max(a.degree for a in exps)
    rows = []
    for deg in range(1, max(maxdeg, 0) + 1):
        rows.append([a.coeff(deg) * v[0] for a, v in zip(exps, vs)])
        rows.append([a.coeff(deg) * v[1] for a, v in zip(exps, vs)])
    alpha = smallest_kernel_witness(rows, k)
    if alpha is None:
        return Verdict(RELATIVELY_JOINTLY_MIXING, reasons=("NoKernel",))
    z = (
        -sum(al * a.coeff(0) * v[0] for al, a, v in zip(alpha, exps, vs)),
        -sum(al * a.coeff(0) * v[1] for al, a, v in zip(alpha, exps, vs)),
    )
    return Verdict(
        NOT_RELATIVELY_JOINTLY_MIXING,
        witness=(alpha, z),
        reasons=("KernelWitness", _progression(0, 1)),
    )
