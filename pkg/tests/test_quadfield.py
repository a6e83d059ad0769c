import random
from fractions import Fraction

import pytest

from torusmix.errors import NotHyperbolic
from torusmix.intmat import Mat2Z, mat_pow
from torusmix.quadfield import QuadVal, eigen_data, squarefree_decompose


def test_squarefree_decompose():
    assert squarefree_decompose(1) == (1, 1)
    assert squarefree_decompose(12) == (2, 3)
    assert squarefree_decompose(5) == (1, 5)
    assert squarefree_decompose(72) == (6, 2)
    with pytest.raises(ValueError):
        squarefree_decompose(0)


def test_quadval_arithmetic():
    a = QuadVal(Fraction(1, 2), Fraction(3, 2), 5)
    b = QuadVal(Fraction(2), Fraction(-1), 5)
    assert (a + b).p == Fraction(5, 2)
    assert (a * b).p == Fraction(1) - Fraction(15, 2)
    assert a * a.inverse() == QuadVal.rational(1, 5)
    assert (a - a).p == 0 and (a - a).q == 0
    assert a.conj().q == -a.q
    assert a.field_norm() == a.p**2 - 5 * a.q**2


def test_quadval_mixed_fields_rejected():
    a = QuadVal(Fraction(1), Fraction(1), 5)
    b = QuadVal(Fraction(1), Fraction(1), 3)
    with pytest.raises(ValueError):
        a + b


def test_quadval_sign_exact():
    # sqrt(5) is between 11/5 and 9/4; comparisons must be exact
    assert QuadVal(Fraction(-11, 5), Fraction(1), 5).sign() == 1
    assert QuadVal(Fraction(-9, 4), Fraction(1), 5).sign() == -1
    assert QuadVal(Fraction(9, 4), Fraction(-1), 5).sign() == 1
    assert QuadVal(Fraction(0), Fraction(0), 5).sign() == 0
    assert abs(QuadVal(Fraction(1), Fraction(-2), 2)).sign() == 1


def _random_hyperbolic(rng) -> Mat2Z:
    M = Mat2Z(1, 0, 0, 1)
    shears = [Mat2Z(1, 1, 0, 1), Mat2Z(1, 0, 1, 1)]
    while abs(M.trace) <= 2:
        for _ in range(rng.randint(2, 6)):
            M = M * mat_pow(rng.choice(shears), rng.randint(-3, 3))
        if rng.random() < 0.3:
            M = -M
    return M


def test_eigen_reconstruction_and_galois():
    rng = random.Random(20240817)
    for _ in range(40):
        M = _random_hyperbolic(rng)
        ed = eigen_data(M)
        lam, lam_inv = ed.lam, ed.lam.conj()
        assert lam * lam_inv == QuadVal.rational(1, ed.d)
        ent = ((M.a, M.b), (M.c, M.d))
        for i in range(2):
            for j in range(2):
                rec = lam * ed.p_plus[i][j] + lam_inv * ed.p_minus[i][j]
                assert rec == QuadVal.rational(ent[i][j], ed.d)
                # Galois conjugation swaps the projections
                assert ed.p_plus[i][j].conj() == ed.p_minus[i][j]
        # projections are idempotent and complementary
        pp = ed.p_plus
        sq = [
            [pp[i][0] * pp[0][j] + pp[i][1] * pp[1][j] for j in range(2)]
            for i in range(2)
        ]
        assert sq[0][0] == pp[0][0] and sq[0][1] == pp[0][1]
        assert sq[1][0] == pp[1][0] and sq[1][1] == pp[1][1]


def test_eigen_data_power_apply():
    M = Mat2Z(2, 1, 1, 1)
    ed = eigen_data(M)
    for k in (0, 1, 3, -2):
        expected = mat_pow(M, k).apply((1, 2))
        got = ed.power_apply(k, (1, 2))
        assert got[0] == QuadVal.rational(expected[0], ed.d)
        assert got[1] == QuadVal.rational(expected[1], ed.d)


def test_eigen_data_rejects_nonhyperbolic():
    with pytest.raises(NotHyperbolic):
        eigen_data(Mat2Z(1, 1, 0, 1))
