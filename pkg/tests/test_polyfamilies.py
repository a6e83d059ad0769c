import pytest

from torusmix.errors import NotPolynomial
from torusmix.families import (
    PolyMatFamily,
    PowerFamily,
    expand_unipotent_products,
    family_power,
    parse_family,
)
from torusmix.intmat import Mat2Z, mat_pow
from torusmix.polynomials import IntPoly, parse_poly


def test_intpoly_basics():
    p = parse_poly("n^2 - 3*n + 1")
    assert p.coeffs == (1, -3, 1)
    assert p(4) == 5
    assert (p * p).degree == 4
    assert parse_poly("[1,-3,1]") == p
    assert parse_poly("0").is_zero
    assert IntPoly((0, 0)).degree == -1
    assert str(parse_poly("2*n^2-n")) == "-n+2*n^2"


def test_intpoly_parse_rejects():
    with pytest.raises(ValueError):
        parse_poly("n/2")
    with pytest.raises(ValueError):
        parse_poly("m+1")


def test_family_determinant_checked():
    with pytest.raises(ValueError):
        PolyMatFamily(
            IntPoly.n(), IntPoly.const(0), IntPoly.const(0), IntPoly.n()
        )


def test_family_eval_and_power():
    F = parse_family("[[n,n^2-1],[1,n]]")
    assert F(3) == Mat2Z(3, 8, 1, 3)
    F2 = family_power(F, 2)
    for n in range(1, 8):
        assert F2(n) == F(n) * F(n)


def test_expand_noncommuting_shears():
    A = Mat2Z(1, 1, 0, 1)
    B = Mat2Z(1, 0, 1, 1)
    F = expand_unipotent_products(
        [PowerFamily(A, parse_poly("-n")), PowerFamily(B, parse_poly("n"))]
    )
    for n in range(-5, 6):
        assert F(n) == mat_pow(A, -n) * mat_pow(B, n)


def test_expand_single_shear_powers():
    A = Mat2Z(1, 1, 0, 1)
    F = expand_unipotent_products(
        [PowerFamily(A, parse_poly("n")), PowerFamily(A, parse_poly("n^2"))]
    )
    for n in range(6):
        assert F(n) == mat_pow(A, n + n * n)


def test_expand_negated_unipotent_parity():
    A = Mat2Z(1, 1, 0, 1)
    # base -A with exponent 2n: sign (-1)^(2n) is constant +1
    F = expand_unipotent_products([PowerFamily(-A, parse_poly("2*n"))])
    for n in range(5):
        assert F(n) == mat_pow(-A, 2 * n)
    # odd constant parity flips the global sign
    G = expand_unipotent_products([PowerFamily(-A, parse_poly("2*n+1"))])
    for n in range(5):
        assert G(n) == mat_pow(-A, 2 * n + 1)
    with pytest.raises(NotPolynomial):
        expand_unipotent_products([PowerFamily(-A, parse_poly("n"))])


def test_expand_rejects_hyperbolic_and_rotation():
    T = Mat2Z(2, 1, 1, 1)
    R = Mat2Z(0, -1, 1, 0)
    with pytest.raises(NotPolynomial):
        expand_unipotent_products([PowerFamily(T, parse_poly("n"))])
    with pytest.raises(NotPolynomial):
        expand_unipotent_products([PowerFamily(R, parse_poly("n"))])


def test_expand_minus_identity():
    A = Mat2Z(1, 1, 0, 1)
    I = Mat2Z(1, 0, 0, 1)
    F = expand_unipotent_products(
        [PowerFamily(-I, parse_poly("2*n+1")), PowerFamily(A, parse_poly("n"))]
    )
    for n in range(5):
        assert F(n) == -mat_pow(A, n)
    with pytest.raises(NotPolynomial):
        expand_unipotent_products([PowerFamily(-I, parse_poly("n"))])


def test_parse_family_polynomial_entries():
    F = parse_family("[[n+2, -n^2-n+1],[1, 1-n]]")
    assert F(0) == Mat2Z(2, 1, 1, 1)
    with pytest.raises(ValueError):
        parse_family("[[n,n],[n,n]]")
