from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from pgca.algebra import (
    BOLD,
    FAMILIES,
    PLAIN,
    Element,
    Generator,
    H,
    Hb,
    I,
    Ib,
    J,
    Jb,
    L,
    Lb,
    bracket,
    to_bold,
    to_plain,
    window_generators,
)
from pgca.errors import BasisMismatch
from pgca.scalars import IMAG_UNIT, GaussianRational as Q

from conftest import any_basis_elements, elements

i = IMAG_UNIT
half = Fraction(1, 2)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        (L(1), L(2), L(3)),
        (L(2), H(3), H(5, 3)),
        (H(1), J(2), -J(3)),
        (I(1), J(2), Element()),
        (Hb(1), Ib(2), Jb(3)),
        (Hb(1), Jb(2), -Ib(3)),
        (L(-2), I(5), I(3, 7)),
        (J(4), L(1), J(5, -3)),  # -[L_1, J_4] = -(4 - 1) J_5
        (H(0), L(3), Element()),
    ],
)
def test_bracket_table(x, y, expected):
    assert bracket(x, y) == expected


def test_bracket_zero_and_mismatch():
    assert bracket(Element(), L(3)) == 0
    assert bracket(Ib(0), Element()) == 0
    with pytest.raises(BasisMismatch):
        bracket(L(1), Lb(2))


def test_mixed_elements_unrepresentable():
    with pytest.raises(BasisMismatch):
        Element({Generator("L", 0): 1, Generator("I", 1, BOLD): 2})
    with pytest.raises(BasisMismatch):
        L(0) + Lb(0)


def test_canonical_sparse_form():
    x = L(1) + I(2) - L(1)
    assert x == I(2) and len(x) == 1
    assert Element({Generator("H", 0): 0}) == 0
    assert [g for g in J(0) + L(3) + H(-1) + L(-2)] == [
        Generator("L", -2), Generator("L", 3), Generator("H", -1), Generator("J", 0)
    ]


def test_generator_order():
    assert Generator("J", -9) < Generator("L", 0, BOLD)
    assert Generator("L", 5) < Generator("H", -5) < Generator("I", 0) < Generator("J", -1)


def test_to_bold_examples():
    assert to_bold(I(2)) == Ib(2) + Jb(2, i)
    assert to_bold(H(0)) == Hb(0, i)
    lhs = to_bold(bracket(H(1), I(2)))
    rhs = bracket(to_bold(H(1)), to_bold(I(2)))
    assert lhs == rhs == Ib(3) + Jb(3, i)


def test_to_plain_examples():
    assert to_plain(Ib(2)) == I(2, half) + J(2, half)
    assert to_plain(Jb(2)) == I(2, -i * half) + J(2, i * half)
    x = L(7) - J(-2, 3)
    assert to_plain(to_bold(x)) == x


def test_basis_change_against_matrix_inverse():
    # columns: plain generators written in bold coordinates (L, H, I, J)
    m = sympy.Matrix([[1, 0, 0, 0], [0, sympy.I, 0, 0], [0, 0, 1, 1], [0, 0, sympy.I, -sympy.I]])
    inv = m.inv()
    bold = [Lb, Hb, Ib, Jb]
    plain = [L, H, I, J]
    for col, make in enumerate(bold):
        expected = Element()
        for row, target in enumerate(plain):
            c = sympy.nsimplify(inv[row, col])
            re, im = c.as_real_imag()
            expected = expected + target(4, Q(Fraction(str(re)), Fraction(str(im))))
        assert to_plain(make(4)) == expected


def test_wrong_basis():
    with pytest.raises(BasisMismatch):
        to_bold(Lb(1))
    with pytest.raises(BasisMismatch):
        to_plain(L(1))


@given(any_basis_elements)
def test_antisymmetry_and_jacobi(xyz):
    x, y, z = xyz
    assert bracket(x, y) == -bracket(y, x)
    assert bracket(x, x) == 0
    jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert jac == 0


@given(elements(), elements())
def test_isomorphism(x, y):
    assert to_bold(bracket(x, y)) == bracket(to_bold(x), to_bold(y))
    assert to_plain(to_bold(x)) == x


@given(elements(BOLD))
def test_to_bold_inverts_to_plain(x):
    assert to_bold(to_plain(x)) == x


@given(elements(), elements(), elements())
def test_bilinearity(x, y, z):
    k = Q(2, -3)
    assert bracket(x * k + y, z) == bracket(x, z) * k + bracket(y, z)


def test_window_generators():
    gens = window_generators(2)
    assert len(gens) == 4 * 5
    assert gens == sorted(gens)
    assert {g.family for g in gens} == set(FAMILIES)
    assert all(g.basis == PLAIN for g in gens)
