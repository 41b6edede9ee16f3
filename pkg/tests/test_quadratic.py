from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vol3verify.quadratic import (
    EvenPrimeError,
    GaussianInt,
    InvalidDError,
    NonIntegralEntryError,
    NotAHomomorphismError,
    OdElem,
    QuadElem,
    ResidueElem,
    gaussian_hom_f,
    is_integral,
    is_rational_square,
    reduce_mod_p,
    require_valid_d,
    tau,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def quad(d):
    return st.builds(lambda a, b: QuadElem(a, b, d), rationals, rationals)


def test_require_valid_d():
    require_valid_d(2)
    require_valid_d(3)
    require_valid_d(105)
    for bad in (1, 0, -3, 4, 12, 18):
        with pytest.raises(InvalidDError):
            require_valid_d(bad)


def test_tau_basic():
    assert tau(QuadElem(1, 0, 3)) == QuadElem(1, 0, 3)
    assert tau(QuadElem(2, 1, 3)) == QuadElem(2, -1, 3)
    x = QuadElem(2, 1, 3)
    assert tau(tau(x)) == x


@given(quad(3), quad(3))
@settings(max_examples=60)
def test_tau_is_multiplicative(x, y):
    assert tau(x * y) == tau(x) * tau(y)
    assert tau(x + y) == tau(x) + tau(y)


@given(quad(5), quad(5), quad(5))
@settings(max_examples=60)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x


@given(quad(7))
@settings(max_examples=60)
def test_inverse_and_norm(x):
    n = x.norm()
    assert n == (x * tau(x)).a
    if x:
        assert n != 0
        assert x * x.inverse() == QuadElem(1, 0, 7)


def test_is_integral_cases():
    # half-integers are integral exactly when d = 1 mod 4
    assert is_integral(QuadElem(Fraction(1, 2), Fraction(1, 2), 5))
    assert not is_integral(QuadElem(Fraction(1, 2), Fraction(1, 2), 3))
    assert is_integral(QuadElem(7, 4, 3))
    assert not is_integral(QuadElem(Fraction(1, 3), 0, 3))
    assert not is_integral(QuadElem(Fraction(1, 2), 1, 5))  # mixed parity


def test_od_elem_parity_invariants():
    OdElem(1, 1, 5)
    OdElem(2, 0, 3)
    with pytest.raises(NonIntegralEntryError):
        OdElem(1, 0, 5)
    with pytest.raises(NonIntegralEntryError):
        OdElem(1, 1, 3)
    x = OdElem.from_quad(QuadElem(Fraction(1, 2), Fraction(1, 2), 5))
    assert (x.p, x.q) == (1, 1)
    with pytest.raises(NonIntegralEntryError):
        OdElem.from_quad(QuadElem(Fraction(1, 2), Fraction(1, 2), 3))


def test_od_arithmetic_matches_quad():
    x = OdElem(1, 1, 5)
    y = OdElem(3, 1, 5)
    assert (x * y).to_quad() == x.to_quad() * y.to_quad()
    assert (x + y).to_quad() == x.to_quad() + y.to_quad()


def test_reduce_mod_p_examples():
    # 7 + 4 sqrt(3) mod 7 -> 0 + 4x
    x = OdElem.from_quad(QuadElem(7, 4, 3))
    r = reduce_mod_p(x, 7)
    assert (r.a, r.b) == (0, 4)
    one = reduce_mod_p(OdElem.from_int(1, 3), 13)
    assert one == 1


def test_reduce_mod_p_is_a_ring_hom():
    import random

    rng = random.Random(5)
    for _ in range(40):
        x = OdElem(2 * rng.randint(-9, 9), 2 * rng.randint(-9, 9), 3)
        y = OdElem(2 * rng.randint(-9, 9), 2 * rng.randint(-9, 9), 3)
        p = 13
        assert reduce_mod_p(x * y, p) == reduce_mod_p(x, p) * reduce_mod_p(y, p)
        assert reduce_mod_p(x + y, p) == reduce_mod_p(x, p) + reduce_mod_p(y, p)


def test_reduce_mod_2_rejected():
    with pytest.raises(EvenPrimeError):
        reduce_mod_p(OdElem(2, 0, 3), 2)
    with pytest.raises(EvenPrimeError):
        ResidueElem(1, 0, 2, 3)


def test_gaussian_hom_f_examples():
    # d=3, t=7, y=4, p=7: 3*16 = 48 = -1 mod 7
    z = gaussian_hom_f(GaussianInt(0, 1), 4, 3, 7)
    assert (z.a, z.b) == (0, 4)
    # d=3, t=26, y=15, p=13: 3*225 = 675 = -1 mod 13
    gaussian_hom_f(GaussianInt(1, 1), 15, 3, 13)
    with pytest.raises(NotAHomomorphismError):
        gaussian_hom_f(GaussianInt(0, 1), 1, 3, 7)


def test_gaussian_hom_f_squares_to_minus_one():
    for (d, y, p) in ((3, 4, 7), (3, 15, 13), (5, 4, 3), (5, 72, 7)):
        image_i = gaussian_hom_f(GaussianInt(0, 1), y, d, p)
        assert image_i * image_i == ResidueElem(p - 1, 0, p, d)


def test_gaussian_hom_f_is_multiplicative():
    import random

    rng = random.Random(9)
    d, y, p = 3, 4, 7
    for _ in range(40):
        z = GaussianInt(rng.randint(-20, 20), rng.randint(-20, 20))
        w = GaussianInt(rng.randint(-20, 20), rng.randint(-20, 20))
        f = lambda g: gaussian_hom_f(g, y, d, p)
        assert f(z * w) == f(z) * f(w)
        assert f(z + w) == f(z) + f(w)


def test_is_rational_square():
    assert is_rational_square(Fraction(4, 9)) == Fraction(2, 3)
    assert is_rational_square(2) is None
    assert is_rational_square(0) == 0
    assert is_rational_square(Fraction(-4, 9)) is None
    # the specialized determinant value at t = 2: 16 * 28561 / 225
    q = Fraction(16 * 28561, 225)
    root = is_rational_square(q)
    assert root == Fraction(4 * 169, 15)
    assert root * root == q


def test_quad_sign():
    assert QuadElem(0, 1, 3).sign() == 1
    assert QuadElem(0, -1, 3).sign() == -1
    assert QuadElem(-2, 1, 3).sign() == -1  # sqrt(3) < 2
    assert QuadElem(-1, 1, 3).sign() == 1  # sqrt(3) > 1
    assert QuadElem(2, -1, 3).sign() == 1
    assert QuadElem(0, 0, 3).sign() == 0


def test_gaussian_int_ops():
    i = GaussianInt(0, 1)
    assert i * i == GaussianInt(-1, 0)
    assert (GaussianInt(2, 3) * GaussianInt(2, -3)) == 13
    assert GaussianInt(2, 3).norm() == 13
    assert hash(GaussianInt(1, 2)) == hash(GaussianInt(1, 2))
