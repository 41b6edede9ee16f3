import random
from fractions import Fraction

from vol3verify import polys


def random_poly(rng, max_deg=6, max_coeff=20):
    deg = rng.randint(0, max_deg)
    return polys.trim([rng.randint(-max_coeff, max_coeff) for _ in range(deg + 1)])


def test_trim_and_degree():
    assert polys.trim([0, 0, 0]) == ()
    assert polys.trim([1, 2, 0]) == (1, 2)
    assert polys.degree(()) == -1
    assert polys.degree((5,)) == 0
    assert polys.degree((0, 1)) == 1


def test_ring_ops_against_eval():
    rng = random.Random(7)
    xs = [Fraction(k, 3) for k in range(-5, 6)]
    for _ in range(50):
        f, g = random_poly(rng), random_poly(rng)
        s, p = polys.add(f, g), polys.mul(f, g)
        for x in xs:
            assert polys.eval_at(s, x) == polys.eval_at(f, x) + polys.eval_at(g, x)
            assert polys.eval_at(p, x) == polys.eval_at(f, x) * polys.eval_at(g, x)


def test_exact_division_roundtrip():
    rng = random.Random(11)
    for _ in range(50):
        f = random_poly(rng)
        g = random_poly(rng)
        if not g:
            continue
        assert polys.div_exact(polys.mul(f, g), g) == f


def test_inexact_division_raises():
    try:
        polys.div_exact((1, 1), (0, 1))  # (t + 1) / t
    except ArithmeticError:
        pass
    else:
        raise AssertionError("expected inexact division to raise")


def test_primitive_sign_convention():
    c, p = polys.primitive((-2, -4))
    assert c == -2 and p == (1, 2)
    assert polys.primitive(()) == (0, ())


def test_gcd_of_constructed_common_factor():
    rng = random.Random(13)
    for _ in range(30):
        h = random_poly(rng, max_deg=3)
        if polys.degree(h) < 1:
            continue
        _, h = polys.primitive(h)
        f = polys.mul(h, random_poly(rng, max_deg=3))
        g = polys.mul(h, random_poly(rng, max_deg=3))
        if not f or not g:
            continue
        got = polys.gcd_primitive(f, g)
        # h divides the gcd, and the gcd divides both products
        polys.div_exact(got, polys.gcd_primitive(got, h))  # no crash
        assert polys.pseudo_rem(got, h) == () or polys.degree(got) >= polys.degree(h)
        polys.div_exact(f, got)
        polys.div_exact(g, got)


def test_gcd_coprime_is_one():
    assert polys.gcd_primitive((1, 1), (2, 1)) == (1,)  # t+1 vs t+2
    assert polys.gcd_primitive((5,), (0, 1)) == (1,)


def test_sqrt_exact():
    rng = random.Random(17)
    for _ in range(40):
        f = random_poly(rng, max_deg=4)
        sq = polys.mul(f, f)
        if not sq:
            continue
        root = polys.sqrt_exact(sq)
        assert root is not None
        assert polys.mul(root, root) == sq
        if f:
            assert root[-1] > 0
    assert polys.sqrt_exact((0, 0, 1)) == (0, 1)
    assert polys.sqrt_exact((1, 1)) is None  # t + 1
    assert polys.sqrt_exact((-1, 0, 1)) is None  # t^2 - 1 is square-free


def test_derivative():
    assert polys.derivative((3, 2, 5)) == (2, 10)
    assert polys.derivative((7,)) == ()
