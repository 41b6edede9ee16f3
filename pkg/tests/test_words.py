from fractions import Fraction

import pytest

from vol3verify.linalg import QQ, Matrix
from vol3verify.words import (
    EMPTY_WORD,
    GroupWord,
    MissingGeneratorError,
    RepGenerators,
    evaluate_word,
    expand_to_orbifold,
    vol3_relators,
)


def test_relators():
    rels = vol3_relators()
    assert len(rels) == 2
    assert len(rels[0]) == 9
    assert len(rels[1]) == 10
    assert all(r.is_reduced() for r in rels)
    assert repr(rels[0]) == "aabbABAbb"
    assert repr(rels[1]) == "aBaBabaaab"


def test_free_reduction():
    w = GroupWord.parse("aA")
    assert w == EMPTY_WORD
    assert len(GroupWord.parse("abBA")) == 0
    w = GroupWord.parse("abA")
    assert len(w) == 3
    assert (w * w.inverse()) == EMPTY_WORD
    assert GroupWord.parse("aa") ** 2 == GroupWord.parse("aaaa")
    assert GroupWord.parse("ab") ** -1 == GroupWord.parse("BA")


def test_expand_a():
    assert expand_to_orbifold(GroupWord.parse("a")) == GroupWord.parse("uuc")


def test_expand_b():
    # b = (aua)^-1 u with a = uuc, freely reduced
    a = GroupWord.parse("uuc")
    u = GroupWord.parse("u")
    b_direct = (a * u * a).inverse() * u
    assert expand_to_orbifold(GroupWord.parse("b")) == b_direct
    assert repr(b_direct) == "CUUUCU"


def test_expand_empty_and_inverses():
    assert expand_to_orbifold(EMPTY_WORD) == EMPTY_WORD
    w = GroupWord.parse("aB")
    expanded = expand_to_orbifold(w)
    direct = expand_to_orbifold(GroupWord.parse("a")) * expand_to_orbifold(
        GroupWord.parse("b")
    ).inverse()
    assert expanded == direct
    assert expanded.is_reduced()


def test_evaluate_word():
    two = Matrix.diagonal(QQ, [Fraction(2), Fraction(1, 2)])
    rep = RepGenerators({"x": two})
    assert evaluate_word(EMPTY_WORD, rep) == Matrix.identity(QQ, 2)
    assert evaluate_word(GroupWord.parse("xX"), rep) == Matrix.identity(QQ, 2)
    assert evaluate_word(GroupWord.parse("xx"), rep) == two * two
    with pytest.raises(MissingGeneratorError):
        evaluate_word(GroupWord.parse("y"), rep)


def test_rep_generators_validation():
    bad = Matrix.diagonal(QQ, [Fraction(2), Fraction(1)])
    with pytest.raises(ValueError):
        RepGenerators({"x": bad})
    with pytest.raises(ValueError):
        RepGenerators({"x": Matrix.zeros(QQ, 2, 3)})


def test_inverse_image_uses_declared_order():
    rot = Matrix(QQ, [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]])
    rep = RepGenerators({"r": rot}, orders={"r": 4})
    assert rep.inverse_image("r") == rot.power(3)
    assert evaluate_word(GroupWord.parse("rR"), rep) == Matrix.identity(QQ, 2)
