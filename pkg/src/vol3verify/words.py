"""Words in abstract group generators, with free reduction and evaluation.

The two alphabets in play: {a, b} for the manifold group presentation and
{u, c} for the orbifold supergroup, related by a = u^2 c and b = (aua)^-1 u.
Uppercase letters in string form denote inverses, as in "aabbABAbb".
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .linalg import Matrix, inverse


class MissingGeneratorError(KeyError):
    """A word uses a symbol the representation has no image for."""


Letter = tuple  # (symbol, +1 | -1)


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for sym, e in letters:
        if out and out[-1][0] == sym and out[-1][1] == -e:
            out.pop()
        else:
            out.append((sym, e))
    return tuple(out)


class GroupWord:
    """A freely reduced word; the empty word is the identity."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        object.__setattr__(self, "letters", _reduce(letters))

    def __setattr__(self, name, value):
        raise AttributeError("GroupWord is immutable")

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Parse compact form: lowercase generators, uppercase inverses."""
        letters = []
        for ch in text:
            if ch.isspace():
                continue
            if ch.isupper():
                letters.append((ch.lower(), -1))
            else:
                letters.append((ch, 1))
        return cls(letters)

    @classmethod
    def generator(cls, sym: str, e: int = 1) -> "GroupWord":
        return cls([(sym, e)])

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord([(sym, -e) for sym, e in reversed(self.letters)])

    def __pow__(self, n: int) -> "GroupWord":
        if n < 0:
            return self.inverse() ** (-n)
        return GroupWord(self.letters * n)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        if not isinstance(other, GroupWord):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def is_reduced(self) -> bool:
        return _reduce(self.letters) == self.letters

    def symbols(self) -> set:
        return {sym for sym, _ in self.letters}

    def __repr__(self):
        if not self.letters:
            return "1"
        return "".join(s.upper() if e < 0 else s for s, e in self.letters)


EMPTY_WORD = GroupWord()

VOL3_RELATOR_STRINGS = ("aabbABAbb", "aBaBabaaab")


def vol3_relators() -> list[GroupWord]:
    """The two defining relators of the vol3 manifold group."""
    return [GroupWord.parse(r) for r in VOL3_RELATOR_STRINGS]


# a = u^2 c and b = (aua)^-1 u, expanded into the orbifold generators
_A_LETTERS = (("u", 1), ("u", 1), ("c", 1))
_B_LETTERS = _reduce(
    tuple((s, -e) for s, e in reversed(_A_LETTERS))  # a^-1
    + (("u", -1),)
    + tuple((s, -e) for s, e in reversed(_A_LETTERS))  # a^-1
    + (("u", 1),)
)

_EXPANSION = {
    ("a", 1): _A_LETTERS,
    ("a", -1): tuple((s, -e) for s, e in reversed(_A_LETTERS)),
    ("b", 1): _B_LETTERS,
    ("b", -1): tuple((s, -e) for s, e in reversed(_B_LETTERS)),
    ("u", 1): (("u", 1),),
    ("u", -1): (("u", -1),),
    ("c", 1): (("c", 1),),
    ("c", -1): (("c", -1),),
}


def expand_to_orbifold(w: GroupWord) -> GroupWord:
    """Rewrite a word over {a, b} as a freely reduced word over {u, c}."""
    letters: list[Letter] = []
    for letter in w.letters:
        try:
            letters.extend(_EXPANSION[letter])
        except KeyError:
            raise MissingGeneratorError(f"no orbifold expansion for {letter!r}")
    return GroupWord(letters)


class RepGenerators:
    """Matrix images for the generators of a representation.

    Images are verified to be square of a common size with determinant one,
    unless verify=False (used where the determinant is known by functoriality,
    e.g. entrywise reduction of an already verified representation).

    orders, when given, supplies known finite orders of generators so that
    inverse images can be taken as powers; otherwise inverses are computed
    by exact elimination.
    """

    __slots__ = ("dim", "domain", "images", "orders", "_inverses")

    def __init__(self, images: dict, verify: bool = True, orders: dict | None = None):
        if not images:
            raise ValueError("a representation needs at least one generator")
        mats = list(images.values())
        dim = mats[0].rows
        domain = mats[0].domain
        for m in mats:
            if m.rows != dim or m.cols != dim:
                raise ValueError("generator images must be square of equal size")
        if verify:
            from .linalg import det

            for sym, m in images.items():
                if det(m) != domain.one:
                    raise ValueError(f"image of {sym} does not have determinant 1")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "images", dict(images))
        object.__setattr__(self, "orders", dict(orders or {}))
        object.__setattr__(self, "_inverses", {})

    def __setattr__(self, name, value):
        raise AttributeError("RepGenerators is immutable")

    def image(self, sym: str) -> Matrix:
        try:
            return self.images[sym]
        except KeyError:
            raise MissingGeneratorError(f"no image for generator {sym!r}")

    def inverse_image(self, sym: str) -> Matrix:
        inv = self._inverses.get(sym)
        if inv is None:
            m = self.image(sym)
            order = self.orders.get(sym)
            if order is not None:
                inv = m.power(order - 1)
            elif self.domain.is_field:
                inv = inverse(m)
            else:
                inv = _nonfield_inverse(m)
            self._inverses[sym] = inv
        return inv


def _nonfield_inverse(m: Matrix) -> Matrix:
    from .congruence import gaussian_inverse
    from .linalg import GAUSSIAN

    if m.domain is GAUSSIAN or m.domain.name == GAUSSIAN.name:
        return gaussian_inverse(m)
    raise ValueError(f"cannot invert matrices over {m.domain.name}")


def evaluate_word(w: GroupWord, rep: RepGenerators) -> Matrix:
    """Ordered product of generator images and exact inverses."""
    out = Matrix.identity(rep.domain, rep.dim)
    for sym, e in w.letters:
        out = out * (rep.image(sym) if e > 0 else rep.inverse_image(sym))
    return out
