"""Reduced words in a free group of fixed finite rank.

A word is a flat sequence of nonzero signed indices: ``+i`` stands for the
generator ``x_i`` and ``-i`` for its inverse.  Words are freely reduced the
moment they are built, so structural equality is equality in the group and
the empty word is the identity.  All values are immutable; every operation
here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    ContextMismatchError,
    EmptyWordError,
    GeneratorIndexError,
    ParseError,
)


@dataclass(frozen=True)
class FreeGroupContext:
    """The ambient group: rank ``n`` with standard basis ``x1 .. xn``."""

    rank: int

    def __post_init__(self) -> None:
        if not isinstance(self.rank, int) or self.rank < 2:
            raise ValueError(f"rank must be an integer >= 2, got {self.rank!r}")

    def generator(self, index: int) -> "Word":
        return Word(self, (index,))

    def generators(self) -> list["Word"]:
        return [Word(self, (i,)) for i in range(1, self.rank + 1)]

    def identity(self) -> "Word":
        return Word(self, ())


def _reduce_letters(letters: Iterable[int], rank: int) -> tuple[int, ...]:
    stack: list[int] = []
    push = stack.append
    for letter in letters:
        if not -rank <= letter <= rank or letter == 0:
            raise GeneratorIndexError(f"letter {letter} outside rank {rank}")
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            push(letter)
    return tuple(stack)


class Word:
    """A freely reduced word over the standard basis."""

    __slots__ = ("context", "letters", "_hash")

    def __init__(self, context: FreeGroupContext, letters: Iterable[int] = ()):
        self.context = context
        self.letters = _reduce_letters(letters, context.rank)
        self._hash: int | None = None

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Word)
            and self.context == other.context
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.context.rank, self.letters))
        return self._hash

    def __repr__(self) -> str:
        return f"<Word {format_word(self)!r} rank={self.context.rank}>"


def _same_context(u: Word, v: Word) -> FreeGroupContext:
    if u.context != v.context:
        raise ContextMismatchError(
            f"rank {u.context.rank} vs rank {v.context.rank}"
        )
    return u.context


def reduce(raw: Iterable[int], context: FreeGroupContext) -> Word:
    """Freely reduce a raw sequence of signed indices."""
    return Word(context, raw)


def multiply(u: Word, v: Word) -> Word:
    """Product ``u v``, reduced."""
    _same_context(u, v)
    return Word(u.context, u.letters + v.letters)


def invert(w: Word) -> Word:
    """Inverse word: reversed letters with flipped signs."""
    return Word(w.context, tuple(-letter for letter in reversed(w.letters)))


def power(w: Word, exponent: int) -> Word:
    """``w`` raised to an integer power."""
    base = w.letters if exponent >= 0 else invert(w).letters
    return Word(w.context, base * abs(exponent))


def conjugate(w: Word, by: Word) -> Word:
    """``by . w . by^-1``."""
    _same_context(w, by)
    return Word(w.context, by.letters + w.letters + invert(by).letters)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w = conjugator . core . conjugator^-1`` with cyclically reduced core."""
    letters = w.letters
    lo, hi = 0, len(letters)
    while hi - lo >= 2 and letters[lo] == -letters[hi - 1]:
        lo += 1
        hi -= 1
    core = Word(w.context, letters[lo:hi])
    conjugator = Word(w.context, letters[:lo])
    return core, conjugator


def primitive_root(w: Word) -> tuple[Word, int]:
    """Maximal root: the unique ``(root, k)`` with ``w = root^k`` and root not a proper power.

    A word is a proper power exactly when its cyclically reduced core is
    periodic, so the root is found by scanning rotation periods of the core.
    """
    if w.is_identity:
        raise EmptyWordError("the identity word has no primitive root")
    core, conjugator = cyclic_reduce(w)
    letters = core.letters
    n = len(letters)
    for period in range(1, n + 1):
        if n % period:
            continue
        if all(letters[i] == letters[i % period] for i in range(period, n)):
            root_core = Word(w.context, letters[:period])
            return conjugate(root_core, conjugator), n // period
    raise AssertionError("unreachable: every word is its own 1st power")


def support(w: Word) -> frozenset[int]:
    """Unsigned generator indices occurring in ``w``."""
    return frozenset(abs(letter) for letter in w.letters)


# Text grammar: whitespace-separated tokens `x<i>`, suffix `-` for the
# inverse; `e` (or nothing) is the identity.  Parsing reduces automatically.

def parse_word(text: str, context: FreeGroupContext) -> Word:
    tokens = text.split()
    if tokens == ["e"] or not tokens:
        return context.identity()
    letters = []
    for token in tokens:
        sign = 1
        body = token
        if body.endswith("-"):
            sign = -1
            body = body[:-1]
        if not body.startswith("x") or not body[1:].isdigit():
            raise ParseError(f"bad word token {token!r}")
        index = int(body[1:])
        if index < 1 or index > context.rank:
            raise GeneratorIndexError(
                f"generator x{index} outside rank {context.rank}"
            )
        letters.append(sign * index)
    return Word(context, letters)


def format_word(w: Word) -> str:
    if w.is_identity:
        return "e"
    return " ".join(
        f"x{letter}" if letter > 0 else f"x{-letter}-" for letter in w.letters
    )
