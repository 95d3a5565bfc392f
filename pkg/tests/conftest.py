import random

import pytest

from fgf.words import FreeGroupContext, Word, parse_word


@pytest.fixture
def ctx2():
    return FreeGroupContext(2)


@pytest.fixture
def ctx3():
    return FreeGroupContext(3)


@pytest.fixture
def ctx4():
    return FreeGroupContext(4)


def w(text: str, context: FreeGroupContext) -> Word:
    return parse_word(text, context)


def random_word(rng: random.Random, context: FreeGroupContext, length: int) -> Word:
    letters = []
    for _ in range(length):
        options = [
            s * i
            for i in range(1, context.rank + 1)
            for s in (1, -1)
            if not letters or s * i != -letters[-1]
        ]
        letters.append(rng.choice(options))
    return Word(context, letters)
