"""Primitivity machinery: Whitehead automorphisms and orbit minimization.

Length minimization works on cyclic words: greedy descent over the
multiplier-type moves reaches the orbit minimum (peak reduction guarantees a
single strictly reducing move exists whenever the length is not minimal),
and a bounded closure over equal-length images double-checks the stall
before the result is accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Optional

from .errors import EmptyWordError, NoSpareGeneratorError
from .maps import GeneratorMap, apply, compose, conjugation_by, identity_map
from .words import (
    FreeGroupContext,
    Word,
    cyclic_reduce,
    invert,
    multiply,
    primitive_root,
    support,
)


@dataclass(frozen=True)
class WhiteheadMove:
    """Either a relabeling (signed permutation) or a multiplier-type move.

    A multiplier move is determined by a signed letter ``multiplier`` and a
    set of signed letters ``targets`` not involving the multiplier's
    generator: a generator ``g`` picks up the multiplier on the right when
    ``+g`` is a target, and its inverse on the left when ``-g`` is one.
    """

    kind: str  # "relabel" | "multiplier"
    perm: tuple[int, ...] | None = None  # images of 1..n as signed indices
    multiplier: int | None = None
    targets: frozenset[int] | None = None

    def __post_init__(self):
        if self.kind == "multiplier":
            assert self.multiplier is not None and self.targets is not None
            if any(abs(t) == abs(self.multiplier) for t in self.targets):
                raise ValueError("targets may not involve the multiplier generator")

    @property
    def encoding(self) -> tuple:
        if self.kind == "relabel":
            return (0, self.perm)
        return (1, abs(self.multiplier), 0 if self.multiplier > 0 else 1,
                tuple(sorted(self.targets)))

    def to_map(self, context: FreeGroupContext) -> GeneratorMap:
        if self.kind == "relabel":
            return GeneratorMap(
                context, [Word(context, (image,)) for image in self.perm]
            )
        images = []
        for g in range(1, context.rank + 1):
            if g == abs(self.multiplier):
                images.append(Word(context, (g,)))
                continue
            letters = []
            if -g in self.targets:
                letters.append(-self.multiplier)
            letters.append(g)
            if g in self.targets:
                letters.append(self.multiplier)
            images.append(Word(context, letters))
        return GeneratorMap(context, images)


def enumerate_whitehead_moves(context: FreeGroupContext) -> list[WhiteheadMove]:
    """All Whitehead moves of both kinds, in a fixed deterministic order."""
    n = context.rank
    moves: list[WhiteheadMove] = []
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            moves.append(
                WhiteheadMove("relabel", perm=tuple(s * p for s, p in zip(signs, perm)))
            )
    signed = [s * g for g in range(1, n + 1) for s in (1, -1)]
    for multiplier in signed:
        others = sorted(l for l in signed if abs(l) != abs(multiplier))
        for size in range(len(others) + 1):
            for subset in combinations(others, size):
                moves.append(
                    WhiteheadMove(
                        "multiplier",
                        multiplier=multiplier,
                        targets=frozenset(subset),
                    )
                )
    moves.sort(key=lambda m: m.encoding)
    return moves


def whitehead_moves(context: FreeGroupContext) -> list[GeneratorMap]:
    """The standard finite generating set of the automorphism group."""
    return [move.to_map(context) for move in enumerate_whitehead_moves(context)]


def _multiplier_maps(context: FreeGroupContext) -> list[GeneratorMap]:
    return [
        move.to_map(context)
        for move in enumerate_whitehead_moves(context)
        if move.kind == "multiplier" and move.targets
    ]


def _rotation_key(letters: tuple[int, ...]) -> tuple:
    return tuple((abs(l), 0 if l > 0 else 1) for l in letters)


def _cyclic_normalize(w: Word) -> tuple[Word, Word]:
    """``w = d . canon . d^-1`` with canon the least rotation of the cyclic core."""
    core, conjugator = cyclic_reduce(w)
    letters = core.letters
    if not letters:
        return core, conjugator
    best = min(
        range(len(letters)),
        key=lambda k: _rotation_key(letters[k:] + letters[:k]),
    )
    canon = Word(w.context, letters[best:] + letters[:best])
    prefix = Word(w.context, letters[:best])
    return canon, multiply(conjugator, prefix)


@dataclass(frozen=True)
class MinimizeResult:
    minimal: Word
    witness: GeneratorMap  # witness(w) == minimal


_CLOSURE_BUDGET = 4096


def _witness_after(
    move_map: GeneratorMap, witness: GeneratorMap, image: Word
) -> tuple[Word, GeneratorMap]:
    canon, conj = _cyclic_normalize(image)
    updated = compose(conjugation_by(invert(conj)), compose(move_map, witness))
    return canon, updated


def minimize(w: Word) -> MinimizeResult:
    """Shortest word in the automorphism orbit, with a witness map.

    Greedy descent over multiplier moves on the cyclic word, then an
    exhaustive equal-length closure to confirm no further descent exists;
    the closure is budgeted since peak reduction makes it a formality.
    """
    if w.is_identity:
        raise EmptyWordError("cannot minimize the identity word")
    context = w.context
    moves = _multiplier_maps(context)
    current, witness = _witness_after(identity_map(context), identity_map(context), w)

    while True:
        # Greedy: adopt the first move list entry achieving the best drop.
        best_len = len(current)
        best: tuple[Word, GeneratorMap] | None = None
        for move in moves:
            image = apply(move, current)
            canon, _ = _cyclic_normalize(image)
            if len(canon) < best_len:
                best_len = len(canon)
                best = (image, move)
        if best is not None:
            current, witness = _witness_after(best[1], witness, best[0])
            continue

        # Equal-length closure: hunt for a descent elsewhere on the plateau.
        seen = {current.letters}
        frontier: list[tuple[Word, GeneratorMap]] = [(current, witness)]
        descent: tuple[Word, GeneratorMap] | None = None
        while frontier and descent is None and len(seen) <= _CLOSURE_BUDGET:
            state, state_witness = frontier.pop(0)
            for move in moves:
                image = apply(move, state)
                canon, _ = _cyclic_normalize(image)
                if len(canon) < len(current):
                    descent = _witness_after(move, state_witness, image)
                    break
                if len(canon) == len(current) and canon.letters not in seen:
                    seen.add(canon.letters)
                    frontier.append(_witness_after(move, state_witness, image))
        if descent is None:
            return MinimizeResult(current, witness)
        current, witness = descent


@lru_cache(maxsize=16384)
def _orbit_minimum_length(rank: int, letters: tuple[int, ...]) -> int:
    """Witness-free variant of :func:`minimize`, for cached predicates."""
    context = FreeGroupContext(rank)
    moves = _multiplier_maps(context)
    current, _ = _cyclic_normalize(Word(context, letters))
    while True:
        best = None
        for move in moves:
            canon, _ = _cyclic_normalize(apply(move, current))
            if len(canon) < len(current) and (
                best is None or len(canon) < len(best)
            ):
                best = canon
        if best is None:
            if len(current) == 1:
                return 1
            seen = {current.letters}
            frontier = [current]
            while frontier and len(seen) <= _CLOSURE_BUDGET:
                state = frontier.pop(0)
                for move in moves:
                    canon, _ = _cyclic_normalize(apply(move, state))
                    if len(canon) < len(current):
                        best = canon
                        frontier = []
                        break
                    if len(canon) == len(current) and canon.letters not in seen:
                        seen.add(canon.letters)
                        frontier.append(canon)
            if best is None:
                return len(current)
        current = best


def is_primitive(w: Word) -> bool:
    """True iff ``w`` belongs to some basis of the group."""
    if w.is_identity:
        raise EmptyWordError("the identity word is not primitive")
    return _orbit_minimum_length(w.context.rank, w.letters) == 1


def is_power_of_primitive(w: Word) -> Optional[tuple[Word, int]]:
    """``(p, k)`` with ``p`` primitive and ``w = p^k``, if such exist.

    A primitive root is the only candidate: any ``p`` with ``w = p^k`` is a
    power of the maximal root, and primitives are not proper powers.
    """
    if w.is_identity:
        raise EmptyWordError("the identity word is not a power of a primitive")
    root, exponent = primitive_root(w)
    if is_primitive(root):
        return root, exponent
    return None


def product_of_two_primitives(a: Word) -> tuple[Word, Word]:
    """Split ``a = p1 . p2`` with both factors primitive.

    Requires a generator unused by ``a``: with ``b`` the least such
    generator, ``b`` and ``b^-1 a`` are both primitive.  When every
    generator occurs the construction is unavailable at this rank.
    """
    if a.is_identity:
        raise EmptyWordError("cannot split the identity word")
    used = support(a)
    spare = next(
        (i for i in range(1, a.context.rank + 1) if i not in used), None
    )
    if spare is None:
        raise NoSpareGeneratorError(
            f"word uses all {a.context.rank} generators; no spare generator exists"
        )
    first = a.context.generator(spare)
    return first, multiply(invert(first), a)
