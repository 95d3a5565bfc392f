"""Canonical-form involutions: construction, classification, conjugacy, and
the constructive decompositions attached to them.

A canonical involution is described by a partition of the standard basis
into a fixed part, swapped pairs, and blocks.  A block ``(leader, tail)``
inverts its leader and conjugates every tail generator by the leader; the
involution's fixed subgroup is generated by the fixed part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import (
    CanonicalDataError,
    DecompositionError,
    FormError,
    InternalCheckError,
    NotInvolutionError,
    ParseError,
)
from .maps import (
    GeneratorMap,
    apply,
    compose,
    identity_map,
    induced_matrix,
    inverse,
    mod2_matrix,
)
from .stallings import SubgroupGraph, build_graph, contains
from .words import FreeGroupContext, Word, cyclic_reduce, invert, multiply, power

Block = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class CanonicalData:
    """Partitioned-basis data for a canonical involution.

    ``fixed`` lists generators held pointwise, ``swaps`` lists exchanged
    pairs, and each block ``(leader, tail)`` inverts the leader and
    conjugates the tail by it.  The three parts must partition the basis.
    """

    context: FreeGroupContext
    fixed: tuple[int, ...] = ()
    swaps: tuple[tuple[int, int], ...] = ()
    blocks: tuple[Block, ...] = ()

    def __post_init__(self):
        used: list[int] = list(self.fixed)
        for pair in self.swaps:
            if len(pair) != 2:
                raise CanonicalDataError(f"swap {pair!r} is not a pair")
            used.extend(pair)
        for leader, tail in self.blocks:
            used.append(leader)
            used.extend(tail)
        if sorted(used) != list(range(1, self.context.rank + 1)):
            raise CanonicalDataError(
                "fixed part, swaps and blocks must partition the basis"
            )

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(tail) + 1 for _, tail in self.blocks))


@dataclass(frozen=True)
class InvolutionClass:
    """Conjugacy invariants read off a canonical partition."""

    fixed_rank: int
    swap_count: int
    block_sizes: tuple[int, ...]


def quasi_conjugation_data(context: FreeGroupContext, leader: int = 1) -> CanonicalData:
    """One block covering the whole basis: inverts the leader, conjugates the rest."""
    tail = tuple(i for i in range(1, context.rank + 1) if i != leader)
    return CanonicalData(context, blocks=((leader, tail),))


def symmetry_data(context: FreeGroupContext) -> CanonicalData:
    """Singleton blocks everywhere: inverts every generator."""
    return CanonicalData(
        context, blocks=tuple((i, ()) for i in range(1, context.rank + 1))
    )


def extremal_data(context: FreeGroupContext, leader: int = 1) -> CanonicalData:
    """Inverts a single generator and fixes the rest."""
    fixed = tuple(i for i in range(1, context.rank + 1) if i != leader)
    return CanonicalData(context, fixed=fixed, blocks=((leader, ()),))


def realize(data: CanonicalData) -> GeneratorMap:
    """The involution acting canonically on the standard basis."""
    ctx = data.context
    images: list[Word | None] = [None] * ctx.rank
    for index in data.fixed:
        images[index - 1] = ctx.generator(index)
    for left, right in data.swaps:
        images[left - 1] = ctx.generator(right)
        images[right - 1] = ctx.generator(left)
    for leader, tail in data.blocks:
        images[leader - 1] = Word(ctx, (-leader,))
        for follower in tail:
            images[follower - 1] = Word(ctx, (leader, follower, -leader))
    return GeneratorMap(ctx, images)


def fixed_subgroup_graph(data: CanonicalData) -> SubgroupGraph:
    """Graph of the fixed subgroup, generated by the fixed part."""
    ctx = data.context
    return build_graph([ctx.generator(i) for i in data.fixed], ctx)


def is_soft(f: GeneratorMap) -> bool:
    """True iff the involution acts trivially on the mod-2 abelianization."""
    if f.is_identity or not compose(f, f).is_identity:
        raise NotInvolutionError("is_soft expects a map of order two")
    return mod2_matrix(f).is_identity


def classify(data: CanonicalData) -> InvolutionClass:
    return InvolutionClass(
        fixed_rank=len(data.fixed),
        swap_count=len(data.swaps),
        block_sizes=data.block_sizes,
    )


def conjugacy_test(d1: CanonicalData, d2: CanonicalData) -> bool:
    """Conjugacy criterion for soft canonical involutions: equal invariants."""
    if d1.swaps or d2.swaps:
        raise FormError("the conjugacy criterion is proved for soft involutions only")
    if d1.context != d2.context:
        raise FormError("canonical data live in different ranks")
    return classify(d1) == classify(d2)


def build_conjugator(d1: CanonicalData, d2: CanonicalData) -> GeneratorMap:
    """A basis permutation ``s`` with ``s^-1 . realize(d1) . s = realize(d2)``."""
    if not conjugacy_test(d1, d2):
        raise FormError("canonical data are not equivalent")
    ctx = d1.context
    images: list[Word | None] = [None] * ctx.rank
    for target, source in zip(sorted(d1.fixed), sorted(d2.fixed)):
        images[source - 1] = ctx.generator(target)
    blocks1 = sorted(d1.blocks, key=lambda b: (len(b[1]), b[0]))
    blocks2 = sorted(d2.blocks, key=lambda b: (len(b[1]), b[0]))
    for (leader1, tail1), (leader2, tail2) in zip(blocks1, blocks2):
        images[leader2 - 1] = ctx.generator(leader1)
        for t1, t2 in zip(sorted(tail1), sorted(tail2)):
            images[t2 - 1] = ctx.generator(t1)
    return GeneratorMap(ctx, images)


# --- Decomposition of inverted elements -------------------------------------


@dataclass(frozen=True)
class Coboundary:
    """``a = f(w) . w^-1`` for the realized involution ``f``."""

    w: Word


@dataclass(frozen=True)
class BlockForm:
    """``a = f(w) . x . w^-1`` where ``x`` is the block leader (positive)."""

    w: Word
    leader: int


DecompositionResult = Union[Coboundary, BlockForm]


def reconstruct(data: CanonicalData, result: DecompositionResult) -> Word:
    f = realize(data)
    if isinstance(result, Coboundary):
        return multiply(apply(f, result.w), invert(result.w))
    x = data.context.generator(result.leader)
    return multiply(apply(f, result.w), multiply(x, invert(result.w)))


def _split_runs(letters: tuple[int, ...], leader: int) -> list[tuple[bool, list[int]]]:
    """Maximal runs of leader letters vs tail letters."""
    runs: list[tuple[bool, list[int]]] = []
    for letter in letters:
        is_leader = abs(letter) == leader
        if runs and runs[-1][0] == is_leader:
            runs[-1][1].append(letter)
        else:
            runs.append((is_leader, [letter]))
    return runs


def _peel_block(
    ctx: FreeGroupContext, v: Word, leader: int, fuel: int
) -> tuple[str, Word]:
    """Decompose ``v`` inside a single block: ("cob", w) or ("block", w).

    Follows the length induction: strip a conjugating tail word when the
    element ends in the tail, otherwise strip the outer leader power; pure
    leader powers split by parity.  The leader exponent of a "block" result
    is always +1.
    """
    if fuel < 0:
        raise InternalCheckError("block decomposition failed to terminate")
    if v.is_identity:
        return "cob", ctx.identity()
    runs = _split_runs(v.letters, leader)
    if len(runs) == 1 and runs[0][0]:
        k = sum(1 if l > 0 else -1 for l in runs[0][1])
        if k % 2 == 0:
            return "cob", power(ctx.generator(leader), -(k // 2))
        return "block", power(ctx.generator(leader), -((k - 1) // 2))
    if len(runs) == 1:
        raise DecompositionError("a pure tail word is never sent to its inverse")

    leads = runs[0][0]
    k1 = sum(1 if l > 0 else -1 for l in runs[0][1]) if leads else 0
    if not runs[-1][0]:
        # v = x^k1 y1 ... ym with ym nontrivial: forces k1 = 1, ym = y1^-1.
        first_tail = runs[1] if leads else runs[0]
        y1 = Word(ctx, first_tail[1])
        ym = Word(ctx, runs[-1][1])
        if k1 != 1 or ym != invert(y1) or first_tail is runs[-1]:
            raise DecompositionError("word is not sent to its inverse")
        middle = runs[2:-1] if leads else runs[1:-1]
        rebuilt = [leader]  # merged leading power k2 + 1
        for _, letters in middle:
            rebuilt.extend(letters)
        kind, w1 = _peel_block(ctx, Word(ctx, rebuilt), leader, fuel - 1)
        return kind, multiply(y1, w1)
    # v = x^k1 y1 ... x^km: forces km != 0 and k1 = km + 1.
    km = sum(1 if l > 0 else -1 for l in runs[-1][1])
    if k1 != km + 1:
        raise DecompositionError("word is not sent to its inverse")
    interior = runs[1:-1] if leads else runs[:-1]
    rebuilt = [leader]  # leading power k1 - km = 1
    for _, letters in interior:
        rebuilt.extend(letters)
    kind, w1 = _peel_block(ctx, Word(ctx, rebuilt), leader, fuel - 1)
    return kind, multiply(power(ctx.generator(leader), -km), w1)


def decompose_inverted(data: CanonicalData, a: Word) -> DecompositionResult:
    """Constructive splitting of an element the involution sends to its inverse.

    Peels paired syllables of the free-product normal form off both ends,
    then resolves the single middle syllable inside its block.
    """
    if data.swaps:
        raise FormError("decomposition requires soft canonical data")
    f = realize(data)
    if apply(f, a) != invert(a):
        raise DecompositionError("the involution does not invert this element")
    ctx = data.context

    factor_of: dict[int, int] = {}
    for index in data.fixed:
        factor_of[index] = 0
    for b, (leader, tail) in enumerate(data.blocks, start=1):
        factor_of[leader] = b
        for follower in tail:
            factor_of[follower] = b

    syllables: list[tuple[int, Word]] = []
    for letter in a.letters:
        factor = factor_of[abs(letter)]
        if syllables and syllables[-1][0] == factor:
            syllables[-1] = (factor, multiply(syllables[-1][1], Word(ctx, (letter,))))
        else:
            syllables.append((factor, Word(ctx, (letter,))))

    head_parts: list[Word] = []
    lo, hi = 0, len(syllables)
    while hi - lo >= 2:
        first, last = syllables[lo][1], syllables[hi - 1][1]
        if multiply(apply(f, first), last).is_identity:
            head_parts.append(first)
            lo += 1
            hi -= 1
        else:
            break
    head = ctx.identity()
    for part in head_parts:
        head = multiply(head, part)
    remaining = syllables[lo:hi]

    if not remaining:
        result = Coboundary(apply(f, head))
        if reconstruct(data, result) != a:
            raise InternalCheckError("decomposition failed to reconstruct its input")
        return result
    if len(remaining) > 1:
        raise InternalCheckError("syllable peeling left more than one factor")
    factor, middle = remaining[0]
    if factor == 0:
        raise InternalCheckError("a fixed-factor syllable cannot be inverted")
    leader = data.blocks[factor - 1][0]
    kind, w1 = _peel_block(ctx, middle, leader, 4 * len(middle) + 8)
    w = multiply(apply(f, head), w1)
    result: DecompositionResult
    result = Coboundary(w) if kind == "cob" else BlockForm(w, leader)
    if reconstruct(data, result) != a:
        raise InternalCheckError("decomposition failed to reconstruct its input")
    return result


def primitive_inverted_form(data: CanonicalData, a: Word) -> tuple[Word, int]:
    """Write a primitive inverted element as ``v . leader^sign . v^-1``.

    The conjugating word lands in the fixed subgroup; both facts are
    verified, not assumed.
    """
    from .whitehead import is_primitive

    if data.swaps or len(data.blocks) != 1:
        raise FormError("expected soft data with exactly one block")
    if not is_primitive(a):
        raise DecompositionError("element is not primitive")
    f = realize(data)
    if apply(f, a) != invert(a):
        raise DecompositionError("the involution does not invert this element")
    leader = data.blocks[0][0]
    core, conjugator = cyclic_reduce(a)
    if core.letters == (leader,):
        sign = 1
    elif core.letters == (-leader,):
        sign = -1
    else:
        raise InternalCheckError(
            "primitive inverted element is not a conjugate of the block leader"
        )
    if not contains(fixed_subgroup_graph(data), conjugator):
        raise InternalCheckError("conjugating word left the fixed subgroup")
    return conjugator, sign


# --- Shape predicates -------------------------------------------------------


def is_quasi_conjugation(data: CanonicalData) -> bool:
    return (
        not data.fixed
        and not data.swaps
        and len(data.blocks) == 1
        and len(data.blocks[0][1]) + 1 == data.context.rank
    )


def is_symmetry(data: CanonicalData) -> bool:
    return (
        not data.fixed
        and not data.swaps
        and len(data.blocks) == data.context.rank
        and all(not tail for _, tail in data.blocks)
    )


def is_extremal(data: CanonicalData) -> bool:
    return (
        not data.swaps
        and len(data.blocks) == 1
        and not data.blocks[0][1]
        and len(data.fixed) == data.context.rank - 1
    )


# --- Squares: paired blocks have square roots, a single block does not ------


def square_root_of_bead(data: CanonicalData) -> GeneratorMap:
    """A square root for equal-size blocks paired off in input order.

    For a pair of blocks the root swaps them with a twist; squaring it
    reproduces the canonical action on both.  The odd block count is left
    unresolved deliberately: no pairing exists to drive the construction.
    """
    if data.swaps:
        raise FormError("square-root construction expects soft data")
    block_count = len(data.blocks)
    if block_count < 2:
        raise FormError("need at least two blocks")
    sizes = {len(tail) for _, tail in data.blocks}
    if len(sizes) != 1:
        raise FormError("blocks must share one size")
    if block_count % 2 != 0:
        raise FormError("odd block count: no paired square-root construction")
    size = sizes.pop() + 1
    if len(data.fixed) >= size:
        raise FormError("fixed part must be smaller than the block size")
    ctx = data.context
    images: list[Word | None] = [None] * ctx.rank
    for index in data.fixed:
        images[index - 1] = ctx.generator(index)
    for first in range(0, block_count, 2):
        x, x_tail = data.blocks[first]
        a, a_tail = data.blocks[first + 1]
        images[x - 1] = Word(ctx, (-a,))
        images[a - 1] = ctx.generator(x)
        for y, b in zip(x_tail, a_tail):
            images[y - 1] = Word(ctx, (a, b, -a))
            images[b - 1] = ctx.generator(y)
    return GeneratorMap(ctx, images)


@dataclass(frozen=True)
class SnakeCertificate:
    """Obstruction record: a rank-one (-1)-eigenline forces ``m^2 = -1`` in Z."""

    block_leader: int
    eigenvalue: int
    eigenline_dimension: int
    conclusion: str


def _kernel_dimension(rows: list[list[Fraction]]) -> int:
    n = len(rows)
    rank_count = 0
    m = [row[:] for row in rows]
    for col in range(n):
        pivot = next(
            (r for r in range(rank_count, n) if m[r][col] != 0), None
        )
        if pivot is None:
            continue
        m[rank_count], m[pivot] = m[pivot], m[rank_count]
        head = m[rank_count][col]
        m[rank_count] = [value / head for value in m[rank_count]]
        for r in range(n):
            if r != rank_count and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank_count])]
        rank_count += 1
    return n - rank_count


def snake_obstruction(data: CanonicalData) -> SnakeCertificate:
    """Certificate that a single-block involution is not a square.

    The induced map on the abelianization has a one-dimensional
    (-1)-eigenspace spanned by the block leader; any square root would act
    on that line by an integer whose square is -1.
    """
    if data.swaps:
        raise FormError("obstruction expects soft data")
    if len(data.blocks) != 1:
        raise FormError("obstruction applies to single-block data only")
    leader, tail = data.blocks[0]
    if len(data.fixed) >= len(tail) + 1:
        raise FormError("fixed part must be smaller than the block size")
    matrix = induced_matrix(realize(data))
    n = matrix.size
    column = tuple(matrix.rows[r][leader - 1] for r in range(n))
    expected = tuple(-1 if r == leader - 1 else 0 for r in range(n))
    if column != expected:
        raise InternalCheckError("block leader is not a (-1)-eigenvector")
    plus_identity = [
        [Fraction(matrix.rows[r][c] + (1 if r == c else 0)) for c in range(n)]
        for r in range(n)
    ]
    dimension = _kernel_dimension(plus_identity)
    if dimension != 1:
        raise InternalCheckError("(-1)-eigenspace is not one-dimensional")
    return SnakeCertificate(
        block_leader=leader,
        eigenvalue=-1,
        eigenline_dimension=dimension,
        conclusion=(
            "a square root would scale the eigenline by an integer m with "
            "m*m == -1, which has no integer solution"
        ),
    )


# --- Text format -------------------------------------------------------------
#
# Three lines: `U: x2 x5`, `Z: (x3 x4)`, `blocks: [x1 | x6 x7] [x8 |]`.


def format_canonical_data(data: CanonicalData) -> str:
    fixed = " ".join(f"x{i}" for i in data.fixed)
    swaps = " ".join(f"(x{a} x{b})" for a, b in data.swaps)
    blocks = " ".join(
        "[x{} |{}]".format(
            leader, ("" if not tail else " " + " ".join(f"x{i}" for i in tail))
        )
        for leader, tail in data.blocks
    )
    return f"U: {fixed}\nZ: {swaps}\nblocks: {blocks}"


def _parse_indices(text: str) -> list[int]:
    out = []
    for token in text.split():
        if not token.startswith("x") or not token[1:].isdigit():
            raise ParseError(f"bad generator token {token!r}")
        out.append(int(token[1:]))
    return out


def parse_canonical_data(text: str, context: FreeGroupContext) -> CanonicalData:
    fixed: tuple[int, ...] = ()
    swaps: list[tuple[int, int]] = []
    blocks: list[Block] = []
    seen = set()
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip().lower()
        rest = rest.strip()
        if key in seen:
            raise ParseError(f"duplicate section {key!r}")
        seen.add(key)
        if key == "u":
            fixed = tuple(_parse_indices(rest))
        elif key == "z":
            for chunk in _chunks(rest, "(", ")"):
                pair = _parse_indices(chunk)
                if len(pair) != 2:
                    raise ParseError(f"swap {chunk!r} is not a pair")
                swaps.append((pair[0], pair[1]))
        elif key == "blocks":
            for chunk in _chunks(rest, "[", "]"):
                if "|" not in chunk:
                    raise ParseError(f"block {chunk!r} lacks a '|'")
                leader_text, tail_text = chunk.split("|", 1)
                leaders = _parse_indices(leader_text)
                if len(leaders) != 1:
                    raise ParseError(f"block {chunk!r} needs one leader")
                blocks.append((leaders[0], tuple(_parse_indices(tail_text))))
        else:
            raise ParseError(f"unknown section {key!r}")
    return CanonicalData(context, fixed=fixed, swaps=tuple(swaps), blocks=tuple(blocks))


def _chunks(text: str, opener: str, closer: str) -> list[str]:
    chunks = []
    rest = text
    while rest.strip():
        rest = rest.strip()
        if not rest.startswith(opener):
            raise ParseError(f"expected {opener!r} in {text!r}")
        end = rest.find(closer)
        if end < 0:
            raise ParseError(f"unbalanced {opener!r} in {text!r}")
        chunks.append(rest[1:end])
        rest = rest[end + 1 :]
    return chunks
