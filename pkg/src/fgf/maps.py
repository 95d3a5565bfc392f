"""Endomorphisms and automorphisms of a free group given by generator images.

An automorphism test runs Nielsen reduction on the image tuple, recording the
elementary transformations; a tuple is a basis exactly when it reduces to
signed letters covering every generator, and replaying the recorded
transformations yields the inverse map.  Greedy length descent is
supplemented by a plateau search over length-preserving elementary moves,
which is what makes the reduction a genuine decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    ContextMismatchError,
    InternalCheckError,
    NotAutomorphismError,
)
from .words import (
    FreeGroupContext,
    Word,
    cyclic_reduce,
    format_word,
    invert,
    multiply,
    parse_word,
    power,
)

_PLATEAU_LIMIT = 200_000


class GeneratorMap:
    """A homomorphism determined by the images of the standard generators."""

    __slots__ = ("context", "images", "_hash", "_inv_images", "_nielsen")

    def __init__(self, context: FreeGroupContext, images: Sequence[Word]):
        images = tuple(images)
        if len(images) != context.rank:
            raise ValueError(
                f"expected {context.rank} images, got {len(images)}"
            )
        for image in images:
            if image.context != context:
                raise ContextMismatchError("image context differs from map context")
        self.context = context
        self.images = images
        self._hash: int | None = None
        self._inv_images: tuple[tuple[int, ...], ...] | None = None
        self._nielsen = None

    @property
    def is_identity(self) -> bool:
        return all(
            image.letters == (i,) for i, image in enumerate(self.images, start=1)
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GeneratorMap)
            and self.context == other.context
            and self.images == other.images
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (self.context.rank, tuple(im.letters for im in self.images))
            )
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(
            f"x{i}->{format_word(im)}" for i, im in enumerate(self.images, start=1)
        )
        return f"<GeneratorMap {body}>"


def identity_map(context: FreeGroupContext) -> GeneratorMap:
    return GeneratorMap(context, context.generators())


def conjugation_by(a: Word) -> GeneratorMap:
    """The inner automorphism ``z -> a z a^-1``."""
    ctx = a.context
    inv = invert(a)
    return GeneratorMap(
        ctx,
        [Word(ctx, a.letters + (i,) + inv.letters) for i in range(1, ctx.rank + 1)],
    )


def apply(f: GeneratorMap, w: Word) -> Word:
    """Image of ``w`` under the homomorphic extension of ``f``."""
    if f.context != w.context:
        raise ContextMismatchError("map and word contexts differ")
    if f._inv_images is None:
        f._inv_images = tuple(
            tuple(-l for l in reversed(img.letters)) for img in f.images
        )
    out: list[int] = []
    for letter in w.letters:
        if letter > 0:
            out.extend(f.images[letter - 1].letters)
        else:
            out.extend(f._inv_images[-letter - 1])
    return Word(f.context, out)


def compose(f: GeneratorMap, g: GeneratorMap) -> GeneratorMap:
    """``f`` after ``g``: ``(f.g)(x_i) = f(g(x_i))``."""
    if f.context != g.context:
        raise ContextMismatchError("map contexts differ")
    return GeneratorMap(f.context, [apply(f, image) for image in g.images])


def commutes(f: GeneratorMap, g: GeneratorMap) -> bool:
    return compose(f, g) == compose(g, f)


def order_up_to(f: GeneratorMap, bound: int) -> Optional[int]:
    """Least ``k <= bound`` with ``f^k = id``, if any."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    current = f
    for k in range(1, bound + 1):
        if current.is_identity:
            return k
        current = compose(current, f)
    return None


# --- Nielsen reduction -----------------------------------------------------
#
# A move is ("mul", i, j, side, sign): replace u_i by u_i * u_j^sign
# (side "R") or u_j^sign * u_i (side "L").  Replaying a move as the
# elementary automorphism x_i -> x_i x_j^sign (resp. x_j^sign x_i) realizes
# the recorded transcript as a right-composition chain.

Move = tuple


def _move_candidates(n: int):
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for side in ("R", "L"):
                for sign in (1, -1):
                    yield ("mul", i, j, side, sign)


def _apply_move(images: tuple[Word, ...], move: Move) -> tuple[Word, ...]:
    _, i, j, side, sign = move
    other = images[j] if sign > 0 else invert(images[j])
    if side == "R":
        new = multiply(images[i], other)
    else:
        new = multiply(other, images[i])
    return images[:i] + (new,) + images[i + 1 :]


def _elementary_map(context: FreeGroupContext, move: Move) -> GeneratorMap:
    _, i, j, side, sign = move
    gens = context.generators()
    if side == "R":
        gens[i] = Word(context, (i + 1, sign * (j + 1)))
    else:
        gens[i] = Word(context, (sign * (j + 1), i + 1))
    return GeneratorMap(context, gens)


def _total_length(images: tuple[Word, ...]) -> int:
    return sum(len(image) for image in images)


def _descend_step(images: tuple[Word, ...]) -> Optional[tuple[Move, tuple[Word, ...]]]:
    """First (lexicographically least) strictly length-reducing move."""
    for move in _move_candidates(len(images)):
        _, i, j, side, sign = move
        candidate = _apply_move(images, move)
        if len(candidate[i]) < len(images[i]):
            return move, candidate
    return None


def _plateau_escape(
    images: tuple[Word, ...],
) -> Optional[tuple[list[Move], tuple[Word, ...]]]:
    """Search length-preserving moves for a state admitting a strict descent.

    The plateau of tuples with a fixed total length is finite, so this is an
    exhaustive search; it returns the move transcript reaching a strictly
    shorter tuple, or None when the whole plateau component is a dead end.
    """
    start_key = tuple(im.letters for im in images)
    seen = {start_key}
    queue: list[tuple[tuple[Word, ...], list[Move]]] = [(images, [])]
    while queue:
        state, path = queue.pop(0)
        for move in _move_candidates(len(state)):
            _, i, j, side, sign = move
            candidate = _apply_move(state, move)
            new_len = len(candidate[i])
            old_len = len(state[i])
            if new_len < old_len:
                return path + [move], candidate
            if new_len > old_len:
                continue
            key = tuple(im.letters for im in candidate)
            if key not in seen:
                seen.add(key)
                if len(seen) > _PLATEAU_LIMIT:
                    raise InternalCheckError(
                        "Nielsen plateau search exceeded its size limit"
                    )
                queue.append((candidate, path + [move]))
    return None


def _nielsen_reduce(
    images: tuple[Word, ...],
) -> tuple[tuple[Word, ...], list[Move]]:
    """Reduce an image tuple to minimal total length; record the transcript."""
    transcript: list[Move] = []
    current = images
    while True:
        step = _descend_step(current)
        if step is not None:
            move, current = step
            transcript.append(move)
            continue
        escape = _plateau_escape(current)
        if escape is None:
            return current, transcript
        moves, current = escape
        transcript.extend(moves)


def _signed_permutation(images: tuple[Word, ...]) -> Optional[list[int]]:
    """If every image is a distinct signed letter, return the letter list."""
    letters = []
    for image in images:
        if len(image.letters) != 1:
            return None
        letters.append(image.letters[0])
    if sorted(abs(l) for l in letters) != list(range(1, len(images) + 1)):
        return None
    return letters


def _certificate(f: GeneratorMap):
    if f._nielsen is None:
        reduced, transcript = _nielsen_reduce(f.images)
        f._nielsen = (_signed_permutation(reduced), transcript)
    return f._nielsen


def is_automorphism(f: GeneratorMap) -> bool:
    """True iff the images form a basis of the free group."""
    if abs(determinant(induced_matrix(f))) != 1:
        return False
    perm, _ = _certificate(f)
    return perm is not None


def inverse(f: GeneratorMap) -> GeneratorMap:
    """Inverse automorphism, rebuilt from the Nielsen transcript."""
    perm, transcript = _certificate(f)
    if perm is None:
        raise NotAutomorphismError("images do not form a basis")
    ctx = f.context
    # f . m_1 . ... . m_k = p, so f^-1 = m_1 . ... . m_k . p^-1.
    acc = identity_map(ctx)
    for move in transcript:
        acc = compose(acc, _elementary_map(ctx, move))
    perm_inverse_images: list[Word] = [ctx.identity()] * ctx.rank
    for slot, letter in enumerate(perm, start=1):
        sign = 1 if letter > 0 else -1
        perm_inverse_images[abs(letter) - 1] = Word(ctx, (sign * slot,))
    result = compose(acc, GeneratorMap(ctx, perm_inverse_images))
    return result


def is_inner(f: GeneratorMap) -> Optional[Word]:
    """The unique conjugating element ``a`` with ``f = (z -> a z a^-1)``, if any.

    If ``f(x_1) = a x_1 a^-1`` then the cyclically reduced core of ``f(x_1)``
    must be ``x_1`` and ``a`` is the stripped conjugator times a power of
    ``x_1``; the finitely many candidates are verified on every generator.
    Uniqueness holds because the group is centerless.
    """
    if not is_automorphism(f):
        raise NotAutomorphismError("is_inner expects an automorphism")
    ctx = f.context
    core, stem = cyclic_reduce(f.images[0])
    if core.letters != (1,):
        return None
    x1 = ctx.generator(1)
    bound = max(len(image) for image in f.images)
    for k in range(-bound, bound + 1):
        candidate = multiply(stem, power(x1, k))
        if all(
            apply(f, gen) == multiply(candidate, multiply(gen, invert(candidate)))
            for gen in ctx.generators()
        ):
            return candidate
    return None


# --- Abelianizations -------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix; column ``i`` is the exponent vector of image ``i``."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def is_identity(self) -> bool:
        return all(
            value == (1 if r == c else 0)
            for r, row in enumerate(self.rows)
            for c, value in enumerate(row)
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        n = self.size
        return IntMatrix(
            tuple(
                tuple(
                    sum(self.rows[r][k] * other.rows[k][c] for k in range(n))
                    for c in range(n)
                )
                for r in range(n)
            )
        )


@dataclass(frozen=True)
class Mod2Matrix:
    """Square matrix over the two-element field."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def is_identity(self) -> bool:
        return all(
            value == (1 if r == c else 0)
            for r, row in enumerate(self.rows)
            for c, value in enumerate(row)
        )

    def __matmul__(self, other: "Mod2Matrix") -> "Mod2Matrix":
        n = self.size
        return Mod2Matrix(
            tuple(
                tuple(
                    sum(self.rows[r][k] * other.rows[k][c] for k in range(n)) & 1
                    for c in range(n)
                )
                for r in range(n)
            )
        )


def determinant(matrix: IntMatrix) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = matrix.size
    if n == 0:
        return 1
    m = [list(row) for row in matrix.rows]
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
            m[i][k] = 0
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def exponent_vector(w: Word) -> tuple[int, ...]:
    counts = [0] * w.context.rank
    for letter in w.letters:
        counts[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(counts)


def induced_matrix(f: GeneratorMap) -> IntMatrix:
    """Action on the abelianization; column ``i`` comes from ``f(x_i)``."""
    n = f.context.rank
    columns = [exponent_vector(image) for image in f.images]
    return IntMatrix(tuple(tuple(columns[c][r] for c in range(n)) for r in range(n)))


def mod2_matrix(f: GeneratorMap) -> Mod2Matrix:
    """Action on the mod-2 abelianization."""
    return Mod2Matrix(
        tuple(tuple(value & 1 for value in row) for row in induced_matrix(f).rows)
    )


def is_even(w: Word) -> bool:
    """True iff every exponent sum of ``w`` is even."""
    return all(value % 2 == 0 for value in exponent_vector(w))


# --- File format -----------------------------------------------------------
#
# One line per generator, `x<i> -> <word>`, in increasing i; blank lines and
# `#` comments are ignored.  Formatting uses reduced images and single
# spaces, so round trips are bit-exact.


def format_generator_map(f: GeneratorMap) -> str:
    return "\n".join(
        f"x{i} -> {format_word(image)}"
        for i, image in enumerate(f.images, start=1)
    )


def parse_generator_map(text: str, context: FreeGroupContext) -> GeneratorMap:
    from .errors import ParseError

    images: dict[int, Word] = {}
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ParseError(f"expected 'x<i> -> <word>', got {raw_line!r}")
        left, right = line.split("->", 1)
        left = left.strip()
        if not left.startswith("x") or not left[1:].isdigit():
            raise ParseError(f"bad generator name {left!r}")
        index = int(left[1:])
        if index in images:
            raise ParseError(f"duplicate line for x{index}")
        images[index] = parse_word(right.strip(), context)
    if sorted(images) != list(range(1, context.rank + 1)):
        raise ParseError(
            f"expected one line per generator x1..x{context.rank}"
        )
    return GeneratorMap(context, [images[i] for i in range(1, context.rank + 1)])
