"""Free factors as fixed subgroups, the splitting relation, basis extraction
from an involution-family parameter tuple, and the finite-function encoding.

Free factors are handled symbolically: a handle carries canonical involution
data (the factor is the involution's fixed subgroup) plus an optional
basis-change automorphism for factors not spanned by standard generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .errors import (
    BasisPropertyError,
    FormError,
    FunctionEncodingError,
    InternalCheckError,
)
from .involutions import CanonicalData, realize
from .maps import (
    GeneratorMap,
    apply,
    commutes,
    compose,
    conjugation_by,
    inverse,
    is_automorphism,
)
from .stallings import SubgroupGraph, build_graph, contains, rank, same_subgroup
from .words import FreeGroupContext, Word, format_word, invert, multiply


@dataclass(frozen=True)
class FreeFactorHandle:
    """A free factor, presented as the fixed subgroup of an involution.

    The factor is generated by the images of the data's fixed part under the
    optional basis change; instances representing standard-generator factors
    leave ``basis_change`` as None.
    """

    data: CanonicalData
    basis_change: Optional[GeneratorMap] = None

    def __post_init__(self):
        if self.basis_change is not None:
            if self.basis_change.context != self.data.context:
                raise FormError("basis change context differs from data context")
            if not is_automorphism(self.basis_change):
                raise FormError("basis change must be an automorphism")

    @property
    def context(self) -> FreeGroupContext:
        return self.data.context

    @cached_property
    def generators(self) -> tuple[Word, ...]:
        gens = [self.context.generator(i) for i in self.data.fixed]
        if self.basis_change is not None:
            gens = [apply(self.basis_change, g) for g in gens]
        return tuple(gens)

    @cached_property
    def graph(self) -> SubgroupGraph:
        return build_graph(list(self.generators), self.context)

    @cached_property
    def involution(self) -> GeneratorMap:
        base = realize(self.data)
        if self.basis_change is None:
            return base
        return compose(
            self.basis_change, compose(base, inverse(self.basis_change))
        )


def standard_factor(
    context: FreeGroupContext, indices: Sequence[int]
) -> FreeFactorHandle:
    """Handle for the subgroup spanned by a subset of standard generators.

    The improper factor (all generators) is backed by the identity map,
    which fixes everything; proper factors get a genuine involution.
    """
    fixed = tuple(sorted(set(indices)))
    others = tuple(i for i in range(1, context.rank + 1) if i not in fixed)
    blocks = ((others[0], others[1:]),) if others else ()
    data = CanonicalData(context, fixed=fixed, blocks=blocks)
    return FreeFactorHandle(data)


def fix_membership(handle: FreeFactorHandle, a: Word) -> bool:
    """Membership in the factor, computed two ways and cross-checked.

    Route one: the handle's involution commutes with conjugation by ``a``
    exactly when it fixes ``a``.  Route two: graph membership.  Divergence
    aborts, since it would mean one of the routes is wrong.
    """
    invol = handle.involution
    tau = conjugation_by(a)
    by_conjugation = compose(invol, compose(tau, inverse(invol))) == tau
    by_graph = contains(handle.graph, a)
    if by_conjugation != by_graph:
        raise InternalCheckError(
            f"membership routes disagree on {format_word(a)}: "
            f"conjugation={by_conjugation} graph={by_graph}"
        )
    return by_graph


def free_factor_relation(
    a: FreeFactorHandle, b: FreeFactorHandle, c: FreeFactorHandle
) -> bool:
    """Whether the first factor splits as the free product of the other two.

    Generation plus rank additivity suffices: a surjection between free
    groups of the same finite rank is an isomorphism.
    """
    if not (a.context == b.context == c.context):
        raise FormError("factors live in different contexts")
    joined = build_graph(list(b.generators) + list(c.generators), a.context)
    return same_subgroup(joined, a.graph) and rank(a.graph) == rank(
        b.graph
    ) + rank(c.graph)


# --- Basis extraction --------------------------------------------------------


def _signs_on(images: Sequence[Word], generators: Sequence[Word]) -> list[int]:
    signs = []
    for image, generator in zip(images, generators):
        if image == generator:
            signs.append(1)
        elif image == invert(generator):
            signs.append(-1)
        else:
            raise InternalCheckError(
                "a commuting involution fixing the first factor must act "
                "diagonally on the second factor's basis"
            )
    return signs


def extract_basis(
    factor_a: FreeFactorHandle,
    factor_b: FreeFactorHandle,
    pairing: GeneratorMap,
    family: Sequence[GeneratorMap],
    selector: GeneratorMap,
    matcher: GeneratorMap,
) -> list[Word]:
    """Recover a basis of the second factor from the parameter tuple.

    ``pairing`` is the involution inverting the first factor's basis and
    conjugating the second's elementwise; ``family`` is the diagonal
    involution family; ``selector`` and ``matcher`` play the roles of the
    two partition involutions.  Each of the properties (a)-(g) is verified
    in turn and the first failure is reported by name.
    """
    context = factor_a.context
    if factor_b.context != context:
        raise FormError("factors live in different contexts")
    if factor_a.basis_change is not None or factor_b.basis_change is not None:
        raise FormError("extraction expects standard-generator factors")
    a_indices = tuple(sorted(factor_a.data.fixed))
    b_indices = tuple(sorted(factor_b.data.fixed))
    m = len(b_indices)
    if len(a_indices) != m or set(a_indices) & set(b_indices):
        raise FormError("factors must be disjoint and of equal rank")
    if set(a_indices) | set(b_indices) != set(range(1, context.rank + 1)):
        raise FormError("factors must split the whole group")

    a_gens = [context.generator(i) for i in a_indices]
    b_gens = [context.generator(i) for i in b_indices]

    for a_gen, b_gen in zip(a_gens, b_gens):
        if apply(pairing, a_gen) != invert(a_gen) or apply(pairing, b_gen) != multiply(
            a_gen, multiply(b_gen, invert(a_gen))
        ):
            raise FormError(
                "pairing involution does not act canonically on the two factors"
            )

    fixed_sets: list[frozenset[int]] = []
    for psi in family:
        if not is_automorphism(psi):
            raise FormError("family member is not an automorphism")
        if not commutes(psi, pairing):
            raise FormError("family member does not commute with the pairing")
        for a_gen in a_gens:
            if apply(psi, a_gen) != a_gen:
                raise FormError("family member does not fix the first factor")
        signs = _signs_on([apply(psi, g) for g in b_gens], b_gens)
        # (a): involutions with free-factor fixed subgroups
        if all(s == 1 for s in signs):
            raise BasisPropertyError("a", "family contains the identity")
        if not compose(psi, psi).is_identity:
            raise BasisPropertyError("a", "family member is not an involution")
        fixed_sets.append(
            frozenset(i for i, s in zip(b_indices, signs) if s == 1)
        )

    covered = frozenset().union(*fixed_sets) if fixed_sets else frozenset()
    if covered != set(b_indices):
        raise BasisPropertyError(
            "b", "some basis element of the second factor is never fixed"
        )

    for fix in fixed_sets:
        if len(fix) > 1:
            if not any(
                one and two and (one | two) == fix and not (one & two)
                for one in fixed_sets
                for two in fixed_sets
            ):
                raise BasisPropertyError(
                    "c", "a higher-rank fixed subgroup admits no family splitting"
                )

    singletons = [fix for fix in fixed_sets if len(fix) == 1]
    singleton_indices = frozenset().union(*singletons) if singletons else frozenset()
    for position, fix in enumerate(singletons):
        rest = [other for slot, other in enumerate(singletons) if slot != position]
        others = frozenset().union(*rest) if rest else frozenset()
        if others != set(b_indices) - fix:
            raise BasisPropertyError(
                "d", "rank-one fixed subgroups do not complement each other"
            )

    candidates = [context.generator(i) for i in sorted(singleton_indices)]
    candidates += [invert(c) for c in candidates]

    for involution in (selector, matcher):
        if not is_automorphism(involution) or not compose(
            involution, involution
        ).is_identity:
            raise FormError("partition parameters must be involutions")
        for a_gen in a_gens:
            if apply(involution, a_gen) != a_gen:
                raise BasisPropertyError(
                    "e", "partition involution moves the first factor"
                )
        images = [apply(involution, g) for g in b_gens]
        image_graph = build_graph(images, context)
        if not same_subgroup(image_graph, factor_b.graph):
            raise BasisPropertyError(
                "e", "partition involution does not preserve the second factor"
            )

    kernel = [c for c in candidates if apply(selector, c) == invert(c)]
    moved = [c for c in candidates if c not in kernel]
    matched = [apply(matcher, c) for c in kernel]
    if sorted(w.letters for w in matched) != sorted(w.letters for w in moved):
        raise BasisPropertyError(
            "f", "matcher is not a bijection between the two candidate parts"
        )

    for c in moved:
        if not any(
            apply(selector, c) == multiply(c0, multiply(c, invert(c0)))
            for c0 in kernel
        ):
            raise BasisPropertyError(
                "g", "selector does not conjugate a moved candidate by a kept one"
            )

    chosen = [
        c
        for c in kernel
        if any(
            apply(selector, other) == multiply(c, multiply(other, invert(c)))
            for other in candidates
        )
    ]
    chosen.sort(key=lambda w: w.letters)
    basis = chosen + [apply(matcher, c) for c in chosen]

    letters = {w.letters for w in basis}
    if len(letters) != len(basis) or any(
        invert(w).letters in letters for w in basis
    ):
        raise InternalCheckError("extracted set contains a repeat or an inverse pair")
    if not same_subgroup(build_graph(basis, context), factor_b.graph):
        raise InternalCheckError("extracted set does not generate the factor")
    return basis


def canonical_extraction_parameters(context: FreeGroupContext):
    """The standard parameter tuple at even rank: first half pairs with the
    second half, the family is all diagonal sign patterns, and the partition
    involutions invert/conjugate and swap the second factor's two halves."""
    rank_total = context.rank
    if rank_total % 2 != 0:
        raise FormError("canonical extraction tuple needs even total rank")
    m = rank_total // 2
    a_indices = tuple(range(1, m + 1))
    b_indices = tuple(range(m + 1, rank_total + 1))
    factor_a = standard_factor(context, a_indices)
    factor_b = standard_factor(context, b_indices)

    pairing = GeneratorMap(
        context,
        [Word(context, (-i,)) for i in a_indices]
        + [Word(context, (i - m, i, -(i - m))) for i in b_indices],
    )

    family = []
    for mask in range(1, 2**m):
        images = [context.generator(i) for i in a_indices]
        for bit in range(m):
            index = b_indices[bit]
            keep = not (mask >> bit) & 1
            images.append(
                context.generator(index)
                if keep
                else invert(context.generator(index))
            )
        family.append(GeneratorMap(context, images))

    half = m // 2
    selector_images = [context.generator(i) for i in a_indices]
    matcher_images = [context.generator(i) for i in a_indices]
    for position, index in enumerate(b_indices):
        if position < half:
            selector_images.append(invert(context.generator(index)))
            matcher_images.append(context.generator(b_indices[position + half]))
        elif position < 2 * half:
            anchor = b_indices[position - half]
            selector_images.append(
                Word(context, (anchor, index, -anchor))
            )
            matcher_images.append(context.generator(b_indices[position - half]))
        else:
            # Odd second-factor rank: the leftover generator stays put.
            selector_images.append(invert(context.generator(index)))
            matcher_images.append(context.generator(index))
    selector = GeneratorMap(context, selector_images)
    matcher = GeneratorMap(context, matcher_images)
    return factor_a, factor_b, pairing, family, selector, matcher


# --- Finite-function encoding -------------------------------------------------


@dataclass(frozen=True)
class BasisSplit:
    """A partition of the basis into ``kept`` and its matched complement.

    ``marker`` fixes exactly the kept generators; ``pairer`` carries each
    kept generator to its partner on the other side.
    """

    context: FreeGroupContext
    kept: tuple[int, ...]
    marker: GeneratorMap
    pairer: GeneratorMap

    def __post_init__(self):
        rank_total = self.context.rank
        if rank_total % 2 != 0 or len(self.kept) != rank_total // 2:
            raise FormError("split needs even rank with half the basis kept")
        kept = set(self.kept)
        for index in range(1, rank_total + 1):
            fixed = apply(self.marker, self.context.generator(index)) == (
                self.context.generator(index)
            )
            if fixed != (index in kept):
                raise FormError(
                    "marker must fix exactly the kept generators"
                )
        partners = []
        for index in self.kept:
            image = apply(self.pairer, self.context.generator(index))
            if len(image.letters) != 1 or image.letters[0] < 0:
                raise FormError("pairer must carry kept generators to generators")
            partners.append(image.letters[0])
        if sorted(partners) != sorted(set(range(1, rank_total + 1)) - kept):
            raise FormError("pairer must match the kept half with its complement")
        object.__setattr__(self, "_partners", tuple(partners))

    @property
    def size(self) -> int:
        return len(self.kept)

    def partner(self, position: int) -> int:
        return self._partners[position]


def canonical_split(m: int) -> BasisSplit:
    """Kept half 1..m, partner i+m, marker inverts the complement."""
    context = FreeGroupContext(2 * m)
    kept = tuple(range(1, m + 1))
    marker = GeneratorMap(
        context,
        [context.generator(i) for i in kept]
        + [invert(context.generator(i + m)) for i in kept],
    )
    pairer = GeneratorMap(
        context,
        [context.generator(i + m) for i in kept]
        + [context.generator(i) for i in kept],
    )
    return BasisSplit(context, kept, marker, pairer)


@dataclass(frozen=True)
class FiniteFunction:
    """A total function on {1..m}, tabulated."""

    m: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.m or any(
            not 1 <= value <= self.m for value in self.table
        ):
            raise FormError("table must list m values in 1..m")

    def __call__(self, argument: int) -> int:
        return self.table[argument - 1]


def encode_function(fn: FiniteFunction, split: BasisSplit) -> GeneratorMap:
    """The automorphism fixing the kept half and appending ``x_f(i)`` to the
    partner of ``x_i``."""
    if fn.m != split.size:
        raise FormError(f"function size {fn.m} != split size {split.size}")
    context = split.context
    images = [context.generator(i) for i in range(1, context.rank + 1)]
    for position, index in enumerate(split.kept):
        partner = split.partner(position)
        value_index = split.kept[fn(position + 1) - 1]
        images[partner - 1] = multiply(
            context.generator(partner), context.generator(value_index)
        )
    return GeneratorMap(context, images)


def decode_function(sigma: GeneratorMap, split: BasisSplit) -> FiniteFunction:
    """Read the tabulated function back off an encoding automorphism."""
    context = split.context
    kept_positions = {index: pos for pos, index in enumerate(split.kept)}
    for index in split.kept:
        if apply(sigma, context.generator(index)) != context.generator(index):
            raise FunctionEncodingError(
                f"generator x{index} of the kept half is moved", index
            )
    table = [0] * split.size
    for position, index in enumerate(split.kept):
        partner = split.partner(position)
        image = apply(sigma, context.generator(partner))
        suffix = multiply(invert(context.generator(partner)), image)
        if (
            len(image.letters) != 2
            or image.letters[0] != partner
            or len(suffix.letters) != 1
            or suffix.letters[0] < 0
            or suffix.letters[0] not in kept_positions
        ):
            raise FunctionEncodingError(
                f"image of x{partner} is not x{partner} times a kept generator",
                position + 1,
            )
        table[position] = kept_positions[suffix.letters[0]] + 1
    return FiniteFunction(split.size, tuple(table))
