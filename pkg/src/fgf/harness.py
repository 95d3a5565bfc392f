"""Desk-scale verification suites for the involution/conjugation structure
theory: anti-commutativity of distinguished classes, centralizer normal
forms, the paired-product family and its centralizer, conjugations by
primitive powers, and the product-class comparison.

Every suite is deterministic given its configuration: sampling uses a seeded
generator, exhaustive modes enumerate, and reports list counterexamples in
the standard word grammar.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import Callable, Iterable, Optional

from .errors import FormError
from .involutions import (
    CanonicalData,
    classify,
    extremal_data,
    is_quasi_conjugation,
    quasi_conjugation_data,
    realize,
    symmetry_data,
)
from .maps import (
    GeneratorMap,
    apply,
    commutes,
    compose,
    conjugation_by,
    format_generator_map,
    identity_map,
    inverse,
    is_automorphism,
)
from .stallings import build_graph, contains
from .whitehead import is_primitive, product_of_two_primitives
from .words import FreeGroupContext, Word, format_word, invert, multiply, power

DEFAULT_FLOOR = 5


@dataclass(frozen=True)
class SampleConfig:
    """Bounded-search parameters shared by all suites."""

    rank: int = 3
    max_image_length: int = 3
    sample_count: int = 200
    seed: int = 2024
    floor: int = DEFAULT_FLOOR

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError("rank must be >= 2")
        if self.max_image_length < 1 or self.sample_count < 0:
            raise ValueError("bounds must be positive")

    def context(self) -> FreeGroupContext:
        return FreeGroupContext(self.rank)

    def rng(self) -> random.Random:
        return random.Random(self.seed)


@dataclass
class SuiteReport:
    """Outcome of one suite run; counterexamples are reproducible from the seed."""

    suite: str
    config: SampleConfig
    instances: int = 0
    counterexamples: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples and self.instances >= self.config.floor

    def to_json_dict(self) -> dict:
        # Wall time is deliberately left out: reports must be byte-identical
        # across runs of the same configuration.
        return {
            "suite": self.suite,
            "config": {
                "rank": self.config.rank,
                "max_image_length": self.config.max_image_length,
                "sample_count": self.config.sample_count,
                "seed": self.config.seed,
                "floor": self.config.floor,
            },
            "instances": self.instances,
            "counterexamples": list(self.counterexamples),
            "pass": self.passed,
        }


# --- Sampling and enumeration ------------------------------------------------


def random_reduced_word(
    rng: random.Random, context: FreeGroupContext, length: int
) -> Word:
    letters: list[int] = []
    alphabet = [s * i for i in range(1, context.rank + 1) for s in (1, -1)]
    for _ in range(length):
        choices = [l for l in alphabet if not letters or l != -letters[-1]]
        letters.append(rng.choice(choices))
    return Word(context, letters)


def elementary_automorphisms(context: FreeGroupContext) -> list[GeneratorMap]:
    """Inversions, transvections on both sides, and transpositions."""
    n = context.rank
    out: list[GeneratorMap] = []
    for i in range(1, n + 1):
        gens = context.generators()
        gens[i - 1] = Word(context, (-i,))
        out.append(GeneratorMap(context, gens))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for letters in ((i, j), (i, -j), (j, i), (-j, i)):
                gens = context.generators()
                gens[i - 1] = Word(context, letters)
                out.append(GeneratorMap(context, gens))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            gens = context.generators()
            gens[i - 1], gens[j - 1] = context.generator(j), context.generator(i)
            out.append(GeneratorMap(context, gens))
    return out


def random_automorphism(
    rng: random.Random, context: FreeGroupContext, move_count: int
) -> tuple[GeneratorMap, GeneratorMap]:
    """A random product of elementary automorphisms, with its inverse."""
    pool = elementary_automorphisms(context)
    forward = identity_map(context)
    backward = identity_map(context)
    for _ in range(move_count):
        step = rng.choice(pool)
        forward = compose(forward, step)
        backward = compose(inverse(step), backward)
    return forward, backward


def enumerate_reduced_words(
    context: FreeGroupContext, max_length: int
) -> list[Word]:
    words: list[Word] = [context.identity()]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(max_length):
        next_frontier: list[tuple[int, ...]] = []
        for letters in frontier:
            for i in range(1, context.rank + 1):
                for letter in (i, -i):
                    if letters and letters[-1] == -letter:
                        continue
                    grown = letters + (letter,)
                    next_frontier.append(grown)
                    words.append(Word(context, grown))
        frontier = next_frontier
    return words


def enumerate_automorphisms(
    context: FreeGroupContext, max_image_length: int
) -> list[GeneratorMap]:
    """Every automorphism whose images all have length at most the bound.

    Provably exhaustive: iterates over all tuples of reduced words within
    the bound and keeps the ones forming a basis.
    """
    words = enumerate_reduced_words(context, max_image_length)
    out: list[GeneratorMap] = []
    for images in iter_product(words, repeat=context.rank):
        candidate = GeneratorMap(context, images)
        if is_automorphism(candidate):
            out.append(candidate)
    return out


def generate_automorphisms_by_moves(
    context: FreeGroupContext, max_image_length: int
) -> set[GeneratorMap]:
    """Independent generation: closure of the identity under elementary moves,
    pruned to image tuples within the length bound."""
    pool = elementary_automorphisms(context)
    start = identity_map(context)
    seen = {start}
    queue = [start]
    while queue:
        current = queue.pop(0)
        for step in pool:
            grown = compose(current, step)
            if any(len(image) > max_image_length for image in grown.images):
                continue
            if grown not in seen:
                seen.add(grown)
                queue.append(grown)
    return seen


def bounded_conjugator_search(
    f: GeneratorMap, g: GeneratorMap, cfg: SampleConfig, candidates: int | None = None
) -> Optional[GeneratorMap]:
    """Seeded search for ``s`` with ``f . s = s . g``; None means only
    "not found within bound", never "proven non-conjugate"."""
    rng = cfg.rng()
    context = f.context
    count = candidates if candidates is not None else cfg.sample_count
    tried = 0
    attempts = 0
    while tried < count and attempts < 20 * count + 100:
        attempts += 1
        sigma, _ = random_automorphism(rng, context, rng.randint(0, 6))
        if any(len(image) > cfg.max_image_length + 1 for image in sigma.images):
            continue
        tried += 1
        if compose(f, sigma) == compose(sigma, g):
            return sigma
    return None


# --- Suites -------------------------------------------------------------------


def anti_commutativity_suite(
    cfg: SampleConfig, involution_kind: str = "quasi-conjugation"
) -> SuiteReport:
    """Sampled conjugates of the class representative commute only with itself."""
    started = time.perf_counter()
    context = cfg.context()
    if involution_kind == "quasi-conjugation":
        base = realize(quasi_conjugation_data(context))
    elif involution_kind == "symmetry":
        base = realize(symmetry_data(context))
    else:
        raise ValueError(f"unknown involution kind {involution_kind!r}")
    report = SuiteReport(f"anti-commutativity[{involution_kind}]", cfg)
    rng = cfg.rng()
    for _ in range(cfg.sample_count):
        sigma, sigma_inv = random_automorphism(rng, context, cfg.max_image_length)
        conjugated = compose(sigma_inv, compose(base, sigma))
        report.instances += 1
        if commutes(conjugated, base) and conjugated != base:
            report.counterexamples.append(
                "commuting distinct conjugate via "
                + format_generator_map(sigma).replace("\n", "; ")
            )
    report.wall_time = time.perf_counter() - started
    return report


def _restriction_tuple(
    sigma: GeneratorMap, tail: tuple[int, ...], twist: Optional[Word] = None
) -> Optional[list[Word]]:
    """Images of the tail generators rewritten inside the tail subgroup.

    Returns None when some image leaves the subgroup generated by the tail.
    ``twist`` conjugates each image first (used for the inverted-leader case).
    """
    context = sigma.context
    allowed = set(tail)
    rewritten: list[Word] = []
    for index in tail:
        image = apply(sigma, context.generator(index))
        if twist is not None:
            image = multiply(invert(twist), multiply(image, twist))
        if any(abs(letter) not in allowed for letter in image.letters):
            return None
        rewritten.append(image)
    return rewritten


def _tail_automorphism(tail_images: list[Word], tail: tuple[int, ...]) -> bool:
    """Whether images supported on ``tail`` define an automorphism of it."""
    if len(tail) == 1:
        return tail_images[0].letters in ((tail[0],), (-tail[0],))
    relabel = {index: i + 1 for i, index in enumerate(tail)}
    sub_context = FreeGroupContext(len(tail))
    sub_images = [
        Word(
            sub_context,
            [
                relabel[abs(letter)] * (1 if letter > 0 else -1)
                for letter in image.letters
            ],
        )
        for image in tail_images
    ]
    return is_automorphism(GeneratorMap(sub_context, sub_images))


def matches_centralizer_form(sigma: GeneratorMap, data: CanonicalData) -> bool:
    """Centralizer normal form for a single-block involution: either fix the
    leader and restrict to an automorphism of the tail subgroup, or invert
    the leader and do so after conjugating back by it."""
    if len(data.blocks) != 1 or data.fixed or data.swaps:
        raise FormError("normal form applies to a quasi-conjugation")
    context = sigma.context
    leader, tail = data.blocks[0]
    leader_word = context.generator(leader)
    image = apply(sigma, leader_word)
    if image == leader_word:
        rewritten = _restriction_tuple(sigma, tail)
    elif image == invert(leader_word):
        rewritten = _restriction_tuple(sigma, tail, twist=leader_word)
    else:
        return False
    return rewritten is not None and _tail_automorphism(rewritten, tail)


def extend_tail_map(
    context: FreeGroupContext, data: CanonicalData, tail_images: dict[int, Word]
) -> GeneratorMap:
    """Extend a map of the block tail to the whole group, fixing the leader."""
    leader, tail = data.blocks[0]
    images = [context.generator(i) for i in range(1, context.rank + 1)]
    for index, image in tail_images.items():
        images[index - 1] = image
    return GeneratorMap(context, images)


def centralizer_form_suite(cfg: SampleConfig) -> SuiteReport:
    """Commuting automorphisms match the centralizer normal form.

    Exhaustive over all automorphisms within the image-length bound at small
    rank; at larger ranks, constructed normal-form members are verified to
    commute and random automorphisms are screened.
    """
    started = time.perf_counter()
    context = cfg.context()
    data = quasi_conjugation_data(context)
    base = realize(data)
    report = SuiteReport("centralizer-form", cfg)
    exhaustive = cfg.rank == 2 or (cfg.rank == 3 and cfg.max_image_length <= 2)
    if exhaustive:
        for sigma in enumerate_automorphisms(context, cfg.max_image_length):
            report.instances += 1
            in_centralizer = commutes(sigma, base)
            in_form = matches_centralizer_form(sigma, data)
            if in_centralizer != in_form:
                report.counterexamples.append(
                    f"form/centralizer mismatch: "
                    + format_generator_map(sigma).replace("\n", "; ")
                )
    else:
        rng = cfg.rng()
        leader, tail = data.blocks[0]
        leader_word = context.generator(leader)
        for _ in range(cfg.sample_count):
            report.instances += 1
            theta, _ = random_automorphism(rng, context, cfg.max_image_length)
            tail_images = {
                index: apply(theta, context.generator(index)) for index in tail
            }
            if any(
                abs(letter) == leader
                for image in tail_images.values()
                for letter in image.letters
            ):
                continue
            fixing = extend_tail_map(context, data, tail_images)
            inverting = GeneratorMap(
                context,
                [
                    invert(leader_word)
                    if i == leader
                    else multiply(
                        leader_word,
                        multiply(tail_images[i], invert(leader_word)),
                    )
                    for i in range(1, context.rank + 1)
                ],
            )
            for member in (fixing, inverting):
                if not commutes(member, base) or not matches_centralizer_form(
                    member, data
                ):
                    report.counterexamples.append(
                        "constructed member failed: "
                        + format_generator_map(member).replace("\n", "; ")
                    )
            probe, probe_inv = random_automorphism(rng, context, cfg.max_image_length)
            if commutes(probe, base) and not matches_centralizer_form(probe, data):
                report.counterexamples.append(
                    "commuting probe outside form: "
                    + format_generator_map(probe).replace("\n", "; ")
                )
    report.wall_time = time.perf_counter() - started
    return report


# --- The paired-product family and its centralizer ---------------------------


@dataclass(frozen=True)
class PairWitness:
    """A product of two conjugate centralizer members, with the conjugator."""

    left: GeneratorMap
    right: GeneratorMap
    conjugator: GeneratorMap
    product: GeneratorMap


def product_pair_witnesses(data: CanonicalData) -> list[PairWitness]:
    """The two standard members of the paired-product family.

    The first has fixed subgroup generated by the leader and the first tail
    generator; the second sends the first tail generator to the second.
    """
    context = data.context
    if not is_quasi_conjugation(data) or context.rank < 3:
        raise FormError("paired-product family needs a quasi-conjugation of rank >= 3")
    leader, tail = data.blocks[0]
    a, b = tail[0], tail[1]
    rest = tail[2:]

    def build(images: dict[int, Word]) -> GeneratorMap:
        return extend_tail_map(context, data, images)

    x_a = context.generator(a)
    x_b = context.generator(b)
    inv_a = invert(x_a)

    first = build(
        {index: invert(context.generator(index)) for index in tail}
    )
    second = build(
        {
            a: inv_a,
            b: multiply(inv_a, multiply(invert(x_b), x_a)),
            **{
                c: multiply(inv_a, multiply(invert(context.generator(c)), x_a))
                for c in rest
            },
        }
    )
    rho_one = build(
        {
            a: x_a,
            b: multiply(inv_a, x_b),
            **{c: multiply(inv_a, context.generator(c)) for c in rest},
        }
    )
    pair_one = PairWitness(first, second, rho_one, compose(first, second))

    swap = build({a: invert(x_b), b: inv_a})
    shear = build({a: multiply(x_a, x_b), b: invert(x_b)})
    rho_two = build({a: x_a, b: multiply(inv_a, invert(x_b))})
    pair_two = PairWitness(shear, swap, rho_two, compose(shear, swap))
    return [pair_one, pair_two]


def product_pair_family(cfg: SampleConfig, data: CanonicalData) -> list[GeneratorMap]:
    """The family members themselves (products of conjugate centralizer pairs)."""
    return [witness.product for witness in product_pair_witnesses(data)]


@dataclass(frozen=True)
class FamilyCentralizerResult:
    commutes_with_family: bool
    matches_form: bool
    classification: Optional[str]
    shift: Optional[int]
    detail: str


def family_centralizer_check(
    tau: GeneratorMap, data: CanonicalData, cfg: SampleConfig
) -> FamilyCentralizerResult:
    """Classify a member of the family's centralizer.

    The normal form sends the leader to itself or its inverse and moves
    every other generator by one common leader-power conjugation; the sign
    and the parity of the power decide among a power conjugation, an
    inverted-leader involution with fixed tail, and a quasi-conjugation.
    """
    context = data.context
    family = product_pair_family(cfg, data)
    commuting = all(commutes(tau, member) for member in family)
    leader, tail = data.blocks[0]
    leader_word = context.generator(leader)

    image = apply(tau, leader_word)
    if image == leader_word:
        sign = 1
    elif image == invert(leader_word):
        sign = -1
    else:
        return FamilyCentralizerResult(
            commuting, False, None, None, "leader image is not leader^(+-1)"
        )

    shift: Optional[int] = None
    for index in tail:
        target = apply(tau, context.generator(index))
        matched = None
        half = (len(target) - 1) // 2
        for k in (half, -half):
            if target == multiply(
                power(leader_word, k),
                multiply(context.generator(index), power(leader_word, -k)),
            ):
                matched = k
                break
        if matched is None or (shift is not None and matched != shift):
            return FamilyCentralizerResult(
                commuting, False, None, None, f"generator x{index} breaks the form"
            )
        shift = matched

    if shift is None:
        return FamilyCentralizerResult(commuting, False, None, None, "empty tail")
    if sign == 1:
        kind = "power-conjugation"
        consistent = tau == conjugation_by(power(leader_word, shift))
    elif shift % 2 == 0:
        kind = "extremal"
        half_word = power(leader_word, shift // 2)
        model = compose(
            conjugation_by(half_word),
            compose(
                realize(extremal_data(context, leader)),
                conjugation_by(invert(half_word)),
            ),
        )
        consistent = tau == model
    else:
        kind = "quasi-conjugation"
        half_word = power(leader_word, (shift - 1) // 2)
        model = compose(
            conjugation_by(half_word),
            compose(realize(data), conjugation_by(invert(half_word))),
        )
        consistent = tau == model
    detail = "classification model mismatch" if not consistent else "ok"
    return FamilyCentralizerResult(
        commuting, consistent, kind if consistent else None, shift, detail
    )


def family_centralizer_suite(cfg: SampleConfig) -> SuiteReport:
    """Sampled members of the family's centralizer match the normal form with
    the predicted parity classification."""
    started = time.perf_counter()
    if cfg.rank < 3:
        raise FormError("family centralizer suite needs rank >= 3")
    context = cfg.context()
    data = quasi_conjugation_data(context)
    leader_word = context.generator(data.blocks[0][0])
    report = SuiteReport("family-centralizer", cfg)
    rng = cfg.rng()

    candidates: list[tuple[GeneratorMap, Optional[str]]] = []
    for k in range(-3, 4):
        candidates.append((conjugation_by(power(leader_word, k)), "power-conjugation"))
    for k in range(-2, 3):
        shift = 2 * k
        expected = "extremal"
        tau = GeneratorMap(
            context,
            [
                invert(leader_word)
                if i == data.blocks[0][0]
                else multiply(
                    power(leader_word, shift),
                    multiply(context.generator(i), power(leader_word, -shift)),
                )
                for i in range(1, context.rank + 1)
            ],
        )
        candidates.append((tau, expected))
        shift = 2 * k + 1
        tau = GeneratorMap(
            context,
            [
                invert(leader_word)
                if i == data.blocks[0][0]
                else multiply(
                    power(leader_word, shift),
                    multiply(context.generator(i), power(leader_word, -shift)),
                )
                for i in range(1, context.rank + 1)
            ],
        )
        candidates.append((tau, "quasi-conjugation"))
    for _ in range(cfg.sample_count):
        probe, _ = random_automorphism(rng, context, cfg.max_image_length)
        candidates.append((probe, None))

    for tau, expected in candidates:
        result = family_centralizer_check(tau, data, cfg)
        if not result.commutes_with_family:
            continue
        report.instances += 1
        if not result.matches_form:
            report.counterexamples.append(
                "centralizer member outside normal form: "
                + format_generator_map(tau).replace("\n", "; ")
            )
        elif expected is not None and result.classification != expected:
            report.counterexamples.append(
                f"expected {expected}, classified {result.classification}"
            )
    report.wall_time = time.perf_counter() - started
    return report


def primitive_power_conjugation_suite(cfg: SampleConfig) -> SuiteReport:
    """Conjugation by a word missing a generator splits into two conjugations
    by primitive elements."""
    started = time.perf_counter()
    context = cfg.context()
    report = SuiteReport("primitive-power-conjugations", cfg)
    rng = cfg.rng()

    report.instances += 1
    if not conjugation_by(context.identity()).is_identity:
        report.counterexamples.append("conjugation by the identity is not id")

    for _ in range(cfg.sample_count):
        sub_rank = rng.randint(1, context.rank - 1)
        sub = rng.sample(range(1, context.rank + 1), sub_rank)
        length = rng.randint(1, 2 * cfg.max_image_length)
        letters = []
        for _ in range(length):
            choices = [
                s * i for i in sub for s in (1, -1)
                if not letters or s * i != -letters[-1]
            ]
            letters.append(rng.choice(choices))
        word = Word(context, letters)
        if word.is_identity:
            continue
        report.instances += 1
        first, second = product_of_two_primitives(word)
        ok = (
            multiply(first, second) == word
            and is_primitive(first)
            and is_primitive(second)
            and compose(conjugation_by(first), conjugation_by(second))
            == conjugation_by(word)
        )
        if not ok:
            report.counterexamples.append(f"failed split for {format_word(word)}")
    report.wall_time = time.perf_counter() - started
    return report


def _extended(context: FreeGroupContext, tail: tuple[int, ...], mapper) -> GeneratorMap:
    images = [context.generator(i) for i in range(1, context.rank + 1)]
    for index in tail:
        images[index - 1] = mapper(index)
    return GeneratorMap(context, images)


def product_class_suite(cfg: SampleConfig) -> SuiteReport:
    """Products of the quasi-conjugation with commuting symmetries are all
    conjugate; the fixed-part twist produces a genuinely different class."""
    started = time.perf_counter()
    if cfg.rank < 3:
        raise FormError("product class suite needs rank >= 3")
    context = cfg.context()
    report = SuiteReport("product-class", cfg)
    rng = cfg.rng()

    data = quasi_conjugation_data(context)
    base = realize(data)
    leader, tail = data.blocks[0]
    leader_word = context.generator(leader)

    def symmetry_member(theta_images: dict[int, Word]) -> GeneratorMap:
        return GeneratorMap(
            context,
            [
                invert(leader_word)
                if i == leader
                else multiply(
                    leader_word, multiply(theta_images[i], invert(leader_word))
                )
                for i in range(1, context.rank + 1)
            ],
        )

    def random_tail_conjugation() -> GeneratorMap:
        """A random automorphism of the tail subgroup, extended to fix the leader."""
        while True:
            rho, _ = random_automorphism(rng, context, cfg.max_image_length)
            images = {
                index: apply(rho, context.generator(index)) for index in tail
            }
            if all(
                abs(letter) != leader
                for image in images.values()
                for letter in image.letters
            ):
                return _extended(context, tail, lambda i: images[i])

    inverting_all = _extended(
        context, tail, lambda i: invert(context.generator(i))
    )

    def twisted_by(rho: GeneratorMap) -> GeneratorMap:
        # theta = rho . invert-all . rho^-1, restricted to the tail subgroup
        theta_map = compose(rho, compose(inverting_all, inverse(rho)))
        theta = {
            index: apply(theta_map, context.generator(index)) for index in tail
        }
        return symmetry_member(theta)

    samples = max(cfg.sample_count // 10, cfg.floor)
    for _ in range(samples):
        rho_one = random_tail_conjugation()
        rho_two = random_tail_conjugation()
        psi_one = twisted_by(rho_one)
        psi_two = twisted_by(rho_two)
        report.instances += 1
        problems = []
        for psi in (psi_one, psi_two):
            if not compose(psi, psi).is_identity:
                problems.append("member is not an involution")
            if not commutes(psi, base):
                problems.append("member does not commute")
        product_one = compose(base, psi_one)
        product_two = compose(base, psi_two)
        bridge = compose(rho_two, inverse(rho_one))
        if compose(bridge, compose(product_one, inverse(bridge))) != product_two:
            problems.append("explicit conjugator failed")
        if psi_one == psi_two and product_one != product_two:
            problems.append("equal members gave distinct products")
        if problems:
            report.counterexamples.append("; ".join(problems))

    # Fixed-part counterexample: one fixed generator, leader block on the rest.
    report.instances += 1
    fixed = tail[0]
    snake = CanonicalData(
        context,
        fixed=(fixed,),
        blocks=((leader, tail[1:]),),
    )
    snake_map = realize(snake)
    u0 = context.generator(fixed)
    rest = tail[1:]

    natural = GeneratorMap(
        context,
        [
            invert(context.generator(i))
            if i in (fixed, leader)
            else multiply(leader_word, multiply(invert(context.generator(i)), invert(leader_word)))
            for i in range(1, context.rank + 1)
        ],
    )
    twisted_images = [None] * context.rank
    twisted_images[fixed - 1] = invert(u0)
    twisted_images[leader - 1] = multiply(
        u0, multiply(invert(leader_word), invert(u0))
    )
    for i in rest:
        twisted_images[i - 1] = multiply(
            u0,
            multiply(
                leader_word,
                multiply(
                    invert(context.generator(i)),
                    multiply(invert(leader_word), invert(u0)),
                ),
            ),
        )
    twisted = GeneratorMap(context, twisted_images)

    problems = []
    for member in (natural, twisted):
        if not compose(member, member).is_identity or not commutes(member, snake_map):
            problems.append("counterexample member malformed")
    natural_product = compose(snake_map, natural)
    twisted_product = compose(snake_map, twisted)

    # The twisted product acts canonically on {u0, leader, u0 * rest}: the
    # fixed generator leads a block of size two.
    basis_change = GeneratorMap(
        context,
        [
            multiply(u0, context.generator(i))
            if i in rest
            else context.generator(i)
            for i in range(1, context.rank + 1)
        ],
    )
    two_block = CanonicalData(
        context,
        blocks=((fixed, (leader,)),) + tuple((i, ()) for i in rest),
    )
    model = compose(
        basis_change, compose(realize(two_block), inverse(basis_change))
    )
    if twisted_product != model:
        problems.append("twisted product does not match the size-two block model")
    natural_data = CanonicalData(
        context,
        fixed=(leader,),
        blocks=tuple((i, ()) for i in (fixed, *rest)),
    )
    natural_class = classify(natural_data)
    expected_natural = realize(natural_data)
    if natural_product != expected_natural:
        problems.append("natural product does not fix the leader and invert the rest")
    if classify(two_block) == natural_class:
        problems.append("block invariants fail to separate the products")
    if bounded_conjugator_search(
        twisted_product, natural_product, cfg, candidates=min(cfg.sample_count, 60)
    ) is not None:
        problems.append("found a conjugator between provably distinct classes")
    if problems:
        report.counterexamples.append("; ".join(problems))
    report.wall_time = time.perf_counter() - started
    return report


SUITES: dict[str, Callable[[SampleConfig], SuiteReport]] = {
    "anti-commutativity": anti_commutativity_suite,
    "centralizer-form": centralizer_form_suite,
    "family-centralizer": family_centralizer_suite,
    "primitive-power-conjugations": primitive_power_conjugation_suite,
    "product-class": product_class_suite,
}

SUITE_DEFAULT_RANK: dict[str, int] = {
    "anti-commutativity": 2,
    "centralizer-form": 2,
    "family-centralizer": 3,
    "primitive-power-conjugations": 4,
    "product-class": 3,
}
