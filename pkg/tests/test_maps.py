import random

import pytest

from fgf.errors import ContextMismatchError, NotAutomorphismError
from fgf.harness import random_automorphism
from fgf.maps import (
    GeneratorMap,
    IntMatrix,
    apply,
    compose,
    conjugation_by,
    determinant,
    exponent_vector,
    format_generator_map,
    identity_map,
    induced_matrix,
    inverse,
    is_automorphism,
    is_even,
    is_inner,
    mod2_matrix,
    order_up_to,
    parse_generator_map,
)
from fgf.words import FreeGroupContext, Word, invert, multiply, parse_word

from conftest import random_word, w


def make_map(context, *images):
    return GeneratorMap(context, [parse_word(text, context) for text in images])


class TestApply:
    def test_swap(self, ctx2):
        swap = make_map(ctx2, "x2", "x1")
        assert apply(swap, w("x1 x2", ctx2)) == w("x2 x1", ctx2)

    def test_identity(self, ctx3):
        rng = random.Random(7)
        for _ in range(50):
            word = random_word(rng, ctx3, rng.randint(0, 10))
            assert apply(identity_map(ctx3), word) == word

    def test_homomorphism(self, ctx3):
        rng = random.Random(13)
        for _ in range(200):
            f, _ = random_automorphism(rng, ctx3, 4)
            a = random_word(rng, ctx3, rng.randint(0, 8))
            b = random_word(rng, ctx3, rng.randint(0, 8))
            assert apply(f, multiply(a, b)) == multiply(apply(f, a), apply(f, b))

    def test_context_mismatch(self, ctx2, ctx3):
        with pytest.raises(ContextMismatchError):
            apply(identity_map(ctx2), ctx3.identity())


class TestCompose:
    def test_identity_neutral(self, ctx2):
        f = make_map(ctx2, "x1 x2", "x2")
        assert compose(identity_map(ctx2), f) == f
        assert compose(f, identity_map(ctx2)) == f

    def test_matches_nested_apply(self, ctx3):
        rng = random.Random(19)
        for _ in range(100):
            f, _ = random_automorphism(rng, ctx3, 3)
            g, _ = random_automorphism(rng, ctx3, 3)
            word = random_word(rng, ctx3, rng.randint(0, 8))
            assert apply(compose(f, g), word) == apply(f, apply(g, word))

    def test_block_pair_square(self, ctx4):
        # Squaring the paired-block root reproduces the two-block involution.
        sigma = make_map(ctx4, "x3-", "x3 x4 x3-", "x1", "x2")
        squared = compose(sigma, sigma)
        expected = make_map(ctx4, "x1-", "x1 x2 x1-", "x3-", "x3 x4 x3-")
        assert squared == expected


class TestAutomorphismValidation:
    def test_transvection_inverse(self, ctx2):
        f = make_map(ctx2, "x1 x2", "x2")
        assert is_automorphism(f)
        assert inverse(f) == make_map(ctx2, "x1 x2-", "x2")

    def test_square_map_rejected(self, ctx2):
        f = make_map(ctx2, "x1 x1", "x2")
        assert not is_automorphism(f)
        # Independent route: the abelianized determinant is 2, not a unit.
        assert determinant(induced_matrix(f)) == 2
        with pytest.raises(NotAutomorphismError):
            inverse(f)

    def test_inverse_on_random_products(self, ctx3):
        rng = random.Random(29)
        for _ in range(200):
            f, known_inverse = random_automorphism(rng, ctx3, rng.randint(0, 6))
            assert is_automorphism(f)
            computed = inverse(f)
            assert compose(f, computed).is_identity
            assert compose(computed, f).is_identity
            assert computed == known_inverse

    def test_double_inverse(self, ctx3):
        rng = random.Random(57)
        for _ in range(50):
            f, _ = random_automorphism(rng, ctx3, rng.randint(0, 5))
            assert inverse(inverse(f)) == f

    def test_non_surjective_endomorphism(self, ctx2):
        f = make_map(ctx2, "x1 x2 x1-", "x1 x2 x2 x1-")
        assert not is_automorphism(f)


class TestIsInner:
    def test_constructed_conjugation(self, ctx3):
        word = w("x1 x2", ctx3)
        assert is_inner(conjugation_by(word)) == word

    def test_single_conjugated_generator_is_not_inner(self, ctx3):
        # Fixing x2 forces the witness into <x2>, fixing x3 into <x3>; only
        # the identity is in both, and it does not move x1.
        f = make_map(ctx3, "x2 x1 x2-", "x2", "x3")
        rng = random.Random(3)
        for _ in range(300):
            candidate = random_word(rng, ctx3, rng.randint(0, 4))
            assert conjugation_by(candidate) != f
        assert is_inner(f) is None

    def test_witness_of_product(self, ctx3):
        rng = random.Random(71)
        for _ in range(30):
            a = random_word(rng, ctx3, rng.randint(0, 6))
            b = random_word(rng, ctx3, rng.randint(0, 6))
            product = compose(conjugation_by(a), conjugation_by(b))
            assert is_inner(product) == multiply(a, b)

    def test_witness_conjugates_random_words(self, ctx3):
        rng = random.Random(73)
        for _ in range(20):
            a = random_word(rng, ctx3, rng.randint(1, 6))
            witness = is_inner(conjugation_by(a))
            for _ in range(5):
                word = random_word(rng, ctx3, rng.randint(0, 8))
                assert apply(conjugation_by(a), word) == multiply(
                    witness, multiply(word, invert(witness))
                )

    def test_pure_power_witness(self, ctx2):
        word = w("x1 x1 x1 x1 x1", ctx2)
        assert is_inner(conjugation_by(word)) == word


class TestOrder:
    def test_order_three(self, ctx2):
        sigma = make_map(ctx2, "x2", "x2- x1-")
        assert order_up_to(sigma, 12) == 3

    def test_identity(self, ctx2):
        assert order_up_to(identity_map(ctx2), 12) == 1

    def test_absent_within_bound(self, ctx2):
        shear = make_map(ctx2, "x1 x2", "x2")
        assert order_up_to(shear, 12) is None


class TestAbelianization:
    def test_antidiagonal_involution(self, ctx2):
        f = make_map(ctx2, "x2-", "x1-")
        assert induced_matrix(f).rows == ((0, -1), (-1, 0))
        assert mod2_matrix(f).rows == ((0, 1), (1, 0))
        assert not mod2_matrix(f).is_identity

    def test_inner_maps_act_trivially(self, ctx3):
        rng = random.Random(83)
        for _ in range(30):
            a = random_word(rng, ctx3, rng.randint(0, 6))
            assert induced_matrix(conjugation_by(a)).is_identity

    def test_unit_determinant_on_random_products(self, ctx3):
        rng = random.Random(89)
        for _ in range(200):
            f, _ = random_automorphism(rng, ctx3, rng.randint(0, 7))
            assert determinant(induced_matrix(f)) in (1, -1)

    def test_functoriality(self, ctx3):
        rng = random.Random(97)
        for _ in range(100):
            f, _ = random_automorphism(rng, ctx3, 4)
            g, _ = random_automorphism(rng, ctx3, 4)
            assert induced_matrix(compose(f, g)) == induced_matrix(f) @ induced_matrix(g)
            assert mod2_matrix(compose(f, g)) == mod2_matrix(f) @ mod2_matrix(g)

    def test_exponent_vector(self, ctx3):
        assert exponent_vector(w("x1 x2- x1 x3 x3", ctx3)) == (2, -1, 2)


class TestEvenness:
    def test_generator_not_even(self, ctx2):
        assert not is_even(w("x1", ctx2))

    def test_squares_are_even(self, ctx3):
        rng = random.Random(101)
        for _ in range(100):
            word = random_word(rng, ctx3, rng.randint(0, 8))
            assert is_even(multiply(word, word))

    def test_distinct_generators_difference_not_even(self, ctx2):
        assert not is_even(w("x1 x2-", ctx2))
        assert is_even(multiply(w("x1", ctx2), invert(w("x1", ctx2))))


class TestFileFormat:
    def test_round_trip_bit_exact(self, ctx3):
        rng = random.Random(103)
        for _ in range(50):
            f, _ = random_automorphism(rng, ctx3, 4)
            text = format_generator_map(f)
            assert parse_generator_map(text, ctx3) == f
            assert format_generator_map(parse_generator_map(text, ctx3)) == text

    def test_comments_and_blanks(self, ctx2):
        text = "# comment\n\nx1 -> x2\nx2 -> x1  # swap\n"
        assert parse_generator_map(text, ctx2) == GeneratorMap(
            ctx2, [w("x2", ctx2), w("x1", ctx2)]
        )
