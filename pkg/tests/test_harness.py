import json
import random

import pytest

from fgf.errors import FormError
from fgf.harness import (
    SampleConfig,
    anti_commutativity_suite,
    bounded_conjugator_search,
    centralizer_form_suite,
    enumerate_automorphisms,
    enumerate_reduced_words,
    family_centralizer_check,
    family_centralizer_suite,
    generate_automorphisms_by_moves,
    matches_centralizer_form,
    primitive_power_conjugation_suite,
    product_class_suite,
    product_pair_family,
    product_pair_witnesses,
    random_automorphism,
)
from fgf.involutions import quasi_conjugation_data, realize
from fgf.maps import (
    GeneratorMap,
    apply,
    commutes,
    compose,
    conjugation_by,
    identity_map,
    inverse,
)
from fgf.stallings import build_graph, contains
from fgf.words import FreeGroupContext, Word, invert, multiply, power

from conftest import random_word, w


class TestEnumeration:
    def test_reduced_word_count(self, ctx2):
        # 4 letters, no immediate backtracking: 1 + 4 + 12 + 36 words.
        assert len(enumerate_reduced_words(ctx2, 3)) == 53

    def test_exhaustive_matches_independent_generation(self, ctx2):
        for bound in (1, 2):
            direct = set(enumerate_automorphisms(ctx2, bound))
            generated = generate_automorphisms_by_moves(ctx2, bound)
            assert direct == generated

    def test_rank_two_length_three_count(self, ctx2):
        direct = enumerate_automorphisms(ctx2, 3)
        assert len(direct) == 456
        assert set(direct) == generate_automorphisms_by_moves(ctx2, 3)


class TestSampling:
    def test_random_automorphism_inverse(self, ctx3):
        rng = random.Random(5)
        for _ in range(50):
            f, f_inv = random_automorphism(rng, ctx3, rng.randint(0, 6))
            assert compose(f, f_inv).is_identity

    def test_determinism(self, ctx3):
        a = random_automorphism(random.Random(9), ctx3, 5)
        b = random_automorphism(random.Random(9), ctx3, 5)
        assert a == b


class TestAntiCommutativity:
    def test_quasi_conjugation_class(self):
        cfg = SampleConfig(rank=2, max_image_length=4, sample_count=300, seed=7)
        report = anti_commutativity_suite(cfg)
        assert report.passed and report.instances == 300

    def test_symmetry_class(self):
        cfg = SampleConfig(rank=2, max_image_length=4, sample_count=200, seed=11)
        report = anti_commutativity_suite(cfg, "symmetry")
        assert report.passed

    def test_identity_conjugate_allowed(self, ctx2):
        base = realize(quasi_conjugation_data(ctx2))
        assert commutes(base, base)

    def test_floor_guard(self):
        cfg = SampleConfig(rank=2, sample_count=0, seed=1, floor=5)
        report = anti_commutativity_suite(cfg)
        assert not report.passed and not report.counterexamples


class TestCentralizerForm:
    def test_exhaustive_rank_two(self):
        cfg = SampleConfig(rank=2, max_image_length=3, sample_count=10, seed=3)
        report = centralizer_form_suite(cfg)
        assert report.passed
        assert report.instances == 456

    def test_identity_matches_form(self, ctx2):
        assert matches_centralizer_form(
            identity_map(ctx2), quasi_conjugation_data(ctx2)
        )

    def test_leader_conjugation_not_in_centralizer(self, ctx2):
        data = quasi_conjugation_data(ctx2)
        base = realize(data)
        tau = conjugation_by(ctx2.generator(1))
        assert not commutes(tau, base)
        assert not matches_centralizer_form(tau, data)

    def test_inverting_member(self, ctx3):
        data = quasi_conjugation_data(ctx3)
        member = GeneratorMap(
            ctx3, [w("x1-", ctx3), w("x1 x2- x1-", ctx3), w("x1 x3- x1-", ctx3)]
        )
        assert commutes(member, realize(data))
        assert matches_centralizer_form(member, data)

    def test_sampled_mode(self):
        cfg = SampleConfig(rank=4, max_image_length=3, sample_count=40, seed=13)
        report = centralizer_form_suite(cfg)
        assert report.passed


class TestProductPairFamily:
    def test_first_member_fixes_leader_and_first_tail(self, ctx3):
        data = quasi_conjugation_data(ctx3)
        witnesses = product_pair_witnesses(data)
        first = witnesses[0].product
        assert apply(first, w("x1", ctx3)) == w("x1", ctx3)
        assert apply(first, w("x2", ctx3)) == w("x2", ctx3)
        assert apply(first, w("x3", ctx3)) == w("x2 x3 x2-", ctx3)
        # Fixed subgroup is the span of the leader and the first tail
        # generator, verified on sampled words.
        rng = random.Random(17)
        span = build_graph([w("x1", ctx3), w("x2", ctx3)], ctx3)
        for _ in range(200):
            probe = random_word(rng, ctx3, rng.randint(0, 6))
            assert (apply(first, probe) == probe) == contains(span, probe)

    def test_second_member_moves_first_tail_to_second(self, ctx3):
        data = quasi_conjugation_data(ctx3)
        second = product_pair_witnesses(data)[1].product
        assert apply(second, w("x2", ctx3)) == w("x3", ctx3)

    def test_pairs_are_conjugate_centralizer_members(self, ctx3):
        data = quasi_conjugation_data(ctx3)
        base = realize(data)
        for witness in product_pair_witnesses(data):
            assert commutes(witness.left, base)
            assert commutes(witness.right, base)
            assert (
                compose(
                    witness.conjugator,
                    compose(witness.left, inverse(witness.conjugator)),
                )
                == witness.right
            )
            assert witness.product == compose(witness.left, witness.right)

    def test_rank_two_rejected(self, ctx2):
        with pytest.raises(FormError):
            product_pair_family(
                SampleConfig(rank=2), quasi_conjugation_data(ctx2)
            )


class TestFamilyCentralizer:
    def test_leader_conjugation(self, ctx3):
        data = quasi_conjugation_data(ctx3)
        cfg = SampleConfig(rank=3, seed=1)
        tau = conjugation_by(ctx3.generator(1))
        result = family_centralizer_check(tau, data, cfg)
        assert result.commutes_with_family
        assert result.classification == "power-conjugation"
        assert result.shift == 1

    def test_base_involution_classifies_as_quasi(self, ctx3):
        data = quasi_conjugation_data(ctx3)
        cfg = SampleConfig(rank=3, seed=1)
        result = family_centralizer_check(realize(data), data, cfg)
        assert result.commutes_with_family
        assert result.classification == "quasi-conjugation"
        assert result.shift == 1

    def test_extremal_member(self, ctx3):
        data = quasi_conjugation_data(ctx3)
        cfg = SampleConfig(rank=3, seed=1)
        tau = GeneratorMap(ctx3, [w("x1-", ctx3), w("x2", ctx3), w("x3", ctx3)])
        result = family_centralizer_check(tau, data, cfg)
        assert result.commutes_with_family
        assert result.classification == "extremal"
        assert result.shift == 0

    def test_suite(self):
        cfg = SampleConfig(rank=3, max_image_length=3, sample_count=60, seed=23)
        report = family_centralizer_suite(cfg)
        assert report.passed
        assert report.instances >= 17


class TestPrimitivePowerConjugations:
    def test_suite(self):
        cfg = SampleConfig(rank=4, max_image_length=3, sample_count=60, seed=29)
        report = primitive_power_conjugation_suite(cfg)
        assert report.passed

    def test_identity_instance_included(self):
        cfg = SampleConfig(rank=3, sample_count=0, seed=1, floor=1)
        report = primitive_power_conjugation_suite(cfg)
        assert report.instances >= 1


class TestProductClass:
    def test_suite(self):
        cfg = SampleConfig(rank=3, max_image_length=3, sample_count=40, seed=31)
        report = product_class_suite(cfg)
        assert report.passed

    def test_higher_rank(self):
        cfg = SampleConfig(rank=4, max_image_length=2, sample_count=30, seed=37)
        report = product_class_suite(cfg)
        assert report.passed


class TestReports:
    def test_deterministic_serialization(self):
        cfg = SampleConfig(rank=2, max_image_length=3, sample_count=40, seed=41)
        first = anti_commutativity_suite(cfg).to_json_dict()
        second = anti_commutativity_suite(cfg).to_json_dict()
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)

    def test_wall_time_not_serialized(self):
        cfg = SampleConfig(rank=2, sample_count=10, seed=43)
        report = anti_commutativity_suite(cfg)
        assert report.wall_time >= 0
        assert "wall_time" not in report.to_json_dict()


class TestBoundedConjugatorSearch:
    def test_finds_constructed_conjugate(self, ctx2):
        base = realize(quasi_conjugation_data(ctx2))
        rng = random.Random(47)
        sigma, sigma_inv = random_automorphism(rng, ctx2, 2)
        other = compose(sigma_inv, compose(base, sigma))
        cfg = SampleConfig(rank=2, max_image_length=6, sample_count=400, seed=47)
        found = bounded_conjugator_search(base, other, cfg)
        if found is not None:
            assert compose(base, found) == compose(found, other)
