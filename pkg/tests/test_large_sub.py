import pytest

from frs import (
    ComplementSpec,
    PreconditionError,
    Presentation,
    build_construction,
    build_f_sets,
    classify_letters,
    in_AT,
    in_T,
    normal_form,
    normalize_q2_q3,
    phi_t,
    prepare_presentation,
    reduces_to,
    rho_t,
    verify_complete,
    words_over,
)
from frs.large_sub import ConstructionError, build_b_alphabet

from conftest import rule_set, system, w


@pytest.fixture
def cons_aaa(pres_aaa):
    return build_construction(prepare_presentation(pres_aaa))


@pytest.fixture
def cons_free(pres_free_ab):
    return build_construction(prepare_presentation(pres_free_ab))


class TestClassification:
    def test_free_two_letters(self, pres_free_ab):
        cls = classify_letters(pres_free_ab)
        assert [l.name for l in cls.a1] == ["b"]
        assert [l.name for l in cls.a_s] == ["a"]
        assert cls.excluded == ()

    def test_single_letter_complement_only(self, pres_aaa):
        cls = classify_letters(pres_aaa)
        assert cls.a1 == ()
        assert [l.name for l in cls.a_s] == ["a"]

    def test_after_letterization(self, free_ab):
        pres = prepare_presentation(
            Presentation(free_ab, ComplementSpec((w(free_ab.alphabet, "ab"),)))
        )
        cls = classify_letters(pres)
        assert [l.name for l in cls.a1] == ["a", "b"]
        assert [l.name for l in cls.a_s] == ["s"]

    def test_letter_reducing_to_complement_is_excluded(self):
        sys = system("a b", ("b", "a"))
        pres = Presentation(sys, ComplementSpec((w(sys.alphabet, "a"),)))
        cls = classify_letters(pres)
        assert [l.name for l in cls.excluded] == ["b"]
        assert cls.a1 == ()


class TestMembership:
    def test_complement_letter_not_in_t(self, pres_aaa):
        assert not in_T(w(pres_aaa.system.alphabet, "a"), pres_aaa)

    def test_irreducible_square_in_t(self, pres_aaa):
        assert in_T(w(pres_aaa.system.alphabet, "aa"), pres_aaa)

    def test_class_decided_by_normal_form(self, pres_aaa):
        assert not in_T(w(pres_aaa.system.alphabet, "aaa"), pres_aaa)

    def test_representative_set_examples(self, pres_free_ab, pres_aaa):
        ab = pres_free_ab.system.alphabet
        assert in_AT(w(ab, "aba"), pres_free_ab)
        assert not in_AT(w(ab, "a"), pres_free_ab)
        a = pres_aaa.system.alphabet
        assert not in_AT(w(a, "aaaa"), pres_aaa)
        assert in_AT(w(a, "aa"), pres_aaa)

    def test_excluded_letters_break_membership(self):
        sys = system("a b", ("b", "a"))
        pres = Presentation(sys, ComplementSpec((w(sys.alphabet, "a"),)))
        assert not in_AT(w(sys.alphabet, "bb"), pres)


class TestFSets:
    def test_free_fixture(self, pres_free_ab):
        cls = classify_letters(pres_free_ab)
        f = build_f_sets(cls, pres_free_ab)
        assert [str(x) for x in f.f1] == ["b"]
        assert [str(x) for x in f.f2] == ["a a", "a b"]
        assert [str(x) for x in f.f3] == ["b a"]
        assert [str(x) for x in f.f4] == ["a a a", "a b a"]

    def test_single_letter_fixture(self, pres_aaa):
        prepared = prepare_presentation(pres_aaa)
        cls = classify_letters(prepared)
        f = build_f_sets(cls, prepared)
        assert f.f1 == () and f.f3 == () and f.f4 == ()
        assert [str(x) for x in f.f2] == ["a a"]

    def test_membership_filtering(self):
        # Both letters excluded from T and no products in T: everything
        # empty, so no generating alphabet exists.
        sys = system("a b", ("ab", "a"), ("ba", "a"), ("aa", "a"), ("bb", "b"))
        pres = Presentation(
            sys, ComplementSpec((w(sys.alphabet, "a"), w(sys.alphabet, "b")))
        )
        cls = classify_letters(pres)
        f = build_f_sets(cls, pres)
        assert f.f1 == () and f.f2 == () and f.f3 == () and f.f4 == ()
        with pytest.raises(ConstructionError):
            build_b_alphabet(f, cls, sys.alphabet)


class TestBAlphabet:
    def test_free_fixture_kinds(self, cons_free):
        assert cons_free.b_alphabet.names() == (
            "b",
            "c_b_a",
            "c_a_b",
            "c_a_a",
            "c_a_b_a",
            "c_a_a_a",
        )
        kinds = {c.letter.name: c.kind for c in cons_free.c_letters}
        assert kinds == {
            "c_b_a": "C_R",
            "c_a_b": "C_L1",
            "c_a_a": "C_L2",
            "c_a_b_a": "C_M1",
            "c_a_a_a": "C_M2",
        }

    def test_single_boundary_letter(self, cons_aaa):
        assert cons_aaa.b_alphabet.names() == ("c_a_a",)
        assert cons_aaa.c_letters[0].kind == "C_L2"

    def test_every_image_short(self, cons_free, cons_aaa):
        for cons in (cons_free, cons_aaa):
            for c in cons.c_letters:
                assert 2 <= len(c.image) <= 3


class TestPhiRho:
    def test_phi_concatenates_images(self, cons_free):
        word = cons_free.b_alphabet.word("c_b_a c_a_b")
        assert str(phi_t(word, cons_free)) == "b a a b"

    def test_phi_identity_on_generators(self, cons_free):
        word = cons_free.b_alphabet.word("b")
        assert phi_t(word, cons_free) == w(cons_free.presentation.system.alphabet, "b")

    def test_phi_never_shrinks(self, cons_free):
        for word in words_over(cons_free.b_alphabet, 3):
            assert len(phi_t(word, cons_free)) >= len(word)

    def test_rho_peels_prefixes(self, cons_free):
        base = cons_free.presentation.system.alphabet
        assert str(rho_t(w(base, "baab"), cons_free)) == "b c_a_a b"

    def test_rho_prefers_seed_words(self, cons_free):
        base = cons_free.presentation.system.alphabet
        assert str(rho_t(w(base, "aba"), cons_free)) == "c_a_b_a"

    def test_rho_outside_domain_rejected(self, cons_free):
        base = cons_free.presentation.system.alphabet
        with pytest.raises(PreconditionError):
            rho_t(w(base, "a"), cons_free)

    def test_retraction_identity_on_representatives(self, cons_free, cons_aaa):
        for cons in (cons_free, cons_aaa):
            base = cons.presentation.system.alphabet
            for word in words_over(base, 8):
                if in_AT(word, cons.presentation):
                    assert phi_t(rho_t(word, cons), cons) == word

    def test_rho_shape_all_but_last_light(self, cons_free, cons_aaa):
        for cons in (cons_free, cons_aaa):
            heavy = cons.heavy_letters()
            base = cons.presentation.system.alphabet
            for word in words_over(base, 8):
                if in_AT(word, cons.presentation):
                    image = rho_t(word, cons)
                    assert all(letter not in heavy for letter in image[:-1])

    def test_straight_words_round_trip(self, cons_free):
        heavy = cons_free.heavy_letters()
        for word in words_over(cons_free.b_alphabet, 5):
            if any(letter in heavy for letter in word[:-1]):
                continue
            image = phi_t(word, cons_free)
            if in_AT(image, cons_free.presentation):
                assert rho_t(image, cons_free) == word


class TestConstruction:
    def test_single_generator_fixture(self, cons_aaa):
        assert cons_aaa.n_bound == 7
        assert rule_set(cons_aaa.r_t) == {
            (("c_a_a", "c_a_a"), ("c_a_a",)),
            (("c_a_a", "c_a_a", "c_a_a"), ("c_a_a",)),
        }
        assert all("D1" in rule.tags for rule in cons_aaa.r_t.rules)

    def test_interreduced_variant(self, cons_aaa):
        reduced = normalize_q2_q3(cons_aaa.r_t)
        assert rule_set(reduced) == {(("c_a_a", "c_a_a"), ("c_a_a",))}
        assert verify_complete(reduced).verdict == "complete"

    def test_free_fixture_rules(self, cons_free):
        assert cons_free.n_bound == 4
        assert all("D2" in rule.tags for rule in cons_free.r_t.rules)
        sample = {
            (rule.lhs.names(), rule.rhs.names()) for rule in cons_free.r_t.rules
        }
        assert (("c_b_a", "c_a_b"), ("b", "c_a_a", "b")) in sample
        assert len(cons_free.r_t.rules) == 18

    def test_no_rewrite_starts_with_a_light_letter(self, cons_free, cons_aaa):
        for cons in (cons_free, cons_aaa):
            heavy = cons.heavy_letters()
            for rule in cons.r_t.rules:
                if "D2" in rule.tags:
                    assert rule.lhs[0] in heavy

    def test_both_fixtures_complete(self, cons_free, cons_aaa):
        for cons in (cons_free, cons_aaa):
            assert verify_complete(cons.r_t).verdict == "complete"

    def test_non_subsemigroup_rejected(self, free_ab):
        pres = prepare_presentation(
            Presentation(free_ab, ComplementSpec((w(free_ab.alphabet, "ab"),)))
        )
        with pytest.raises(PreconditionError):
            build_construction(pres)


class TestRuleLaws:
    def test_d1_bounds_and_reducibility(self, cons_aaa, cons_free):
        for cons in (cons_aaa, cons_free):
            base = cons.presentation.system
            for rule in cons.r_t.rules:
                if "D1" not in rule.tags:
                    continue
                image = phi_t(rule.lhs, cons)
                assert len(image) <= cons.n_bound
                assert normal_form(image, base) != image  # reducible image

    def test_d1_strictly_advances_the_image(self, cons_aaa):
        base = cons_aaa.presentation.system
        for rule in cons_aaa.r_t.rules:
            if "D1" in rule.tags:
                left = phi_t(rule.lhs, cons_aaa)
                right = phi_t(rule.rhs, cons_aaa)
                assert left != right
                assert reduces_to(left, right, base)

    def test_d2_preserves_image_and_drops_measure(self, cons_free):
        heavy = cons_free.heavy_letters()

        def measure(word):
            count = sum(1 for letter in word if letter in heavy)
            weight = sum(
                len(word) - 1 - pos
                for pos, letter in enumerate(word)
                if letter in heavy
            )
            return (count, weight)

        for rule in cons_free.r_t.rules:
            if "D2" not in rule.tags:
                continue
            assert phi_t(rule.lhs, cons_free) == phi_t(rule.rhs, cons_free)
            assert len(rule.lhs) == 2
            before, after = measure(rule.lhs), measure(rule.rhs)
            assert after < before
            if after[0] == before[0]:
                assert len(rule.rhs) == len(rule.lhs)

    def test_canonicalization_reachable_in_system(self, cons_free, cons_aaa):
        for cons in (cons_free, cons_aaa):
            for word in words_over(cons.b_alphabet, 5):
                image = phi_t(word, cons)
                if in_AT(image, cons.presentation):
                    target = rho_t(image, cons, check=False)
                    assert reduces_to(word, target, cons.r_t)
