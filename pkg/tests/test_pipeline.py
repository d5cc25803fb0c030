import pytest

from frs import (
    ComplementSpec,
    InputError,
    PreconditionError,
    Presentation,
    canonicalize_complement,
    check_subsemigroup_closed,
    letterize_complement,
    normal_form,
    normalize_q2_q3,
    prepare_presentation,
    words_over,
)
from frs.pipeline import satisfies_q1, satisfies_q2, satisfies_q3

from conftest import rule_set, system, w


def present(sys, *complement):
    return Presentation(
        sys, ComplementSpec(tuple(w(sys.alphabet, text) for text in complement))
    )


class TestCanonicalize:
    def test_reduces_to_normal_form(self, sys_aaa):
        spec = canonicalize_complement(present(sys_aaa, "aaa"))
        assert [str(word) for word in spec] == ["a"]

    def test_deduplicates(self, free_a):
        spec = canonicalize_complement(present(free_a, "a", "a"))
        assert [str(word) for word in spec] == ["a"]

    def test_sorts_by_length_then_names(self, free_ab):
        spec = canonicalize_complement(present(free_ab, "b", "a", "ab"))
        assert [str(word) for word in spec] == ["a", "b", "a b"]

    def test_empty_complement_rejected(self, free_ab):
        with pytest.raises(InputError):
            canonicalize_complement(Presentation(free_ab, ComplementSpec(())))
        with pytest.raises(InputError):
            canonicalize_complement(Presentation(free_ab))


class TestLetterize:
    def test_single_letter_already_done(self, free_ab):
        result = letterize_complement(present(free_ab, "a"))
        assert result.system == free_ab
        assert [str(word) for word in result.complement] == ["a"]

    def test_one_round_names_the_long_word(self, free_ab):
        result = letterize_complement(present(free_ab, "ab"))
        assert result.system.alphabet.names() == ("a", "b", "s")
        assert rule_set(result.system) == {(("a", "b"), ("s",))}
        assert [str(word) for word in result.complement] == ["s"]

    def test_untouched_when_complement_is_a_letter(self, sys_aaa):
        result = letterize_complement(present(sys_aaa, "a"))
        assert result.system == sys_aaa

    def test_two_long_words_two_rounds(self, free_ab):
        result = letterize_complement(present(free_ab, "ab", "bb"))
        assert satisfies_q1(result)
        assert len(result.complement) == 2
        assert len(result.system.alphabet) == 4

    def test_preserves_class_equality_under_embedding(self, free_ab):
        before = present(free_ab, "ab")
        after = letterize_complement(before)
        small = list(words_over(free_ab.alphabet, 6))
        for i, left in enumerate(small):
            for right in small[i:]:
                pre_equal = normal_form(left, free_ab) == normal_form(right, free_ab)
                post_equal = normal_form(left, after.system) == normal_form(
                    right, after.system
                )
                assert pre_equal == post_equal


class TestNormalizeQ2Q3:
    def test_already_normal(self, sys_aaa):
        assert normalize_q2_q3(sys_aaa) == sys_aaa

    def test_redundant_rule_deleted(self):
        # The third rule's left side contains 'a a', which the first rule
        # already reduces.
        sys = system("a s", ("aa", "s"), ("sa", "as"), ("aaa", "as"))
        result = normalize_q2_q3(sys)
        assert rule_set(result) == {
            (("a", "a"), ("s",)),
            (("s", "a"), ("a", "s")),
        }

    def test_reducible_rhs_normalized(self):
        sys = system("a b c", ("ba", "ab"), ("ca", "ba"))
        result = normalize_q2_q3(sys)
        assert rule_set(result) == {
            (("b", "a"), ("a", "b")),
            (("c", "a"), ("a", "b")),
        }
        assert satisfies_q2(result)

    def test_q2_q3_hold_afterwards(self):
        sys = system("a s", ("aa", "s"), ("sa", "as"), ("aaa", "as"))
        result = normalize_q2_q3(sys)
        assert satisfies_q2(result)
        assert satisfies_q3(result)

    def test_preserves_normal_form_partition(self):
        sys = system("a s", ("aa", "s"), ("sa", "as"), ("aaa", "as"))
        result = normalize_q2_q3(sys)
        for word in words_over(sys.alphabet, 6):
            assert normal_form(word, sys) == normal_form(word, result)


class TestPrepare:
    def test_fixed_point_on_letter_complement(self, free_ab):
        prepared = prepare_presentation(present(free_ab, "a"))
        assert prepared.system == free_ab
        assert [str(word) for word in prepared.complement] == ["a"]

    def test_letterizes_then_normalizes(self, free_ab):
        prepared = prepare_presentation(present(free_ab, "ab"))
        assert rule_set(prepared.system) == {(("a", "b"), ("s",))}
        assert [str(word) for word in prepared.complement] == ["s"]
        assert satisfies_q1(prepared)
        assert satisfies_q2(prepared.system)
        assert satisfies_q3(prepared.system)

    def test_verifies_existing_presentation(self, pres_aaa):
        prepared = prepare_presentation(pres_aaa)
        assert prepared.system == pres_aaa.system
        assert [str(word) for word in prepared.complement] == ["a"]

    def test_incomplete_input_rejected(self, sys_nonconfluent):
        with pytest.raises(PreconditionError):
            prepare_presentation(present(sys_nonconfluent, "a"))

    def test_complement_words_all_letters_after(self, free_ab):
        prepared = prepare_presentation(present(free_ab, "ab", "ba", "b"))
        assert all(len(word) == 1 for word in prepared.complement)


class TestSubsemigroupCheck:
    def test_closed_fixture(self, pres_aaa):
        assert check_subsemigroup_closed(pres_aaa) == []

    def test_closed_free_fixture(self, pres_free_ab):
        assert check_subsemigroup_closed(pres_free_ab) == []

    def test_violation_found(self, free_ab):
        # Excluding the class of 'a b' alone does not leave a subsemigroup:
        # the product of the representatives 'a' and 'b' falls in it.
        prepared = prepare_presentation(present(free_ab, "ab"))
        violations = check_subsemigroup_closed(prepared)
        assert violations
        u, v = violations[0]
        assert (str(u), str(v)) == ("a", "b")
