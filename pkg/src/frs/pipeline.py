"""Pipeline that reshapes a presentation until the complement of the target
subsemigroup consists of single irreducible letters (Q1) and the rule list
is interreduced (Q2: irreducible right-hand sides; Q3: no left-hand side
reducible by another rule).

Each long complement word is eliminated by one letter-introduction round;
the complement is re-normalized after every round because naming a word
can change the normal forms of the remaining representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import completeness
from .core import (
    DEFAULT_STEP_CAP,
    InputError,
    InternalError,
    PreconditionError,
    RewritingSystem,
    Rule,
    Word,
    is_irreducible,
    normal_form,
    words_over,
)
from .letter_intro import build_letter_intro


@dataclass(frozen=True)
class ComplementSpec:
    """Representative words for the finitely many classes outside the
    target subsemigroup."""

    words: tuple[Word, ...]

    def __iter__(self):
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class Presentation:
    """A rewriting system, optionally with a complement declaration."""

    system: RewritingSystem
    complement: ComplementSpec | None = None

    def __post_init__(self) -> None:
        if self.complement is not None:
            for word in self.complement:
                for letter in word:
                    if letter not in self.system.alphabet:
                        raise InputError(
                            f"complement word '{word}' uses letter "
                            f"{letter.name!r} outside the alphabet"
                        )


def canonicalize_complement(
    presentation: Presentation, step_cap: int = DEFAULT_STEP_CAP
) -> ComplementSpec:
    """Replace each complement word by its normal form, deduplicate, and
    sort by (length, letter names).  Assumes the system is complete."""
    if presentation.complement is None or not presentation.complement.words:
        raise InputError(
            "empty complement: the construction needs at least one excluded "
            "class; with nothing excluded, use the original system directly"
        )
    forms = {
        normal_form(word, presentation.system, step_cap)
        for word in presentation.complement
    }
    ordered = sorted(forms, key=lambda w: (len(w), w.names()))
    return ComplementSpec(tuple(ordered))


def letterize_complement(
    presentation: Presentation, step_cap: int = DEFAULT_STEP_CAP
) -> Presentation:
    """Introduce fresh letters until every complement class is represented
    by a single letter, shortest representatives first.

    Terminates in at most one round per complement class; exceeding that
    bound indicates a broken construction and raises InternalError.
    """
    complement = canonicalize_complement(presentation, step_cap)
    system = presentation.system
    bound = len(complement)
    for _ in range(bound + 1):
        long_words = [word for word in complement if len(word) > 1]
        if not long_words:
            return Presentation(system, complement)
        result = build_letter_intro(system, long_words[0], step_cap=step_cap)
        system = result.r_s
        renamed = ComplementSpec(
            tuple(normal_form(word, system, step_cap) for word in complement)
        )
        complement = canonicalize_complement(
            Presentation(system, renamed), step_cap
        )
    raise InternalError(
        f"complement letterization did not converge within {bound} rounds"
    )


def normalize_q2_q3(
    system: RewritingSystem, step_cap: int = DEFAULT_STEP_CAP
) -> RewritingSystem:
    """Interreduce: normalize every right-hand side, drop duplicates, and
    delete rules whose left-hand side another rule already reduces, until
    nothing changes.  Preserves the congruence and the irreducible words
    when the input system is complete."""
    rules = list(system.rules)
    while True:
        current = system.with_rules(rules)
        normalized: list[Rule] = []
        seen: set[tuple[Word, Word]] = set()
        for rule in rules:
            rhs = normal_form(rule.rhs, current, step_cap)
            key = (rule.lhs, rhs)
            if key in seen:
                continue
            seen.add(key)
            normalized.append(Rule(rule.lhs, rhs, rule.tags))

        deleted = False
        for i, rule in enumerate(normalized):
            others = [r for j, r in enumerate(normalized) if j != i]
            if any(rule.lhs.find(other.lhs) >= 0 for other in others):
                del normalized[i]
                deleted = True
                break
        if normalized == rules and not deleted:
            return system.with_rules(normalized)
        rules = normalized


def satisfies_q1(presentation: Presentation, step_cap: int = DEFAULT_STEP_CAP) -> bool:
    """Every complement class is a single irreducible alphabet letter."""
    if presentation.complement is None or not presentation.complement.words:
        return False
    return all(
        len(word) == 1 and is_irreducible(word, presentation.system)
        for word in presentation.complement
    )


def satisfies_q2(system: RewritingSystem) -> bool:
    return all(is_irreducible(rule.rhs, system) for rule in system.rules)


def satisfies_q3(system: RewritingSystem) -> bool:
    for i, rule in enumerate(system.rules):
        for j, other in enumerate(system.rules):
            if i != j and rule.lhs.find(other.lhs) >= 0:
                return False
    return True


def check_subsemigroup_closed(
    presentation: Presentation,
    max_len: int = 6,
    step_cap: int = DEFAULT_STEP_CAP,
) -> list[tuple[Word, Word]]:
    """Bounded closure check: products of T-representatives must stay out
    of the complement.  Returns the violations found up to the bound; an
    empty list means "closed as far as checked", not a proof."""
    complement = set(canonicalize_complement(presentation, step_cap).words)
    system = presentation.system
    reps = [
        word
        for word in words_over(system.alphabet, max_len - 1)
        if is_irreducible(word, system) and word not in complement
    ]
    violations = []
    for u in reps:
        for v in reps:
            if len(u) + len(v) > max_len:
                continue
            if normal_form(u + v, system, step_cap) in complement:
                violations.append((u, v))
    return violations


def _verify_stage(system: RewritingSystem, stage: str, step_cap: int) -> None:
    report = completeness.verify_complete(system, step_cap=step_cap)
    if report.verdict != completeness.COMPLETE:
        raise InternalError(
            f"stage '{stage}' broke completeness: termination "
            f"{report.termination.status}, confluence {report.local_confluence.status}"
        )


def prepare_presentation(
    presentation: Presentation, step_cap: int = DEFAULT_STEP_CAP
) -> Presentation:
    """Canonicalize the complement, letterize it, and interreduce.

    The input system must already be complete; completeness is re-verified
    after each stage, and a failure is an internal contradiction rather
    than a user error.  The result satisfies Q1, Q2 and Q3.
    """
    if presentation.complement is None or not presentation.complement.words:
        raise InputError("a complement declaration is required")
    report = completeness.verify_complete(presentation.system, step_cap=step_cap)
    if report.verdict != completeness.COMPLETE:
        raise PreconditionError(
            f"input system is not verified complete (verdict: {report.verdict})"
        )

    canonical = Presentation(
        presentation.system, canonicalize_complement(presentation, step_cap)
    )
    letterized = letterize_complement(canonical, step_cap)
    _verify_stage(letterized.system, "letterize", step_cap)

    interreduced = normalize_q2_q3(letterized.system, step_cap)
    _verify_stage(interreduced, "interreduce", step_cap)

    final = Presentation(interreduced, letterized.complement)
    if not satisfies_q1(final, step_cap):
        raise InternalError(
            "interreduction disturbed the complement letters; this "
            "interaction is unsupported and indicates a bug"
        )
    if not satisfies_q2(interreduced) or not satisfies_q3(interreduced):
        raise InternalError("interreduction did not reach its own fixpoint")
    return final
