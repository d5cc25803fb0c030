"""Completeness checking: termination certificates and critical-pair joins.

Termination of a finite rewriting system is undecidable in general, so the
checker is tiered: it first looks for a reduction-order certificate (strict
length decrease, or a lexicographic measure that lets a designated set of
"heavy" letters only disappear or drift to the right), and otherwise falls
back to an exhaustive cycle search over all words up to a length bound.
Local confluence is decided exactly, by joining every critical pair.
Completeness = termination + local confluence (Newman's lemma); the report
records which evidence tier supported the termination half, so bounded
verdicts are visibly weaker than certified ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    DEFAULT_STEP_CAP,
    Letter,
    NonTerminationError,
    RewritingSystem,
    Rule,
    Word,
    normal_form,
    one_step_reductions,
    words_over,
)

DEFAULT_SEARCH_LEN = 6

SUFFIX_PREFIX = "suffix-prefix"
EMBEDDING = "embedding"

CERTIFIED = "certified"
BOUNDED_VERIFIED = "bounded_verified"
COUNTEREXAMPLE = "counterexample"
UNKNOWN = "unknown"
ALL_JOINED = "all_joined"
INCONCLUSIVE = "inconclusive"

COMPLETE = "complete"
INCOMPLETE = "incomplete"


@dataclass(frozen=True)
class CriticalPair:
    """The two one-step results of a superposition word where two rule
    applications overlap."""

    source: Word
    left_result: Word
    right_result: Word
    overlap_kind: str
    rule_indices: tuple[int, int]


@dataclass(frozen=True)
class TerminationEvidence:
    status: str
    certificate: str | None = None
    depth: int | None = None
    cycle: tuple[Word, ...] | None = None

    def holds(self) -> bool:
        return self.status in (CERTIFIED, BOUNDED_VERIFIED)


@dataclass(frozen=True)
class ConfluenceEvidence:
    status: str
    joined_count: int = 0
    counterexample: CriticalPair | None = None
    left_nf: Word | None = None
    right_nf: Word | None = None


@dataclass(frozen=True)
class CompletenessReport:
    termination: TerminationEvidence
    local_confluence: ConfluenceEvidence
    verdict: str


def critical_pairs(system: RewritingSystem) -> list[CriticalPair]:
    """Enumerate all superpositions of the system's left-hand sides.

    Two shapes: a proper nonempty suffix of one lhs equal to a proper
    nonempty prefix of another (self-overlaps included), and one lhs
    occurring as a factor of a different rule's lhs.  Each unordered
    overlap appears exactly once; the order is (first rule, second rule,
    offset).
    """
    pairs: list[CriticalPair] = []
    rules = system.rules
    for i, ri in enumerate(rules):
        for j, rj in enumerate(rules):
            li, lj = ri.lhs, rj.lhs
            for k in range(1, min(len(li), len(lj))):
                if li.letters[len(li) - k:] == lj.letters[:k]:
                    source = Word(li.letters + lj.letters[k:])
                    left = Word(ri.rhs.letters + lj.letters[k:])
                    right = Word(li.letters[: len(li) - k] + rj.rhs.letters)
                    pairs.append(
                        CriticalPair(source, left, right, SUFFIX_PREFIX, (i, j))
                    )
            if i == j:
                continue
            if li == lj:
                if i < j:
                    pairs.append(CriticalPair(li, ri.rhs, rj.rhs, EMBEDDING, (i, j)))
                continue
            if len(lj) >= len(li):
                continue
            for pos in li.occurrences(lj):
                inner = Word(
                    li.letters[:pos] + rj.rhs.letters + li.letters[pos + len(lj):]
                )
                pairs.append(CriticalPair(li, ri.rhs, inner, EMBEDDING, (i, j)))
    return pairs


def _heavy_count(word: Word, heavy: frozenset[Letter]) -> int:
    return sum(1 for letter in word if letter in heavy)


def _right_weight(word: Word, heavy: frozenset[Letter]) -> int:
    n = len(word)
    return sum(n - 1 - pos for pos, letter in enumerate(word) if letter in heavy)


def _drops_length_first(rule: Rule, heavy: frozenset[Letter]) -> bool:
    # (length, heavy count, heavy right-distance sum), lexicographic.
    # Stable under contexts: length-equal replacements leave every other
    # letter's distance to the right end unchanged.
    if len(rule.rhs) < len(rule.lhs):
        return True
    if len(rule.rhs) > len(rule.lhs):
        return False
    cl, cr = _heavy_count(rule.lhs, heavy), _heavy_count(rule.rhs, heavy)
    if cr < cl:
        return True
    if cr > cl:
        return False
    return _right_weight(rule.rhs, heavy) < _right_weight(rule.lhs, heavy)


def _drops_count_first(rule: Rule, heavy: frozenset[Letter]) -> bool:
    # (heavy count, heavy right-distance sum), lexicographic; the tie case
    # additionally needs equal lengths so the context weights cancel.
    cl, cr = _heavy_count(rule.lhs, heavy), _heavy_count(rule.rhs, heavy)
    if cr < cl:
        return True
    if cr > cl:
        return False
    if len(rule.lhs) != len(rule.rhs):
        return False
    return _right_weight(rule.rhs, heavy) < _right_weight(rule.lhs, heavy)


def _measure_candidates(system: RewritingSystem) -> list[frozenset[Letter]]:
    letters = system.alphabet.letters()
    candidates: list[frozenset[Letter]] = [frozenset()]
    candidates += [frozenset({letter}) for letter in letters]
    if len(letters) <= 14:
        # Exhaustive subset search stays cheap at desk scale.
        for size in range(2, len(letters) + 1):
            for combo in itertools.combinations(letters, size):
                candidates.append(frozenset(combo))
    return candidates


def find_measure_certificate(
    system: RewritingSystem, heavy: frozenset[Letter] | None = None
) -> str | None:
    """Search for a reduction-order certificate; returns its description."""
    if not system.rules:
        return "no rules"
    candidates = (
        [frozenset(heavy)] if heavy is not None else _measure_candidates(system)
    )
    for cand in candidates:
        names = ", ".join(sorted(letter.name for letter in cand))
        if all(_drops_length_first(rule, cand) for rule in system.rules):
            if not cand:
                return "all rules strictly length-reducing"
            return (
                "length-nonincreasing; on length ties the letters "
                f"{{{names}}} are eliminated or move right"
            )
        if cand and all(_drops_count_first(rule, cand) for rule in system.rules):
            return (
                f"letters {{{names}}} are eliminated, or keep their count "
                "and move right at constant length"
            )
    return None


def _bounded_cycle_search(
    system: RewritingSystem, max_len: int, step_cap: int
) -> TerminationEvidence:
    """Exhaustive cycle search over the reduction graph restricted to words
    of length <= max_len."""
    color: dict[Word, int] = {}  # 1 = on current path, 2 = done
    explored = 0
    for start in words_over(system.alphabet, max_len):
        if color.get(start) == 2:
            continue
        path: list[Word] = []
        stack: list[tuple[Word, list[Word] | None]] = [(start, None)]
        while stack:
            node, succ = stack.pop()
            if succ is None:
                if color.get(node) == 2:
                    continue
                if color.get(node) == 1:
                    continue
                color[node] = 1
                path.append(node)
                explored += 1
                if explored > step_cap:
                    return TerminationEvidence(
                        UNKNOWN,
                        certificate=f"bounded search stopped: more than {step_cap} states",
                    )
                succ = [
                    result
                    for _, result in one_step_reductions(node, system)
                    if len(result) <= max_len
                ]
                for nxt in succ:
                    if color.get(nxt) == 1:
                        cycle = path[path.index(nxt):] + [nxt]
                        return TerminationEvidence(COUNTEREXAMPLE, cycle=tuple(cycle))
                stack.append((node, succ))
                for nxt in succ:
                    if color.get(nxt) is None:
                        stack.append((nxt, None))
            else:
                color[node] = 2
                path.pop()
    return TerminationEvidence(BOUNDED_VERIFIED, depth=max_len)


def check_termination(
    system: RewritingSystem,
    max_len: int = DEFAULT_SEARCH_LEN,
    step_cap: int = DEFAULT_STEP_CAP,
    heavy: frozenset[Letter] | None = None,
) -> TerminationEvidence:
    """Three-tier termination check.

    1. every rule strictly length-reducing -> certified;
    2. a lexicographic heavy-letter measure (declared via ``heavy``, or
       found by searching letter subsets) strictly decreases -> certified;
    3. exhaustive cycle search over words of length <= max_len ->
       bounded_verified, or a concrete cycle as counterexample.
    """
    certificate = find_measure_certificate(system, heavy)
    if certificate is not None:
        return TerminationEvidence(CERTIFIED, certificate=certificate)
    return _bounded_cycle_search(system, max_len, step_cap)


def check_local_confluence(
    system: RewritingSystem, step_cap: int = DEFAULT_STEP_CAP
) -> ConfluenceEvidence:
    """Join every critical pair via normal forms.

    Decisive only when termination is already established; a step-cap hit
    is reported as inconclusive rather than as a counterexample.
    """
    joined = 0
    for pair in critical_pairs(system):
        try:
            left_nf = normal_form(pair.left_result, system, step_cap)
            right_nf = normal_form(pair.right_result, system, step_cap)
        except NonTerminationError:
            return ConfluenceEvidence(INCONCLUSIVE, joined_count=joined, counterexample=pair)
        if left_nf != right_nf:
            return ConfluenceEvidence(
                COUNTEREXAMPLE,
                joined_count=joined,
                counterexample=pair,
                left_nf=left_nf,
                right_nf=right_nf,
            )
        joined += 1
    return ConfluenceEvidence(ALL_JOINED, joined_count=joined)


def verify_complete(
    system: RewritingSystem,
    max_len: int = DEFAULT_SEARCH_LEN,
    step_cap: int = DEFAULT_STEP_CAP,
    heavy: frozenset[Letter] | None = None,
) -> CompletenessReport:
    """Full report: termination evidence, local confluence, verdict."""
    termination = check_termination(system, max_len, step_cap, heavy)
    confluence = check_local_confluence(system, step_cap)
    if termination.holds() and confluence.status == ALL_JOINED:
        verdict = COMPLETE
    elif termination.status == COUNTEREXAMPLE or confluence.status == COUNTEREXAMPLE:
        verdict = INCOMPLETE
    else:
        verdict = INCONCLUSIVE
    return CompletenessReport(termination, confluence, verdict)
