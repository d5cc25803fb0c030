"""Machine-check the six-property criterion that forces a candidate tuple
(B, R_T, A(T), phi, rho) to present the subsemigroup with R_T complete.

The six properties quantify over infinitely many words; the checks here
are exhaustive up to length bounds, except where a structural certificate
decides the property outright (termination of the image-preserving rule
subset).  Each property reports verified-to-bound, a concrete
counterexample, or inconclusive when a step cap was hit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import completeness
from .core import (
    DEFAULT_STEP_CAP,
    Letter,
    NonTerminationError,
    PreconditionError,
    RewritingSystem,
    Word,
    is_irreducible,
    normal_form,
    one_step_reductions,
    reduces_to,
    words_over,
)
from .parallel import pmap

VERIFIED = "verified"
COUNTEREXAMPLE = "counterexample"
INCONCLUSIVE = "inconclusive"

PROPERTY_NAMES = ("P1", "P2", "P3", "P4", "P5", "P6")


@dataclass(frozen=True)
class CandidateTuple:
    """A candidate 5-tuple relative to a base system.

    ``phi`` maps B-words to A-words homomorphically, ``rho`` sends members
    of the representative set back to B-words, ``in_at`` decides membership
    in the representative set, and ``in_t`` decides whether an A-word's
    class lies in the target subsemigroup.  ``heavy`` optionally names the
    letters whose rightward drift certifies termination of the
    image-preserving rules.
    """

    base: RewritingSystem
    system: RewritingSystem
    phi: Callable[[Word], Word]
    rho: Callable[[Word], Word]
    in_at: Callable[[Word], bool]
    in_t: Callable[[Word], bool]
    heavy: frozenset[Letter] = frozenset()


@dataclass(frozen=True)
class PropertyResult:
    name: str
    status: str
    bound: int
    witness_count: int = 0
    counterexample: tuple[Word, ...] | None = None
    note: str = ""


@dataclass(frozen=True)
class PropertyRReport:
    results: tuple[PropertyResult, ...]
    overall: bool

    def result(self, name: str) -> PropertyResult:
        for res in self.results:
            if res.name == name:
                return res
        raise KeyError(name)


@dataclass(frozen=True)
class IsomorphismReport:
    slice_bound: int
    forward_injective: bool
    slice_surjective: bool
    mismatches: tuple[tuple, ...] = ()
    t_class_count: int = 0
    image_count: int = 0


def _check_sandwich(tup: CandidateTuple, bound: int) -> None:
    # The representative set must sit between the irreducible T-words and
    # all T-words; a supplied predicate violating that is a bad input, not
    # a property failure.
    for word in words_over(tup.base.alphabet, bound):
        member = tup.in_at(word)
        if member and not tup.in_t(word):
            raise PreconditionError(
                f"representative set contains '{word}' whose class is outside T"
            )
        if not member and tup.in_t(word) and is_irreducible(word, tup.base):
            raise PreconditionError(
                f"representative set misses the irreducible T-word '{word}'"
            )


def _preserving_rule_indices(tup: CandidateTuple) -> list[int]:
    return [
        idx
        for idx, rule in enumerate(tup.system.rules)
        if tup.phi(rule.lhs) == tup.phi(rule.rhs)
    ]


def _straightening_path(
    word: Word,
    target: Word,
    tup: CandidateTuple,
    preserving: set[int],
    step_cap: int,
) -> bool:
    """Greedy search: repeatedly apply the first image-preserving rule.

    Sound but incomplete; callers fall back to a full reachability search.
    """
    current = word
    for _ in range(step_cap):
        if current == target:
            return True
        advanced = False
        for step, result in one_step_reductions(current, tup.system):
            if step.rule_index in preserving:
                current = result
                advanced = True
                break
        if not advanced:
            return False
    return False


def check_p1_to_p6(
    tup: CandidateTuple,
    bound_a: int = 8,
    bound_b: int = 5,
    step_cap: int = DEFAULT_STEP_CAP,
) -> PropertyRReport:
    """Verify the six properties at the given bounds.

    bound_a limits the A-side sweeps (P1, P5), bound_b the B-side sweeps
    (P3, P4, P6); P2 is per-rule and needs no bound.
    """
    _check_sandwich(tup, min(bound_a, 6))
    base, system = tup.base, tup.system
    results: list[PropertyResult] = []

    a_members = [w for w in words_over(base.alphabet, bound_a) if tup.in_at(w)]

    # P1: each reduction out of a representative is mirrored by one step of
    # the candidate system, landing phi-above a descendant.
    def p1() -> PropertyResult:
        witnesses = 0
        for u in a_members:
            succ_b = one_step_reductions(tup.rho(u), system)
            for _, v1 in one_step_reductions(u, base):
                witnesses += 1
                if not any(
                    reduces_to(v1, tup.phi(u_prime), base, step_cap)
                    for _, u_prime in succ_b
                ):
                    return PropertyResult(
                        "P1", COUNTEREXAMPLE, bound_a, witnesses, (u, v1)
                    )
        return PropertyResult("P1", VERIFIED, bound_a, witnesses)

    # P2: every rule's image reduces in the base system (context closure
    # follows because phi is a homomorphism).
    def p2() -> PropertyResult:
        for rule in system.rules:
            if not reduces_to(tup.phi(rule.lhs), tup.phi(rule.rhs), base, step_cap):
                return PropertyResult(
                    "P2", COUNTEREXAMPLE, 0, 0, (rule.lhs, rule.rhs)
                )
        return PropertyResult("P2", VERIFIED, 0, len(system.rules))

    # P3: no infinite chain of image-preserving steps; checked as
    # termination of the image-preserving rule subset.
    def p3() -> PropertyResult:
        preserved = system.with_rules(
            system.rules[idx] for idx in _preserving_rule_indices(tup)
        )
        evidence = completeness.check_termination(
            preserved, max_len=bound_b, step_cap=step_cap, heavy=tup.heavy or None
        )
        if not evidence.holds() and tup.heavy:
            evidence = completeness.check_termination(
                preserved, max_len=bound_b, step_cap=step_cap
            )
        if evidence.status == completeness.COUNTEREXAMPLE:
            return PropertyResult(
                "P3", COUNTEREXAMPLE, bound_b, 0, evidence.cycle
            )
        if evidence.holds():
            return PropertyResult(
                "P3",
                VERIFIED,
                bound_b,
                len(preserved.rules),
                note=evidence.certificate or f"no cycles up to length {evidence.depth}",
            )
        return PropertyResult("P3", INCONCLUSIVE, bound_b, 0, note=evidence.certificate or "")

    # P4: every B-word reaches one whose image is a representative.
    def p4() -> PropertyResult:
        def ok(u_prime: Word) -> bool:
            if tup.in_at(tup.phi(normal_form(u_prime, system, step_cap))):
                return True
            seen = {u_prime}
            frontier = [u_prime]
            while frontier:
                current = frontier.pop()
                for _, nxt in one_step_reductions(current, system):
                    if nxt in seen:
                        continue
                    if tup.in_at(tup.phi(nxt)):
                        return True
                    if len(seen) >= step_cap:
                        raise NonTerminationError("P4 search exceeded its cap")
                    seen.add(nxt)
                    frontier.append(nxt)
            return False

        b_words = list(words_over(system.alphabet, bound_b))
        for u_prime, good in zip(b_words, pmap(ok, b_words)):
            if not good:
                return PropertyResult("P4", COUNTEREXAMPLE, bound_b, 0, (u_prime,))
        return PropertyResult("P4", VERIFIED, bound_b, len(b_words))

    # P5: rho is a section of phi on the representative set.
    def p5() -> PropertyResult:
        for u in a_members:
            if tup.phi(tup.rho(u)) != u:
                return PropertyResult(
                    "P5", COUNTEREXAMPLE, bound_a, 0, (u, tup.phi(tup.rho(u)))
                )
        return PropertyResult("P5", VERIFIED, bound_a, len(a_members))

    # P6: every B-word whose image is a representative reduces to the
    # canonical form of that image.
    def p6() -> PropertyResult:
        preserving = set(_preserving_rule_indices(tup))
        b_words = [
            u_prime
            for u_prime in words_over(system.alphabet, bound_b)
            if tup.in_at(tup.phi(u_prime))
        ]

        def ok(u_prime: Word) -> bool:
            target = tup.rho(tup.phi(u_prime))
            if _straightening_path(u_prime, target, tup, preserving, step_cap):
                return True
            return reduces_to(u_prime, target, system, step_cap)

        for u_prime, good in zip(b_words, pmap(ok, b_words)):
            if not good:
                return PropertyResult(
                    "P6", COUNTEREXAMPLE, bound_b, 0,
                    (u_prime, tup.rho(tup.phi(u_prime))),
                )
        return PropertyResult("P6", VERIFIED, bound_b, len(b_words))

    for check in (p1, p2, p3, p4, p5, p6):
        try:
            results.append(check())
        except NonTerminationError as exc:
            name = PROPERTY_NAMES[len(results)]
            results.append(
                PropertyResult(name, INCONCLUSIVE, bound_b, 0, note=str(exc))
            )
    overall = all(res.status == VERIFIED for res in results)
    return PropertyRReport(tuple(results), overall)


def check_isomorphism_slice(
    tup: CandidateTuple, bound: int = 6, step_cap: int = DEFAULT_STEP_CAP
) -> IsomorphismReport:
    """Compare the candidate presentation against the base system on the
    slice of classes represented by words of length <= bound.

    The base-side normal form is the oracle: each irreducible T-word must
    round-trip through rho and back injectively, and each irreducible
    candidate word must be recovered from its own image.
    """
    base, system = tup.base, tup.system
    mismatches: list[tuple] = []

    slice_words = [
        w
        for w in words_over(base.alphabet, bound)
        if tup.in_t(w) and is_irreducible(w, base)
    ]
    images: dict[Word, Word] = {}
    for w in slice_words:
        u_prime = normal_form(tup.rho(w), system, step_cap)
        back = normal_form(tup.phi(u_prime), base, step_cap)
        if back != w:
            mismatches.append(("slice-roundtrip", w, u_prime, back))
            continue
        if u_prime in images:
            mismatches.append(("slice-collision", images[u_prime], w, u_prime))
        else:
            images[u_prime] = w
    slice_surjective = not any(m[0].startswith("slice") for m in mismatches)

    forward_injective = True
    for u_prime in words_over(system.alphabet, bound):
        if not is_irreducible(u_prime, system):
            continue
        w = normal_form(tup.phi(u_prime), base, step_cap)
        try:
            recovered = normal_form(tup.rho(w), system, step_cap)
        except PreconditionError:
            mismatches.append(("forward-error", u_prime, w))
            forward_injective = False
            continue
        if recovered != u_prime:
            mismatches.append(("forward", u_prime, w, recovered))
            forward_injective = False

    return IsomorphismReport(
        slice_bound=bound,
        forward_injective=forward_injective,
        slice_surjective=slice_surjective,
        mismatches=tuple(mismatches),
        t_class_count=len(slice_words),
        image_count=len(images),
    )


def oracle_classes(
    system: RewritingSystem, max_len: int
) -> tuple[frozenset[Word], ...]:
    """Partition all words of length <= max_len by undirected rule moves.

    Ground truth for class equality that never consults normal forms.  An
    under-approximation of the full congruence in general (joins through
    longer intermediaries are invisible); exact when every rule is
    length-nonincreasing.
    """
    words = list(words_over(system.alphabet, max_len))
    index = {word: i for i, word in enumerate(words)}
    parent = list(range(len(words)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for word in words:
        for _, result in one_step_reductions(word, system):
            if len(result) <= max_len:
                union(index[word], index[result])

    groups: dict[int, list[Word]] = {}
    for word, i in index.items():
        groups.setdefault(find(i), []).append(word)
    classes = [frozenset(members) for members in groups.values()]
    classes.sort(key=lambda cls: min((len(w), w.names()) for w in cls))
    return tuple(classes)
