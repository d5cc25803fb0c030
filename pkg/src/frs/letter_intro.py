"""Introduce a fresh letter naming one irreducible word, preserving the
presented semigroup and completeness.

Given a complete system over A and an irreducible word w0 of length > 1,
this builds a system over B = A + {s} in which w0 reduces to s, every
original class is preserved, and completeness survives.  The construction
rewrites the old rules through the retraction rho (which compresses w0
suffix-occurrences into s), adds the naming rule w0 -> s, closes under all
ways w0 can overlap a left-hand side (families C3/C4/C5), and adds one
commutation rule per self-overlap of w0 (family C6).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DEFAULT_STEP_CAP,
    Alphabet,
    InputError,
    Letter,
    PreconditionError,
    RewritingSystem,
    Rule,
    Word,
    is_irreducible,
    normal_form,
)
from .property_r import CandidateTuple

C1, C2, C3, C4, C5, C6 = "C1", "C2", "C3", "C4", "C5", "C6"


def rho_s(word: Word, w0: Word, s: Letter) -> Word:
    """Retraction onto B-words: scan from the right, compressing each
    suffix occurrence of ``w0`` into the single letter ``s``.

    Total and deterministic on words over A; the empty word maps to itself.
    """
    if len(w0) < 2:
        raise PreconditionError("the named word must have length > 1")
    if any(letter == s for letter in word):
        raise InputError(f"input to rho contains the fresh letter {s.name!r}")
    out: list[Letter] = []
    i = len(word)
    k = len(w0)
    while i > 0:
        if i >= k and word.letters[i - k: i] == w0.letters:
            out.append(s)
            i -= k
        else:
            out.append(word.letters[i - 1])
            i -= 1
    out.reverse()
    return Word(tuple(out))


def phi_s(word: Word, w0: Word, s: Letter) -> Word:
    """Homomorphism back onto A-words: substitute ``w0`` for ``s``."""
    pieces: list[Letter] = []
    for letter in word:
        if letter == s:
            pieces.extend(w0.letters)
        else:
            pieces.append(letter)
    return Word(tuple(pieces))


def self_overlaps(w0: Word) -> list[tuple[Word, Word, Word]]:
    """All factorizations w0 = x1 x2 = x2 x3 with x1, x2, x3 nonempty.

    Equivalently, x2 ranges over the proper nonempty borders of w0; x1 and
    x3 always have equal length.
    """
    if len(w0) < 2:
        raise PreconditionError("the named word must have length > 1")
    out = []
    n = len(w0)
    for k in range(1, n):
        if w0.letters[:k] == w0.letters[n - k:]:
            x2 = Word(w0.letters[:k])
            x1 = Word(w0.letters[: n - k])
            x3 = Word(w0.letters[k:])
            out.append((x1, x2, x3))
    return out


@dataclass(frozen=True)
class LetterIntroResult:
    """Output of one letter-introduction round."""

    new_letter: Letter
    w0: Word
    b_alphabet: Alphabet
    r_s: RewritingSystem
    base: RewritingSystem

    def rho(self, word: Word) -> Word:
        return rho_s(word, self.w0, self.new_letter)

    def phi(self, word: Word) -> Word:
        return phi_s(word, self.w0, self.new_letter)

    def as_candidate_tuple(self) -> CandidateTuple:
        # Every A-word represents an element of the target semigroup here,
        # so both membership predicates are trivially true.
        return CandidateTuple(
            base=self.base,
            system=self.r_s,
            phi=self.phi,
            rho=self.rho,
            in_at=lambda word: True,
            in_t=lambda word: True,
            heavy=frozenset({self.new_letter}),
        )


def build_letter_intro(
    system: RewritingSystem,
    w0: Word,
    s_name: str = "s",
    step_cap: int = DEFAULT_STEP_CAP,
) -> LetterIntroResult:
    """Build the extended system for naming ``w0`` by a fresh letter.

    Requires ``w0`` irreducible with length > 1, and assumes ``system`` has
    been verified complete by the caller.  The requested fresh name gets a
    deterministic numeric suffix if it collides with an existing letter.
    """
    if len(w0) < 2:
        raise PreconditionError("the named word must have length > 1")
    for letter in w0:
        if letter not in system.alphabet:
            raise InputError(f"letter {letter.name!r} is not in the alphabet")
    if not is_irreducible(w0, system):
        raise PreconditionError(f"the named word '{w0}' must be irreducible")

    fresh = system.alphabet.fresh_name(s_name)
    b_alphabet = system.alphabet.extended([fresh])
    s = b_alphabet.get(fresh)

    def rho(word: Word) -> Word:
        return rho_s(word, w0, s)

    def nf(word: Word) -> Word:
        return normal_form(word, system, step_cap)

    emitted: dict[tuple[Word, Word], Rule] = {}

    def emit(lhs: Word, rhs: Word, tag: str) -> None:
        key = (lhs, rhs)
        if key in emitted:
            emitted[key] = emitted[key].tagged(tag)
        else:
            emitted[key] = Rule(lhs, rhs, (tag,))

    # C1: the original rules, transported through rho.
    for rule in system.rules:
        emit(rho(rule.lhs), rho(rule.rhs), C1)
    # C2: the naming rule itself.
    emit(w0, Word((s,)), C2)
    # C3: w0 overlapping a lhs from the left (a nonempty prefix of the lhs
    # is a suffix of w0); the assembled word is w0's remainder + lhs.
    for rule in system.rules:
        lhs = rule.lhs
        for k in range(1, min(len(lhs), len(w0)) + 1):
            if w0.letters[len(w0) - k:] == lhs.letters[:k]:
                assembled = Word(w0.letters[: len(w0) - k]) + lhs
                emit(rho(assembled), rho(nf(assembled)), C3)
    # C4: mirror image, w0 overlapping a lhs from the right.
    for rule in system.rules:
        lhs = rule.lhs
        for k in range(1, min(len(lhs), len(w0)) + 1):
            if w0.letters[:k] == lhs.letters[len(lhs) - k:]:
                assembled = lhs + Word(w0.letters[k:])
                emit(rho(assembled), rho(nf(assembled)), C4)
    # C5: two w0 occurrences straddling both ends of one lhs.
    for rule in system.rules:
        lhs = rule.lhs
        for i in range(1, min(len(lhs), len(w0)) + 1):
            if w0.letters[len(w0) - i:] != lhs.letters[:i]:
                continue
            for j in range(1, min(len(lhs) - i, len(w0)) + 1):
                if w0.letters[:j] == lhs.letters[len(lhs) - j:]:
                    assembled = (
                        Word(w0.letters[: len(w0) - i]) + lhs + Word(w0.letters[j:])
                    )
                    emit(rho(assembled), rho(nf(assembled)), C5)
    # C6: one commutation rule per self-overlap of w0.
    for x1, _x2, x3 in self_overlaps(w0):
        emit(Word((s,)) + x3, x1 + Word((s,)), C6)

    # Emission runs family by family, so insertion order is already the
    # canonical order: C1 block, C2, C3 block, C4, C5, C6; a deduplicated
    # rule keeps its first position and accumulates tags.
    r_s = RewritingSystem(b_alphabet, tuple(emitted.values()))
    return LetterIntroResult(s, w0, b_alphabet, r_s, system)
