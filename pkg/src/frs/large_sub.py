"""Construct a finite complete presentation of a large subsemigroup T.

Input: a presentation of S satisfying Q1 (the complement S\\T is a set of
single irreducible letters), Q2 and Q3.  Output: a generating alphabet
B = A1 + C, where A1 holds the letters whose class lies in T and C holds
one fresh letter per short boundary word (shapes a.s, s.a, s.s', s'.a.s,
s.s'.s'' crossing the complement letters), plus a rewriting system R_T in
two rule families:

  D1  rewrites any B-word whose image is reducible in the base system
      (image length capped by N = longest left-hand side + 4);
  D2  normalizes length-2 B-words to the canonical factorization of their
      image, driving the boundary letters rightward.

The retraction rho sends each representative word to its canonical
B-factorization; phi substitutes images back.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DEFAULT_STEP_CAP,
    Alphabet,
    Letter,
    PreconditionError,
    RewriteError,
    RewritingSystem,
    Rule,
    Word,
    is_irreducible,
    normal_form,
)
from .pipeline import (
    Presentation,
    check_subsemigroup_closed,
    satisfies_q1,
    satisfies_q2,
    satisfies_q3,
)
from .property_r import CandidateTuple

D1, D2 = "D1", "D2"

C_R, C_L1, C_L2, C_M1, C_M2 = "C_R", "C_L1", "C_L2", "C_M1", "C_M2"

RIGHT_DRIFT_KINDS = frozenset({C_R, C_M1, C_M2})


class ConstructionError(RewriteError):
    """The construction cannot produce a usable generating set."""


@dataclass(frozen=True)
class LetterClassification:
    """Split of the base alphabet: a1 generates inside T, a_s is the
    complement letters, excluded covers letters that merely reduce to a
    complement letter (they never enter B)."""

    a1: tuple[Letter, ...]
    a_s: tuple[Letter, ...]
    excluded: tuple[Letter, ...] = ()


@dataclass(frozen=True)
class CLetter:
    kind: str
    image: Word
    letter: Letter


@dataclass(frozen=True)
class FSets:
    f1: tuple[Word, ...]
    f2: tuple[Word, ...]
    f3: tuple[Word, ...]
    f4: tuple[Word, ...]


@dataclass(frozen=True)
class LargeSubConstruction:
    presentation: Presentation
    classification: LetterClassification
    f_sets: FSets
    c_letters: tuple[CLetter, ...]
    b_alphabet: Alphabet
    r_t: RewritingSystem
    n_bound: int

    def letter_image(self, letter: Letter) -> Word:
        for c in self.c_letters:
            if c.letter == letter:
                return c.image
        return Word((letter,))

    def phi(self, word: Word) -> Word:
        return phi_t(word, self)

    def rho(self, word: Word) -> Word:
        return rho_t(word, self)

    def heavy_letters(self) -> frozenset[Letter]:
        return frozenset(
            c.letter for c in self.c_letters if c.kind in RIGHT_DRIFT_KINDS
        )

    def as_candidate_tuple(self, system: RewritingSystem | None = None) -> CandidateTuple:
        return CandidateTuple(
            base=self.presentation.system,
            system=self.r_t if system is None else system,
            phi=self.phi,
            rho=self.rho,
            in_at=lambda word: in_AT(word, self.presentation),
            in_t=lambda word: in_T(word, self.presentation),
            heavy=self.heavy_letters(),
        )


def _require_prepared(presentation: Presentation, step_cap: int) -> None:
    if not satisfies_q1(presentation, step_cap):
        raise PreconditionError(
            "the presentation must satisfy Q1: every complement class a "
            "single irreducible letter (run the preparation pipeline first)"
        )
    if not satisfies_q2(presentation.system) or not satisfies_q3(presentation.system):
        raise PreconditionError(
            "the presentation must be interreduced (Q2 and Q3); run the "
            "preparation pipeline first"
        )


def classify_letters(
    presentation: Presentation, step_cap: int = DEFAULT_STEP_CAP
) -> LetterClassification:
    """Partition the alphabet by where each letter's class lives."""
    _require_prepared(presentation, step_cap)
    complement = {word.letters[0] for word in presentation.complement}
    a1, a_s, excluded = [], [], []
    for letter in presentation.system.alphabet:
        if letter in complement:
            a_s.append(letter)
            continue
        form = normal_form(Word((letter,)), presentation.system, step_cap)
        if len(form) == 1 and form.letters[0] in complement:
            excluded.append(letter)
        else:
            a1.append(letter)
    return LetterClassification(tuple(a1), tuple(a_s), tuple(excluded))


def in_T(
    word: Word, presentation: Presentation, step_cap: int = DEFAULT_STEP_CAP
) -> bool:
    """True iff the word's class lies in the subsemigroup, i.e. its normal
    form is not a complement letter."""
    complement = set(presentation.complement.words)
    return normal_form(word, presentation.system, step_cap) not in complement


def in_AT(
    word: Word, presentation: Presentation, step_cap: int = DEFAULT_STEP_CAP
) -> bool:
    """Membership in the representative set: the word's class is in T, all
    its letters are usable (in a1 or a_s), and every factor whose class
    falls outside T is a single complement letter."""
    if not word:
        return False
    complement = {w.letters[0] for w in presentation.complement.words}
    system = presentation.system

    def factor_in_t(factor: Word) -> bool:
        form = normal_form(factor, system, step_cap)
        return not (len(form) == 1 and form.letters[0] in complement)

    for letter in word:
        single = Word((letter,))
        if letter not in complement and not factor_in_t(single):
            return False  # reduces to a complement letter without being one
    if not factor_in_t(word):
        return False
    n = len(word)
    for i in range(n):
        for j in range(i + 2, n + 1):
            if (i, j) != (0, n) and not factor_in_t(word[i:j]):
                return False
    return True


def build_f_sets(
    classification: LetterClassification,
    presentation: Presentation,
    step_cap: int = DEFAULT_STEP_CAP,
) -> FSets:
    """The four seed shapes of the representative set."""
    a1, a_s = classification.a1, classification.a_s
    both = a1 + a_s

    def member(word: Word) -> bool:
        return in_T(word, presentation, step_cap)

    f1 = tuple(Word((a,)) for a in a1)
    f2 = tuple(
        Word((s, b)) for s in a_s for b in both if member(Word((s, b)))
    )
    f3 = tuple(
        Word((a, s)) for a in a1 for s in a_s if member(Word((a, s)))
    )
    f4 = tuple(
        Word((s, b, s2))
        for s in a_s
        for b in both
        for s2 in a_s
        if member(Word((s, b)))
        and member(Word((b, s2)))
        and member(Word((s, b, s2)))
    )
    def ordered(words: tuple[Word, ...]) -> tuple[Word, ...]:
        return tuple(sorted(words, key=lambda w: (len(w), w.names())))

    return FSets(ordered(f1), ordered(f2), ordered(f3), ordered(f4))


def _c_kind(word: Word, classification: LetterClassification) -> str:
    a1 = set(classification.a1)
    if len(word) == 2:
        first, second = word.letters
        if first in a1:
            return C_R
        return C_L1 if second in a1 else C_L2
    middle = word.letters[1]
    return C_M1 if middle in a1 else C_M2


def build_b_alphabet(
    f_sets: FSets,
    classification: LetterClassification,
    base_alphabet: Alphabet,
) -> tuple[Alphabet, tuple[CLetter, ...]]:
    """Materialize one fresh letter per boundary word, names derived from
    the image (c_<letters>); numeric suffix on collision."""
    kind_order = {C_R: 0, C_L1: 1, C_L2: 2, C_M1: 3, C_M2: 4}
    boundary = sorted(
        f_sets.f3 + f_sets.f2 + f_sets.f4,
        key=lambda w: (kind_order[_c_kind(w, classification)], len(w), w.names()),
    )
    alphabet = Alphabet(letter.name for letter in classification.a1)
    c_letters = []
    for image in boundary:
        base_name = "c_" + "_".join(image.names())
        name = base_name
        counter = 0
        while name in alphabet or name in base_alphabet:
            name = f"{base_name}{counter}"
            counter += 1
        alphabet = alphabet.extended([name])
        c_letters.append(
            CLetter(_c_kind(image, classification), image, alphabet.get(name))
        )
    if len(alphabet) == 0:
        raise ConstructionError(
            "the subsemigroup is not expressible: no generator letters "
            "(empty a1 and no admissible boundary words)"
        )
    return alphabet, tuple(c_letters)


def phi_t(word: Word, construction: LargeSubConstruction) -> Word:
    """Substitute every generator by its image word."""
    images = {c.letter: c.image for c in construction.c_letters}
    letters: list[Letter] = []
    for letter in word:
        image = images.get(letter)
        if image is None:
            letters.append(letter)
        else:
            letters.extend(image.letters)
    return Word(tuple(letters))


def rho_t(
    word: Word,
    construction: LargeSubConstruction,
    check: bool = True,
    step_cap: int = DEFAULT_STEP_CAP,
) -> Word:
    """Canonical B-factorization of a representative word.

    Base case first: a word that is itself a seed shape becomes a single
    letter.  Otherwise peel one a1 letter, or one length-2 boundary prefix,
    and recurse; the remainder is again a representative.
    """
    if check and not in_AT(word, construction.presentation, step_cap):
        raise PreconditionError(
            f"'{word}' is not in the representative set; rho is undefined on it"
        )
    cls = construction.classification
    a1 = set(cls.a1)
    a_s = set(cls.a_s)
    by_image: dict[Word, Letter] = {c.image: c.letter for c in construction.c_letters}
    for f1_word in construction.f_sets.f1:
        by_image.setdefault(f1_word, f1_word.letters[0])

    out: list[Letter] = []
    rest = word
    while True:
        hit = by_image.get(rest)
        if hit is not None:
            out.append(hit)
            return Word(tuple(out))
        first = rest.letters[0]
        if first in a1:
            out.append(first)
            rest = rest[1:]
        elif first in a_s and len(rest) >= 3:
            prefix = rest[:2]
            head = by_image.get(prefix)
            if head is None:
                raise PreconditionError(
                    f"'{word}' is not in the representative set "
                    f"(prefix '{prefix}' crosses the complement)"
                )
            out.append(head)
            rest = rest[2:]
        else:
            raise PreconditionError(
                f"'{word}' is not in the representative set"
            )


def build_construction(
    presentation: Presentation,
    step_cap: int = DEFAULT_STEP_CAP,
    closure_bound: int = 6,
) -> LargeSubConstruction:
    """Run the whole construction for a prepared (Q1-Q3) presentation.

    The bounded subsemigroup-closure check runs first: with a finite
    complement one cannot decide closure outright, so products of
    representatives are tested up to ``closure_bound`` and any violation is
    rejected as a precondition failure.
    """
    _require_prepared(presentation, step_cap)
    violations = check_subsemigroup_closed(presentation, closure_bound, step_cap)
    if violations:
        u, v = violations[0]
        raise PreconditionError(
            f"the complement does not define a subsemigroup: the product of "
            f"T-representatives '{u}' and '{v}' lands in the complement"
        )

    classification = classify_letters(presentation, step_cap)
    f_sets = build_f_sets(classification, presentation, step_cap)
    b_alphabet, c_letters = build_b_alphabet(
        f_sets, classification, presentation.system.alphabet
    )
    system = presentation.system
    n_bound = system.max_lhs_len() + 4

    construction = LargeSubConstruction(
        presentation,
        classification,
        f_sets,
        c_letters,
        b_alphabet,
        RewritingSystem(b_alphabet),
        n_bound,
    )

    emitted: dict[tuple[Word, Word], Rule] = {}

    def emit(lhs: Word, rhs: Word, tag: str) -> None:
        key = (lhs, rhs)
        if key in emitted:
            emitted[key] = emitted[key].tagged(tag)
        else:
            emitted[key] = Rule(lhs, rhs, (tag,))

    # D1: depth-first over B-words, pruned by the image-length cap; the
    # image only grows with the word, so overlong prefixes cut the subtree.
    image_len = {
        letter: len(construction.letter_image(letter)) for letter in b_alphabet
    }
    letters = b_alphabet.letters()

    def extend(prefix: list[Letter], length: int) -> None:
        for letter in letters:
            total = length + image_len[letter]
            if total > n_bound:
                continue
            prefix.append(letter)
            u_prime = Word(tuple(prefix))
            image = phi_t(u_prime, construction)
            if not is_irreducible(image, system):
                reduced = normal_form(image, system, step_cap)
                emit(u_prime, rho_t(reduced, construction, step_cap=step_cap), D1)
            extend(prefix, total)
            prefix.pop()

    extend([], 0)

    # D2: every length-2 word whose image is a representative but is not
    # already that image's canonical factorization.
    for x in letters:
        for y in letters:
            u_prime = Word((x, y))
            image = phi_t(u_prime, construction)
            if not in_AT(image, presentation, step_cap):
                continue
            canonical = rho_t(image, construction, check=False, step_cap=step_cap)
            if canonical != u_prime:
                emit(u_prime, canonical, D2)

    d1 = sorted(
        (rule for rule in emitted.values() if rule.tags[0] == D1),
        key=lambda r: (len(r.lhs), tuple(letter.index for letter in r.lhs)),
    )
    d2 = sorted(
        (rule for rule in emitted.values() if rule.tags[0] == D2),
        key=lambda r: tuple(letter.index for letter in r.lhs),
    )
    r_t = RewritingSystem(b_alphabet, tuple(d1 + d2))
    return LargeSubConstruction(
        presentation, classification, f_sets, c_letters, b_alphabet, r_t, n_bound
    )
