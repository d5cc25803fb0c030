"""Words, rules and reduction for string rewriting (semi-Thue) systems.

Everything in this module is a pure value: letters are interned per
alphabet, words compare by their letter sequence, and all reduction
functions are deterministic functions of their inputs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

LETTER_NAME = re.compile(r"[A-Za-z0-9_']+\Z")

DEFAULT_STEP_CAP = 10_000


class RewriteError(Exception):
    """Base class for every error raised by this package."""


class InputError(RewriteError):
    """Malformed input: unknown letters, empty words where forbidden, bad names."""


class PreconditionError(RewriteError):
    """A documented precondition of an operation does not hold."""


class InternalError(RewriteError):
    """A pipeline stage reached a state that its own guarantees rule out."""


class NonTerminationError(RewriteError):
    """A step cap was exceeded; the system may be non-terminating."""

    def __init__(self, message: str, trace: tuple["Word", ...] = ()):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class Letter:
    """A single alphabet symbol.  Equality and hashing use the name only;
    the index records the interning order inside the owning alphabet."""

    name: str
    index: int = field(compare=False)

    def __repr__(self) -> str:
        return f"Letter({self.name!r})"


class Alphabet:
    """Ordered, effectively immutable set of letters with unique names.

    Indexes are stable: an alphabet built by :meth:`extended` keeps the
    parent's letters (same objects, same indexes) and appends new ones.
    """

    def __init__(self, names: Iterable[str] = ()):
        self._by_name: dict[str, Letter] = {}
        for name in names:
            self._intern(name)

    def _intern(self, name: str) -> Letter:
        if not LETTER_NAME.match(name):
            raise InputError(f"invalid letter name {name!r}")
        if name in self._by_name:
            raise InputError(f"duplicate letter {name!r}")
        letter = Letter(name, len(self._by_name))
        self._by_name[name] = letter
        return letter

    def extended(self, names: Iterable[str]) -> "Alphabet":
        new = Alphabet()
        new._by_name = dict(self._by_name)
        for name in names:
            new._intern(name)
        return new

    def fresh_name(self, base: str = "s") -> str:
        if base not in self._by_name:
            return base
        for i in itertools.count():
            candidate = f"{base}{i}"
            if candidate not in self._by_name:
                return candidate
        raise AssertionError("unreachable")

    def get(self, name: str) -> Letter:
        try:
            return self._by_name[name]
        except KeyError:
            raise InputError(f"unknown letter {name!r}") from None

    def __contains__(self, item: "Letter | str") -> bool:
        name = item if isinstance(item, str) else item.name
        return name in self._by_name

    def __iter__(self) -> Iterator[Letter]:
        return iter(self._by_name.values())

    def __len__(self) -> int:
        return len(self._by_name)

    def letters(self) -> tuple[Letter, ...]:
        return tuple(self._by_name.values())

    def names(self) -> tuple[str, ...]:
        return tuple(self._by_name)

    def word(self, source: "str | Iterable[str]") -> "Word":
        """Build a word from whitespace-separated letter names (or any
        iterable of names)."""
        names = source.split() if isinstance(source, str) else list(source)
        return Word(tuple(self.get(name) for name in names))

    def __repr__(self) -> str:
        return f"Alphabet({list(self._by_name)})"


@dataclass(frozen=True)
class Word:
    """A finite (possibly empty) sequence of letters.

    The empty word is representable because it occurs as a context factor,
    but it is rejected as a rule side and as a reduction input.
    """

    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __getitem__(self, item: "int | slice") -> "Letter | Word":
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def names(self) -> tuple[str, ...]:
        return tuple(letter.name for letter in self.letters)

    def startswith(self, prefix: "Word") -> bool:
        return self.letters[: len(prefix)] == prefix.letters

    def endswith(self, suffix: "Word") -> bool:
        return len(suffix) <= len(self) and self.letters[len(self) - len(suffix):] == suffix.letters

    def find(self, factor: "Word", start: int = 0) -> int:
        k = len(factor)
        if k == 0:
            return start if start <= len(self) else -1
        for pos in range(start, len(self) - k + 1):
            if self.letters[pos: pos + k] == factor.letters:
                return pos
        return -1

    def occurrences(self, factor: "Word") -> list[int]:
        out = []
        pos = self.find(factor)
        while pos >= 0:
            out.append(pos)
            pos = self.find(factor, pos + 1)
        return out

    def __str__(self) -> str:
        return " ".join(self.names())

    def __repr__(self) -> str:
        return f"Word({' '.join(self.names())!r})"


EMPTY_WORD = Word()


@dataclass(frozen=True)
class Rule:
    """A directed rule lhs -> rhs with both sides nonempty.

    Tags carry provenance labels (C1..C6, D1, D2) and are excluded from
    equality, so deduplication works on (lhs, rhs) alone.
    """

    lhs: Word
    rhs: Word
    tags: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not self.lhs or not self.rhs:
            raise InputError("rule sides must be nonempty words")

    def tagged(self, *tags: str) -> "Rule":
        merged = self.tags + tuple(t for t in tags if t not in self.tags)
        return Rule(self.lhs, self.rhs, merged)

    def __repr__(self) -> str:
        return f"Rule({str(self.lhs)!r} -> {str(self.rhs)!r})"


@dataclass(frozen=True)
class ReductionStep:
    """One rule application: which rule, at which 0-based start position."""

    rule_index: int
    position: int


@dataclass(frozen=True, eq=False)
class RewritingSystem:
    """An alphabet plus an ordered, finite list of rules over it."""

    alphabet: Alphabet
    rules: tuple[Rule, ...] = ()

    def __post_init__(self) -> None:
        for rule in self.rules:
            for side in (rule.lhs, rule.rhs):
                for letter in side:
                    if letter not in self.alphabet:
                        raise InputError(
                            f"rule {rule!r} uses letter {letter.name!r} outside the alphabet"
                        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RewritingSystem):
            return NotImplemented
        return (
            set(self.alphabet.names()) == set(other.alphabet.names())
            and self.rules == other.rules
        )

    __hash__ = None  # type: ignore[assignment]

    def left_sides(self) -> tuple[Word, ...]:
        return tuple(rule.lhs for rule in self.rules)

    def max_lhs_len(self) -> int:
        return max((len(rule.lhs) for rule in self.rules), default=0)

    def with_rules(self, rules: Iterable[Rule]) -> "RewritingSystem":
        return RewritingSystem(self.alphabet, tuple(rules))

    def __repr__(self) -> str:
        rules = ", ".join(f"{r.lhs}->{r.rhs}" for r in self.rules)
        return f"RewritingSystem([{', '.join(self.alphabet.names())}]; {rules})"


def _require_known(word: Word, system: RewritingSystem) -> None:
    for letter in word:
        if letter not in system.alphabet:
            raise InputError(f"letter {letter.name!r} is not in the system's alphabet")


def one_step_reductions(
    word: Word, system: RewritingSystem
) -> list[tuple[ReductionStep, Word]]:
    """Every one-step reduct of ``word``, ordered by (position, rule index).

    The list is empty exactly when the word is irreducible.
    """
    if not word:
        raise InputError("cannot reduce the empty word")
    _require_known(word, system)
    out: list[tuple[ReductionStep, Word]] = []
    for pos in range(len(word)):
        for idx, rule in enumerate(system.rules):
            k = len(rule.lhs)
            if pos + k <= len(word) and word.letters[pos: pos + k] == rule.lhs.letters:
                result = Word(word.letters[:pos] + rule.rhs.letters + word.letters[pos + k:])
                out.append((ReductionStep(idx, pos), result))
    return out


def is_irreducible(word: Word, system: RewritingSystem) -> bool:
    """True iff no left-hand side occurs as a factor of ``word``."""
    if not word:
        raise InputError("the empty word is not a rewriting input")
    _require_known(word, system)
    return all(word.find(lhs) < 0 for lhs in system.left_sides())


def _first_redex(
    word: Word, system: RewritingSystem, rightmost: bool
) -> tuple[int, int] | None:
    positions = range(len(word) - 1, -1, -1) if rightmost else range(len(word))
    for pos in positions:
        for idx, rule in enumerate(system.rules):
            k = len(rule.lhs)
            if pos + k <= len(word) and word.letters[pos: pos + k] == rule.lhs.letters:
                return idx, pos
    return None


def _apply(word: Word, system: RewritingSystem, idx: int, pos: int) -> Word:
    rule = system.rules[idx]
    return Word(word.letters[:pos] + rule.rhs.letters + word.letters[pos + len(rule.lhs):])


def normal_form(
    word: Word,
    system: RewritingSystem,
    step_cap: int = DEFAULT_STEP_CAP,
    rightmost: bool = False,
) -> Word:
    """Reduce ``word`` to an irreducible descendant.

    The strategy is deterministic: leftmost occurrence, ties broken by
    lowest rule index (``rightmost=True`` flips the position order; it
    exists so tests can cross-check strategy independence).  For a complete
    system the result does not depend on the strategy.
    """
    if not word:
        raise InputError("the empty word is not a rewriting input")
    _require_known(word, system)
    trace = [word]
    current = word
    for _ in range(step_cap):
        redex = _first_redex(current, system, rightmost)
        if redex is None:
            return current
        current = _apply(current, system, *redex)
        trace.append(current)
    raise NonTerminationError(
        f"possible non-termination: {step_cap} reduction steps exceeded", tuple(trace)
    )


def disorder(word: Word, system: RewritingSystem, step_cap: int = DEFAULT_STEP_CAP) -> int:
    """Length of the longest reduction sequence from ``word`` to its normal
    form (0 iff the word is irreducible).

    Computed as a memoized longest-path search over the reduction DAG; a
    cycle or a search deeper/larger than ``step_cap`` raises
    :class:`NonTerminationError`.
    """
    if not word:
        raise InputError("the empty word is not a rewriting input")
    _require_known(word, system)
    memo: dict[Word, int] = {}
    on_path: set[Word] = set()
    stack: list[tuple[Word, list[Word] | None]] = [(word, None)]
    while stack:
        node, succ = stack.pop()
        if succ is None:
            if node in memo:
                continue
            on_path.add(node)
            if len(on_path) > step_cap or len(memo) > step_cap:
                raise NonTerminationError(
                    f"possible non-termination: disorder search exceeded {step_cap} states"
                )
            succ = [result for _, result in one_step_reductions(node, system)]
            for nxt in succ:
                if nxt in on_path:
                    raise NonTerminationError(
                        "reduction cycle detected", (node, nxt)
                    )
            stack.append((node, succ))
            for nxt in succ:
                if nxt not in memo:
                    stack.append((nxt, None))
        else:
            memo[node] = 1 + max(memo[nxt] for nxt in succ) if succ else 0
            on_path.discard(node)
    return memo[word]


def descendants(
    word: Word, system: RewritingSystem, step_cap: int = DEFAULT_STEP_CAP
) -> set[Word]:
    """All words reachable from ``word`` by zero or more reduction steps."""
    seen = {word}
    frontier = [word]
    while frontier:
        current = frontier.pop()
        for _, result in one_step_reductions(current, system):
            if result not in seen:
                if len(seen) >= step_cap:
                    raise NonTerminationError(
                        f"descendant search exceeded {step_cap} states"
                    )
                seen.add(result)
                frontier.append(result)
    return seen


def reduces_to(
    word: Word,
    target: Word,
    system: RewritingSystem,
    step_cap: int = DEFAULT_STEP_CAP,
) -> bool:
    """True iff ``word`` reduces to ``target`` in zero or more steps."""
    if word == target:
        return True
    seen = {word}
    frontier = [word]
    while frontier:
        current = frontier.pop()
        for _, result in one_step_reductions(current, system):
            if result == target:
                return True
            if result not in seen:
                if len(seen) >= step_cap:
                    raise NonTerminationError(
                        f"reachability search exceeded {step_cap} states"
                    )
                seen.add(result)
                frontier.append(result)
    return False


def words_over(
    letters: "Alphabet | Iterable[Letter]", max_len: int, min_len: int = 1
) -> Iterator[Word]:
    """All words over the given letters with min_len <= length <= max_len,
    in (length, letter-order) sequence."""
    pool = letters.letters() if isinstance(letters, Alphabet) else tuple(letters)
    for length in range(min_len, max_len + 1):
        for combo in itertools.product(pool, repeat=length):
            yield Word(combo)
