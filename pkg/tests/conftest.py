import pytest

from frs import (
    Alphabet,
    ComplementSpec,
    Presentation,
    RewritingSystem,
    Rule,
    one_step_reductions,
)


def w(alphabet, text):
    """Word helper: 'a a b' splits on spaces, 'aab' splits per character."""
    if " " in text or text in alphabet.names():
        return alphabet.word(text)
    return alphabet.word(" ".join(text))


def system(letter_names, *rule_pairs):
    alphabet = Alphabet(letter_names.split())
    rules = tuple(
        Rule(w(alphabet, lhs), w(alphabet, rhs)) for lhs, rhs in rule_pairs
    )
    return RewritingSystem(alphabet, rules)


def rule_set(sys):
    return {(r.lhs.names(), r.rhs.names()) for r in sys.rules}


def all_normal_forms(word, sys, memo=None):
    """Oracle: the set of endpoints of every maximal reduction path."""
    if memo is None:
        memo = {}
    if word in memo:
        return memo[word]
    memo[word] = frozenset()  # cycle guard; fixtures are acyclic
    successors = [result for _, result in one_step_reductions(word, sys)]
    if not successors:
        result = frozenset({word})
    else:
        result = frozenset().union(
            *(all_normal_forms(nxt, sys, memo) for nxt in successors)
        )
    memo[word] = result
    return result


def longest_path_by_enumeration(word, sys):
    """Oracle: maximum reduction-sequence length by explicit path search."""
    best = 0
    stack = [(word, 0)]
    while stack:
        current, depth = stack.pop()
        successors = [result for _, result in one_step_reductions(current, sys)]
        if not successors:
            best = max(best, depth)
        for nxt in successors:
            stack.append((nxt, depth + 1))
    return best


@pytest.fixture
def sys_aaa():
    """One rule a a a -> a over {a}."""
    return system("a", ("aaa", "a"))


@pytest.fixture
def sys_moves():
    """aa -> s and sa -> as over {a, s} (complete, length-nonincreasing)."""
    return system("a s", ("aa", "s"), ("sa", "as"))


@pytest.fixture
def sys_nonconfluent():
    """ab -> a and ab -> b: terminating, not confluent."""
    return system("a b", ("ab", "a"), ("ab", "b"))


@pytest.fixture
def free_a():
    return system("a")


@pytest.fixture
def free_ab():
    return system("a b")


@pytest.fixture
def pres_aaa(sys_aaa):
    return Presentation(sys_aaa, ComplementSpec((w(sys_aaa.alphabet, "a"),)))


@pytest.fixture
def pres_free_ab(free_ab):
    return Presentation(free_ab, ComplementSpec((w(free_ab.alphabet, "a"),)))
