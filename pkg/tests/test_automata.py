"""Guard-regex automata: Thompson NFA, subset construction, size ceiling"""
import itertools
import json
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))
from automata.dfa import compile_regex, history_matches, nfa_to_dfa
from automata.nfa import regex_to_nfa
from automata.regex import DEFAULT_REGEX, RConcat, RLiteral, RStar, RUnion, literals, size
from formula.guards import GCmp, GTrue, TRUE_GUARD
from model.loader import load_model
from strategies.enumeration import enumerate_regexes
from utils.errors import StateBlowup

P = GCmp('p', '>=', 0.5)
Q = GCmp('q', '<', 0.5)
R = GCmp('r')


def words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(range(alphabet), repeat=n)


def matches(r, word, index):
    """Reference matcher on the regex syntax tree, independent of any automaton."""
    if isinstance(r, RLiteral):
        if len(word) != 1:
            return False
        return isinstance(r.guard, GTrue) or bool(word[0] >> index[r.guard] & 1)
    if isinstance(r, RUnion):
        return matches(r.left, word, index) or matches(r.right, word, index)
    if isinstance(r, RConcat):
        return any(matches(r.left, word[:i], index) and matches(r.right, word[i:], index)
                   for i in range(len(word) + 1))
    if not word:
        return True
    return any(matches(r.inner, word[:i], index) and matches(r, word[i:], index)
               for i in range(1, len(word) + 1))


def test_state_counts():
    assert compile_regex(RLiteral(P)).num_states == 3
    assert compile_regex(RStar(RLiteral(TRUE_GUARD))).num_states == 1


def test_default_regex_accepts_every_nonempty_history():
    dfa = compile_regex(DEFAULT_REGEX)
    assert not dfa.accepts([])
    for w in words(1, 4):
        if w:
            assert dfa.accepts(list(w))


def test_enumerated_regexes_match_reference_two_literals():
    lits = [P, Q]
    for r in enumerate_regexes(lits, 3):
        nfa = regex_to_nfa(r)
        dfa = compile_regex(r)
        index = {g: i for i, g in enumerate(nfa.literals)}
        for w in words(1 << len(nfa.literals), 5):
            expected = matches(r, w, index)
            assert nfa.accepts(w) == expected
            assert dfa.accepts(list(w)) == expected


@pytest.mark.parametrize('r', [
    RConcat(RStar(RUnion(RLiteral(P), RLiteral(Q))), RLiteral(R)),
    RStar(RConcat(RLiteral(P), RUnion(RLiteral(Q), RLiteral(R)))),
    RUnion(RConcat(RLiteral(R), RLiteral(P)), RStar(RLiteral(Q))),
])
def test_three_literal_alphabet(r):
    nfa = regex_to_nfa(r)
    dfa = nfa_to_dfa(nfa)
    assert len(nfa.literals) == 3
    index = {g: i for i, g in enumerate(nfa.literals)}
    for w in words(8, 5):
        assert dfa.accepts(list(w)) == nfa.accepts(w)
    for w in words(8, 3):
        assert dfa.accepts(list(w)) == matches(r, w, index)


def test_dfa_size_ceiling():
    for r in enumerate_regexes([P, Q], 4):
        assert compile_regex(r).num_states <= 2 ** (2 * size(r))


def test_blowup_raises():
    with pytest.raises(StateBlowup):
        nfa_to_dfa(regex_to_nfa(RLiteral(P)), bound=1)


def test_literals_skip_true():
    r = RConcat(RStar(RLiteral(TRUE_GUARD)), RUnion(RLiteral(P), RLiteral(P)))
    assert literals(r) == [P]
    assert size(r) == 6


def test_history_matches_on_model_states():
    m = load_model(json.dumps({
        'agents': [{'name': 'a', 'actions': [{'name': 'x', 'cost': 0}], 'resource': 0}],
        'atoms': ['p'],
        'states': [{'name': 'lo', 'labels': {'p': 0.1}}, {'name': 'hi', 'labels': {'p': 0.8}}],
        'initial': 'lo',
        'default_to': {'lo': 'hi', 'hi': 'lo'},
    }))
    ends_high = RConcat(RStar(RLiteral(TRUE_GUARD)), RLiteral(P))
    assert history_matches(m, ends_high, ['lo', 'hi'])
    assert not history_matches(m, ends_high, ['hi', 'lo'])
    assert not history_matches(m, ends_high, [])
    assert history_matches(m, DEFAULT_REGEX, ['lo'])
