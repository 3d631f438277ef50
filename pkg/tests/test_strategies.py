"""Natural strategy representation, matching and enumeration"""
import itertools
import json
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))
from automata.regex import DEFAULT_REGEX, RConcat, RLiteral, RStar, RUnion
from bench.generator import BENCH_POOL, BenchSpec, generate_benchmark
from formula.guards import GAnd, GCmp, GNot, GOr, TRUE_GUARD, eval_guard
from model.loader import load_model
from strategies.enumeration import enumerate_memoryless, enumerate_recall, enumerate_regexes, guard_candidates
from strategies.natural import (CollectiveStrategy, MemorylessStrategy, RecallRule, RecallStrategy, Rule,
                                complexity, dom, match_memoryless, match_recall)
from utils.errors import InvalidStrategy, NoMatch

P = GCmp('p', '>=', 0.5)


def line_model():
    """Three states in a row; 'stop' is unavailable at s2."""
    return load_model(json.dumps({
        'agents': [
            {'name': 'a', 'actions': [{'name': 'go', 'cost': 2}, {'name': 'stop', 'cost': 1}], 'resource': 4},
            {'name': 'e', 'actions': [{'name': 'x'}]},
        ],
        'atoms': ['p'],
        'guard_atoms': [{'atom': 'p', 'op': '>=', 'threshold': 0.5}],
        'states': [
            {'name': 's0', 'labels': {'p': 0.0}},
            {'name': 's1', 'labels': {'p': 0.8}},
            {'name': 's2', 'labels': {'p': 0.4}},
        ],
        'initial': 's0',
        'availability': {'s2': {'a': ['go']}},
        'transitions': [
            {'from': 's0', 'actions': {'a': 'go'}, 'to': 's1'},
            {'from': 's1', 'actions': {'a': 'go'}, 'to': 's2'},
            {'from': 's2', 'actions': {'a': 'go'}, 'to': 's0'},
        ],
        'default_to': {'s0': 's0', 's1': 's1'},
    }))


def test_default_rule_required():
    with pytest.raises(InvalidStrategy):
        MemorylessStrategy('a', (Rule(P, 'go'),))
    with pytest.raises(InvalidStrategy):
        RecallStrategy('a', (RecallRule(RLiteral(P), 'go'),))


def test_complexity_metrics():
    s = MemorylessStrategy('a', (Rule(GNot(P), 'go'), Rule(TRUE_GUARD, 'stop')))
    assert complexity(s, 'symbols') == 3
    assert complexity(s, 'rules') == 2
    r = RecallStrategy('a', (RecallRule(RConcat(RStar(RLiteral(TRUE_GUARD)), RLiteral(P)), 'go'),
                             RecallRule(DEFAULT_REGEX, 'stop')))
    assert complexity(r, 'symbols') == 5
    assert complexity(r, 'rules') == 2
    both = CollectiveStrategy((s, MemorylessStrategy('e', (Rule(TRUE_GUARD, 'x'),))))
    assert complexity(both, 'rules') == 3
    assert both.coalition == ('a', 'e')


def test_match_skips_unavailable_actions():
    m = line_model()
    s = MemorylessStrategy('a', (Rule(P, 'stop'), Rule(TRUE_GUARD, 'go')))
    assert match_memoryless(m, s, 's1') == 0
    assert match_memoryless(m, s, 's0') == 1
    only_stop = MemorylessStrategy('a', (Rule(TRUE_GUARD, 'stop'),))
    with pytest.raises(NoMatch):
        match_memoryless(m, only_stop, 's2')


def test_match_recall_reads_history():
    m = line_model()
    # fires once p held somewhere before the current state
    seen_p = RConcat(RConcat(RStar(RLiteral(TRUE_GUARD)), RLiteral(P)), RStar(RLiteral(TRUE_GUARD)))
    s = RecallStrategy('a', (RecallRule(seen_p, 'stop'), RecallRule(DEFAULT_REGEX, 'go')))
    assert match_recall(m, s, ['s0']) == 1
    assert match_recall(m, s, ['s0', 's1']) == 0
    assert match_recall(m, s, ['s0', 's1', 's2']) == 1  # stop unavailable at s2
    assert match_recall(m, s, ['s1', 's0']) == 0


def test_dom():
    m = line_model()
    s = MemorylessStrategy('a', (Rule(P, 'stop'), Rule(TRUE_GUARD, 'go')))
    assert dom(m, s) == ['s1']


def test_guard_candidates_dedupe_truth_tables():
    m = line_model()
    guards = guard_candidates(m, m.guard_atoms, 2)
    assert guards == [P, GNot(P)]
    assert guard_candidates(m, m.guard_atoms, 1) == [P]


@pytest.mark.parametrize('k, metric, expected', [
    (1, 'rules', 2),
    (2, 'rules', 6),
    (2, 'symbols', 4),
    (3, 'symbols', 6),
])
def test_enumeration_counts(k, metric, expected):
    m = line_model()
    cands = list(enumerate_memoryless(m, ['a'], k, metric=metric))
    assert len(cands) == expected
    assert len(set(cands)) == expected
    sizes = [c.complexity(metric) for c in cands]
    assert sizes == sorted(sizes)
    assert all(s <= k for s in sizes)
    assert all(c.members[0].rules[-1].guard == TRUE_GUARD for c in cands)


def test_enumeration_two_agents():
    m = line_model()
    cands = list(enumerate_memoryless(m, ['a', 'e'], 2, metric='rules'))
    # one rule each: two defaults for a, one for e
    assert len(cands) == 2
    assert all(c.coalition == ('a', 'e') for c in cands)
    assert list(enumerate_memoryless(m, ['a', 'e'], 1, metric='rules')) == []


def test_enumeration_is_deterministic():
    m = line_model()
    first = list(enumerate_memoryless(m, ['a'], 3, metric='symbols'))
    assert first == list(enumerate_memoryless(m, ['a'], 3, metric='symbols'))


def test_regex_enumeration():
    regexes = enumerate_regexes([P], 3)
    assert len(regexes) == len(set(regexes))
    assert RStar(RStar(RLiteral(P))) not in regexes
    assert DEFAULT_REGEX not in regexes
    assert regexes[0] == RLiteral(TRUE_GUARD)


def test_recall_enumeration_includes_memoryless_equivalents():
    m = line_model()
    cands = list(enumerate_recall(m, ['a'], 2, metric='rules', max_regex_size=1))
    assert all(isinstance(c.members[0], RecallStrategy) for c in cands)
    assert all(c.complexity('rules') <= 2 for c in cands)
    wanted = RecallStrategy('a', (RecallRule(RLiteral(P), 'stop'), RecallRule(DEFAULT_REGEX, 'go')))
    assert CollectiveStrategy((wanted,)) in cands


# Exhaustive reference enumerators: every syntactic guard and regex, no truth-table
# or language dedupe. Candidates are compared by behaviour, keeping the least
# complexity that realises each behaviour.

def small_bench(seed, states=4):
    return generate_benchmark(BenchSpec(states=states, agents=2, actions_per_agent=2, seed=seed))


def all_guards(lits, max_symbols):
    levels = {1: [TRUE_GUARD] + list(lits)}
    for n in range(2, max_symbols + 1):
        level = [GNot(g) for g in levels[n - 1]]
        for left in range(1, n - 1):
            for a, b in itertools.product(levels[left], levels[n - 1 - left]):
                level += [GAnd(a, b), GOr(a, b)]
        levels[n] = level
    return [(g, n) for n in levels for g in levels[n]]


def all_regexes(lits, max_size):
    levels = {1: [RLiteral(g) for g in [TRUE_GUARD] + list(lits)]}
    for n in range(2, max_size + 1):
        level = [RStar(r) for r in levels[n - 1]]
        for left in range(1, n - 1):
            for a, b in itertools.product(levels[left], levels[n - 1 - left]):
                level += [RConcat(a, b), RUnion(a, b)]
        levels[n] = level
    return [(r, n) for n in levels for r in levels[n]]


def accepts(m, r, history, memo):
    key = (r, history)
    if key not in memo:
        if isinstance(r, RLiteral):
            hit = len(history) == 1 and eval_guard(m, history[0], r.guard)
        elif isinstance(r, RUnion):
            hit = accepts(m, r.left, history, memo) or accepts(m, r.right, history, memo)
        elif isinstance(r, RConcat):
            hit = any(accepts(m, r.left, history[:i], memo) and accepts(m, r.right, history[i:], memo)
                      for i in range(len(history) + 1))
        else:
            hit = not history or any(accepts(m, r.inner, history[:i], memo) and accepts(m, r, history[i:], memo)
                                     for i in range(1, len(history) + 1))
        memo[key] = hit
    return memo[key]


def histories(m, max_len=3):
    return [h for n in range(1, max_len + 1) for h in itertools.product(m.states, repeat=n)]


def behaviour(rules, points, holds):
    """Action of the first applicable rule at every point."""
    return tuple(next(a for cond, a in rules if holds(cond, x)) for x in points)


def least_complexity(found):
    best = {}
    for sig, c in found:
        best[sig] = min(best.get(sig, c), c)
    return best


def exhaustive_members(m, agent, budget, choices, default_cond, holds, points):
    """Every ordered rule list over choices (cond, cost) whose total plus the default fits budget."""
    acts = [a for a in m.actions[agent] if m.cost[(agent, a)] <= m.resource[agent]]
    found = []

    def walk(body, spent):
        for d in acts:
            found.append((behaviour(body + [(default_cond, d)], points, holds), spent + 1))
        for cond, cost in choices:
            if spent + cost + 1 <= budget:
                for a in acts:
                    walk(body + [(cond, a)], spent + cost)

    if budget >= 1:
        walk([], 0)
    return least_complexity(found)


def collective_behaviours(per_agent, k):
    found = []
    for combo in itertools.product(*(list(b.items()) for b in per_agent)):
        total = sum(c for _, c in combo)
        if total <= k:
            found.append((tuple(sig for sig, _ in combo), total))
    return least_complexity(found)


def exhaustive_memoryless(m, coalition, k, metric, pool, max_guard_symbols=2):
    budget = k - (len(coalition) - 1)
    cap = max_guard_symbols if metric == 'rules' else budget - 1
    lits = [GCmp(g.atom, g.op, g.threshold) for g in pool]
    choices = [(g, 1 if metric == 'rules' else n) for g, n in all_guards(lits, cap)]

    def holds(g, s):
        return eval_guard(m, s, g)

    per_agent = [exhaustive_members(m, a, budget, choices, TRUE_GUARD, holds, m.states) for a in coalition]
    return collective_behaviours(per_agent, k)


def exhaustive_recall(m, coalition, k, metric, pool, max_regex_size=3):
    budget = k - (len(coalition) - 1)
    cap = max_regex_size if metric == 'rules' else min(max_regex_size, budget - 1)
    lits = [GCmp(g.atom, g.op, g.threshold) for g in pool]
    lits += [GNot(g) for g in lits]
    choices = [(r, 1 if metric == 'rules' else n) for r, n in all_regexes(lits, cap)]
    memo = {}

    def holds(r, h):
        return accepts(m, r, h, memo)

    points = histories(m)
    per_agent = [exhaustive_members(m, a, budget, choices, DEFAULT_REGEX, holds, points) for a in coalition]
    return collective_behaviours(per_agent, k)


def enumerated_behaviours(cands, points, metric, holds):
    found = []
    for c in cands:
        sig = tuple(behaviour([(r.guard if isinstance(r, Rule) else r.regex, r.action) for r in s.rules],
                              points, holds) for s in c.members)
        found.append((sig, c.complexity(metric)))
    return least_complexity(found)


@pytest.mark.parametrize('seed', range(4))
@pytest.mark.parametrize('metric', ['rules', 'symbols'])
@pytest.mark.parametrize('coalition, k', [(('a0',), 1), (('a0',), 2), (('a0',), 3),
                                          (('a0', 'a1'), 2), (('a0', 'a1'), 3)])
@pytest.mark.parametrize('pool_size', [1, 2])
def test_memoryless_enumeration_covers_exhaustive_search(seed, metric, coalition, k, pool_size):
    m = small_bench(seed)
    pool = BENCH_POOL[:pool_size]
    cands = list(enumerate_memoryless(m, coalition, k, metric=metric, pool=pool))
    got = enumerated_behaviours(cands, m.states, metric, lambda g, s: eval_guard(m, s, g))
    assert got == exhaustive_memoryless(m, coalition, k, metric, pool)


def test_two_agent_single_comparison_count():
    m = small_bench(seed=7)
    cands = list(enumerate_memoryless(m, ('a0', 'a1'), 2, metric='rules', pool=BENCH_POOL[:1]))
    expected = exhaustive_memoryless(m, ('a0', 'a1'), 2, 'rules', BENCH_POOL[:1])
    # k=2 leaves each agent its default rule only
    assert len(cands) == len(expected) == 4


@pytest.mark.parametrize('seed', range(3))
@pytest.mark.parametrize('metric', ['rules', 'symbols'])
def test_recall_enumeration_covers_exhaustive_search(seed, metric):
    m = small_bench(seed, states=3)
    pool = BENCH_POOL[:1]
    cands = list(enumerate_recall(m, ('a0',), 3, metric=metric, pool=pool, max_regex_size=3))
    memo = {}
    got = enumerated_behaviours(cands, histories(m), metric, lambda r, h: accepts(m, r, h, memo))
    assert got == exhaustive_recall(m, ('a0',), 3, metric, pool)
