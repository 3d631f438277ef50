"""Fuzzy CTL fixpoints against explicit lasso enumeration"""
import random
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))
from arena.kripke import FuzzyKripke
from fuzzy_ctl.fixpoints import (af_map, ag_map, ax_map, ef_map, eg_map, ex_map, gfp_release, lfp_until,
                                 meta_truth)

GRID = [i / 10 for i in range(11)]


def random_fks(rng, crisp=False):
    n = rng.randint(1, 5)
    states = list(range(n))
    succ = {}
    for s in states:
        targets = rng.sample(states, rng.randint(1, n))
        succ[s] = {t: 1.0 if crisp else rng.choice(GRID[1:]) for t in targets}
    pick = (lambda: float(rng.randint(0, 1))) if crisp else (lambda: rng.choice(GRID))
    phi1 = {s: pick() for s in states}
    phi2 = {s: pick() for s in states}
    return FuzzyKripke(states=states, succ=succ), phi1, phi2


def lassos(fks, start):
    """(path, loop index) for every simple path closed by its first repeated state."""
    out = []
    stack = [[start]]
    while stack:
        path = stack.pop()
        for t in fks.succ[path[-1]]:
            if t in path:
                out.append((path, path.index(t)))
            else:
                stack.append(path + [t])
    return out


def lasso_value(fks, path, loop, phi1, phi2, kind, quantifier):
    """Fixpoint of the one-step recurrence along a single lasso, transition degrees included."""
    n = len(path)
    nxt = [j + 1 if j + 1 < n else loop for j in range(n)]
    r = [fks.degree(path[j], path[nxt[j]]) for j in range(n)]

    def follow(j, z):
        if quantifier == 'E':
            return min(r[j], z[nxt[j]])
        return max(1.0 - r[j], z[nxt[j]])

    z = [0.0 if kind == 'U' else 1.0] * n
    while True:
        if kind == 'U':
            new = [max(phi2[path[j]], min(phi1[path[j]], follow(j, z))) for j in range(n)]
        else:
            new = [min(phi2[path[j]], max(phi1[path[j]], follow(j, z))) for j in range(n)]
        if new == z:
            return z[0]
        z = new


def oracle(fks, phi1, phi2, kind, quantifier):
    pick = max if quantifier == 'E' else min
    return {s: pick(lasso_value(fks, p, loop, phi1, phi2, kind, quantifier) for p, loop in lassos(fks, s))
            for s in fks.states}


@pytest.mark.parametrize('quantifier', ['A', 'E'])
def test_until_and_release_match_lassos(quantifier):
    rng = random.Random(1234 if quantifier == 'A' else 4321)
    for _ in range(200):
        fks, phi1, phi2 = random_fks(rng)
        until = lfp_until(fks, quantifier, phi1, phi2)
        release = gfp_release(fks, quantifier, phi1, phi2)
        expected_u = oracle(fks, phi1, phi2, 'U', quantifier)
        expected_r = oracle(fks, phi1, phi2, 'R', quantifier)
        for s in fks.states:
            assert until[s] == pytest.approx(expected_u[s], abs=1e-12)
            assert release[s] == pytest.approx(expected_r[s], abs=1e-12)


def classical_until(fks, phi1, phi2, quantifier):
    holds = {s for s in fks.states if phi2[s] == 1.0}
    while True:
        grow = set(holds)
        for s in fks.states:
            if phi1[s] != 1.0:
                continue
            succ = fks.succ[s]
            if (quantifier == 'E' and any(t in holds for t in succ)) or \
                    (quantifier == 'A' and all(t in holds for t in succ)):
                grow.add(s)
        if grow == holds:
            return holds
        holds = grow


def classical_globally(fks, phi, quantifier):
    holds = {s for s in fks.states if phi[s] == 1.0}
    while True:
        keep = set()
        for s in holds:
            succ = fks.succ[s]
            if (quantifier == 'E' and any(t in holds for t in succ)) or \
                    (quantifier == 'A' and all(t in holds for t in succ)):
                keep.add(s)
        if keep == holds:
            return holds
        holds = keep


def test_crisp_instances_reduce_to_classical_ctl():
    rng = random.Random(99)
    for _ in range(200):
        fks, phi1, phi2 = random_fks(rng, crisp=True)
        for q in ('A', 'E'):
            assert meta_truth(lfp_until(fks, q, phi1, phi2)) == classical_until(fks, phi1, phi2, q)
        assert meta_truth(eg_map(fks, phi2)) == classical_globally(fks, phi2, 'E')
        assert meta_truth(ag_map(fks, phi2)) == classical_globally(fks, phi2, 'A')
        ones = {s: 1.0 for s in fks.states}
        assert meta_truth(ef_map(fks, phi2)) == classical_until(fks, ones, phi2, 'E')
        assert meta_truth(af_map(fks, phi2)) == classical_until(fks, ones, phi2, 'A')


def test_next_operators():
    fks = FuzzyKripke(states=['a', 'b', 'c'],
                      succ={'a': {'b': 0.6, 'c': 0.3}, 'b': {'b': 1.0}, 'c': {'a': 1.0}})
    phi = {'a': 0.1, 'b': 0.9, 'c': 0.2}
    assert ex_map(fks, phi)['a'] == 0.6
    assert ax_map(fks, phi)['a'] == pytest.approx(0.7)
    assert ax_map(fks, phi)['c'] == 0.1


def test_meta_truth_threshold():
    assert meta_truth({'a': 1.0, 'b': 0.7, 'c': 0.4}, 0.7) == {'a', 'b'}
    assert meta_truth({'a': 1.0, 'b': 0.7}) == {'a'}
