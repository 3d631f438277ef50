"""Bounded enumeration of natural strategy candidates"""
import itertools
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from automata.dfa import compile_regex
from automata.regex import DEFAULT_REGEX, GuardRegex, RConcat, RLiteral, RStar, RUnion, size
from formula.guards import GAnd, GCmp, GNot, GOr, GuardExpr, TRUE_GUARD, eval_guard, symbol_count
from model.rfcgs import GuardAtom, Rfcgs
from strategies.natural import (CollectiveStrategy, Member, MemorylessStrategy, RecallRule,
                                RecallStrategy, Rule, static_cost_ok)
from utils.errors import StateBlowup
from utils.logger import setup_logger

logger = setup_logger(__name__)


def pool_literals(pool: Sequence[GuardAtom]) -> List[GCmp]:
    return [GCmp(g.atom, g.op, g.threshold) for g in pool]


def guard_candidates(m: Rfcgs, pool: Sequence[GuardAtom], max_symbols: int,
                     tau_guard: float = 0.5) -> List[GuardExpr]:
    """Non-trivial guards up to max_symbols, one per truth table over the model's states.

    Built level by level in nondecreasing symbol count from pool literals with
    negation, conjunction and disjunction; the first guard of each truth table wins.
    Tautologies and contradictions are dropped (true is the default rule's guard).
    """
    n = len(m.states)
    full = (True,) * n
    empty = (False,) * n
    seen = {full, empty}
    levels: Dict[int, List[Tuple[GuardExpr, Tuple[bool, ...]]]] = {}
    out: List[GuardExpr] = []

    def table_of(g):
        return tuple(eval_guard(m, s, g, tau_guard) for s in m.states)

    def admit(level, g, table):
        if table in seen:
            return
        seen.add(table)
        levels.setdefault(level, []).append((g, table))
        out.append(g)

    for lit in pool_literals(pool):
        if max_symbols >= 1:
            admit(1, lit, table_of(lit))

    for c in range(2, max_symbols + 1):
        for g, table in levels.get(c - 1, []):
            admit(c, GNot(g), tuple(not x for x in table))
        for left_size in range(1, c - 1):
            right_size = c - 1 - left_size
            for (lg, lt), (rg, rt) in itertools.product(levels.get(left_size, []), levels.get(right_size, [])):
                if lg == rg:
                    continue
                admit(c, GAnd(lg, rg), tuple(a and b for a, b in zip(lt, rt)))
                admit(c, GOr(lg, rg), tuple(a or b for a, b in zip(lt, rt)))
    return out


def _member_budget(k: int, n_members: int) -> int:
    # every other member needs at least its default rule
    return k - (n_members - 1)


def _memoryless_members(m: Rfcgs, agent: str, budget: int, metric: str,
                        guards: List[GuardExpr], tau_guard: float) -> List[Tuple[Tuple, MemorylessStrategy]]:
    acts = m.actions[agent]
    act_index = {a: i for i, a in enumerate(acts)}
    # (guard, action) pairs whose action can fire somewhere the guard holds
    tables = {g: [s for s in m.states if eval_guard(m, s, g, tau_guard)] for g in guards}
    pairs = [(gi, ai) for gi, g in enumerate(guards) for ai, a in enumerate(acts)
             if any(a in m.available(agent, s) for s in tables[g])]
    defaults = [a for a in acts if any(a in m.available(agent, s) for s in m.states)]
    guard_cost = [1 if metric == 'rules' else symbol_count(g) for g in guards]

    out = []

    def emit(body):
        for d in defaults:
            if body and acts[body[-1][1]] == d:
                continue
            rules = tuple(Rule(guards[gi], acts[ai]) for gi, ai in body) + (Rule(TRUE_GUARD, d),)
            s = MemorylessStrategy(agent, rules)
            if static_cost_ok(m, s):
                key = tuple(body) + ((-1, act_index[d]),)
                out.append((key, s))

    def extend(body, used_guards, spent):
        emit(body)
        for gi, ai in pairs:
            if gi in used_guards:
                continue
            c = spent + guard_cost[gi]
            if c + 1 <= budget:
                extend(body + [(gi, ai)], used_guards | {gi}, c)

    if budget >= 1:
        extend([], frozenset(), 0)
    return out


def _canonical(members: List[Tuple[Tuple, Member]], metric: str) -> List[Tuple[Tuple, Member]]:
    return sorted(members, key=lambda km: (km[1].complexity(metric), km[0]))


def _combine(per_agent: List[List[Tuple[Tuple, Member]]], k: int, metric: str) -> Iterator[CollectiveStrategy]:
    """Collective profiles by ascending total complexity, then member order."""
    if not per_agent or any(not lst for lst in per_agent):
        return
    by_cost: List[Dict[int, List[Member]]] = []
    for lst in per_agent:
        groups: Dict[int, List[Member]] = {}
        for _, s in lst:
            groups.setdefault(s.complexity(metric), []).append(s)
        by_cost.append(groups)

    n = len(per_agent)
    for total in range(n, k + 1):
        for split in itertools.product(*(sorted(g) for g in by_cost)):
            if sum(split) != total:
                continue
            for combo in itertools.product(*(by_cost[i][c] for i, c in enumerate(split))):
                yield CollectiveStrategy(tuple(combo))


def enumerate_memoryless(m: Rfcgs, coalition: Sequence[str], k: int, b: int = 0, metric: str = 'symbols',
                         pool: Optional[Sequence[GuardAtom]] = None, tau_guard: float = 0.5,
                         max_guard_symbols: int = 2) -> Iterator[CollectiveStrategy]:
    """Memoryless collective candidates with total complexity <= k.

    Rules are only pre-filtered against each agent's resource; the budget b is
    enforced path-wise by the arena, since a rule costlier than b may never fire.
    """
    pool = m.guard_atoms if pool is None else pool
    budget = _member_budget(k, len(coalition))
    if budget < 1:
        return
    cap = budget - 1 if metric == 'symbols' else max_guard_symbols
    guards = guard_candidates(m, pool, cap, tau_guard)
    per_agent = [_canonical(_memoryless_members(m, a, budget, metric, guards, tau_guard), metric)
                 for a in coalition]
    logger.info(f"🧩 {len(guards)} guards, members per agent {[len(x) for x in per_agent]} (k={k}, b={b})")
    yield from _combine(per_agent, k, metric)


def enumerate_regexes(lits: Sequence[GuardExpr], max_size: int) -> List[GuardRegex]:
    """Syntactically distinct regexes over lits and true, by nondecreasing size."""
    levels: Dict[int, List[GuardRegex]] = {1: [RLiteral(TRUE_GUARD)] + [RLiteral(g) for g in lits]}
    for n in range(2, max_size + 1):
        level: List[GuardRegex] = []
        for r in levels.get(n - 1, []):
            if not isinstance(r, RStar):
                level.append(RStar(r))
        for left in range(1, n - 1):
            right = n - 1 - left
            for a, b in itertools.product(levels.get(left, []), levels.get(right, [])):
                level.append(RConcat(a, b))
        for left in range(1, (n - 1) // 2 + 1):
            right = n - 1 - left
            for i, a in enumerate(levels.get(left, [])):
                rs = levels.get(right, [])
                # union is commutative: same-size operands taken once, in index order
                start = i + 1 if left == right else 0
                for b in rs[start:]:
                    level.append(RUnion(a, b))
        levels[n] = level
    return [r for n in sorted(levels) for r in levels[n] if r != DEFAULT_REGEX]


def _recall_members(m: Rfcgs, agent: str, budget: int, metric: str,
                    regexes: List[GuardRegex]) -> List[Tuple[Tuple, RecallStrategy]]:
    acts = m.actions[agent]
    act_index = {a: i for i, a in enumerate(acts)}
    costs = [1 if metric == 'rules' else size(r) for r in regexes]
    out = []

    def emit(body):
        for d in acts:
            if body and acts[body[-1][1]] == d:
                continue
            rules = tuple(RecallRule(regexes[ri], acts[ai]) for ri, ai in body) + (RecallRule(DEFAULT_REGEX, d),)
            s = RecallStrategy(agent, rules)
            if static_cost_ok(m, s):
                out.append((tuple(body) + ((-1, act_index[d]),), s))

    def extend(body, used, spent):
        emit(body)
        for ri in range(len(regexes)):
            if ri in used:
                continue
            c = spent + costs[ri]
            if c + 1 > budget:
                continue
            for ai in range(len(acts)):
                extend(body + [(ri, ai)], used | {ri}, c)

    if budget >= 1:
        extend([], frozenset(), 0)
    return out


def enumerate_recall(m: Rfcgs, coalition: Sequence[str], k: int, b: int = 0, metric: str = 'symbols',
                     pool: Optional[Sequence[GuardAtom]] = None, tau_guard: float = 0.5,
                     max_guard_symbols: int = 2, max_regex_size: int = 3) -> Iterator[CollectiveStrategy]:
    pool = m.guard_atoms if pool is None else pool
    budget = _member_budget(k, len(coalition))
    if budget < 1:
        return
    lits = guard_candidates(m, pool, max_guard_symbols, tau_guard)
    cap = min(max_regex_size, budget - 1) if metric == 'symbols' else max_regex_size
    regexes = []
    for r in enumerate_regexes(lits, cap):
        try:
            compile_regex(r)
        except StateBlowup:
            logger.warning(f"⚠️ Skipping regex of size {size(r)}: DFA bound exceeded")
            continue
        regexes.append(r)
    per_agent = [_canonical(_recall_members(m, a, budget, metric, regexes), metric) for a in coalition]
    logger.info(f"🧩 {len(regexes)} regexes, members per agent {[len(x) for x in per_agent]} (k={k}, b={b})")
    yield from _combine(per_agent, k, metric)
