"""Brute-force lasso oracle for strategic subformulas"""
import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from automata.dfa import compile_regex, dfa_step
from engine.checker import state_degrees
from engine.config import CheckConfig
from formula.ast import Next, Strategic, Until, path_operands
from formula.guards import eval_guard
from model.rfcgs import Rfcgs
from strategies.enumeration import enumerate_memoryless, enumerate_recall
from strategies.natural import CollectiveStrategy, MemorylessStrategy
from utils.errors import LimitExceeded

SINK = ('<sink>',)


@dataclass
class OracleLimits:
    max_states: int = 6
    max_candidates: int = 10 ** 5
    max_paths: int = 200000


def _coalition_actions(m: Rfcgs, strategy: CollectiveStrategy, state: str, memory: Tuple, tau: float):
    acts = []
    offset = 0
    for s in strategy.members:
        avail = m.available(s.agent, state)
        chosen = None
        for i, rule in enumerate(s.rules):
            if isinstance(s, MemorylessStrategy):
                fires = eval_guard(m, state, rule.guard, tau)
            else:
                dfa = compile_regex(rule.regex)
                fires = memory[offset + i] in dfa.accepting
            if fires and rule.action in avail:
                chosen = rule.action
                break
        if not isinstance(s, MemorylessStrategy):
            offset += len(s.rules)
        if chosen is None:
            return None
        acts.append(chosen)
    return acts


def _recall_memory(m: Rfcgs, strategy: CollectiveStrategy, memory: Optional[Tuple], state: str, tau: float):
    regexes = [r.regex for s in strategy.members if not isinstance(s, MemorylessStrategy) for r in s.rules]
    if not regexes:
        return ()
    out = []
    for i, r in enumerate(regexes):
        dfa = compile_regex(r)
        q = dfa.initial if memory is None else memory[i]
        out.append(dfa_step(m, dfa, q, state, tau))
    return tuple(out)


def _successors(m: Rfcgs, strategy: CollectiveStrategy, node, tau: float):
    if node == SINK:
        return [SINK]
    state, budget, res, memory = node
    acts = _coalition_actions(m, strategy, state, memory, tau)
    if acts is None:
        return [SINK]
    fixed = dict(zip(strategy.coalition, acts))
    spend = [m.cost[(a, fixed[a])] for a in strategy.coalition]
    nb = budget - sum(spend)
    nres = tuple(r - x for r, x in zip(res, spend))
    if nb < 0 or min(nres, default=0) < 0:
        return [SINK]
    out = []
    choices = [(fixed[a],) if a in fixed else m.available(a, state) for a in m.agents]
    for joint in itertools.product(*choices):
        t = m.transition[(state, joint)]
        out.append((t, nb, nres, _recall_memory(m, strategy, memory, t, tau)))
    return out


def _lassos(m, strategy, start, tau, limit) -> List[Tuple[List, int]]:
    """Every strategy-consistent path from start up to its first repeated node."""
    out = []
    stack = [([start], {start: 0})]
    while stack:
        path, pos = stack.pop()
        for nxt in _successors(m, strategy, path[-1], tau):
            if nxt in pos:
                out.append((path, pos[nxt]))
                if len(out) > limit:
                    raise LimitExceeded(f"More than {limit} lassos")
            else:
                npos = dict(pos)
                npos[nxt] = len(path)
                stack.append((path + [nxt], npos))
    return out


def _path_value(kind, vals1: Sequence[float], vals2: Sequence[float], loop: int) -> float:
    """Iterate the one-step recurrence of the path operator on a lasso until it stabilizes."""
    n = len(vals1)
    if kind is Next:
        return vals1[1] if n > 1 else vals1[loop]
    nxt = lambda j: j + 1 if j + 1 < n else loop
    if kind is Until:
        z = [0.0] * n
        combine = lambda a, b, x: max(b, min(a, x))
    else:
        z = [1.0] * n
        combine = lambda a, b, x: min(b, max(a, x))
    while True:
        new = [combine(vals1[j], vals2[j], z[nxt(j)]) for j in range(n)]
        if new == z:
            return z[0]
        z = new


def brute_force_oracle(m: Rfcgs, node: Strategic, cfg: Optional[CheckConfig] = None,
                       limits: Optional[OracleLimits] = None, classical: bool = False,
                       candidates: Optional[List[CollectiveStrategy]] = None) -> Dict[str, float]:
    """Degrees of a flat strategic formula by explicit path enumeration.

    Operands must be atoms, comparisons or connectives over them. With
    classical=True every operand degree is first rounded to 0/1 at 0.5.
    """
    cfg = cfg or CheckConfig()
    limits = limits or OracleLimits()
    if len(m.states) > limits.max_states:
        raise LimitExceeded(f"{len(m.states)} states > {limits.max_states}")

    if candidates is None:
        enum = enumerate_recall if cfg.mode == 'recall' else enumerate_memoryless
        kwargs = dict(pool=m.guard_atoms, tau_guard=cfg.tau_guard, max_guard_symbols=cfg.max_guard_symbols)
        if cfg.mode == 'recall':
            kwargs['max_regex_size'] = cfg.max_regex_size
        candidates = []
        for c in enum(m, node.coalition, node.k, node.b, cfg.metric, **kwargs):
            candidates.append(c)
            if len(candidates) > limits.max_candidates:
                raise LimitExceeded(f"More than {limits.max_candidates} candidates")

    maps = [state_degrees(m, op, cfg.tau_guard) for op in path_operands(node.path)]
    if classical:
        maps = [{s: (1.0 if v >= 0.5 else 0.0) for s, v in mp.items()} for mp in maps]
    if len(maps) == 1:
        maps = [maps[0], maps[0]]

    def val(mp, n):
        return 0.0 if n == SINK else mp[n[0]]

    kind = type(node.path)
    result = {s: 0.0 for s in m.states}
    for cand in candidates:
        for s in m.states:
            res = tuple(m.resource[a] for a in cand.coalition)
            start = (s, node.b, res, _recall_memory(m, cand, None, s, cfg.tau_guard))
            worst = 1.0
            for path, loop in _lassos(m, cand, start, cfg.tau_guard, limits.max_paths):
                v = _path_value(kind, [val(maps[0], n) for n in path], [val(maps[1], n) for n in path], loop)
                worst = min(worst, v)
            result[s] = max(result[s], worst)
    return result
