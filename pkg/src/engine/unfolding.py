"""Bounded-depth unfolding of recall executions"""
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

from arena.arena import EXHAUSTED, Config, ConfigSpace
from formula.ast import Next, PathNode, Until


@dataclass
class UnfoldTrace:
    max_depth: int = 0
    truncated: bool = False
    nodes: int = 0


def _value(degrees: Mapping[str, float], c: Config) -> float:
    return 0.0 if c == EXHAUSTED else degrees[c.state]


def _dominated(explored: Dict[Config, List[Tuple[float, float]]], c: Config, acc: float, run: float) -> bool:
    for a0, r0 in explored.get(c, ()):
        if a0 <= acc and r0 <= run:
            return True
    explored.setdefault(c, []).append((acc, run))
    return False


def unfold_next(space: ConfigSpace, start: Config, phi: Mapping[str, float], trace: UnfoldTrace) -> float:
    trace.max_depth = max(trace.max_depth, 1)
    return min(_value(phi, t) for _, t in space.successors(start))


def unfold_until(space: ConfigSpace, start: Config, phi1: Mapping[str, float], phi2: Mapping[str, float],
                 depth: int, trace: UnfoldTrace) -> float:
    """min over branches of max_j min(phi2 at j, min phi1 before j).

    A branch closes when its configuration repeats or its value can no longer
    change; a branch cut at the depth limit counts as still progressing.
    """
    overall = 1.0
    explored: Dict[Config, List[Tuple[float, float]]] = {}
    queue = deque([(start, 0, frozenset(), 0.0, 1.0)])
    while queue and overall > 0.0:
        c, d, seen, acc, run = queue.popleft()
        trace.nodes += 1
        trace.max_depth = max(trace.max_depth, d)
        if c in seen:
            overall = min(overall, acc)
            continue
        if _dominated(explored, c, acc, run):
            continue
        acc = max(acc, min(_value(phi2, c), run))
        run = min(run, _value(phi1, c))
        if acc >= overall:
            continue
        if run <= acc:
            overall = min(overall, acc)
            continue
        if d >= depth:
            trace.truncated = True
            overall = min(overall, max(acc, run))
            continue
        branch = seen | {c}
        for _, t in space.successors(c):
            queue.append((t, d + 1, branch, acc, run))
    return overall


def unfold_release(space: ConfigSpace, start: Config, phi1: Mapping[str, float], phi2: Mapping[str, float],
                   depth: int, trace: UnfoldTrace) -> float:
    """min over branches of min_j max(phi2 at j, max phi1 before j)."""
    overall = 1.0
    explored: Dict[Config, List[Tuple[float, float]]] = {}
    queue = deque([(start, 0, frozenset(), 1.0, 0.0)])
    while queue and overall > 0.0:
        c, d, seen, acc, run = queue.popleft()
        trace.nodes += 1
        trace.max_depth = max(trace.max_depth, d)
        if c in seen:
            overall = min(overall, acc)
            continue
        if _dominated(explored, c, acc, run):
            continue
        acc = min(acc, max(_value(phi2, c), run))
        run = max(run, _value(phi1, c))
        if min(acc, run) >= overall:
            continue
        if run >= acc:
            overall = min(overall, acc)
            continue
        if d >= depth:
            trace.truncated = True
            overall = min(overall, acc)
            continue
        branch = seen | {c}
        for _, t in space.successors(c):
            queue.append((t, d + 1, branch, acc, run))
    return overall


def unfold_degree(space: ConfigSpace, start: Config, path: PathNode, maps: Tuple[Mapping[str, float], ...],
                  depth: int, trace: UnfoldTrace) -> float:
    if isinstance(path, Next):
        return unfold_next(space, start, maps[0], trace)
    if isinstance(path, Until):
        return unfold_until(space, start, maps[0], maps[1], depth, trace)
    return unfold_release(space, start, maps[0], maps[1], depth, trace)
