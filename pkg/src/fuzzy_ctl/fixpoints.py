"""Fuzzy CTL operators over fuzzy Kripke structures (min/max/1-x)"""
from typing import Dict, Hashable, Mapping, Set

from arena.kripke import FuzzyKripke
from utils.errors import NonConvergence
from utils.logger import setup_logger

logger = setup_logger(__name__)

DegreeMap = Dict[Hashable, float]


def ex_map(fks: FuzzyKripke, phi: Mapping) -> DegreeMap:
    out = {}
    for s in fks.states:
        best = 0.0
        for t, r in fks.succ.get(s, {}).items():
            v = min(r, phi[t])
            if v > best:
                best = v
        out[s] = best
    return out


def ax_map(fks: FuzzyKripke, phi: Mapping) -> DegreeMap:
    # Kleene-Dienes: min over successors of max(1 - R, phi)
    out = {}
    for s in fks.states:
        worst = 1.0
        for t, r in fks.succ.get(s, {}).items():
            v = max(1.0 - r, phi[t])
            if v < worst:
                worst = v
        out[s] = worst
    return out


def _step_for(quantifier: str):
    if quantifier == 'E':
        return ex_map
    if quantifier == 'A':
        return ax_map
    raise ValueError(f"Unknown path quantifier '{quantifier}'")


def _iteration_limit(fks: FuzzyKripke, *maps: Mapping) -> int:
    values = fks.values()
    for m in maps:
        values.update(m.values())
    return max(1, len(fks.states) * len(values)) + 1


def _fixpoint(fks, quantifier, phi1, phi2, start, combine, stats=None) -> DegreeMap:
    step = _step_for(quantifier)
    limit = _iteration_limit(fks, phi1, phi2)
    z = {s: start for s in fks.states}
    for _ in range(limit):
        nxt = step(fks, z)
        new = {s: combine(phi1[s], phi2[s], nxt[s]) for s in fks.states}
        if stats is not None:
            stats.fixpoint_iterations += 1
        if new == z:
            return z
        z = new
    raise NonConvergence(f"No fixpoint after {limit} iterations")


def lfp_until(fks: FuzzyKripke, quantifier: str, phi1: Mapping, phi2: Mapping, stats=None) -> DegreeMap:
    """Least fixpoint of Z = max(phi2, min(phi1, QX Z))."""
    return _fixpoint(fks, quantifier, phi1, phi2, 0.0,
                     lambda a, b, x: max(b, min(a, x)), stats)


def gfp_release(fks: FuzzyKripke, quantifier: str, phi1: Mapping, phi2: Mapping, stats=None) -> DegreeMap:
    """Greatest fixpoint of Z = min(phi2, max(phi1, QX Z))."""
    return _fixpoint(fks, quantifier, phi1, phi2, 1.0,
                     lambda a, b, x: min(b, max(a, x)), stats)


def _const(fks, value):
    return {s: value for s in fks.states}


def ef_map(fks, phi, stats=None):
    return lfp_until(fks, 'E', _const(fks, 1.0), phi, stats)


def af_map(fks, phi, stats=None):
    return lfp_until(fks, 'A', _const(fks, 1.0), phi, stats)


def eg_map(fks, phi, stats=None):
    return gfp_release(fks, 'E', _const(fks, 0.0), phi, stats)


def ag_map(fks, phi, stats=None):
    return gfp_release(fks, 'A', _const(fks, 0.0), phi, stats)


def meta_truth(degrees: Mapping, tau_true: float = 1.0) -> Set:
    return {s for s, v in degrees.items() if v >= tau_true}
