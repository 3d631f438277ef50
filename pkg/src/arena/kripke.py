"""Fuzzy Kripke abstraction of an arena"""
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Mapping

from arena.arena import EXHAUSTED, PrunedArena

MODES = ('crisp', 'labelled')


@dataclass
class FuzzyKripke:
    states: List[Hashable]
    # R: succ[s][t] in (0,1]; absent pairs have degree 0
    succ: Dict[Hashable, Dict[Hashable, float]]
    valuation: Dict[str, Dict[Hashable, float]] = field(default_factory=dict)
    initial: List[Hashable] = field(default_factory=list)

    def degree(self, s, t) -> float:
        return self.succ.get(s, {}).get(t, 0.0)

    def values(self) -> set:
        """Every R, 1-R and V degree, plus 0 and 1."""
        out = {0.0, 1.0}
        for row in self.succ.values():
            for r in row.values():
                out.add(r)
                out.add(1.0 - r)
        for vmap in self.valuation.values():
            out.update(vmap.values())
        return out


def to_fuzzy_kripke(arena: PrunedArena, mode: str = 'crisp', with_valuation: bool = True) -> FuzzyKripke:
    m = arena.m
    labels = m.all_joint_labels()
    index = {j: i + 1 for i, j in enumerate(labels)}
    scale = len(labels) + 1

    succ: Dict = {}
    for c in arena.configs:
        row: Dict = {}
        for joint, t in arena.edges[c]:
            if mode == 'crisp' or joint is None:
                r = 1.0
            else:
                r = index[joint] / scale
            # parallel edges merge by max
            if r > row.get(t, 0.0):
                row[t] = r
        succ[c] = row

    valuation = {} if not with_valuation else {
        p: {c: (0.0 if c == EXHAUSTED else m.labels[(c.state, p)]) for c in arena.configs}
        for p in m.atoms
    }
    return FuzzyKripke(
        states=list(arena.configs),
        succ=succ,
        valuation=valuation,
        initial=[arena.initial[m.initial]] if m.initial in arena.initial else [],
    )


def lift(arena: PrunedArena, degrees: Mapping[str, float]) -> Dict:
    """Model-state degree map to configuration degrees; the sink gets 0."""
    return {c: (0.0 if c == EXHAUSTED else degrees[c.state]) for c in arena.configs}


def project(arena: PrunedArena, degrees: Mapping) -> Dict[str, float]:
    """Configuration degrees back to model states via each state's initial configuration."""
    return {s: degrees[c] for s, c in arena.initial.items()}
