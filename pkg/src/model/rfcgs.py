"""Resource-bounded fuzzy concurrent game structure"""
import itertools
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from utils.errors import DanglingReference, UnavailableAction, UnknownAtom

COMPARATORS = ('<', '<=', '>', '>=', '=')

JointAction = Tuple[str, ...]


@dataclass(frozen=True)
class GuardAtom:
    """Pool entry: a threshold comparison usable as a strategy guard literal."""
    atom: str
    op: str
    threshold: float


@dataclass(frozen=True)
class Rfcgs:
    agents: Tuple[str, ...]
    atoms: Tuple[str, ...]
    actions: Dict[str, Tuple[str, ...]]
    cost: Dict[Tuple[str, str], int]
    resource: Dict[str, int]
    states: Tuple[str, ...]
    initial: str
    labels: Dict[Tuple[str, str], float]
    availability: Dict[Tuple[str, str], Tuple[str, ...]]
    transition: Dict[Tuple[str, JointAction], str]
    guard_atoms: Tuple[GuardAtom, ...] = field(default=())
    _outcome_cache: Dict = field(default_factory=dict, init=False, compare=False, repr=False)

    def label(self, state: str, atom: str) -> float:
        try:
            return self.labels[(state, atom)]
        except KeyError:
            if atom not in self.atoms:
                raise UnknownAtom(f"Unknown atom '{atom}'")
            raise DanglingReference(f"Unknown state '{state}'")

    def available(self, agent: str, state: str) -> Tuple[str, ...]:
        return self.availability.get((agent, state), ())

    def joint_actions(self, state: str) -> List[JointAction]:
        return list(itertools.product(*(self.available(a, state) for a in self.agents)))

    def all_joint_labels(self) -> List[JointAction]:
        """Every joint action over full action sets, in agent order."""
        return list(itertools.product(*(self.actions[a] for a in self.agents)))

    def outcomes(self, state: str, coalition: Sequence[str],
                 choice: Sequence[str]) -> Tuple[Tuple[JointAction, str], ...]:
        """Distinct targets reachable at state when coalition plays choice, one joint action each.

        The joint kept per target is the one latest in all_joint_labels order.
        """
        key = (state, tuple(coalition), tuple(choice))
        hit = self._outcome_cache.get(key)
        if hit is not None:
            return hit
        fixed = dict(zip(coalition, choice))
        per_agent = [(fixed[a],) if a in fixed else self.available(a, state) for a in self.agents]
        rank = {a: {x: i for i, x in enumerate(self.actions[a])} for a in self.agents}
        keep: Dict[str, Tuple[Tuple[int, ...], JointAction]] = {}
        for joint in itertools.product(*per_agent):
            target = self.transition[(state, joint)]
            pos = tuple(rank[a][x] for a, x in zip(self.agents, joint))
            if target not in keep or pos > keep[target][0]:
                keep[target] = (pos, joint)
        out = tuple((joint, target) for target, (_, joint) in keep.items())
        self._outcome_cache[key] = out
        return out

    def successor(self, state: str, joint: Union[Mapping[str, str], Sequence[str]]) -> str:
        if isinstance(joint, Mapping):
            joint = tuple(joint[a] for a in self.agents)
        else:
            joint = tuple(joint)
        for agent, act in zip(self.agents, joint):
            if act not in self.available(agent, state):
                raise UnavailableAction(f"{agent}:{act} not available at {state}")
        return self.transition[(state, joint)]

    def with_atom(self, name: str, degrees: Mapping[str, float]) -> 'Rfcgs':
        """Copy of the model extended by one atom with the given per-state degrees."""
        labels = dict(self.labels)
        for s in self.states:
            labels[(s, name)] = degrees[s]
        return replace(self, atoms=self.atoms + (name,), labels=labels)

    def state_degrees(self, atom: str) -> Dict[str, float]:
        return {s: self.label(s, atom) for s in self.states}


def successor(m: Rfcgs, state: str, joint: Union[Mapping[str, str], Sequence[str]]) -> str:
    return m.successor(state, joint)

