"""Structural checks for rfCGS instances"""
from dataclasses import dataclass
from typing import List, Tuple

from model.rfcgs import COMPARATORS, Rfcgs


@dataclass(frozen=True)
class Violation:
    kind: str
    element: Tuple
    message: str

    def __str__(self):
        return f"{self.kind}{self.element}: {self.message}"


def validate(m: Rfcgs) -> List[Violation]:
    out: List[Violation] = []
    states = set(m.states)
    atoms = set(m.atoms)

    if m.initial not in states:
        out.append(Violation('DanglingReference', (m.initial,), 'initial state is not declared'))

    for agent in m.agents:
        if agent not in m.actions or not m.actions[agent]:
            out.append(Violation('DanglingReference', (agent,), 'agent declares no actions'))
        if m.resource.get(agent, 0) < 0 or not isinstance(m.resource.get(agent, 0), int):
            out.append(Violation('NegativeResource', (agent,), 'resource must be a non-negative integer'))
        for act in m.actions.get(agent, ()):
            c = m.cost.get((agent, act))
            if c is None:
                out.append(Violation('DanglingReference', (agent, act), 'action has no cost'))
            elif not isinstance(c, int) or c < 0:
                out.append(Violation('NegativeCost', (agent, act), 'cost must be a non-negative integer'))

    for (state, atom), degree in m.labels.items():
        if state not in states:
            out.append(Violation('DanglingReference', (state, atom), 'label on unknown state'))
        elif atom not in atoms:
            out.append(Violation('DanglingReference', (state, atom), 'label on unknown atom'))
        elif not 0.0 <= degree <= 1.0:
            out.append(Violation('DegreeRange', (state, atom), f'degree {degree} outside [0,1]'))
    for s in m.states:
        for p in m.atoms:
            if (s, p) not in m.labels:
                out.append(Violation('MissingLabel', (s, p), 'label is not defined'))

    seen = set()
    for g in m.guard_atoms:
        key = (g.atom, g.op, g.threshold)
        if g.atom not in atoms:
            out.append(Violation('DanglingReference', key, 'guard atom references unknown atom'))
        if g.op not in COMPARATORS:
            out.append(Violation('SchemaError', key, f'unknown comparator {g.op}'))
        if not 0.0 <= g.threshold <= 1.0:
            out.append(Violation('DegreeRange', key, 'threshold outside [0,1]'))
        if key in seen:
            out.append(Violation('DuplicateGuardAtom', key, 'pool entry repeated'))
        seen.add(key)

    for (agent, state), acts in m.availability.items():
        if agent not in m.actions or state not in states:
            out.append(Violation('DanglingReference', (agent, state), 'availability for unknown agent or state'))
            continue
        for act in acts:
            if act not in m.actions[agent]:
                out.append(Violation('DanglingReference', (agent, state, act), 'unknown action'))

    for s in m.states:
        empty = False
        for agent in m.agents:
            if not m.available(agent, s):
                out.append(Violation('EmptyAvailability', (agent, s), 'no available action'))
                empty = True
        if empty:
            continue
        for joint in m.joint_actions(s):
            if (s, joint) not in m.transition:
                out.append(Violation('PartialTransition', (s, joint), 'available joint action has no target'))

    for (s, joint), target in m.transition.items():
        if s not in states:
            out.append(Violation('DanglingReference', (s, joint), 'transition from unknown state'))
            continue
        if target not in states:
            out.append(Violation('DanglingReference', (s, joint, target), 'transition to unknown state'))
        if len(joint) != len(m.agents) or any(
                act not in m.available(agent, s) for agent, act in zip(m.agents, joint)):
            out.append(Violation('ExtraTransition', (s, joint), 'transition on an unavailable joint action'))

    return out
