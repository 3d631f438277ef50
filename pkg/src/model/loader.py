"""Model file (JSON) loading and serialization"""
import itertools
import json
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from model.rfcgs import GuardAtom, Rfcgs
from model.validation import validate
from utils.errors import (DanglingReference, DegreeRange, PartialTransition, SchemaError,
                          UnavailableAction)
from utils.logger import setup_logger

logger = setup_logger(__name__)


class ActionSpec(BaseModel):
    model_config = ConfigDict(extra='forbid')
    name: str
    cost: int = 0


class AgentSpec(BaseModel):
    model_config = ConfigDict(extra='forbid')
    name: str
    actions: List[ActionSpec]
    resource: int = 0


class GuardAtomSpec(BaseModel):
    model_config = ConfigDict(extra='forbid')
    atom: str
    op: str
    threshold: float


class StateSpec(BaseModel):
    model_config = ConfigDict(extra='forbid')
    name: str
    labels: Dict[str, float] = Field(default_factory=dict)


class TransitionSpec(BaseModel):
    model_config = ConfigDict(extra='forbid', populate_by_name=True)
    source: str = Field(alias='from')
    actions: Dict[str, str] = Field(default_factory=dict)
    to: str


class ModelFile(BaseModel):
    model_config = ConfigDict(extra='forbid')
    agents: List[AgentSpec]
    atoms: List[str]
    guard_atoms: List[GuardAtomSpec] = Field(default_factory=list)
    states: List[StateSpec]
    initial: str
    availability: Optional[Dict[str, Dict[str, List[str]]]] = None
    transitions: List[TransitionSpec] = Field(default_factory=list)
    default_to: Dict[str, str] = Field(default_factory=dict)


# validate() kinds that abort loading, mapped to the raised error
_RAISES = {
    'DegreeRange': DegreeRange,
    'PartialTransition': PartialTransition,
    'DanglingReference': DanglingReference,
    'ExtraTransition': UnavailableAction,
}


def _build(spec: ModelFile) -> Rfcgs:
    agents = tuple(a.name for a in spec.agents)
    if len(set(agents)) != len(agents):
        raise SchemaError("Duplicate agent names")
    actions = {a.name: tuple(x.name for x in a.actions) for a in spec.agents}
    cost = {(a.name, x.name): x.cost for a in spec.agents for x in a.actions}
    resource = {a.name: a.resource for a in spec.agents}
    states = tuple(s.name for s in spec.states)
    if len(set(states)) != len(states):
        raise SchemaError("Duplicate state names")
    state_set = set(states)

    labels = {}
    for s in spec.states:
        for p in spec.atoms:
            labels[(s.name, p)] = 0.0
        for p, degree in s.labels.items():
            labels[(s.name, p)] = degree

    availability = {}
    for s in states:
        for a in agents:
            availability[(a, s)] = actions[a]
    for s, per_agent in (spec.availability or {}).items():
        for a, acts in per_agent.items():
            availability[(a, s)] = tuple(acts)

    transition = {}

    def assign(source, joint, target):
        prev = transition.get((source, joint))
        if prev is not None and prev != target:
            raise SchemaError(f"Joint action {joint} at {source} has two targets: {prev}, {target}")
        transition[(source, joint)] = target

    for t in spec.transitions:
        if t.source not in state_set:
            raise DanglingReference(f"Transition from unknown state '{t.source}'")
        for a, act in t.actions.items():
            if a not in actions:
                raise DanglingReference(f"Transition names unknown agent '{a}'")
            if act not in actions[a]:
                raise DanglingReference(f"Transition names unknown action '{a}:{act}'")
            if act not in availability[(a, t.source)]:
                raise UnavailableAction(f"{a}:{act} not available at {t.source}")
        # agents omitted from the entry range over their available actions
        choices = [(t.actions[a],) if a in t.actions else availability[(a, t.source)] for a in agents]
        for joint in itertools.product(*choices):
            assign(t.source, joint, t.to)

    for source, target in spec.default_to.items():
        if source not in state_set:
            raise DanglingReference(f"default_to on unknown state '{source}'")
        choices = [availability[(a, source)] for a in agents]
        for joint in itertools.product(*choices):
            transition.setdefault((source, joint), target)

    guard_atoms = tuple(GuardAtom(g.atom, g.op, g.threshold) for g in spec.guard_atoms)
    return Rfcgs(
        agents=agents,
        atoms=tuple(spec.atoms),
        actions=actions,
        cost=cost,
        resource=resource,
        states=states,
        initial=spec.initial,
        labels=labels,
        availability=availability,
        transition=transition,
        guard_atoms=guard_atoms,
    )


def load_model(text: str) -> Rfcgs:
    try:
        spec = ModelFile.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise SchemaError(f"Malformed JSON: {e}")
    except ValidationError as e:
        raise SchemaError(f"Schema violation: {e.errors()[0]['loc']} {e.errors()[0]['msg']}")

    m = _build(spec)
    violations = validate(m)
    if violations:
        first = violations[0]
        raise _RAISES.get(first.kind, SchemaError)(str(first))
    logger.info(f"📦 Loaded model: {len(m.states)} states, {len(m.agents)} agents")
    return m


def load_model_file(path: Union[str, Path]) -> Rfcgs:
    return load_model(Path(path).read_text())


def serialize(m: Rfcgs) -> dict:
    transitions = []
    for (source, joint), target in m.transition.items():
        transitions.append({
            'from': source,
            'actions': dict(zip(m.agents, joint)),
            'to': target,
        })
    return {
        'agents': [
            {
                'name': a,
                'actions': [{'name': x, 'cost': m.cost[(a, x)]} for x in m.actions[a]],
                'resource': m.resource[a],
            }
            for a in m.agents
        ],
        'atoms': list(m.atoms),
        'guard_atoms': [{'atom': g.atom, 'op': g.op, 'threshold': g.threshold} for g in m.guard_atoms],
        'states': [{'name': s, 'labels': {p: m.labels[(s, p)] for p in m.atoms}} for s in m.states],
        'initial': m.initial,
        'availability': {s: {a: list(m.available(a, s)) for a in m.agents} for s in m.states},
        'transitions': transitions,
    }


def dump_model(m: Rfcgs, path: Union[str, Path]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(serialize(m), indent=2))
    logger.info(f"💾 Wrote model: {path}")
