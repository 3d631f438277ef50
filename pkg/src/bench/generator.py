"""Seeded random rfCGS generation for benchmarks and property tests"""
import itertools
import math
import random
from dataclasses import dataclass
from typing import Tuple

from model.rfcgs import GuardAtom, Rfcgs

DENSITIES = ('sparse', 'dense')

BENCH_POOL = (GuardAtom('p', '>=', 0.5), GuardAtom('q', '<', 0.5))


@dataclass(frozen=True)
class BenchSpec:
    states: int
    agents: int = 3
    actions_per_agent: int = 2
    density: str = 'sparse'
    cost_range: Tuple[int, int] = (1, 3)
    resource_range: Tuple[int, int] = (3, 6)
    seed: int = 0

    def __post_init__(self):
        if self.states < 1:
            raise ValueError("BenchSpec needs at least one state")
        if self.density not in DENSITIES:
            raise ValueError(f"density must be one of {DENSITIES}")


def generate_benchmark(spec: BenchSpec) -> Rfcgs:
    rng = random.Random(spec.seed)
    agents = tuple(f"a{i}" for i in range(spec.agents))
    actions = {a: tuple(f"{a}_x{j}" for j in range(spec.actions_per_agent)) for a in agents}
    cost = {(a, x): rng.randint(*spec.cost_range) for a in agents for x in actions[a]}
    resource = {a: rng.randint(*spec.resource_range) for a in agents}
    states = tuple(f"s{i}" for i in range(spec.states))
    atoms = ('p', 'q')
    labels = {(s, p): rng.randint(0, 10) / 10 for s in states for p in atoms}
    availability = {(a, s): actions[a] for a in agents for s in states}

    joints = list(itertools.product(*(actions[a] for a in agents)))
    if spec.density == 'sparse':
        fan_out = min(2, spec.states)
    else:
        # toward half the state space, capped by the joint actions available to reach it
        fan_out = min(max(math.ceil(spec.states / 2), 2), len(joints), spec.states)

    transition = {}
    for s in states:
        targets = rng.sample(states, fan_out)
        order = list(joints)
        rng.shuffle(order)
        for i, joint in enumerate(order):
            # first pass covers every target, the rest is random among them
            target = targets[i] if i < len(targets) else rng.choice(targets)
            transition[(s, joint)] = target

    return Rfcgs(
        agents=agents,
        atoms=atoms,
        actions=actions,
        cost=cost,
        resource=resource,
        states=states,
        initial=states[0],
        labels=labels,
        availability=availability,
        transition=transition,
        guard_atoms=BENCH_POOL,
    )
