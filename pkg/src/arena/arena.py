"""Strategy-restricted, budget-tracking product of a model"""
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Set, Tuple

from automata.dfa import GuardDfa, dfa_step
from model.rfcgs import JointAction, Rfcgs
from strategies.natural import (CollectiveStrategy, MemorylessStrategy, RecallStrategy,
                                match_memoryless, match_recall_states)
from utils.errors import InvalidStrategy, NoMatch
from utils.logger import setup_logger

logger = setup_logger(__name__)


class Config(NamedTuple):
    state: str
    budget: int
    resources: Tuple[int, ...]
    memory: Tuple[int, ...] = ()


EXHAUSTED = Config('__exhausted__', -1, (), ())

# edge label of a stuck configuration's move into the sink
STUCK = None


class ConfigSpace:
    """Successor relation of configurations under a fixed collective strategy."""

    def __init__(self, m: Rfcgs, strategy: CollectiveStrategy, b: int,
                 tau_guard: float = 0.5, strict: bool = False):
        self.m = m
        self.strategy = strategy
        self.b = b
        self.tau_guard = tau_guard
        self.strict = strict
        self.coalition = strategy.coalition
        missing = [a for a in self.coalition if a not in m.agents]
        if missing:
            raise InvalidStrategy(f"Coalition agents not in model: {missing}")
        self.recall = any(isinstance(s, RecallStrategy) for s in strategy.members)
        self.dfas: List[Tuple[GuardDfa, ...]] = [
            s.dfas() if isinstance(s, RecallStrategy) else () for s in strategy.members]
        self.stuck = 0
        self._choice_cache: Dict[Tuple, Optional[Tuple[str, ...]]] = {}

    def _advance(self, memory: Tuple[int, ...], state: str) -> Tuple[int, ...]:
        out = []
        i = 0
        for dfas in self.dfas:
            for dfa in dfas:
                out.append(dfa_step(self.m, dfa, memory[i] if memory else dfa.initial, state, self.tau_guard))
                i += 1
        return tuple(out)

    def initial(self, state: str) -> Config:
        res = tuple(self.m.resource[a] for a in self.coalition)
        memory = self._advance((), state) if self.recall else ()
        return Config(state, self.b, res, memory)

    def initial_configs(self) -> Dict[str, Config]:
        return {s: self.initial(s) for s in self.m.states}

    def coalition_choice(self, c: Config) -> Optional[Tuple[str, ...]]:
        """Prescribed coalition actions at c, or None when some member has no applicable rule."""
        key = (c.state, c.memory)
        if key in self._choice_cache:
            return self._choice_cache[key]
        acts = []
        offset = 0
        try:
            for s, dfas in zip(self.strategy.members, self.dfas):
                if isinstance(s, MemorylessStrategy):
                    i = match_memoryless(self.m, s, c.state, self.tau_guard)
                else:
                    i = match_recall_states(self.m, s, c.memory[offset:offset + len(dfas)], c.state, dfas)
                    offset += len(dfas)
                acts.append(s.rules[i].action)
            choice = tuple(acts)
        except NoMatch as e:
            if self.strict:
                raise InvalidStrategy(str(e))
            choice = None
        self._choice_cache[key] = choice
        return choice

    def successors(self, c: Config) -> List[Tuple[Optional[JointAction], Config]]:
        if c == EXHAUSTED:
            return [(STUCK, EXHAUSTED)]
        choice = self.coalition_choice(c)
        if choice is None:
            self.stuck += 1
            return [(STUCK, EXHAUSTED)]

        m = self.m
        costs = [m.cost[(a, x)] for a, x in zip(self.coalition, choice)]
        budget = c.budget - sum(costs)
        res = tuple(r - x for r, x in zip(c.resources, costs))
        broke = budget < 0 or any(r < 0 for r in res)

        # opponent joints leading to the same target collapse into one edge
        grouped = m.outcomes(c.state, self.coalition, choice)
        if broke:
            return [(max(grouped, key=lambda e: self._rank(e[0]), default=(STUCK, None))[0], EXHAUSTED)]
        out = []
        for joint, target in grouped:
            memory = self._advance(c.memory, target) if self.recall else ()
            out.append((joint, Config(target, budget, res, memory)))
        return out

    def _rank(self, joint: JointAction) -> Tuple[int, ...]:
        return tuple(self.m.actions[a].index(x) for a, x in zip(self.m.agents, joint))


@dataclass
class PrunedArena:
    m: Rfcgs
    strategy: CollectiveStrategy
    b: int
    configs: List[Config] = field(default_factory=list)
    edges: Dict[Config, List[Tuple[Optional[JointAction], Config]]] = field(default_factory=dict)
    initial: Dict[str, Config] = field(default_factory=dict)
    stuck: int = 0

    @property
    def sink(self) -> Config:
        return EXHAUSTED

    def size(self) -> int:
        return len(self.configs)

    def config_bound(self) -> int:
        """|St| * (b+1) * prod(res+1) * DFA product, plus the sink."""
        bound = len(self.m.states) * (self.b + 1)
        for a in self.strategy.coalition:
            bound *= self.m.resource[a] + 1
        for s in self.strategy.members:
            if isinstance(s, RecallStrategy):
                for dfa in s.dfas():
                    bound *= dfa.num_states
        return bound + 1

    def spent(self, c: Config) -> int:
        return self.b - c.budget


def _explore(space: ConfigSpace, starts: Iterable[Config]) -> PrunedArena:
    arena = PrunedArena(space.m, space.strategy, space.b)
    queue = deque()
    seen: Set[Config] = set()
    for c in starts:
        if c not in seen:
            seen.add(c)
            queue.append(c)
    while queue:
        c = queue.popleft()
        arena.configs.append(c)
        succ = space.successors(c)
        arena.edges[c] = succ
        for _, t in succ:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    if EXHAUSTED not in arena.edges:
        arena.configs.append(EXHAUSTED)
        arena.edges[EXHAUSTED] = [(STUCK, EXHAUSTED)]
    arena.stuck = space.stuck
    return arena


def build_arena(m: Rfcgs, strategy: CollectiveStrategy, b: int,
                tau_guard: float = 0.5, strict: bool = False) -> PrunedArena:
    space = ConfigSpace(m, strategy, b, tau_guard, strict)
    initial = space.initial_configs()
    arena = _explore(space, initial.values())
    arena.initial = initial
    logger.debug(f"🗺️ Arena: {arena.size()} configurations, {arena.stuck} stuck")
    return arena


def build_arena_memoryless(m: Rfcgs, strategy: CollectiveStrategy, b: int,
                           tau_guard: float = 0.5, strict: bool = False) -> PrunedArena:
    if any(not isinstance(s, MemorylessStrategy) for s in strategy.members):
        raise InvalidStrategy("Memoryless arena needs memoryless members")
    return build_arena(m, strategy, b, tau_guard, strict)


def build_arena_recall(m: Rfcgs, strategy: CollectiveStrategy, b: int,
                       tau_guard: float = 0.5, strict: bool = False) -> PrunedArena:
    if any(not isinstance(s, RecallStrategy) for s in strategy.members):
        raise InvalidStrategy("Recall arena needs recall members")
    return build_arena(m, strategy, b, tau_guard, strict)


def objective_cost(arena: PrunedArena, start: Config, is_target) -> Optional[int]:
    """Largest coalition spend at which a target configuration is first reached from start."""
    best = None
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        if c != EXHAUSTED and is_target(c):
            spent = arena.spent(c)
            best = spent if best is None else max(best, spent)
            continue
        for _, t in arena.edges.get(c, ()):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return best


def arena_to_dict(arena: PrunedArena) -> dict:
    def name(c: Config) -> str:
        if c == EXHAUSTED:
            return 'exhausted'
        mem = f"|{','.join(map(str, c.memory))}" if c.memory else ''
        return f"{c.state}|b={c.budget}|r={','.join(map(str, c.resources))}{mem}"

    return {
        'coalition': list(arena.strategy.coalition),
        'budget': arena.b,
        'initial': {s: name(c) for s, c in arena.initial.items()},
        'configurations': [name(c) for c in arena.configs],
        'edges': [
            {'from': name(c), 'joint': list(j) if j is not None else None, 'to': name(t)}
            for c in arena.configs for j, t in arena.edges[c]
        ],
        'stuck': arena.stuck,
    }
