"""Natural strategies: ordered guarded-action rules"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from automata.dfa import GuardDfa, compile_regex, dfa_step
from automata.regex import DEFAULT_REGEX, GuardRegex, size
from formula.guards import GTrue, GuardExpr, eval_guard, symbol_count
from formula.parser import guard_to_text, regex_to_text
from model.rfcgs import Rfcgs
from utils.errors import InvalidStrategy, NoMatch

METRICS = ('symbols', 'rules')


@dataclass(frozen=True)
class Rule:
    guard: GuardExpr
    action: str


@dataclass(frozen=True)
class RecallRule:
    regex: GuardRegex
    action: str


class NaturalStrategy(ABC):
    agent: str

    @property
    @abstractmethod
    def kind(self) -> str:
        pass

    @abstractmethod
    def complexity(self, metric: str) -> int:
        pass

    @abstractmethod
    def to_list(self, m: Rfcgs) -> List[dict]:
        pass

    @property
    def default_action(self) -> str:
        return self.rules[-1].action

    def actions(self) -> Tuple[str, ...]:
        return tuple(r.action for r in self.rules)


@dataclass(frozen=True)
class MemorylessStrategy(NaturalStrategy):
    agent: str
    rules: Tuple[Rule, ...]

    def __post_init__(self):
        if not self.rules or not isinstance(self.rules[-1].guard, GTrue):
            raise InvalidStrategy(f"Strategy for {self.agent} must end with a (true, action) rule")

    @property
    def kind(self) -> str:
        return 'memoryless'

    def complexity(self, metric: str) -> int:
        if metric == 'rules':
            return len(self.rules)
        return sum(symbol_count(r.guard) for r in self.rules)

    def to_list(self, m: Rfcgs) -> List[dict]:
        return [{'guard': guard_to_text(r.guard), 'action': r.action, 'cost': m.cost[(self.agent, r.action)]}
                for r in self.rules]


@dataclass(frozen=True)
class RecallStrategy(NaturalStrategy):
    agent: str
    rules: Tuple[RecallRule, ...]

    def __post_init__(self):
        if not self.rules or self.rules[-1].regex != DEFAULT_REGEX:
            raise InvalidStrategy(f"Recall strategy for {self.agent} must end with a catch-all rule")

    @property
    def kind(self) -> str:
        return 'recall'

    def complexity(self, metric: str) -> int:
        if metric == 'rules':
            return len(self.rules)
        # the catch-all counts as one symbol, like a bare true guard
        return sum(size(r.regex) for r in self.rules[:-1]) + 1

    def to_list(self, m: Rfcgs) -> List[dict]:
        return [{'regex': regex_to_text(r.regex), 'action': r.action, 'cost': m.cost[(self.agent, r.action)]}
                for r in self.rules]

    def dfas(self) -> Tuple[GuardDfa, ...]:
        return tuple(compile_regex(r.regex) for r in self.rules)


Member = Union[MemorylessStrategy, RecallStrategy]


@dataclass(frozen=True)
class CollectiveStrategy:
    members: Tuple[Member, ...]

    @property
    def coalition(self) -> Tuple[str, ...]:
        return tuple(s.agent for s in self.members)

    @property
    def kind(self) -> str:
        return self.members[0].kind if self.members else 'memoryless'

    def member(self, agent: str) -> Member:
        for s in self.members:
            if s.agent == agent:
                return s
        raise KeyError(agent)

    def complexity(self, metric: str) -> int:
        return sum(s.complexity(metric) for s in self.members)

    def to_dict(self, m: Rfcgs) -> Dict[str, List[dict]]:
        return {s.agent: s.to_list(m) for s in self.members}


def complexity(s: Union[Member, CollectiveStrategy], metric: str = 'symbols') -> int:
    return s.complexity(metric)


def match_memoryless(m: Rfcgs, s: MemorylessStrategy, q: str, tau_guard: float = 0.5) -> int:
    avail = m.available(s.agent, q)
    for i, rule in enumerate(s.rules):
        if rule.action in avail and eval_guard(m, q, rule.guard, tau_guard):
            return i
    raise NoMatch(f"No rule of {s.agent} applies at {q}")


def match_recall_states(m: Rfcgs, s: RecallStrategy, dfa_states: Sequence[int], q: str,
                        dfas: Optional[Sequence[GuardDfa]] = None) -> int:
    """Rule selection when each rule's DFA has already consumed the history ending in q."""
    dfas = dfas or s.dfas()
    avail = m.available(s.agent, q)
    for i, (rule, dfa, d) in enumerate(zip(s.rules, dfas, dfa_states)):
        if d in dfa.accepting and rule.action in avail:
            return i
    raise NoMatch(f"No recall rule of {s.agent} applies at {q}")


def match_recall(m: Rfcgs, s: RecallStrategy, history: Sequence[str],
                 dfas: Optional[Sequence[GuardDfa]] = None, tau_guard: float = 0.5) -> int:
    dfas = dfas or s.dfas()
    states = []
    for dfa in dfas:
        d = dfa.initial
        for st in history:
            d = dfa_step(m, dfa, d, st, tau_guard)
        states.append(d)
    return match_recall_states(m, s, states, history[-1], dfas)


def static_cost_ok(m: Rfcgs, s: Member) -> bool:
    budget = m.resource[s.agent]
    return all(m.cost[(s.agent, a)] <= budget for a in s.actions())


def dom(m: Rfcgs, s: MemorylessStrategy, tau_guard: float = 0.5) -> List[str]:
    """States where some non-default guard holds."""
    return [q for q in m.states
            if any(eval_guard(m, q, r.guard, tau_guard) for r in s.rules[:-1])]
