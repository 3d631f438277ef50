"""Thompson construction for guard-regexes"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from automata.regex import GuardRegex, RConcat, RLiteral, RStar, RUnion, literals
from formula.guards import GTrue, GuardExpr

# letter = bit-vector of literal truth values; bit i <-> literals[i]
Letter = int


@dataclass
class Nfa:
    literals: Tuple[GuardExpr, ...]
    start: int = 0
    accept: int = 0
    num_states: int = 0
    epsilon: Dict[int, Set[int]] = field(default_factory=dict)
    # state -> [(literal bit or None for True, target)]
    moves: Dict[int, List[Tuple[Optional[int], int]]] = field(default_factory=dict)

    def new_state(self) -> int:
        self.num_states += 1
        return self.num_states - 1

    def closure(self, states: Iterable[int]) -> FrozenSet[int]:
        stack = list(states)
        seen = set(stack)
        while stack:
            s = stack.pop()
            for t in self.epsilon.get(s, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def step(self, states: FrozenSet[int], letter: Letter) -> FrozenSet[int]:
        targets = set()
        for s in states:
            for bit, t in self.moves.get(s, ()):
                if bit is None or letter >> bit & 1:
                    targets.add(t)
        return self.closure(targets)

    def accepts(self, word: Iterable[Letter]) -> bool:
        current = self.closure([self.start])
        for letter in word:
            current = self.step(current, letter)
        return self.accept in current


def regex_to_nfa(r: GuardRegex) -> Nfa:
    nfa = Nfa(literals=tuple(literals(r)))
    index = {g: i for i, g in enumerate(nfa.literals)}

    def eps(a, b):
        nfa.epsilon.setdefault(a, set()).add(b)

    def build(node) -> Tuple[int, int]:
        if isinstance(node, RLiteral):
            s, f = nfa.new_state(), nfa.new_state()
            bit = None if isinstance(node.guard, GTrue) else index[node.guard]
            nfa.moves.setdefault(s, []).append((bit, f))
            return s, f
        if isinstance(node, RConcat):
            s1, f1 = build(node.left)
            s2, f2 = build(node.right)
            eps(f1, s2)
            return s1, f2
        if isinstance(node, RUnion):
            s, f = nfa.new_state(), nfa.new_state()
            s1, f1 = build(node.left)
            s2, f2 = build(node.right)
            eps(s, s1)
            eps(s, s2)
            eps(f1, f)
            eps(f2, f)
            return s, f
        if isinstance(node, RStar):
            s, f = nfa.new_state(), nfa.new_state()
            s1, f1 = build(node.inner)
            eps(s, s1)
            eps(s, f)
            eps(f1, s1)
            eps(f1, f)
            return s, f
        raise TypeError(f"Not a regex: {node!r}")

    nfa.start, nfa.accept = build(r)
    return nfa
