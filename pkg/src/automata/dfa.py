"""Subset construction and DFA stepping along model histories"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Sequence, Tuple

from automata.nfa import Letter, Nfa, regex_to_nfa
from automata.regex import GuardRegex, size
from formula.guards import GuardExpr, eval_guard
from model.rfcgs import Rfcgs
from utils.errors import StateBlowup
from utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class GuardDfa:
    literals: Tuple[GuardExpr, ...]
    initial: int
    accepting: FrozenSet[int]
    # delta[q][letter]
    delta: Tuple[Tuple[int, ...], ...]

    @property
    def num_states(self) -> int:
        return len(self.delta)

    def run(self, word: Sequence[Letter], q: int = None) -> int:
        q = self.initial if q is None else q
        for letter in word:
            q = self.delta[q][letter]
        return q

    def accepts(self, word: Sequence[Letter]) -> bool:
        return self.run(word) in self.accepting


def nfa_to_dfa(nfa: Nfa, bound: int = None) -> GuardDfa:
    """Powerset construction over all 2^#literals letters.

    Subsets are identified by their letter-moving members plus the accept flag,
    so closures differing only in epsilon-only states share a DFA state.
    """
    alphabet = 1 << len(nfa.literals)
    movers = set(nfa.moves)

    def key(subset):
        return frozenset(subset & movers), nfa.accept in subset

    start = nfa.closure([nfa.start])
    ids: Dict[Tuple, int] = {key(start): 0}
    reps: List[FrozenSet[int]] = [start]
    delta: List[List[int]] = []
    accepting = set()

    i = 0
    while i < len(reps):
        subset = reps[i]
        if nfa.accept in subset:
            accepting.add(i)
        row = []
        for letter in range(alphabet):
            nxt = nfa.step(subset, letter)
            k = key(nxt)
            if k not in ids:
                ids[k] = len(reps)
                reps.append(nxt)
                if bound is not None and len(reps) > bound:
                    raise StateBlowup(f"DFA exceeds {bound} states")
            row.append(ids[k])
        delta.append(row)
        i += 1

    return GuardDfa(
        literals=nfa.literals,
        initial=0,
        accepting=frozenset(accepting),
        delta=tuple(tuple(r) for r in delta),
    )


@lru_cache(maxsize=4096)
def compile_regex(r: GuardRegex) -> GuardDfa:
    dfa = nfa_to_dfa(regex_to_nfa(r), bound=2 ** (2 * size(r)))
    logger.debug(f"⚙️ Compiled regex of size {size(r)} into {dfa.num_states} DFA states")
    return dfa


def letter_of(m: Rfcgs, state: str, lits: Sequence[GuardExpr], tau_guard: float) -> Letter:
    letter = 0
    for i, g in enumerate(lits):
        if eval_guard(m, state, g, tau_guard):
            letter |= 1 << i
    return letter


def dfa_step(m: Rfcgs, dfa: GuardDfa, q: int, state: str, tau_guard: float = 0.5) -> int:
    return dfa.delta[q][letter_of(m, state, dfa.literals, tau_guard)]


def history_matches(m: Rfcgs, r: GuardRegex, history: Sequence[str], tau_guard: float = 0.5) -> bool:
    dfa = compile_regex(r)
    q = dfa.initial
    for s in history:
        q = dfa_step(m, dfa, q, s, tau_guard)
    return q in dfa.accepting
