"""Check results and search statistics"""
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

from model.rfcgs import Rfcgs
from strategies.natural import CollectiveStrategy


@dataclass
class SearchStats:
    candidates: int = 0
    arenas: int = 0
    fixpoint_iterations: int = 0
    wall_time: float = 0.0
    stuck: int = 0
    depth_cap_hit: bool = False
    max_depth: int = 0
    effective_depth: int = 0

    def merge(self, other: 'SearchStats'):
        self.candidates += other.candidates
        self.arenas += other.arenas
        self.fixpoint_iterations += other.fixpoint_iterations
        self.stuck += other.stuck
        self.depth_cap_hit = self.depth_cap_hit or other.depth_cap_hit
        self.max_depth = max(self.max_depth, other.max_depth)
        self.effective_depth = max(self.effective_depth, other.effective_depth)


@dataclass
class StrategicOutcome:
    formula: str
    degrees: Dict[str, float]
    best: Optional[CollectiveStrategy]
    witness_cost: Optional[int] = None


@dataclass
class CheckResult:
    verdict: bool
    degree_initial: float
    degrees: Dict[str, float]
    satisfying_states: List[str]
    outcomes: List[StrategicOutcome] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def best_strategy(self) -> Optional[CollectiveStrategy]:
        """Strategy synthesized for the outermost strategic subformula."""
        return self.outcomes[-1].best if self.outcomes else None

    @property
    def witness_cost(self) -> Optional[int]:
        return self.outcomes[-1].witness_cost if self.outcomes else None

    def to_dict(self, m: Rfcgs) -> dict:
        return {
            'verdict': self.verdict,
            'degree_initial': self.degree_initial,
            'degrees': self.degrees,
            'satisfying_states': self.satisfying_states,
            'strategies': [
                {
                    'formula': o.formula,
                    'strategy': o.best.to_dict(m) if o.best else None,
                    'witness_cost': o.witness_cost,
                }
                for o in self.outcomes
            ],
            'stats': asdict(self.stats),
        }
