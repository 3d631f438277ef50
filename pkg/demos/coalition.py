"""Two-agent coalition scenario: a cheap detour versus an escorted direct route"""
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union
import sys

sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from engine.checker import check, eval_strategic_memoryless, witness_cost
from engine.config import CheckConfig
from engine.result import CheckResult
from formula.guards import TRUE_GUARD
from formula.parser import parse_formula
from model.loader import dump_model, load_model
from model.rfcgs import Rfcgs
from strategies.natural import CollectiveStrategy, MemorylessStrategy, Rule
from utils.logger import setup_logger

logger = setup_logger(__name__)

COALITION_FORMULA = "<<carrier,drone>>[k<=2,b<={b}]( !(dist<=0.5) U safe )"
COALITION_BUDGET = 5

# direct legs: d1/d2, escorted (e) or unescorted (u); detour legs: e1..e4
DIST = {
    'base': 0.9,
    'd1e': 0.7, 'd2e': 0.6,
    'd1u': 0.4, 'd2u': 0.3,
    'e1': 0.8, 'e2': 0.8, 'e3': 0.8, 'e4': 0.8,
    'zone': 0.8,
}


def _step(source, target, carrier=None, drone=None):
    actions = {}
    if carrier:
        actions['carrier'] = carrier
    if drone:
        actions['drone'] = drone
    return {'from': source, 'actions': actions, 'to': target}


def coalition_model_dict() -> dict:
    transitions = [
        _step('base', 'd1e', 'direct', 'escort'),
        _step('base', 'd1u', 'direct', 'hover'),
        _step('base', 'e1', 'detour'),
        _step('d1e', 'd2e', 'direct', 'escort'),
        _step('d1e', 'd2u', 'direct', 'hover'),
        _step('d2e', 'zone', 'direct', 'escort'),
        _step('d2e', 'd2u', 'direct', 'hover'),
        _step('d1u', 'd2u', 'direct'),
        _step('d2u', 'zone', 'direct'),
        _step('e1', 'e2', 'detour'),
        _step('e2', 'e3', 'detour'),
        _step('e3', 'e4', 'detour'),
        _step('e4', 'zone', 'detour'),
    ]
    return {
        'agents': [
            {'name': 'carrier', 'actions': [{'name': 'direct', 'cost': 1}, {'name': 'detour', 'cost': 1}],
             'resource': 5},
            {'name': 'drone', 'actions': [{'name': 'escort', 'cost': 1}, {'name': 'hover', 'cost': 0}],
             'resource': 5},
        ],
        'atoms': ['dist', 'safe'],
        'guard_atoms': [{'atom': 'dist', 'op': '<=', 'threshold': 0.5}],
        'states': [
            {'name': s, 'labels': {'dist': d, 'safe': 1.0 if s == 'zone' else 0.0}}
            for s, d in DIST.items()
        ],
        'initial': 'base',
        'transitions': transitions,
        # anything not listed keeps the team where it is
        'default_to': {s: s for s in DIST},
    }


def build_coalition_model() -> Rfcgs:
    return load_model(json.dumps(coalition_model_dict()))


def naive_plan() -> CollectiveStrategy:
    """Escorted direct route: three two-unit steps, 2+2+2."""
    return CollectiveStrategy((
        MemorylessStrategy('carrier', (Rule(TRUE_GUARD, 'direct'),)),
        MemorylessStrategy('drone', (Rule(TRUE_GUARD, 'escort'),)),
    ))


@dataclass
class CoalitionReport:
    result: CheckResult
    naive_degree: float
    naive_degree_relaxed: float
    naive_cost: Optional[int]


def run_coalition_demo(out_dir: Optional[Union[str, Path]] = None) -> CoalitionReport:
    m = build_coalition_model()
    cfg = CheckConfig(metric='rules')
    result = check(m, parse_formula(COALITION_FORMULA.format(b=COALITION_BUDGET)), cfg)

    naive = naive_plan()
    tight = parse_formula(COALITION_FORMULA.format(b=COALITION_BUDGET))
    relaxed = parse_formula(COALITION_FORMULA.format(b=COALITION_BUDGET + 1))
    naive_tight, _ = eval_strategic_memoryless(m, tight, cfg, candidates=[naive])
    naive_relaxed, _ = eval_strategic_memoryless(m, relaxed, cfg, candidates=[naive])
    report = CoalitionReport(
        result=result,
        naive_degree=naive_tight[m.initial],
        naive_degree_relaxed=naive_relaxed[m.initial],
        naive_cost=witness_cost(m, relaxed, naive, cfg),
    )
    logger.info(f"🤝 Coalition demo: witness cost {result.witness_cost}, naive plan cost {report.naive_cost}")

    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        dump_model(m, out / 'coalition.json')
        (out / 'coalition_formula.txt').write_text(COALITION_FORMULA.format(b=COALITION_BUDGET) + '\n')
        payload = result.to_dict(m)
        payload['naive_plan'] = {
            'strategy': naive.to_dict(m),
            'degree_within_budget': report.naive_degree,
            'degree_with_one_more_unit': report.naive_degree_relaxed,
            'cost': report.naive_cost,
        }
        (out / 'coalition_result.json').write_text(json.dumps(payload, indent=2))
    return report
