"""Drone carrier/villain case study on a discretized 4x4 grid"""
import itertools
import json
from pathlib import Path
from typing import Dict, Optional, Tuple, Union
import sys

sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from engine.checker import check
from engine.config import CheckConfig
from engine.result import CheckResult
from formula.guards import GCmp, TRUE_GUARD
from formula.parser import parse_formula
from model.loader import dump_model
from model.rfcgs import GuardAtom, Rfcgs
from strategies.natural import MemorylessStrategy, Rule
from utils.logger import setup_logger

logger = setup_logger(__name__)

GRID = (0.0, 0.3, 0.6, 1.0)
TOP = len(GRID) - 1

CARRIER, VILLAIN = 'carrier', 'villain'
ACTIONS = ('right', 'ascend', 'descend', 'idle')
COSTS = {'right': 3, 'ascend': 2, 'descend': 2, 'idle': 1}
RESOURCES = {CARRIER: 5, VILLAIN: 4}

DRONE_FORMULA = "<<carrier>>[k<=2,b<={b}]( !(dist<0.5) U safe )"
DRONE_BUDGET = 5
DRONE_POOL = (GuardAtom('dist', '<', 0.5), GuardAtom('safe', '>=', 1.0))

Cell = Tuple[int, int]


def state_name(carrier: Cell, villain: Cell) -> str:
    return f"c{carrier[0]}{carrier[1]}_v{villain[0]}{villain[1]}"


def moves(cell: Cell) -> Tuple[str, ...]:
    """Actions available to a drone at a grid cell; a grounded drone can only take off or wait."""
    x, y = cell
    if y == 0:
        return ('ascend', 'idle')
    out = []
    if x < TOP:
        out.append('right')
    if y < TOP:
        out.append('ascend')
    out.append('descend')
    out.append('idle')
    return tuple(out)


def apply(cell: Cell, action: str) -> Cell:
    x, y = cell
    if action == 'right':
        return (x + 1, y)
    if action == 'ascend':
        return (x, y + 1)
    if action == 'descend':
        return (x, y - 1)
    return cell


def distance(carrier: Cell, villain: Cell) -> float:
    dx = abs(GRID[carrier[0]] - GRID[villain[0]])
    dy = abs(GRID[carrier[1]] - GRID[villain[1]])
    return round(max(dx, dy), 1)


def is_safe(carrier: Cell) -> float:
    return 1.0 if all(0.3 <= GRID[i] <= 0.6 for i in carrier) else 0.0


def build_drone_model() -> Rfcgs:
    cells = list(itertools.product(range(len(GRID)), repeat=2))
    pairs = list(itertools.product(cells, cells))
    states = tuple(state_name(c, v) for c, v in pairs)

    labels: Dict[Tuple[str, str], float] = {}
    availability = {}
    transition = {}
    for c, v in pairs:
        s = state_name(c, v)
        labels[(s, 'dist')] = distance(c, v)
        labels[(s, 'safe')] = is_safe(c)
        availability[(CARRIER, s)] = moves(c)
        availability[(VILLAIN, s)] = moves(v)
        for ac, av in itertools.product(moves(c), moves(v)):
            transition[(s, (ac, av))] = state_name(apply(c, ac), apply(v, av))

    return Rfcgs(
        agents=(CARRIER, VILLAIN),
        atoms=('dist', 'safe'),
        actions={CARRIER: ACTIONS, VILLAIN: ACTIONS},
        cost={(a, x): COSTS[x] for a in (CARRIER, VILLAIN) for x in ACTIONS},
        resource=dict(RESOURCES),
        states=states,
        initial=state_name((0, 0), (TOP, TOP)),
        labels=labels,
        availability=availability,
        transition=transition,
        guard_atoms=DRONE_POOL,
    )


def villain_strategy() -> MemorylessStrategy:
    """The villain's own plan: descend while the carrier is far, otherwise hold. Never synthesized."""
    return MemorylessStrategy(VILLAIN, (
        Rule(GCmp('dist', '>=', 0.5), 'descend'),
        Rule(TRUE_GUARD, 'idle'),
    ))


def drone_config() -> CheckConfig:
    return CheckConfig(metric='rules', transitions='crisp')


def run_drone_demo(out_dir: Optional[Union[str, Path]] = None, budget: int = DRONE_BUDGET) -> Tuple[Rfcgs, CheckResult]:
    m = build_drone_model()
    text = DRONE_FORMULA.format(b=budget)
    result = check(m, parse_formula(text), drone_config())
    logger.info(f"🚁 Drone demo b={budget}: verdict {result.verdict}, witness cost {result.witness_cost}")

    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        dump_model(m, out / 'drone.json')
        (out / 'drone_formula.txt').write_text(text + '\n')
        payload = result.to_dict(m)
        payload['villain'] = villain_strategy().to_list(m)
        (out / 'drone_result.json').write_text(json.dumps(payload, indent=2))
    return m, result
