"""Bottom-up HumanATL[F] model checking and strategy synthesis"""
import itertools
import time
from dataclasses import replace
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from arena.arena import ConfigSpace, build_arena, objective_cost
from arena.bounds import depth_bound
from arena.kripke import lift, project, to_fuzzy_kripke
from engine.config import CheckConfig
from engine.result import CheckResult, SearchStats, StrategicOutcome
from engine.unfolding import UnfoldTrace, unfold_degree
from formula.ast import (Atom, Compare, Connective, Constant, Formula, Next, Strategic,
                         Until, is_strategic_free, path_operands)
from formula.connectives import eval_connective
from formula.guards import OPS
from formula.parser import formula_to_text
from fuzzy_ctl.fixpoints import ax_map, gfp_release, lfp_until, meta_truth
from model.rfcgs import Rfcgs
from strategies.enumeration import enumerate_memoryless, enumerate_recall
from strategies.natural import CollectiveStrategy
from utils.errors import DanglingReference, FormulaError
from utils.logger import setup_logger

logger = setup_logger(__name__)

Degrees = Dict[str, float]


def state_degrees(m: Rfcgs, phi: Formula, tau_guard: float = 0.5) -> Degrees:
    """Pointwise degrees of a formula without strategic subformulas."""
    if isinstance(phi, Atom):
        return {s: m.label(s, phi.name) for s in m.states}
    if isinstance(phi, Constant):
        return {s: phi.value for s in m.states}
    if isinstance(phi, Compare):
        op = OPS[phi.op]
        return {s: 1.0 if op(m.label(s, phi.atom), phi.threshold) else 0.0 for s in m.states}
    if isinstance(phi, Connective):
        args = [state_degrees(m, a, tau_guard) for a in phi.args]
        return {s: eval_connective(phi.func, [a[s] for a in args]) for s in m.states}
    raise FormulaError(f"Strategic subformula needs the checker: {formula_to_text(phi)}")


def _check_coalition(m: Rfcgs, node: Strategic):
    unknown = [a for a in node.coalition if a not in m.agents]
    if unknown:
        raise DanglingReference(f"Unknown coalition agents {unknown}")


def _reduce(m: Rfcgs, candidates: Sequence[CollectiveStrategy],
            scorer: Callable[[CollectiveStrategy], Tuple[Degrees, SearchStats]],
            workers: int, early: bool, stats: SearchStats) -> Tuple[Degrees, Optional[CollectiveStrategy]]:
    """Pointwise max over candidates; argmax at the initial state, first in canonical order."""
    result = {s: 0.0 for s in m.states}
    best, best_degree = None, 0.0
    batch = max(1, workers * 4)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for start in range(0, len(candidates), batch):
            chunk = candidates[start:start + batch]
            for cand, (degrees, local) in zip(chunk, pool.map(scorer, chunk)):
                stats.merge(local)
                stats.candidates += 1
                for s in m.states:
                    if degrees[s] > result[s]:
                        result[s] = degrees[s]
                if best is None or degrees[m.initial] > best_degree:
                    best, best_degree = cand, degrees[m.initial]
                if early and best_degree >= 1.0:
                    logger.info(f"🏁 Candidate {stats.candidates} reached 1.0, stopping early")
                    return result, best
    return result, best


def _operand_maps(m: Rfcgs, node: Strategic, cfg: CheckConfig) -> Tuple[Degrees, ...]:
    return tuple(state_degrees(m, op, cfg.tau_guard) for op in path_operands(node.path))


def _enumerate(m: Rfcgs, node: Strategic, cfg: CheckConfig) -> List[CollectiveStrategy]:
    if cfg.mode == 'recall':
        gen = enumerate_recall(m, node.coalition, node.k, node.b, cfg.metric, m.guard_atoms, cfg.tau_guard,
                               cfg.max_guard_symbols, cfg.max_regex_size)
    else:
        gen = enumerate_memoryless(m, node.coalition, node.k, node.b, cfg.metric, m.guard_atoms, cfg.tau_guard,
                                   cfg.max_guard_symbols)
    return list(gen)


def eval_strategic_memoryless(m: Rfcgs, node: Strategic, cfg: CheckConfig,
                              candidates: Optional[Sequence[CollectiveStrategy]] = None,
                              stats: Optional[SearchStats] = None,
                              early: Optional[bool] = None) -> Tuple[Degrees, Optional[CollectiveStrategy]]:
    _check_coalition(m, node)
    stats = stats if stats is not None else SearchStats()
    maps = _operand_maps(m, node, cfg)
    if candidates is None:
        candidates = _enumerate(m, node, replace(cfg, mode='memoryless'))

    def score(cand: CollectiveStrategy) -> Tuple[Degrees, SearchStats]:
        local = SearchStats(arenas=1)
        arena = build_arena(m, cand, node.b, cfg.tau_guard, cfg.strict)
        local.stuck = arena.stuck
        fks = to_fuzzy_kripke(arena, cfg.transitions, with_valuation=False)
        if isinstance(node.path, Next):
            z = ax_map(fks, lift(arena, maps[0]))
        elif isinstance(node.path, Until):
            z = lfp_until(fks, 'A', lift(arena, maps[0]), lift(arena, maps[1]), local)
        else:
            z = gfp_release(fks, 'A', lift(arena, maps[0]), lift(arena, maps[1]), local)
        return project(arena, z), local

    early = cfg.early_exit if early is None else early
    return _reduce(m, list(candidates), score, cfg.workers, early, stats)


def eval_strategic_recall(m: Rfcgs, node: Strategic, cfg: CheckConfig,
                          candidates: Optional[Sequence[CollectiveStrategy]] = None,
                          stats: Optional[SearchStats] = None,
                          early: Optional[bool] = None) -> Tuple[Degrees, Optional[CollectiveStrategy]]:
    _check_coalition(m, node)
    stats = stats if stats is not None else SearchStats()
    maps = _operand_maps(m, node, cfg)
    if candidates is None:
        candidates = _enumerate(m, node, replace(cfg, mode='recall'))

    bound = depth_bound(len(m.states), node.k, [m.resource[a] for a in node.coalition], cfg.depth_ceiling)
    depth = min(bound.value, cfg.depth_cap)
    stats.effective_depth = max(stats.effective_depth, depth)

    def score(cand: CollectiveStrategy) -> Tuple[Degrees, SearchStats]:
        local = SearchStats(arenas=1)
        space = ConfigSpace(m, cand, node.b, cfg.tau_guard, cfg.strict)
        trace = UnfoldTrace()
        degrees = {s: unfold_degree(space, space.initial(s), node.path, maps, depth, trace) for s in m.states}
        local.stuck = space.stuck
        local.max_depth = trace.max_depth
        local.depth_cap_hit = trace.truncated and cfg.depth_cap < bound.value
        return degrees, local

    early = cfg.early_exit if early is None else early
    return _reduce(m, list(candidates), score, cfg.workers, early, stats)


def witness_cost(m: Rfcgs, node: Strategic, strategy: CollectiveStrategy, cfg: CheckConfig) -> Optional[int]:
    """Coalition cost spent by the strategy before the until-goal is met, worst case over branches."""
    if not isinstance(node.path, Until):
        return None
    goal = state_degrees(m, node.path.right, cfg.tau_guard)
    arena = build_arena(m, strategy, node.b, cfg.tau_guard)
    return objective_cost(arena, arena.initial[m.initial], lambda c: goal[c.state] >= cfg.tau_true)


def _rebuild(path, operands):
    if isinstance(path, Next):
        return Next(operands[0])
    return type(path)(operands[0], operands[1])


def check(m: Rfcgs, phi: Formula, cfg: Optional[CheckConfig] = None) -> CheckResult:
    cfg = (cfg or CheckConfig()).validate()
    started = time.perf_counter()
    stats = SearchStats()
    outcomes: List[StrategicOutcome] = []
    fresh = itertools.count()

    def evaluate(model: Rfcgs, node: Formula, is_root: bool) -> Tuple[Rfcgs, Degrees]:
        if isinstance(node, Strategic):
            operands = []
            for op in path_operands(node.path):
                if is_strategic_free(op):
                    operands.append(op)
                    continue
                model, degrees = evaluate(model, op, False)
                name = f"__sub{next(fresh)}"
                model = model.with_atom(name, degrees)
                operands.append(Atom(name))
            flat = Strategic(node.coalition, node.k, node.b, _rebuild(node.path, operands))
            early = is_root and cfg.early_exit
            if cfg.mode == 'recall':
                degrees, best = eval_strategic_recall(model, flat, cfg, stats=stats, early=early)
            else:
                degrees, best = eval_strategic_memoryless(model, flat, cfg, stats=stats, early=early)
            text = formula_to_text(node)
            cost = witness_cost(model, flat, best, cfg) if best is not None else None
            logger.info(f"✅ {text}: degree {degrees[model.initial]:.3f} at {model.initial}")
            outcomes.append(StrategicOutcome(text, degrees, best, cost))
            return model, degrees
        if isinstance(node, Connective) and not is_strategic_free(node):
            args = []
            for a in node.args:
                model, degrees = evaluate(model, a, False)
                args.append(degrees)
            return model, {s: eval_connective(node.func, [d[s] for d in args]) for s in model.states}
        return model, state_degrees(model, node, cfg.tau_guard)

    _, degrees = evaluate(m, phi, True)
    stats.wall_time = time.perf_counter() - started
    initial = degrees[m.initial]
    satisfying = meta_truth(degrees, cfg.tau_true)
    return CheckResult(
        verdict=initial >= cfg.tau_true,
        degree_initial=initial,
        degrees=degrees,
        satisfying_states=[s for s in m.states if s in satisfying],
        outcomes=outcomes,
        stats=stats,
    )
