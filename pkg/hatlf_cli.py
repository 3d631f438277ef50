#!/usr/bin/env python3
"""
HATLF CLI - HumanATL[F] model checking and natural-strategy synthesis
Check formulas, benchmark generated models, run the case-study demos.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

sys.path.insert(0, str(Path(__file__).parent / 'src'))
sys.path.insert(0, str(Path(__file__).parent))

from arena.arena import arena_to_dict, build_arena
from bench.generator import DENSITIES
from bench.runner import run_grid, write_csv
from engine.checker import check
from engine.config import (DEFAULT_DEPTH_CAP, DEFAULT_TAU_GUARD, DEFAULT_TAU_TRUE, METRICS, MODES,
                           TRANSITIONS, CheckConfig)
from formula.ast import Strategic, subformulas
from formula.parser import formula_to_text, parse_formula
from model.loader import load_model_file
from utils.errors import ConfigError, FormulaError, HatlfError, ModelError
from utils.logger import set_global_level, setup_logger

logger = setup_logger(__name__)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2
EXIT_USAGE = 64
EXIT_DATA = 65

DEMOS = ('drone', 'coalition')


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"[ERROR] {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _banner(title: str):
    print("\n" + "="*60)
    print(title)
    print("="*60)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _dump_arena(m, phi, result, cfg: CheckConfig, path: str):
    best = result.best_strategy
    if best is None:
        print("[ARENA] No synthesized strategy, nothing to dump")
        return
    text = result.outcomes[-1].formula
    node = next(n for n in subformulas(phi) if isinstance(n, Strategic) and formula_to_text(n) == text)
    arena = build_arena(m, best, node.b, cfg.tau_guard, cfg.strict)
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(arena_to_dict(arena), indent=2))
    print(f"[ARENA] {arena.size()} configurations written to {out}")


def cmd_check(args) -> int:
    cfg = CheckConfig.from_args(args)
    m = load_model_file(args.model)
    phi = parse_formula(args.formula)

    print(f"[MODEL] {args.model}: {len(m.states)} states, {len(m.agents)} agents")
    print(f"[FORMULA] {formula_to_text(phi)}")
    print(f"[CONFIG] mode={cfg.mode} metric={cfg.metric} transitions={cfg.transitions} "
          f"tau_guard={cfg.tau_guard} tau_true={cfg.tau_true} workers={cfg.workers}")

    result = check(m, phi, cfg)

    _banner("RESULT")
    print(f"[VERDICT] {result.verdict}")
    print(f"[DEGREE] {result.degree_initial:.6g} at {m.initial}")
    print(f"[STATES] {len(result.satisfying_states)}/{len(m.states)} states reach tau_true")
    if args.synthesize:
        for outcome in result.outcomes:
            print(f"\n[STRATEGY] {outcome.formula}")
            if outcome.best is None:
                print("   (no candidate fits the complexity bound)")
                continue
            for agent, rules in outcome.best.to_dict(m).items():
                for rule in rules:
                    cond = rule.get('guard', rule.get('regex'))
                    print(f"   {agent}: {cond} -> {rule['action']} (cost {rule['cost']})")
            if outcome.witness_cost is not None:
                print(f"   witness cost: {outcome.witness_cost}")
    s = result.stats
    print(f"\n[METRICS] Time: {s.wall_time:.3f}s | Candidates: {s.candidates} | Arenas: {s.arenas} | "
          f"Fixpoint iterations: {s.fixpoint_iterations}")
    if s.depth_cap_hit:
        print(f"[WARNING] Recall unfolding truncated at depth {s.effective_depth}")

    payload = result.to_dict(m)
    payload['formula'] = formula_to_text(phi)
    payload['seed'] = args.seed
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(payload, indent=2))
    print(f"[OUTPUT] {out}")

    if args.dump_arena:
        _dump_arena(m, phi, result, cfg, args.dump_arena)
    return EXIT_TRUE if result.verdict else EXIT_FALSE


def cmd_bench(args) -> int:
    cfg = CheckConfig(mode=args.mode, metric='rules', workers=args.workers).validate()
    densities = DENSITIES if args.density == 'both' else (args.density,)
    _banner("BENCHMARK")
    rows = run_grid(args.states, densities, agents=args.agents, k=args.k, b=args.b,
                    cfg=cfg, trials=args.trials, seed=args.seed)
    for row in rows:
        print(f"[BENCH] states={row.states} density={row.density} mode={row.mode} "
              f"{row.wall_ms:.1f} ms | candidates={row.candidates} | verdict={row.verdict}")
    if args.csv:
        write_csv(rows, args.csv)
        print(f"[OUTPUT] {args.csv}")
    return EXIT_TRUE


def cmd_demo(args) -> int:
    out_dir = Path(args.out_dir)
    if args.name == 'drone':
        from demos.drone import DRONE_BUDGET, run_drone_demo
        _banner("DRONE CASE STUDY")
        m, result = run_drone_demo(out_dir)
        print(f"[VERDICT] {result.verdict} (degree {result.degree_initial:.6g} at {m.initial})")
        if result.best_strategy is not None:
            for rule in result.best_strategy.to_dict(m)['carrier']:
                print(f"   carrier: {rule['guard']} -> {rule['action']} (cost {rule['cost']})")
        print(f"[COST] Winning branch spends {result.witness_cost} of b={DRONE_BUDGET}")
        _, tight = run_drone_demo(budget=DRONE_BUDGET - 1)
        print(f"[CHECK] With b={DRONE_BUDGET - 1} the verdict is {tight.verdict}")
        ok = result.verdict and not tight.verdict
    else:
        from demos.coalition import COALITION_BUDGET, run_coalition_demo
        _banner("COALITION SCENARIO")
        report = run_coalition_demo(out_dir)
        result = report.result
        print(f"[VERDICT] {result.verdict} (degree {result.degree_initial:.6g})")
        print(f"[COST] Best plan spends {result.witness_cost} of b={COALITION_BUDGET}")
        print(f"[CHECK] Naive plan degree {report.naive_degree:.6g} within b={COALITION_BUDGET}, "
              f"{report.naive_degree_relaxed:.6g} with cost {report.naive_cost}")
        ok = result.verdict and result.witness_cost is not None and result.witness_cost <= COALITION_BUDGET
    print(f"[OUTPUT] {out_dir}")
    return EXIT_TRUE if ok else EXIT_FALSE


def build_parser():
    """Build command-line argument parser"""
    p = CliParser(
        prog="hatlf_cli",
        description="HATLF - HumanATL[F] model checking and natural-strategy synthesis"
    )
    p.add_argument("--verbose", "-v", action="store_true", help="Log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    # check command
    sp_check = sub.add_parser("check", help="Check a formula against a model")
    sp_check.add_argument("--model", "-m", required=True, help="Model file (JSON)")
    sp_check.add_argument("--formula", "-f", required=True, help="HumanATL[F] formula")
    sp_check.add_argument("--mode", choices=MODES, default="memoryless", help="Strategy class")
    sp_check.add_argument("--metric", choices=METRICS, default="symbols", help="Complexity metric")
    sp_check.add_argument("--tau-guard", type=float, default=DEFAULT_TAU_GUARD,
                          help="Threshold for bare atoms in guards")
    sp_check.add_argument("--tau-true", type=float, default=DEFAULT_TAU_TRUE,
                          help="Meta-truth threshold for the verdict")
    sp_check.add_argument("--transitions", choices=TRANSITIONS, default="crisp",
                          help="Transition degrees of the fuzzy abstraction (recall mode: crisp only)")
    sp_check.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP, help="Recall unfolding depth cap")
    sp_check.add_argument("--synthesize", action="store_true", help="Print synthesized strategies")
    sp_check.add_argument("--output", "-o", default="hatlf_result.json", help="Result file")
    sp_check.add_argument("--seed", type=int, default=0, help="Recorded in the result file")
    sp_check.add_argument("--workers", type=int, default=1, help="Candidate evaluation threads")
    sp_check.add_argument("--early-exit", action="store_true", help="Stop at the first degree-1 candidate")
    sp_check.add_argument("--strict", action="store_true", help="Fail on configurations where no rule applies")
    sp_check.add_argument("--dump-arena", metavar="PATH", help="Write the arena of the best strategy")

    # bench command
    sp_bench = sub.add_parser("bench", help="Time checks on generated models")
    sp_bench.add_argument("--states", type=_int_list, default=[10, 20, 40], help="Comma-separated state counts")
    sp_bench.add_argument("--agents", type=int, default=3, help="Agents per model")
    sp_bench.add_argument("--density", choices=DENSITIES + ('both',), default="both", help="Transition density")
    sp_bench.add_argument("--trials", type=int, default=5, help="Trials per case (median reported)")
    sp_bench.add_argument("--csv", help="CSV output path")
    sp_bench.add_argument("--k", type=int, default=2, help="Complexity bound")
    sp_bench.add_argument("--b", type=int, default=2, help="Budget bound")
    sp_bench.add_argument("--mode", choices=MODES, default="memoryless", help="Strategy class")
    sp_bench.add_argument("--seed", type=int, default=0, help="Generator seed")
    sp_bench.add_argument("--workers", type=int, default=1, help="Candidate evaluation threads")

    # demo command
    sp_demo = sub.add_parser("demo", help="Run a case-study demo")
    sp_demo.add_argument("name", choices=DEMOS, help="Demo name")
    sp_demo.add_argument("--out-dir", default="hatlf_demo", help="Where model, formula and result go")

    return p


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        set_global_level(logging.INFO)

    try:
        if args.command == "check":
            return cmd_check(args)
        if args.command == "bench":
            return cmd_bench(args)
        return cmd_demo(args)
    except ConfigError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ModelError, FormulaError) as e:
        print(f"[ERROR] {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DATA
    except HatlfError as e:
        print(f"[ERROR] {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:
        print(f"\n[ERROR] {e}", file=sys.stderr)
        import traceback
        traceback.print_exc()
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
