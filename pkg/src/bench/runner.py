"""Timing grid over generated models; CSV output"""
import csv
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Union

from bench.generator import BenchSpec, generate_benchmark
from engine.checker import check
from engine.config import CheckConfig
from formula.parser import parse_formula
from utils.logger import setup_logger

logger = setup_logger(__name__)

CSV_COLUMNS = ['states', 'agents', 'k', 'b', 'density', 'mode', 'wall_ms', 'candidates', 'verdict']

BENCH_FORMULA = "<<a0>>[k<={k},b<={b}](!(q<0.5) U p)"


@dataclass
class BenchRow:
    states: int
    agents: int
    k: int
    b: int
    density: str
    mode: str
    wall_ms: float
    candidates: int
    verdict: bool

    def as_list(self) -> list:
        return [self.states, self.agents, self.k, self.b, self.density, self.mode,
                f"{self.wall_ms:.3f}", self.candidates, self.verdict]


def run_case(spec: BenchSpec, k: int, b: int, cfg: CheckConfig, trials: int = 5) -> BenchRow:
    m = generate_benchmark(spec)
    phi = parse_formula(BENCH_FORMULA.format(k=k, b=b))
    times = []
    result = None
    for _ in range(trials):
        started = time.perf_counter()
        result = check(m, phi, cfg)
        times.append((time.perf_counter() - started) * 1000.0)
    row = BenchRow(spec.states, spec.agents, k, b, spec.density, cfg.mode,
                   statistics.median(times), result.stats.candidates, result.verdict)
    logger.info(f"⏱️ {spec.states} states {spec.density}: {row.wall_ms:.1f} ms median of {trials}")
    return row


def run_grid(state_counts: Iterable[int], densities: Iterable[str], agents: int = 3, k: int = 2, b: int = 2,
             cfg: Optional[CheckConfig] = None, trials: int = 5, seed: int = 0) -> List[BenchRow]:
    cfg = cfg or CheckConfig(metric='rules')
    rows = []
    for n in state_counts:
        for density in densities:
            spec = BenchSpec(states=n, agents=agents, density=density, seed=seed)
            rows.append(run_case(spec, k, b, cfg, trials))
    return rows


def write_csv(rows: List[BenchRow], path: Union[str, Path]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.as_list())
