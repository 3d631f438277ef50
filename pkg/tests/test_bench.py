"""Benchmark generation and timing trends"""
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))
from bench.generator import BenchSpec, generate_benchmark
from bench.runner import run_case
from engine.config import CheckConfig
from model.loader import dump_model
from model.validation import validate


def distinct_successors(m, s):
    return len({m.transition[(s, j)] for j in m.joint_actions(s)})


def test_generation_is_reproducible(tmp_path):
    spec = BenchSpec(states=10, agents=3, density='sparse', seed=7)
    dump_model(generate_benchmark(spec), tmp_path / 'one.json')
    dump_model(generate_benchmark(spec), tmp_path / 'two.json')
    assert (tmp_path / 'one.json').read_bytes() == (tmp_path / 'two.json').read_bytes()


@pytest.mark.parametrize('density', ['sparse', 'dense'])
@pytest.mark.parametrize('states', [1, 2, 10, 33])
def test_generated_models_validate(density, states):
    m = generate_benchmark(BenchSpec(states=states, density=density, seed=states))
    assert validate(m) == []
    assert len(m.states) == states
    assert all(round(v * 10) / 10 == v for v in m.labels.values())


def test_sparse_out_degree():
    m = generate_benchmark(BenchSpec(states=20, density='sparse', seed=3))
    assert all(distinct_successors(m, s) <= 2 for s in m.states)


def test_dense_out_degree():
    m = generate_benchmark(BenchSpec(states=10, density='dense', seed=3))
    mean = sum(distinct_successors(m, s) for s in m.states) / len(m.states)
    assert mean >= 5


def test_single_state_self_loop():
    m = generate_benchmark(BenchSpec(states=1))
    assert set(m.transition.values()) == {'s0'}


def test_bad_spec():
    with pytest.raises(ValueError):
        BenchSpec(states=0)
    with pytest.raises(ValueError):
        BenchSpec(states=3, density='medium')


def test_dense_costs_more_than_sparse():
    cfg = CheckConfig(metric='rules')
    sparse = run_case(BenchSpec(states=100, agents=3, actions_per_agent=3, density='sparse', seed=1), 2, 6, cfg)
    dense = run_case(BenchSpec(states=100, agents=3, actions_per_agent=3, density='dense', seed=1), 2, 6, cfg)
    assert dense.wall_ms >= 1.5 * sparse.wall_ms


def test_growth_is_polynomial():
    cfg = CheckConfig(metric='rules')
    times = [run_case(BenchSpec(states=n, density='sparse', seed=4), 2, 2, cfg).wall_ms for n in (25, 50, 100)]
    for small, big in zip(times, times[1:]):
        assert big <= 8 * small


def test_recall_default_depth_cap():
    assert CheckConfig(mode='recall').depth_cap == 5
