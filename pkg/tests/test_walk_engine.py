import numpy as np
import pytest
from concurrent.futures import ThreadPoolExecutor

from walkforge.builders import BuilderOptions
from walkforge.graphs import Complete, Cycle, Hypercube, Line
from walkforge.numerics import HADAMARD, is_unitary, matpow, max_abs_diff
from walkforge.walk_engine import (
    CoinSpec,
    Distribution,
    WalkConfig,
    coin_matrix,
    cycle_length,
    default_coin,
    distribution,
    evolution_matrix,
    iter_states,
    l1_distance,
    line_step_bound,
    run_walk,
    sample_counts,
    shift_operator,
    state_period,
    walk_history,
)


class TestCoins:
    def test_hadamard(self):
        assert np.allclose(coin_matrix(CoinSpec("hadamard", 1)), HADAMARD)
        assert np.allclose(coin_matrix(CoinSpec("hadamard", 2)), np.kron(HADAMARD, HADAMARD))

    def test_grover(self):
        g = coin_matrix(CoinSpec("grover", 2))
        assert np.allclose(g, 0.5 * np.ones((4, 4)) - np.eye(4))
        s = np.full(4, 0.5)
        assert np.allclose(g @ s, s)

    @pytest.mark.parametrize("kind", ["hadamard", "grover", "identity"])
    @pytest.mark.parametrize("m", [0, 1, 2, 3])
    def test_unitary(self, kind, m):
        assert is_unitary(coin_matrix(CoinSpec(kind, m)), 1e-12)

    def test_defaults_and_errors(self):
        assert default_coin(Hypercube(3, 1)) == CoinSpec("grover", 2)
        assert default_coin(Cycle(5)) == CoinSpec("hadamard", 1)
        with pytest.raises(ValueError):
            CoinSpec("fair", 1)
        with pytest.raises(ValueError):
            CoinSpec("hadamard", -1)


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [dict(topology=Cycle(5), initial_position=5), dict(topology=Cycle(5), initial_coin=2),
         dict(topology=Line(8), initial_position=4), dict(topology=Complete(4), initial_position=4),
         dict(topology=Cycle(5), steps=-1), dict(topology=Cycle(5), coin=CoinSpec("hadamard", 2))],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            WalkConfig(**kwargs)

    def test_line_uses_signed_labels(self):
        cfg = WalkConfig(Line(8), initial_position=-3, initial_coin=1)
        assert cfg.position_index == 5 and cfg.initial_index == 13


ALL = [WalkConfig(Cycle(4)), WalkConfig(Cycle(5)), WalkConfig(Cycle(13)), WalkConfig(Line(8)), WalkConfig(Line(16)),
       WalkConfig(Hypercube(3, 1)), WalkConfig(Hypercube(1, 0)), WalkConfig(Hypercube(4, 0), CoinSpec("hadamard", 2)),
       WalkConfig(Complete(4)), WalkConfig(Complete(4), options=BuilderOptions(complete_model="swap")),
       WalkConfig(Complete(8), CoinSpec("grover", 3)), WalkConfig(Complete(16)),
       WalkConfig(Cycle(64), options=BuilderOptions(cycle_variant="j_reduced_nna")),
       WalkConfig(Hypercube(8, 0))]


@pytest.mark.parametrize("cfg", ALL, ids=lambda c: repr(c.topology))
def test_circuit_and_operator_agree(cfg):
    u_c = evolution_matrix(cfg, "circuit")
    u_o = evolution_matrix(cfg, "operator")
    assert max_abs_diff(u_c, u_o) < 1e-12
    assert is_unitary(u_o, 1e-10)
    for steps in range(6):
        c = cfg.with_steps(steps)
        assert l1_distance(run_walk(c, "circuit").distribution, run_walk(c, "operator").distribution) < 1e-10


def test_identity_coin_gives_shift():
    cfg = WalkConfig(Cycle(4), CoinSpec("identity", 1))
    assert np.array_equal(evolution_matrix(cfg), shift_operator(cfg))
    assert evolution_matrix(WalkConfig(Cycle(4))).shape == (8, 8)


def test_normalization_over_32_steps():
    for cfg in (WalkConfig(Cycle(5), steps=32), WalkConfig(Hypercube(3, 1), steps=32)):
        for psi in iter_states(cfg):
            assert abs(np.vdot(psi, psi).real - 1) < 1e-10


@pytest.mark.parametrize("t", [Cycle(5), Line(8), Hypercube(3, 1), Complete(4)], ids=repr)
def test_zero_steps(t):
    d = run_walk(WalkConfig(t)).distribution
    assert d.prob(0) == 1.0


def test_five_cycle_one_step():
    d = run_walk(WalkConfig(Cycle(5), steps=1)).distribution
    assert d.support() == [1, 4]
    assert abs(d.prob(1) - 0.5) < 1e-12


def test_line_labels_sorted_and_signed():
    d = run_walk(WalkConfig(Line(8), steps=2)).distribution
    assert d.labels == (-4, -3, -2, -1, 0, 1, 2, 3)
    assert set(d.support()) <= {-2, 0, 2}


def test_distribution_kinds():
    psi = run_walk(WalkConfig(Complete(4), steps=3)).state
    full = distribution(psi, Complete(4), "full")
    assert len(full.labels) == 16 and abs(sum(full.probs) - 1) < 1e-12
    readout = distribution(psi, Complete(4), "readout")
    assert readout.labels == ("0000", "0001", "0010", "0011")
    with pytest.raises(ValueError):
        distribution(psi, Complete(4), "coin")


def test_k4_coin_stays_uniform_under_hadamard():
    # the coin register is not deterministic; only the position readout is
    full = distribution(run_walk(WalkConfig(Complete(4), steps=3)).state, Complete(4), "full")
    assert sorted(full.support()) == [3, 7, 11, 15]
    assert np.allclose([full.prob(i) for i in (3, 7, 11, 15)], 0.25)


def test_k4_grover_does_not_reproduce_the_reported_outcomes():
    cfg = WalkConfig(Complete(4), CoinSpec("grover", 2), steps=3)
    assert run_walk(cfg, kind="readout").distribution.prob("0011") < 1 - 1e-6
    assert cycle_length(cfg.with_steps(0)) != 8


class TestL1:
    def test_cases(self):
        p = Distribution([0, 1], [0.5, 0.5])
        assert l1_distance(p, p) == 0
        assert l1_distance(Distribution([0, 1], [1, 0]), Distribution([0, 1], [0, 1])) == 1
        assert l1_distance(p, Distribution([0, 1], [1, 0])) == 0.5

    def test_aligns_labels(self):
        assert l1_distance(Distribution([0, 1], [1, 0]), Distribution([1, 0], [0, 1])) == 0

    def test_mismatch(self):
        with pytest.raises(ValueError):
            l1_distance(Distribution([0, 1], [1, 0]), Distribution([0, 2], [1, 0]))
        with pytest.raises(ValueError):
            Distribution([0], [0.5, 0.5])


class TestCycleLength:
    @pytest.mark.parametrize("model,period", [("cnot", 8), ("swap", 4)])
    def test_k4(self, model, period):
        cfg = WalkConfig(Complete(4), options=BuilderOptions(complete_model=model))
        assert cycle_length(cfg) == period
        u = evolution_matrix(cfg)
        assert max_abs_diff(matpow(u, period), np.eye(16)) < 1e-12

    def test_identity_coin_complete2(self):
        assert cycle_length(WalkConfig(Complete(2), CoinSpec("identity", 1))) == 2

    def test_none_within(self):
        assert cycle_length(WalkConfig(Complete(4)), t_max=2) is None
        with pytest.raises(ValueError):
            cycle_length(WalkConfig(Complete(4)), t_max=0)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_complete_graph_period_by_matrix(self, m):
        assert cycle_length(WalkConfig(Complete(1 << m))) == 8

    @pytest.mark.parametrize("m", [6, 7])
    def test_complete_graph_period_by_state(self, m):
        assert state_period(WalkConfig(Complete(1 << m))) == 8

    def test_state_period_errors_and_none(self):
        assert state_period(WalkConfig(Complete(4)), t_max=3) is None
        with pytest.raises(ValueError):
            state_period(WalkConfig(Complete(4)), t_max=0)

    def test_periodic_distributions(self):
        cfg = WalkConfig(Complete(4), options=BuilderOptions(complete_model="swap"))
        t = cycle_length(cfg)
        for s in range(4):
            a = run_walk(cfg.with_steps(s)).distribution
            b = run_walk(cfg.with_steps(s + t)).distribution
            assert l1_distance(a, b) < 1e-10


def test_line_step_bound():
    assert line_step_bound(3, 0) == 3
    assert line_step_bound(4, 0) == 7
    assert line_step_bound(3, 2) == 1
    with pytest.raises(ValueError):
        line_step_bound(1, 0)
    with pytest.raises(ValueError):
        line_step_bound(3, 4)


@pytest.mark.parametrize("n0", [0, 1, 3])
def test_line_support_within_reach(n0):
    n = 4
    bound = line_step_bound(n, n0)
    hist = walk_history(WalkConfig(Line(16), steps=bound, initial_position=n0))
    for t, d in enumerate(hist):
        assert set(d.support()) <= set(range(n0 - t, n0 + t + 1))
        assert d.prob(-8) <= 1e-12


def test_step_bound_counts_toward_the_positive_end():
    # from a negative start the left end is reached first
    hist = walk_history(WalkConfig(Line(16), steps=line_step_bound(4, -2), initial_position=-2))
    assert hist[6].prob(-8) > 0


def test_history_lengths_and_sources():
    cfg = WalkConfig(Cycle(5), steps=4)
    a, b = walk_history(cfg, "circuit"), walk_history(cfg, "operator")
    assert len(a) == len(b) == 5
    assert all(l1_distance(x, y) < 1e-12 for x, y in zip(a, b))
    with pytest.raises(ValueError):
        walk_history(cfg, "hardware")


def test_concurrent_runs():
    cfgs = [WalkConfig(Cycle(k), steps=5) for k in range(3, 12)]
    with ThreadPoolExecutor(4) as ex:
        par = list(ex.map(lambda c: run_walk(c).distribution, cfgs))
    for c, d in zip(cfgs, par):
        assert l1_distance(d, run_walk(c).distribution) == 0


def test_sample_counts_seeded():
    d = run_walk(WalkConfig(Cycle(5), steps=3)).distribution
    a = sample_counts(d, 1000, seed=7)
    assert a == sample_counts(d, 1000, seed=7)
    assert sum(a.values()) == 1000 and set(a) <= set(d.support())
    with pytest.raises(ValueError):
        sample_counts(d, 0)
