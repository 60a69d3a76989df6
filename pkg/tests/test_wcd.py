"""Weighted convolutional distance against a brute-force oracle."""

import random

import numpy as np
import pytest

from wcdcube import (
    BoltzmannPolicy,
    NoisyDistance,
    ResourceLimitError,
    TableDistance,
    UniformPolicy,
    WcdBatchError,
    WcdParams,
    canonical_key,
    exact_distance,
    expand_ball,
    neighbors,
    scramble,
    solved_state,
    wcd,
    wcd_batch,
)


def naive_wcd(state, k, mu, f_d, f_p):
    """Literal 12^k-branch recursion; no sharing, no truncation."""
    if k == 0:
        return float(f_d(state))
    p = f_p(state)
    acc = 0.0
    for i, (_, child) in enumerate(neighbors(state)):
        acc += p[i] * naive_wcd(child, k - 1, mu, f_d, f_p)
    return mu * naive_wcd(state, k - 1, mu, f_d, f_p) + (1.0 - mu) * acc


class CountingEvaluator:
    def __init__(self, inner):
        self.inner = inner
        self.calls = 0

    def __call__(self, state):
        self.calls += 1
        return self.inner(state)


def test_params_validation():
    WcdParams(mu=0.5, k=0)
    WcdParams(mu=0.999, k=10)
    with pytest.raises(ValueError):
        WcdParams(mu=0.0, k=1)
    with pytest.raises(ValueError):
        WcdParams(mu=1.0, k=1)
    with pytest.raises(ValueError):
        WcdParams(mu=0.5, k=-1)


def test_k_zero_is_exactly_f_d(table4):
    f_d = TableDistance(table4)
    params = WcdParams(mu=0.5, k=0)
    for seed in range(20):
        state, _ = scramble(seed, 4)
        assert wcd(state, params, f_d, UniformPolicy()) == f_d(state)


def test_matches_naive_recursion_uniform(table5):
    f_d = TableDistance(table5)
    f_p = UniformPolicy()
    rng = random.Random(50)
    for k in (1, 2):
        for mu in (0.25, 0.5, 0.8):
            params = WcdParams(mu=mu, k=k)
            for _ in range(8):
                state, _ = scramble(rng.getrandbits(32), rng.randrange(4))
                got = wcd(state, params, f_d, f_p)
                want = naive_wcd(state, k, mu, f_d, f_p)
                assert abs(got - want) <= 1e-12


def test_matches_naive_recursion_boltzmann(table5):
    f_d = TableDistance(table5)
    f_p = BoltzmannPolicy(f_d, temperature=0.5)
    rng = random.Random(51)
    for k in (1, 2):
        params = WcdParams(mu=0.5, k=k)
        for _ in range(6):
            state, _ = scramble(rng.getrandbits(32), rng.randrange(4))
            got = wcd(state, params, f_d, f_p)
            want = naive_wcd(state, k, 0.5, f_d, f_p)
            assert abs(got - want) <= 1e-12


def test_matches_naive_recursion_noisy(table5):
    f_d = NoisyDistance(TableDistance(table5), sigma=1.5, seed=5)
    f_p = UniformPolicy()
    params = WcdParams(mu=0.5, k=2)
    for seed in range(5):
        state, _ = scramble(seed, 3)
        got = wcd(state, params, f_d, f_p)
        want = naive_wcd(state, 2, 0.5, f_d, f_p)
        assert abs(got - want) <= 1e-12


def test_deviation_bound_exact_f_d(table5):
    # |wcd - f_d| <= k * (1 - mu) whenever f_d changes by at most 1 per move.
    f_d = TableDistance(table5)
    rng = random.Random(52)
    for k, mu in ((1, 0.5), (2, 0.5), (1, 0.25), (3, 0.7)):
        params = WcdParams(mu=mu, k=k)
        for f_p in (UniformPolicy(), BoltzmannPolicy(f_d)):
            for _ in range(10):
                state, _ = scramble(rng.getrandbits(32), rng.randrange(3))
                h = wcd(state, params, f_d, f_p)
                assert abs(h - f_d(state)) <= k * (1.0 - mu) + 1e-9


def test_uniform_closed_form_at_distance_d(table5):
    # Every neighbor of a distance-d state sits at d-1 or d+1 (parity), so
    # with a uniform policy one layer gives
    #   mu*d + (1-mu) * (d + (n_up - n_down)/12).
    f_d = TableDistance(table5)
    params = WcdParams(mu=0.5, k=1)
    rng = random.Random(53)
    for _ in range(20):
        state, _ = scramble(rng.getrandbits(32), rng.randrange(4))
        d = exact_distance(table5, state)
        downs = ups = 0
        for _, child in neighbors(state):
            dc = exact_distance(table5, child)
            assert abs(dc - d) == 1
            if dc < d:
                downs += 1
            else:
                ups += 1
        expected = 0.5 * d + 0.5 * (d + (ups - downs) / 12.0)
        assert wcd(state, params, f_d, UniformPolicy()) == pytest.approx(
            expected, abs=1e-12
        )


def test_solved_state_one_layer_value(table4):
    # All 12 neighbors of solved are at distance 1: value is exactly 1 - mu.
    f_d = TableDistance(table4)
    for mu in (0.25, 0.5, 0.9):
        got = wcd(solved_state(), WcdParams(mu=mu, k=1), f_d, UniformPolicy())
        assert got == pytest.approx(1.0 - mu, abs=1e-12)


def test_ball_sizes_are_position_independent():
    sizes = {0: 1, 1: 13, 2: 127, 3: 1195}
    for radius, want in sizes.items():
        assert len(expand_ball(solved_state(), radius)) == want
        assert len(expand_ball(scramble(99, 15)[0], radius)) == want


def test_ball_structure(table4):
    state, _ = scramble(4, 6)
    ball = expand_ball(state, 2)
    assert ball.center_key == canonical_key(state)
    assert ball.entries[ball.center_key].radius == 0
    for key, entry in ball.entries.items():
        assert canonical_key(entry.state) == key
        if entry.radius < 2:
            assert entry.neighbor_keys is not None
            assert len(entry.neighbor_keys) == 12
            got = [canonical_key(c) for _, c in neighbors(entry.state)]
            assert list(entry.neighbor_keys) == got
        else:
            assert entry.neighbor_keys is None


def test_ball_budget_enforced():
    with pytest.raises(ResourceLimitError):
        expand_ball(solved_state(), 3, state_budget=100)
    with pytest.raises(ValueError):
        expand_ball(solved_state(), -1)


def test_evaluation_economy(table5):
    # k layers touch f_d once per ball state and f_p once per inner state.
    state, _ = scramble(8, 5)
    f_p_counts = {1: 1, 2: 13}
    for k, expected_fp in f_p_counts.items():
        f_d = CountingEvaluator(TableDistance(table5))
        f_p = CountingEvaluator(UniformPolicy())
        wcd(state, WcdParams(mu=0.5, k=k), f_d, f_p)
        assert f_d.calls == len(expand_ball(state, k))
        assert f_p.calls == expected_fp


def test_batch_matches_scalar(table5):
    f_d = TableDistance(table5)
    f_p = BoltzmannPolicy(f_d)
    params = WcdParams(mu=0.5, k=2)
    states = [scramble(s, 3)[0] for s in range(10)]
    batch = wcd_batch(states, params, f_d, f_p)
    assert batch == [wcd(s, params, f_d, f_p) for s in states]


def test_batch_reports_per_element_errors(table4):
    poison_key = canonical_key(scramble(2, 3)[0])

    class Poisoned:
        def __init__(self, inner):
            self.inner = inner

        def __call__(self, state):
            if canonical_key(state) == poison_key:
                raise RuntimeError("poisoned state")
            return self.inner(state)

    f_d = Poisoned(TableDistance(table4))
    states = [scramble(s, 3)[0] for s in range(4)]  # index 2 is poisoned
    params = WcdParams(mu=0.5, k=0)
    with pytest.raises(WcdBatchError) as exc:
        wcd_batch(states, params, f_d, UniformPolicy())
    err = exc.value
    assert set(err.errors) == {2}
    assert isinstance(err.errors[2], RuntimeError)
    assert set(err.results) == {0, 1, 3}
    clean = TableDistance(table4)
    for i in err.results:
        assert err.results[i] == wcd(states[i], params, clean, UniformPolicy())


def test_batch_empty_and_single(table4):
    f_d = TableDistance(table4)
    assert wcd_batch([], WcdParams(mu=0.5, k=1), f_d, UniformPolicy()) == []
    s = scramble(1, 2)[0]
    params = WcdParams(mu=0.5, k=1)
    assert wcd_batch([s], params, f_d, UniformPolicy()) == [
        wcd(s, params, f_d, UniformPolicy())
    ]


def test_wcd_is_deterministic(table5):
    f_d = TableDistance(table5)
    f_p = BoltzmannPolicy(f_d)
    params = WcdParams(mu=0.5, k=2)
    state, _ = scramble(77, 4)
    a = wcd(state, params, f_d, f_p)
    b = wcd(state, params, f_d, f_p)
    assert a == b
