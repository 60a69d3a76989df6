"""Acceptance gate: one test and one printed verdict line per criterion.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the verdict lines.
Everything here is seeded; reruns are bit-for-bit repeatable.
"""

import hashlib
import json
import math
import random
import time
from pathlib import Path

import numpy as np
import pytest

from wcdcube import (
    BenchConfig,
    BoltzmannPolicy,
    HeuristicSpec,
    MOVES,
    MlpLayer,
    MlpModel,
    TableDistance,
    UniformPolicy,
    WcdParams,
    apply_move,
    apply_moves,
    astar_solve,
    build_distance_table,
    canonical_key,
    exact_distance,
    export_dataset,
    gen_samples,
    inverse,
    is_solved,
    load_mlp,
    mlp_forward,
    neighbors,
    run_bench,
    scramble,
    solved_state,
    state_space_size,
    validate,
    wcd,
)
from wcdcube.cli import cli_main
from wcdcube.cube import state_space_size as sss_fn
from wcdcube.mlp import ONEHOT_ENCODING

REPO_ROOT = Path(__file__).resolve().parent.parent
TRAINER_ARTIFACTS = REPO_ROOT / "trainer" / "artifacts"

TREND_CORPUS_SEED = 20240801
TREND_NOISE_SEED = 101


def verdict(name: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f": {detail}"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def deep_table():
    t0 = time.perf_counter()
    table = build_distance_table(6)
    return table, time.perf_counter() - t0


def test_state_count_formula():
    n = state_space_size()
    ok = n == 43252003274489856000
    note_ok = "860" in (sss_fn.__doc__ or "")
    verdict(
        "state-count formula",
        ok and note_ok,
        f"exact N = {n}, rounding note documented = {note_ok}",
    )


def test_group_mechanics():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    walk = solved_state()
    states = []
    for _ in range(100):
        walk = apply_moves(
            walk, [MOVES[rng.randrange(12)] for _ in range(rng.randrange(1, 8))]
        )
        states.append(walk)
    order4 = all(
        apply_moves(s, [m] * 4) == s for m in MOVES for s in states
    )
    no_early = all(
        apply_moves(s, [m] * r) != s
        for m in MOVES
        for s in states[:20]
        for r in (1, 2, 3)
    )
    inverses = all(
        apply_move(apply_move(s, m), inverse(m)) == s
        for m in MOVES
        for s in states
    )
    commute = True
    for a_letter, b_letter in (("R", "L"), ("U", "D"), ("F", "B")):
        for a in (m for m in MOVES if m.face == a_letter):
            for b in (m for m in MOVES if m.face == b_letter):
                for s in states[:25]:
                    if apply_move(apply_move(s, a), b) != apply_move(
                        apply_move(s, b), a
                    ):
                        commute = False
    closure = True
    walk = solved_state()
    for _ in range(10_000):
        walk = apply_move(walk, MOVES[rng.randrange(12)])
        if validate(walk) is not None:
            closure = False
            break
    elapsed = time.perf_counter() - t0
    verdict(
        "group mechanics",
        order4 and no_early and inverses and commute and closure and elapsed < 5.0,
        f"order4={order4} inverses={inverses} commutation={commute} "
        f"closure(10k)={closure} in {elapsed:.2f}s",
    )


def test_bfs_layer_counts(deep_table):
    table, build_s = deep_table
    counts = table.layer_counts()
    ok = counts[1] == 12 and counts[2] == 114 and build_s < 300.0
    verdict(
        "bfs layer counts",
        ok,
        f"|d=1|={counts[1]} |d=2|={counts[2]} depth-6 build {build_s:.1f}s "
        f"({len(table)} states)",
    )


def test_optimality_exact_heuristic(deep_table):
    table, _ = deep_table
    f_d = TableDistance(table)
    params = WcdParams(mu=0.5, k=0)
    t0 = time.perf_counter()
    all_optimal = True
    all_solve = True
    for i in range(100):
        state, _ = scramble(3000 + i, 1 + (i % 6))
        sol = astar_solve(state, params, f_d, UniformPolicy())
        if sol.length != exact_distance(table, state):
            all_optimal = False
        if not is_solved(apply_moves(state, sol.moves)):
            all_solve = False
    elapsed = time.perf_counter() - t0
    verdict(
        "optimality with exact heuristic",
        all_optimal and all_solve and elapsed < 60.0,
        f"100/100 optimal={all_optimal} replayed={all_solve} in {elapsed:.2f}s",
    )


def test_wcd_deviation_bound(deep_table):
    table, _ = deep_table
    f_d = TableDistance(table)
    states = []
    for depth in range(5):
        states.extend(table.states_at(depth))
    worst_txt = []
    ok = True
    for k, mu in ((1, 0.5), (2, 0.5), (1, 0.25)):
        params = WcdParams(mu=mu, k=k)
        bound = k * (1.0 - mu) + 1e-9
        for f_p in (UniformPolicy(), BoltzmannPolicy(f_d)):
            worst = max(abs(wcd(s, params, f_d, f_p) - f_d(s)) for s in states)
            if worst > bound:
                ok = False
            worst_txt.append(f"(k={k},mu={mu}):{worst:.4f}")
    verdict(
        "wcd deviation bound",
        ok,
        f"{len(states)} states, worst deviations {' '.join(worst_txt[::2])} "
        f"all within k*(1-mu)+1e-9",
    )


def test_bounded_suboptimality_still_optimal(deep_table):
    table, _ = deep_table
    f_d = TableDistance(table)
    params = WcdParams(mu=0.5, k=1)  # k*(1-mu) = 0.5 < 1
    corpus = gen_samples(50, 1, 5, seed=4101)
    ok = True
    for f_p in (UniformPolicy(), BoltzmannPolicy(f_d)):
        for state, _ in corpus:
            sol = astar_solve(state, params, f_d, f_p)
            if sol.length != exact_distance(table, state):
                ok = False
    verdict(
        "bounded-suboptimality optimality",
        ok,
        "k=1 mu=0.5 with uniform and boltzmann policies, 50 depth<=5 samples",
    )


def test_brute_force_wcd_equivalence(deep_table):
    table, _ = deep_table
    f_d = TableDistance(table)

    def naive(state, k, mu, f_p):
        if k == 0:
            return float(f_d(state))
        p = f_p(state)
        acc = 0.0
        for i, (_, child) in enumerate(neighbors(state)):
            acc += p[i] * naive(child, k - 1, mu, f_p)
        return mu * naive(state, k - 1, mu, f_p) + (1.0 - mu) * acc

    states = []
    for depth in range(3):
        states.extend(table.states_at(depth))
    worst = 0.0
    for k in (1, 2):
        params = WcdParams(mu=0.5, k=k)
        for f_p in (UniformPolicy(), BoltzmannPolicy(f_d)):
            for s in states:
                diff = abs(wcd(s, params, f_d, f_p) - naive(s, k, 0.5, f_p))
                worst = max(worst, diff)
    verdict(
        "brute-force wcd equivalence",
        worst <= 1e-12,
        f"{len(states)} states x k in {{1,2}} x 2 policies, worst |diff| = {worst:.2e}",
    )


def test_noisy_oracle_node_reduction(deep_table):
    table, _ = deep_table
    t0 = time.perf_counter()
    cfg = BenchConfig(
        samples=50,
        min_depth=5,
        max_depth=6,
        seed=TREND_CORPUS_SEED,
        heuristics=[
            HeuristicSpec(kind="noisy", sigma=1.5, noise_seed=TREND_NOISE_SEED, k=0),
            HeuristicSpec(
                kind="noisy",
                sigma=1.5,
                noise_seed=TREND_NOISE_SEED,
                k=1,
                mu=0.5,
                policy="boltzmann",
            ),
        ],
    )
    report = run_bench(cfg, table=table)
    s0, s1 = report.summaries
    elapsed = time.perf_counter() - t0
    ok = (
        s0.solved == s1.solved == 50
        and s1.avg_searched_nodes < s0.avg_searched_nodes
        and s1.avg_length <= s0.avg_length
        and elapsed < 600.0
    )
    verdict(
        "noisy-oracle node reduction",
        ok,
        f"nodes {s0.avg_searched_nodes:.3f} -> {s1.avg_searched_nodes:.3f}, "
        f"length {s0.avg_length:.3f} -> {s1.avg_length:.3f}, "
        f"50 samples in {elapsed:.1f}s",
    )


def test_mlp_inference(deep_table):
    del deep_table  # ordering only; criterion is standalone
    # Closed forms: identity weights pass through, zero weights emit bias.
    ident = MlpModel(
        "raw-4", [MlpLayer(4, 4, np.eye(4), np.zeros(4), "linear")]
    )
    x = np.array([1.5, -2.0, 0.0, 3.25])
    identity_ok = np.array_equal(mlp_forward(ident, x), x)
    bias = np.array([2.0, -1.0, 0.5])
    zeros = MlpModel(
        "raw-4", [MlpLayer(4, 3, np.zeros((4, 3)), bias, "linear")]
    )
    zero_ok = np.array_equal(mlp_forward(zeros, x), bias)
    # Hand-computed toy: see test_mlp.py for the arithmetic.
    toy = MlpModel(
        "raw-2",
        [
            MlpLayer(2, 2, np.array([[1.0, -1.0], [2.0, 0.5]]),
                     np.array([0.25, -0.25]), "relu"),
            MlpLayer(2, 2, np.array([[1.0, 2.0], [3.0, 4.0]]),
                     np.array([0.5, -0.5]), "linear"),
        ],
    )
    y = mlp_forward(toy, [1.0, 0.5])
    toy_ok = abs(y[0] - 2.75) <= 1e-12 and abs(y[1] - 4.0) <= 1e-12
    # Softmax normalization across 1000 scrambled states.
    rng = np.random.default_rng(77)
    net = MlpModel(
        ONEHOT_ENCODING,
        [
            MlpLayer(324, 16, rng.normal(0, 0.2, (324, 16)), np.zeros(16), "relu"),
            MlpLayer(16, 12, rng.normal(0, 0.2, (16, 12)), np.zeros(12), "softmax"),
        ],
    )
    from wcdcube import encode_onehot

    worst_sum = 0.0
    for i in range(1000):
        state, _ = scramble(5000 + i, 1 + (i % 12))
        p = mlp_forward(net, encode_onehot(state))
        worst_sum = max(worst_sum, abs(float(p.sum()) - 1.0))
    softmax_ok = worst_sum <= 1e-9
    verdict(
        "mlp inference",
        identity_ok and zero_ok and toy_ok and softmax_ok,
        f"identity={identity_ok} zero={zero_ok} toy<=1e-12={toy_ok} "
        f"softmax worst |sum-1| = {worst_sum:.2e}",
    )


def test_cli_end_to_end(capsys):
    code = cli_main(["solve", "--moves", "R U", "--heuristic", "exact"])
    out = capsys.readouterr().out
    lines = dict(l.split(": ", 1) for l in out.strip().splitlines())
    from wcdcube import parse_moves

    start = apply_moves(solved_state(), parse_moves("R U"))
    replay = is_solved(apply_moves(start, parse_moves(lines["solution"])))
    ok_solve = code == 0 and int(lines["length"]) == 2 and replay
    bad1 = cli_main(["solve", "--moves", "R", "--k", "not-a-number"])
    capsys.readouterr()
    bad2 = cli_main(["solve", "--frobnicate"])
    capsys.readouterr()
    ok_usage = bad1 == 2 and bad2 == 2
    verdict(
        "cli end-to-end",
        ok_solve and ok_usage,
        f"solve exit 0 length 2 replay={replay}; malformed flags exit 2",
    )


def test_trained_policy_cross_engine(tmp_path):
    weights_path = TRAINER_ARTIFACTS / "policy_weights.json"
    summary_path = TRAINER_ARTIFACTS / "policy_weights.summary.json"
    if not weights_path.exists() or not summary_path.exists():
        pytest.skip("trainer artifacts not built yet")
    summary = json.loads(summary_path.read_text())
    model = load_mlp(weights_path.read_bytes())
    dataset_path = tmp_path / "dataset.jsonl"
    export_dataset(
        summary["dataset"]["max_depth"],
        summary["dataset"]["seed"],
        dataset_path,
    )
    digest = hashlib.sha256(dataset_path.read_bytes()).hexdigest()
    dataset_ok = digest == summary["dataset"]["sha256"]
    lines = dataset_path.read_text().splitlines()
    letters = [m.letter for m in MOVES]
    hits = 0
    total = 0
    for raw in lines[1:]:
        rec = json.loads(raw)
        x = np.frombuffer(rec["onehot"].encode(), dtype=np.uint8) - ord("0")
        p = mlp_forward(model, x.astype(np.float64))
        if letters[int(np.argmax(p))] in rec["actions"]:
            hits += 1
        total += 1
    primary_acc = hits / total
    val_acc = summary["val_accuracy"]
    agree = abs(primary_acc - summary["full_accuracy"])
    ok = val_acc >= 0.80 and agree <= 0.005
    verdict(
        "trained policy cross-engine",
        ok,
        f"val_accuracy={val_acc:.4f} (>=0.80), full-set accuracy "
        f"primary={primary_acc:.4f} trainer={summary['full_accuracy']:.4f} "
        f"(|diff|={agree:.4f} <= 0.005), dataset sha256 match={dataset_ok}",
    )
    assert dataset_ok
