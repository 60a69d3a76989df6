"""
Action policies and MLP inference
=================================

The WCD recursion weighs each neighbor by an action policy p(s): a
probability vector over the 12 quarter turns.  Policies ship in three
flavors: uniform, Boltzmann over neighbor distances, and a feedforward
network loaded from a JSON weight file.
"""

from pathlib import Path

import numpy as np

from wcdcube import (
    ACTION_LETTERS,
    TableDistance,
    apply_move,
    build_distance_table,
    exact_distance,
    inverse,
    load_mlp,
    policy_from_distance,
    policy_from_mlp,
    policy_uniform,
    scramble,
    parse_move,
)

table = build_distance_table(max_depth=5)
f_d = TableDistance(table)

# A uniform policy spreads mass evenly.
state, _ = scramble(seed=5, depth=1)
p = policy_uniform()(state)
print("uniform policy:", np.round(p, 4))

# The Boltzmann policy prefers moves whose successor sits closer to solved:
# p[A] proportional to exp(-f_d(s_A) / temperature).
boltzmann = policy_from_distance(f_d, temperature=0.5)
p = boltzmann(state)
best = ACTION_LETTERS[int(np.argmax(p))]
print("boltzmann policy:", np.round(p, 4))
print("most probable move:", best, "(this state is one move from solved)")

# A trained network, when present, plugs into the same protocol.  The weight
# file format is plain JSON: layer sizes, row-major weights, bias, and
# activation per layer, with a softmax head for policies.
weights = Path(__file__).resolve().parent.parent / "trainer/artifacts/policy_weights.json"
if weights.exists():
    model = load_mlp(weights.read_text())
    mlp_policy = policy_from_mlp(model)
    shapes = " -> ".join(str(layer.weights.shape[0]) for layer in model.layers)
    print(f"\nloaded network: {shapes} -> {model.layers[-1].weights.shape[1]}")

    # Score the network against the exact table on 200 fresh scrambles: how
    # often is its top move one that actually reduces the true distance?
    hits = 0
    trials = 200
    for seed in range(trials):
        s, _ = scramble(seed=seed + 10_000, depth=4)
        d = exact_distance(table, s)
        if d == 0:
            trials -= 1
            continue
        probs = mlp_policy(s)
        move = parse_move(ACTION_LETTERS[int(np.argmax(probs))])
        hits += exact_distance(table, apply_move(s, move)) == d - 1
    print(f"top move is optimal on {hits}/{trials} depth-4 scrambles")
else:
    print("\n(no trained weight file at", weights, "- run the trainer to create one)")

# Sanity check on one state adjacent to solved: the best move should be the
# inverse of the scramble move.
state, moves = scramble(seed=8, depth=1)
p = boltzmann(state)
print("\nscrambled by", moves[0].letter, "- policy argmax:",
      ACTION_LETTERS[int(np.argmax(p))], "expected:", inverse(moves[0]).letter)
