"""Action-probability evaluators.

A policy maps a state to a probability vector over the 12 actions in the
fixed action order (R, r, L, l, U, u, D, d, F, f, B, b).  Entries are
non-negative and sum to 1 within PROB_SUM_TOL.
"""

from __future__ import annotations

import math
from typing import Protocol

import numpy as np

from .cube import NUM_ACTIONS, CubeState, encode_onehot, neighbors
from .distance import DistanceEvaluator, OutOfRangeError
from .mlp import ONEHOT_ENCODING, MlpModel, mlp_forward

PROB_SUM_TOL = 1e-9

DEFAULT_TEMPERATURE = 0.5


class PolicyEvaluator(Protocol):
    """Behavioral contract: state -> probability vector over the 12 actions."""

    def __call__(self, state: CubeState) -> np.ndarray: ...


def check_prob_vector(p) -> np.ndarray:
    """Assert the ProbVector12 contract; returns the vector as an array."""
    v = np.asarray(p, dtype=np.float64)
    if v.shape != (NUM_ACTIONS,):
        raise ValueError(f"probability vector has shape {v.shape}, want (12,)")
    if np.any(v < 0):
        raise ValueError("probability vector has negative entries")
    if abs(float(np.sum(v)) - 1.0) > PROB_SUM_TOL:
        raise ValueError(f"probabilities sum to {float(np.sum(v))!r}, not 1")
    return v


_UNIFORM = np.full(NUM_ACTIONS, 1.0 / NUM_ACTIONS, dtype=np.float64)
_UNIFORM.setflags(write=False)


class UniformPolicy:
    """Every action equally likely at every state."""

    def __call__(self, state: CubeState) -> np.ndarray:
        return _UNIFORM


def policy_uniform() -> UniformPolicy:
    return UniformPolicy()


class BoltzmannPolicy:
    """Softmax over negated neighbor distances.

    A desk-scale surrogate for a trained action-probability network: the
    probability of action A is proportional to exp(-f_d(s_A) / temperature),
    so actions leading to lower-distance neighbors get more mass.  Neighbor
    evaluations that raise :class:`OutOfRangeError` are scored as
    ``max_depth + 1``.
    """

    def __init__(
        self, f_d: DistanceEvaluator, temperature: float = DEFAULT_TEMPERATURE
    ):
        if temperature <= 0:
            raise ValueError("temperature must be > 0")
        self.f_d = f_d
        self.temperature = float(temperature)

    def __call__(self, state: CubeState) -> np.ndarray:
        scores = []
        for _, child in neighbors(state):
            try:
                d = float(self.f_d(child))
            except OutOfRangeError as exc:
                d = float(exc.max_depth + 1)
            scores.append(-d / self.temperature)
        top = max(scores)
        exps = [math.exp(s - top) for s in scores]
        total = sum(exps)
        return np.array([e / total for e in exps], dtype=np.float64)


def policy_from_distance(
    f_d: DistanceEvaluator, temperature: float = DEFAULT_TEMPERATURE
) -> BoltzmannPolicy:
    return BoltzmannPolicy(f_d, temperature)


class MlpPolicy:
    """Policy computed by a loaded feed-forward network on sticker one-hots."""

    def __init__(self, model: MlpModel):
        model.validate()
        if model.input_encoding != ONEHOT_ENCODING:
            raise ValueError(
                f"model expects encoding {model.input_encoding!r}, "
                f"policy requires {ONEHOT_ENCODING!r}"
            )
        if model.output_width != NUM_ACTIONS:
            raise ValueError(
                f"model emits {model.output_width} outputs, policy needs "
                f"{NUM_ACTIONS}"
            )
        if model.layers[-1].activation != "softmax":
            raise ValueError("model's final activation must be softmax")
        self.model = model

    def __call__(self, state: CubeState) -> np.ndarray:
        return mlp_forward(self.model, encode_onehot(state))


def policy_from_mlp(model: MlpModel) -> MlpPolicy:
    return MlpPolicy(model)
