"""Weighted convolutional distance.

One convolution layer mixes a state's distance estimate with the
policy-weighted estimates of its 12 neighbors:

    d(0)(s)   = f_d(s)
    d(j+1)(s) = mu * d(j)(s) + (1 - mu) * sum_A p(s)[A] * d(j)(s_A)

The k-layer value d(k)(s) is evaluated over the radius-k ball around s,
expanded once and deduplicated.  A state at ball distance r only ever
contributes layers j <= k - r to the top-level value, so no evaluation
outside the ball is needed: layer j is computed exactly for every ball
state with r <= k - j, reading layer j-1 of its neighbors (which have
r <= k - j + 1 and are therefore still inside the ball).

All accumulation is double precision in the fixed action order, so batch
and scalar paths are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cube import CubeState, canonical_key, neighbors
from .distance import DistanceEvaluator, ResourceLimitError
from .policy import PolicyEvaluator

DEFAULT_BALL_BUDGET = 2_000_000


@dataclass(frozen=True)
class WcdParams:
    """Weight factor mu in (0,1) and number of convolution layers k >= 0."""

    mu: float
    k: int

    def __post_init__(self):
        if not 0.0 < self.mu < 1.0:
            raise ValueError(f"mu must lie in the open interval (0,1), got {self.mu}")
        if self.k < 0 or self.k != int(self.k):
            raise ValueError(f"k must be a non-negative integer, got {self.k}")


@dataclass
class BallEntry:
    """Per-state record inside a neighborhood cache.

    ``neighbor_keys`` is populated (in action order) for every state that was
    expanded; fringe states at the ball radius keep ``None`` since the
    recursion never reads their neighbors.  ``d`` holds the memoized layer
    values d(0), d(1), ... computed so far for this state.
    """

    state: CubeState
    radius: int
    neighbor_keys: tuple | None = None
    d: list = field(default_factory=list)


class NeighborhoodCache:
    """Deduplicated radius-k ball around a center state."""

    def __init__(self, center_key: bytes, radius: int, entries: dict):
        self.center_key = center_key
        self.radius = radius
        self.entries = entries  # canonical key -> BallEntry

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: bytes) -> bool:
        return key in self.entries


def expand_ball(
    state: CubeState, radius: int, state_budget: int = DEFAULT_BALL_BUDGET
) -> NeighborhoodCache:
    """BFS enumeration of every state within ``radius`` moves of ``state``."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    center_key = canonical_key(state)
    entries = {center_key: BallEntry(state, 0)}
    frontier = [(center_key, state)]
    for r in range(1, radius + 1):
        next_frontier = []
        for key, s in frontier:
            nkeys = []
            for _, child in neighbors(s):
                ckey = canonical_key(child)
                nkeys.append(ckey)
                if ckey not in entries:
                    if len(entries) >= state_budget:
                        raise ResourceLimitError(
                            f"ball budget {state_budget} exceeded at radius {r}"
                        )
                    entries[ckey] = BallEntry(child, r)
                    next_frontier.append((ckey, child))
            entries[key].neighbor_keys = tuple(nkeys)
        frontier = next_frontier
    return NeighborhoodCache(center_key, radius, entries)


def _evaluate(
    cache: NeighborhoodCache,
    params: WcdParams,
    f_d: DistanceEvaluator,
    f_p: PolicyEvaluator,
) -> float:
    mu = params.mu
    k = params.k
    entries = cache.entries
    for entry in entries.values():
        entry.d = [float(f_d(entry.state))]
    if k == 0:
        return entries[cache.center_key].d[0]
    policies = {}
    for j in range(1, k + 1):
        cutoff = k - j
        for key, entry in entries.items():
            if entry.radius > cutoff:
                continue
            p = policies.get(key)
            if p is None:
                p = f_p(entry.state).tolist()
                policies[key] = p
            prev = j - 1
            acc = 0.0
            nkeys = entry.neighbor_keys
            for i in range(12):
                acc += p[i] * entries[nkeys[i]].d[prev]
            entry.d.append(mu * entry.d[prev] + (1.0 - mu) * acc)
    return entries[cache.center_key].d[k]


def wcd(
    state: CubeState,
    params: WcdParams,
    f_d: DistanceEvaluator,
    f_p: PolicyEvaluator,
) -> float:
    """k-layer weighted convolutional distance of one state.

    Expands the radius-k ball once, evaluates f_d on each distinct ball state
    once and f_p on each distinct state within radius k-1 once, then iterates
    the convolution over the cached ball.  With k=0 this is exactly f_d(s).
    """
    if params.k == 0:
        return float(f_d(state))
    cache = expand_ball(state, params.k)
    return _evaluate(cache, params, f_d, f_p)


class WcdBatchError(RuntimeError):
    """One or more batch elements failed; the rest are still reported.

    ``errors`` maps failed indices to their exceptions; ``results`` holds a
    value for every index that succeeded.
    """

    def __init__(self, errors: dict, results: dict):
        failed = ", ".join(str(i) for i in sorted(errors))
        super().__init__(f"wcd failed for batch element(s) {failed}")
        self.errors = errors
        self.results = results


def wcd_batch(
    states,
    params: WcdParams,
    f_d: DistanceEvaluator,
    f_p: PolicyEvaluator,
) -> list[float]:
    """Element-wise WCD over a list of states.

    Each element is evaluated independently, so results are bit-identical to
    scalar :func:`wcd` calls and the computation is safe to fan out across
    workers.  If any element fails, :class:`WcdBatchError` carries the
    per-index exceptions together with every successful result.
    """
    results: dict[int, float] = {}
    errors: dict[int, Exception] = {}
    for i, state in enumerate(states):
        try:
            results[i] = wcd(state, params, f_d, f_p)
        except Exception as exc:  # noqa: BLE001 - reported per element
            errors[i] = exc
    if errors:
        raise WcdBatchError(errors, results)
    return [results[i] for i in range(len(results))]
