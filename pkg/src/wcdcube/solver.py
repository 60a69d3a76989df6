"""A* search over the cube graph with the WCD heuristic.

Best-first expansion with lazy deletion on the frontier heap.  Tie-breaking
on equal cost is fully deterministic: prefer larger g (deeper nodes), then
the lexicographically smaller canonical key.  The heuristic value of a state
is cached by key, so frontier re-insertions never recompute the WCD.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from heapq import heappop, heappush

from .cube import (
    MOVES,
    SOLVED_KEY,
    CubeState,
    Move,
    canonical_key,
    neighbors,
    validate,
)
from .distance import DistanceEvaluator
from .policy import PolicyEvaluator
from .wcd import WcdParams, wcd


@dataclass(frozen=True)
class SearchLimits:
    """Caps on closed-set size and wall-clock time for one solve."""

    max_closed_nodes: int = 1_000_000
    max_time: float = 600.0  # seconds

    def __post_init__(self):
        if self.max_closed_nodes <= 0:
            raise ValueError("max_closed_nodes must be positive")
        if self.max_time <= 0:
            raise ValueError("max_time must be positive")


@dataclass(slots=True)
class SearchNode:
    """Bookkeeping for one discovered state: f = g + h exactly."""

    key: bytes
    g: int
    h: float
    f: float
    parent: bytes | None
    move: Move | None


@dataclass(frozen=True)
class Solution:
    moves: tuple[Move, ...]
    length: int
    searched_nodes: int  # states moved to the closed set
    elapsed: float  # seconds spent in the search loop
    heuristic: str


class SearchLimitExceeded(RuntimeError):
    """A search limit fired before the solved state was closed."""

    def __init__(self, reason: str, searched_nodes: int, elapsed: float):
        super().__init__(
            f"{reason} after closing {searched_nodes} nodes in {elapsed:.3f}s"
        )
        self.reason = reason
        self.searched_nodes = searched_nodes
        self.elapsed = elapsed


def heuristic_h(
    state: CubeState,
    params: WcdParams,
    f_d: DistanceEvaluator,
    f_p: PolicyEvaluator,
) -> float:
    """Piecewise heuristic: 0 at the solved state, else the k-layer WCD."""
    if canonical_key(state) == SOLVED_KEY:
        return 0.0
    return wcd(state, params, f_d, f_p)


def reconstruct_path(
    goal_key: bytes, nodes: dict[bytes, SearchNode]
) -> tuple[Move, ...]:
    """Walk parent links back from the goal and return the forward sequence."""
    moves = []
    key = goal_key
    for _ in range(len(nodes) + 1):
        node = nodes.get(key)
        if node is None:
            raise RuntimeError("broken parent chain (solver bug)")
        if node.parent is None:
            moves.reverse()
            return tuple(moves)
        moves.append(node.move)
        key = node.parent
    raise RuntimeError("parent chain has a cycle (solver bug)")


def astar_solve(
    start: CubeState,
    params: WcdParams,
    f_d: DistanceEvaluator,
    f_p: PolicyEvaluator,
    limits: SearchLimits = SearchLimits(),
    label: str | None = None,
) -> Solution:
    """Find a move sequence from ``start`` to solved.

    Repeatedly closes the frontier node with minimum f, inserting not-yet-
    closed neighbors with g+1 and the cached heuristic; duplicate frontier
    hits keep the lower-g copy (stale heap entries are skipped when popped).
    Terminates when the solved state is closed.  Raises
    :class:`SearchLimitExceeded` when a limit fires first.
    """
    problem = validate(start)
    if problem is not None:
        raise ValueError(f"start state is invalid: {problem}")
    if label is None:
        label = f"wcd(k={params.k},mu={params.mu})" if params.k else "exact"

    t0 = time.perf_counter()
    start_key = canonical_key(start)
    h0 = heuristic_h(start, params, f_d, f_p)
    nodes: dict[bytes, SearchNode] = {
        start_key: SearchNode(start_key, 0, h0, h0, None, None)
    }
    states: dict[bytes, CubeState] = {start_key: start}
    h_cache: dict[bytes, float] = {start_key: h0}
    closed: set[bytes] = set()
    # Heap entries: (f, -g, key); bytes keys give the deterministic final tie-break.
    frontier: list[tuple[float, int, bytes]] = [(h0, 0, start_key)]

    while frontier:
        f, neg_g, key = heappop(frontier)
        node = nodes[key]
        if key in closed or -neg_g != node.g:
            continue  # stale lazy-deleted entry
        elapsed = time.perf_counter() - t0
        if len(closed) >= limits.max_closed_nodes:
            raise SearchLimitExceeded("node limit reached", len(closed), elapsed)
        if elapsed > limits.max_time:
            raise SearchLimitExceeded("time limit reached", len(closed), elapsed)
        closed.add(key)
        if key == SOLVED_KEY:
            moves = reconstruct_path(key, nodes)
            return Solution(
                moves=moves,
                length=len(moves),
                searched_nodes=len(closed),
                elapsed=time.perf_counter() - t0,
                heuristic=label,
            )
        g_child = node.g + 1
        state = states[key]
        for move, child in neighbors(state):
            ckey = canonical_key(child)
            if ckey in closed:
                continue
            known = nodes.get(ckey)
            if known is not None and known.g <= g_child:
                continue
            h = h_cache.get(ckey)
            if h is None:
                if ckey == SOLVED_KEY:
                    h = 0.0
                else:
                    h = wcd(child, params, f_d, f_p)
                h_cache[ckey] = h
            child_node = SearchNode(ckey, g_child, h, g_child + h, key, move)
            nodes[ckey] = child_node
            states[ckey] = child
            heappush(frontier, (child_node.f, -g_child, ckey))

    # The cube graph is connected, so an empty frontier indicates a bug.
    raise RuntimeError("frontier exhausted without reaching solved")
