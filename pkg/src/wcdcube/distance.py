"""Distance oracles: exact BFS tables and derived evaluators.

A distance evaluator maps a state to an estimate of its quarter-turn
distance from solved.  The exact table enumerates the full ball around the
solved state up to a depth bound; the noisy wrapper perturbs any evaluator
with deterministic per-state Gaussian noise for smoothing experiments.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from statistics import NormalDist
from typing import BinaryIO, Protocol

from .cube import (
    KEY_LENGTH,
    SOLVED_KEY,
    CubeState,
    canonical_key,
    neighbors,
    solved_state,
    state_from_key,
)

DEFAULT_TABLE_DEPTH = 6
DEFAULT_ENTRY_BUDGET = 4_000_000


class OutOfRangeError(LookupError):
    """State lies beyond the table's depth bound; the caller picks a fallback."""

    def __init__(self, max_depth: int):
        super().__init__(f"state is farther than {max_depth} moves from solved")
        self.max_depth = max_depth


class ResourceLimitError(RuntimeError):
    """A configured state/entry budget was exceeded."""


class DistanceEvaluator(Protocol):
    """Behavioral contract: state -> real distance estimate, 0 at solved."""

    def __call__(self, state: CubeState) -> float: ...


@dataclass
class DistanceTable:
    """Exact distance-from-solved lookup, complete up to ``max_depth``."""

    max_depth: int
    entries: dict[bytes, int]

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: bytes) -> bool:
        return key in self.entries

    def layer_counts(self) -> list[int]:
        """Number of states at each exact distance 0..max_depth."""
        counts = [0] * (self.max_depth + 1)
        for d in self.entries.values():
            counts[d] += 1
        return counts

    def states_at(self, depth: int) -> list[CubeState]:
        """All stored states at one exact distance (decoded from keys)."""
        return [
            state_from_key(k) for k, d in self.entries.items() if d == depth
        ]

    def evaluator(self, out_of_range: str = "clamp") -> "TableDistance":
        return TableDistance(self, out_of_range=out_of_range)


def build_distance_table(
    max_depth: int, entry_budget: int = DEFAULT_ENTRY_BUDGET
) -> DistanceTable:
    """Breadth-first enumeration from solved, deduplicated by canonical key.

    Complete: contains every state at distance <= max_depth.  Raises
    :class:`ResourceLimitError` if the entry budget would be exceeded.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    entries = {SOLVED_KEY: 0}
    frontier = [solved_state()]
    for depth in range(1, max_depth + 1):
        keep_states = depth < max_depth
        next_frontier = []
        for state in frontier:
            for _, child in neighbors(state):
                key = canonical_key(child)
                if key not in entries:
                    if len(entries) >= entry_budget:
                        raise ResourceLimitError(
                            f"entry budget {entry_budget} exceeded while "
                            f"expanding depth {depth}"
                        )
                    entries[key] = depth
                    if keep_states:
                        next_frontier.append(child)
        frontier = next_frontier
    return DistanceTable(max_depth=max_depth, entries=entries)


def exact_distance(table: DistanceTable, state: CubeState) -> int:
    """Exact distance lookup; raises OutOfRangeError beyond the table ball."""
    d = table.entries.get(canonical_key(state))
    if d is None:
        raise OutOfRangeError(table.max_depth)
    return d


# --------------------------------------------------------------------------
# Table file format (version 1), byte-exact:
#
#   magic   4 bytes   b"WCDT"
#   version u16 LE    1
#   depth   u16 LE    max_depth
#   count   u64 LE    number of records
#   records count x (13-byte canonical key + 1 distance byte),
#           sorted ascending by key bytes.
# --------------------------------------------------------------------------

_TABLE_MAGIC = b"WCDT"
_TABLE_HEADER = struct.Struct("<4sHHQ")


def save_distance_table(table: DistanceTable, path_or_stream) -> None:
    if hasattr(path_or_stream, "write"):
        _write_table(table, path_or_stream)
    else:
        with open(path_or_stream, "wb") as fh:
            _write_table(table, fh)


def _write_table(table: DistanceTable, fh: BinaryIO) -> None:
    fh.write(
        _TABLE_HEADER.pack(
            _TABLE_MAGIC, 1, table.max_depth, len(table.entries)
        )
    )
    for key in sorted(table.entries):
        fh.write(key)
        fh.write(bytes([table.entries[key]]))


def load_distance_table(path_or_stream) -> DistanceTable:
    if hasattr(path_or_stream, "read"):
        return _read_table(path_or_stream)
    with open(path_or_stream, "rb") as fh:
        return _read_table(fh)


def _read_table(fh: BinaryIO) -> DistanceTable:
    header = fh.read(_TABLE_HEADER.size)
    if len(header) != _TABLE_HEADER.size:
        raise ValueError("truncated distance-table header")
    magic, version, max_depth, count = _TABLE_HEADER.unpack(header)
    if magic != _TABLE_MAGIC:
        raise ValueError("not a distance-table file (bad magic)")
    if version != 1:
        raise ValueError(f"unsupported distance-table version {version}")
    record = KEY_LENGTH + 1
    blob = fh.read(record * count)
    if len(blob) != record * count:
        raise ValueError("truncated distance-table records")
    entries = {}
    for i in range(count):
        off = i * record
        entries[blob[off : off + KEY_LENGTH]] = blob[off + KEY_LENGTH]
    return DistanceTable(max_depth=max_depth, entries=entries)


# --------------------------------------------------------------------------
# Evaluators.
# --------------------------------------------------------------------------

class TableDistance:
    """Exact-table distance evaluator.

    ``out_of_range`` policy for states beyond the table ball: ``"clamp"``
    evaluates them to ``max_depth + 1`` (an optimistic lower bound, so
    admissibility inside the ball is preserved); ``"raise"`` propagates
    :class:`OutOfRangeError`.
    """

    def __init__(self, table: DistanceTable, out_of_range: str = "clamp"):
        if out_of_range not in ("clamp", "raise"):
            raise ValueError("out_of_range must be 'clamp' or 'raise'")
        self.table = table
        self.out_of_range = out_of_range
        self._fallback = float(table.max_depth + 1)

    def __call__(self, state: CubeState) -> float:
        d = self.table.entries.get(canonical_key(state))
        if d is None:
            if self.out_of_range == "raise":
                raise OutOfRangeError(self.table.max_depth)
            return self._fallback
        return float(d)


class NoisyDistance:
    """Deterministic per-state Gaussian perturbation of a base evaluator.

    The noise for a state is a pure function of (seed, canonical key):
    zero-mean, standard deviation ``sigma``, derived by inverse-CDF from a
    keyed BLAKE2b hash.  Estimates are clamped at zero and the solved state
    always evaluates to 0, as the evaluator contract requires.
    """

    def __init__(self, base: DistanceEvaluator, sigma: float, seed: int):
        if sigma < 0:
            raise ValueError("sigma must be >= 0")
        self.base = base
        self.sigma = float(sigma)
        self.seed = seed
        self._hash_key = seed.to_bytes(16, "little", signed=True)
        self._normal = NormalDist()
        self._cache: dict[bytes, float] = {}

    def noise(self, key: bytes) -> float:
        eps = self._cache.get(key)
        if eps is None:
            digest = hashlib.blake2b(
                key, digest_size=8, key=self._hash_key
            ).digest()
            u = (int.from_bytes(digest, "little") + 0.5) / 2.0**64
            eps = self._normal.inv_cdf(u) * self.sigma
            self._cache[key] = eps
        return eps

    def __call__(self, state: CubeState) -> float:
        key = canonical_key(state)
        if key == SOLVED_KEY:
            return 0.0
        return max(0.0, float(self.base(state)) + self.noise(key))


def noisy_distance(
    f_d: DistanceEvaluator, sigma: float, seed: int
) -> NoisyDistance:
    """Wrap a distance evaluator with seeded per-state Gaussian noise."""
    return NoisyDistance(f_d, sigma, seed)
