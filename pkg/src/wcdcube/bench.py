"""Benchmark harness: scramble corpora, heuristic comparison runs, exports.

A run solves one deterministic scramble corpus with every configured
heuristic and reports three metrics per heuristic: average solution length,
average wall-clock time per solve, and average number of searched nodes.
Failed samples (limit hits) are reported separately and never folded into
the averages.
"""

from __future__ import annotations

import csv
import json
import random
import time
from dataclasses import asdict, dataclass, field

from .cube import (
    MOVES,
    CubeState,
    Move,
    canonical_key,
    encode_onehot,
    format_moves,
    neighbors,
    scramble,
    state_from_key,
)
from .distance import (
    DEFAULT_TABLE_DEPTH,
    DistanceTable,
    NoisyDistance,
    TableDistance,
    build_distance_table,
    load_distance_table,
)
from .mlp import load_mlp
from .policy import (
    DEFAULT_TEMPERATURE,
    BoltzmannPolicy,
    UniformPolicy,
    policy_from_mlp,
)
from .solver import SearchLimitExceeded, SearchLimits, astar_solve
from .wcd import WcdParams

HEURISTIC_KINDS = ("exact", "deep-k", "noisy")
POLICY_KINDS = ("uniform", "boltzmann")  # plus "mlp:PATH"

ACTION_ORDER_STRING = "".join(m.letter for m in MOVES)
DATASET_FORMAT = "wcdcube-dataset"


class CorpusExhausted(RuntimeError):
    """Could not draw enough distinct samples from the requested depth range."""


def gen_samples(
    n: int, min_depth: int, max_depth: int, seed: int
) -> list[tuple[CubeState, tuple[Move, ...]]]:
    """Deterministic corpus of ``n`` pairwise-distinct scrambled states.

    Scramble depth is drawn uniformly from [min_depth, max_depth]; duplicate
    states (by canonical key) are rejected and redrawn.
    """
    if n <= 0:
        raise ValueError("sample count must be positive")
    if not 0 <= min_depth <= max_depth:
        raise ValueError("need 0 <= min_depth <= max_depth")
    rng = random.Random(seed)
    samples = []
    seen = set()
    rejects = 0
    reject_limit = max(1000, 100 * n)
    while len(samples) < n:
        depth = rng.randint(min_depth, max_depth)
        state, moves = scramble(rng.getrandbits(48), depth)
        key = canonical_key(state)
        if key in seen:
            rejects += 1
            if rejects > reject_limit:
                raise CorpusExhausted(
                    f"drew {rejects} duplicates while collecting sample "
                    f"{len(samples) + 1}/{n} in depth range "
                    f"[{min_depth},{max_depth}]"
                )
            continue
        seen.add(key)
        samples.append((state, moves))
    return samples


# --------------------------------------------------------------------------
# Configuration.
# --------------------------------------------------------------------------

@dataclass
class HeuristicSpec:
    """One heuristic to benchmark.

    kind: "exact" (plain table lookup, k forced to 0), "deep-k" (k-layer WCD
    over the exact table), or "noisy" (k-layer WCD over a noise-perturbed
    table, sigma > 0).  ``policy`` is "uniform", "boltzmann", or "mlp:PATH".
    """

    kind: str
    k: int = 0
    mu: float = 0.5
    sigma: float = 0.0
    noise_seed: int = 0
    policy: str = "boltzmann"
    temperature: float = DEFAULT_TEMPERATURE
    label: str = ""

    def __post_init__(self):
        if self.kind not in HEURISTIC_KINDS:
            raise ValueError(
                f"heuristic kind must be one of {HEURISTIC_KINDS}, got "
                f"{self.kind!r}"
            )
        if self.kind == "exact":
            self.k = 0
        if self.kind == "noisy" and self.sigma <= 0:
            raise ValueError("noisy heuristic needs sigma > 0")
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if self.k > 0 and not 0 < self.mu < 1:
            raise ValueError("mu must lie in (0,1)")
        if not (
            self.policy in POLICY_KINDS or self.policy.startswith("mlp:")
        ):
            raise ValueError(f"unknown policy spec {self.policy!r}")
        if not self.label:
            self.label = self._default_label()

    def _default_label(self) -> str:
        if self.kind == "exact":
            return "exact"
        parts = [f"k={self.k}"]
        if self.k > 0:
            parts += [f"mu={self.mu:g}", self.policy]
        if self.kind == "noisy":
            parts.insert(0, f"sigma={self.sigma:g}")
            return f"noisy[{','.join(parts)}]"
        return f"wcd[{','.join(parts)}]"


@dataclass
class BenchConfig:
    samples: int
    min_depth: int
    max_depth: int
    seed: int
    heuristics: list[HeuristicSpec]
    table_depth: int = DEFAULT_TABLE_DEPTH
    table_path: str | None = None
    max_nodes: int = 1_000_000
    max_time: float = 600.0
    out_csv: str | None = None
    out_json: str | None = None

    def __post_init__(self):
        if self.samples <= 0:
            raise ValueError("samples must be positive")
        if not 0 <= self.min_depth <= self.max_depth:
            raise ValueError("need 0 <= min_depth <= max_depth")
        if not self.heuristics:
            raise ValueError("at least one heuristic spec is required")


def load_bench_config(path) -> BenchConfig:
    """Read a JSON config file mirroring the BenchConfig fields."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("bench config must be a JSON object")
    known = set(BenchConfig.__dataclass_fields__)
    unknown = set(doc) - known
    if unknown:
        raise ValueError(f"unknown config field(s): {sorted(unknown)}")
    raw_heuristics = doc.pop("heuristics", [])
    if not isinstance(raw_heuristics, list):
        raise ValueError("heuristics must be a list")
    spec_fields = set(HeuristicSpec.__dataclass_fields__)
    heuristics = []
    for i, raw in enumerate(raw_heuristics):
        if not isinstance(raw, dict):
            raise ValueError(f"heuristics[{i}] must be an object")
        bad = set(raw) - spec_fields
        if bad:
            raise ValueError(f"heuristics[{i}]: unknown field(s) {sorted(bad)}")
        heuristics.append(HeuristicSpec(**raw))
    try:
        return BenchConfig(heuristics=heuristics, **doc)
    except TypeError as exc:  # missing required fields
        raise ValueError(f"bench config: {exc}") from None


# --------------------------------------------------------------------------
# Reports.
# --------------------------------------------------------------------------

CSV_COLUMNS = (
    "heuristic",
    "sample_index",
    "depth",
    "length",
    "time_s",
    "searched_nodes",
    "status",
)


@dataclass
class SampleOutcome:
    heuristic: str
    sample_index: int
    depth: int  # scramble depth
    true_distance: int | None  # exact distance when within the table ball
    length: int | None  # None when the solve failed
    time_s: float
    searched_nodes: int
    status: str  # "ok" | "limit"
    moves: str = ""


@dataclass
class HeuristicSummary:
    heuristic: str
    solved: int
    failed: int
    avg_length: float | None
    avg_time_s: float | None
    avg_searched_nodes: float | None


@dataclass
class BenchReport:
    outcomes: list[SampleOutcome]
    summaries: list[HeuristicSummary] = field(default_factory=list)

    def summary_for(self, heuristic: str) -> HeuristicSummary:
        for s in self.summaries:
            if s.heuristic == heuristic:
                return s
        raise KeyError(heuristic)


def summarize(outcomes: list[SampleOutcome]) -> list[HeuristicSummary]:
    """Per-heuristic arithmetic means over successful samples only."""
    order: list[str] = []
    groups: dict[str, list[SampleOutcome]] = {}
    for o in outcomes:
        if o.heuristic not in groups:
            order.append(o.heuristic)
            groups[o.heuristic] = []
        groups[o.heuristic].append(o)
    summaries = []
    for name in order:
        ok = [o for o in groups[name] if o.status == "ok"]
        failed = len(groups[name]) - len(ok)
        if ok:
            avg = lambda vals: sum(vals) / len(vals)  # noqa: E731
            summaries.append(
                HeuristicSummary(
                    heuristic=name,
                    solved=len(ok),
                    failed=failed,
                    avg_length=avg([o.length for o in ok]),
                    avg_time_s=avg([o.time_s for o in ok]),
                    avg_searched_nodes=avg([o.searched_nodes for o in ok]),
                )
            )
        else:
            summaries.append(
                HeuristicSummary(name, 0, failed, None, None, None)
            )
    return summaries


def _build_heuristic(spec: HeuristicSpec, table: DistanceTable):
    """Evaluator pair (f_d, f_p) and WcdParams for one spec."""
    f_d = TableDistance(table, out_of_range="clamp")
    if spec.kind == "noisy":
        f_d = NoisyDistance(f_d, spec.sigma, spec.noise_seed)
    if spec.k == 0:
        f_p = UniformPolicy()  # unused at k=0
    elif spec.policy == "uniform":
        f_p = UniformPolicy()
    elif spec.policy == "boltzmann":
        f_p = BoltzmannPolicy(f_d, spec.temperature)
    else:
        path = spec.policy.split(":", 1)[1]
        with open(path, "rb") as fh:
            f_p = policy_from_mlp(load_mlp(fh))
    # mu is irrelevant at k=0 but WcdParams still wants a legal value.
    params = WcdParams(mu=spec.mu if 0 < spec.mu < 1 else 0.5, k=spec.k)
    return params, f_d, f_p


def run_bench(cfg: BenchConfig, table: DistanceTable | None = None) -> BenchReport:
    """Solve the corpus with every heuristic and assemble the report.

    All heuristics see the identical corpus; each solve is wall-clock timed
    around the search only.  Limit failures are recorded per sample with
    status "limit".  Writes CSV/JSON files when the config names them.
    """
    if table is None:
        if cfg.table_path:
            table = load_distance_table(cfg.table_path)
        else:
            table = build_distance_table(cfg.table_depth)
    heuristics = [(spec, *_build_heuristic(spec, table)) for spec in cfg.heuristics]
    corpus = gen_samples(cfg.samples, cfg.min_depth, cfg.max_depth, cfg.seed)
    limits = SearchLimits(max_closed_nodes=cfg.max_nodes, max_time=cfg.max_time)

    outcomes = []
    for spec, params, f_d, f_p in heuristics:
        for idx, (state, scramble_moves) in enumerate(corpus):
            true_distance = table.entries.get(canonical_key(state))
            t0 = time.perf_counter()
            try:
                sol = astar_solve(
                    state, params, f_d, f_p, limits, label=spec.label
                )
                outcomes.append(
                    SampleOutcome(
                        heuristic=spec.label,
                        sample_index=idx,
                        depth=len(scramble_moves),
                        true_distance=true_distance,
                        length=sol.length,
                        time_s=sol.elapsed,
                        searched_nodes=sol.searched_nodes,
                        status="ok",
                        moves=format_moves(sol.moves),
                    )
                )
            except SearchLimitExceeded as exc:
                outcomes.append(
                    SampleOutcome(
                        heuristic=spec.label,
                        sample_index=idx,
                        depth=len(scramble_moves),
                        true_distance=true_distance,
                        length=None,
                        time_s=exc.elapsed,
                        searched_nodes=exc.searched_nodes,
                        status="limit",
                    )
                )
    report = BenchReport(outcomes=outcomes, summaries=summarize(outcomes))
    if cfg.out_csv:
        write_report_csv(report, cfg.out_csv)
    if cfg.out_json:
        write_report_json(report, cfg.out_json, cfg)
    return report


def write_report_csv(report: BenchReport, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for o in report.outcomes:
            writer.writerow(
                [
                    o.heuristic,
                    o.sample_index,
                    o.depth,
                    "" if o.length is None else o.length,
                    f"{o.time_s:.6f}",
                    o.searched_nodes,
                    o.status,
                ]
            )


def write_report_json(report: BenchReport, path, cfg: BenchConfig | None = None) -> None:
    doc = {
        "config": asdict(cfg) if cfg is not None else None,
        "outcomes": [asdict(o) for o in report.outcomes],
        "summaries": [asdict(s) for s in report.summaries],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def format_report_table(report: BenchReport) -> str:
    """Human-readable per-heuristic metric table."""
    header = f"{'heuristic':<40} {'solved':>7} {'length':>8} {'time_s':>9} {'nodes':>10}"
    lines = [header, "-" * len(header)]
    for s in report.summaries:
        if s.solved:
            lines.append(
                f"{s.heuristic:<40} {s.solved:>4}/{s.solved + s.failed:<3}"
                f" {s.avg_length:>8.3f} {s.avg_time_s:>9.4f}"
                f" {s.avg_searched_nodes:>10.3f}"
            )
        else:
            lines.append(
                f"{s.heuristic:<40} {0:>4}/{s.failed:<3} {'-':>8} {'-':>9} {'-':>10}"
            )
    return "\n".join(lines)


# --------------------------------------------------------------------------
# Training-data export.
#
# JSON-lines file: one header object, then one record per table state
# (excluding solved).  Records carry the 324-char one-hot sticker encoding
# as a 0/1 string, the set of optimal actions (move letters whose neighbor
# is one step closer to solved), and the exact distance.  Record order is
# sorted by (distance, key) and then shuffled deterministically by ``seed``.
# --------------------------------------------------------------------------

def export_dataset(
    max_depth: int,
    seed: int,
    out_path,
    table: DistanceTable | None = None,
) -> int:
    """Write the labeled optimal-action dataset; returns the record count."""
    if table is None:
        table = build_distance_table(max_depth)
    elif table.max_depth < max_depth:
        raise ValueError(
            f"table depth {table.max_depth} is shallower than requested "
            f"depth {max_depth}"
        )
    items = sorted(
        (d, key) for key, d in table.entries.items() if 0 < d <= max_depth
    )
    rng = random.Random(seed)
    rng.shuffle(items)
    count = 0
    with open(out_path, "w", encoding="utf-8") as fh:
        header = {
            "format": DATASET_FORMAT,
            "version": 1,
            "max_depth": max_depth,
            "seed": seed,
            "count": len(items),
            "action_order": ACTION_ORDER_STRING,
            "onehot_width": 324,
        }
        fh.write(json.dumps(header) + "\n")
        for d, key in items:
            state = state_from_key(key)
            onehot = encode_onehot(state)
            bits = "".join("1" if x else "0" for x in onehot)
            optimal = _optimal_actions(state, d, table)
            record = {"onehot": bits, "actions": optimal, "distance": d}
            fh.write(json.dumps(record) + "\n")
            count += 1
    return count


def _optimal_actions(state: CubeState, d: int, table: DistanceTable) -> list[str]:
    out = []
    for move, child in neighbors(state):
        nd = table.entries.get(canonical_key(child))
        if nd is not None and nd == d - 1:
            out.append(move.letter)
    return out
