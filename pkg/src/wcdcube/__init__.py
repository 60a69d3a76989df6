"""Rubik's cube solving with convolution-refined distance heuristics.

The package models the 3x3x3 cube in the quarter-turn metric, builds exact
BFS distance tables around the solved state, refines any distance estimate
by weighted averaging over policy-selected neighborhoods, and solves
scrambles with A* driven by the refined heuristic.  A benchmark harness
compares heuristics on shared scramble corpora and exports labeled training
data for external policy learners.
"""

from .cube import (
    ACTION_LETTERS,
    CubeState,
    KEY_LENGTH,
    MOVES,
    Move,
    SOLVED_KEY,
    apply_move,
    apply_moves,
    canonical_key,
    encode_onehot,
    format_moves,
    inverse,
    invert_sequence,
    is_solved,
    neighbors,
    parse_move,
    parse_moves,
    scramble,
    solved_state,
    state_from_key,
    state_space_size,
    to_facelets,
    validate,
)
from .distance import (
    DEFAULT_TABLE_DEPTH,
    DistanceEvaluator,
    DistanceTable,
    NoisyDistance,
    OutOfRangeError,
    ResourceLimitError,
    TableDistance,
    build_distance_table,
    exact_distance,
    load_distance_table,
    noisy_distance,
    save_distance_table,
)
from .mlp import (
    MlpFormatError,
    MlpLayer,
    MlpModel,
    MlpValidationError,
    load_mlp,
    mlp_forward,
    save_mlp,
    softmax,
)
from .policy import (
    DEFAULT_TEMPERATURE,
    BoltzmannPolicy,
    MlpPolicy,
    PolicyEvaluator,
    UniformPolicy,
    check_prob_vector,
    policy_from_distance,
    policy_from_mlp,
    policy_uniform,
)
from .wcd import (
    NeighborhoodCache,
    WcdBatchError,
    WcdParams,
    expand_ball,
    wcd,
    wcd_batch,
)
from .solver import (
    SearchLimitExceeded,
    SearchLimits,
    Solution,
    astar_solve,
    heuristic_h,
)
from .bench import (
    BenchConfig,
    BenchReport,
    CorpusExhausted,
    HeuristicSpec,
    HeuristicSummary,
    SampleOutcome,
    export_dataset,
    format_report_table,
    gen_samples,
    load_bench_config,
    run_bench,
    summarize,
    write_report_csv,
    write_report_json,
)

__version__ = "0.1.0"

__all__ = [
    "ACTION_LETTERS",
    "BenchConfig",
    "BenchReport",
    "BoltzmannPolicy",
    "CorpusExhausted",
    "CubeState",
    "DEFAULT_TABLE_DEPTH",
    "DEFAULT_TEMPERATURE",
    "DistanceEvaluator",
    "DistanceTable",
    "HeuristicSpec",
    "HeuristicSummary",
    "KEY_LENGTH",
    "MOVES",
    "MlpFormatError",
    "MlpLayer",
    "MlpModel",
    "MlpPolicy",
    "MlpValidationError",
    "Move",
    "NeighborhoodCache",
    "NoisyDistance",
    "OutOfRangeError",
    "PolicyEvaluator",
    "ResourceLimitError",
    "SOLVED_KEY",
    "SampleOutcome",
    "SearchLimitExceeded",
    "SearchLimits",
    "Solution",
    "TableDistance",
    "UniformPolicy",
    "WcdBatchError",
    "WcdParams",
    "apply_move",
    "apply_moves",
    "astar_solve",
    "build_distance_table",
    "canonical_key",
    "encode_onehot",
    "exact_distance",
    "expand_ball",
    "export_dataset",
    "format_moves",
    "format_report_table",
    "gen_samples",
    "heuristic_h",
    "inverse",
    "invert_sequence",
    "is_solved",
    "load_bench_config",
    "load_distance_table",
    "load_mlp",
    "mlp_forward",
    "neighbors",
    "noisy_distance",
    "parse_move",
    "parse_moves",
    "policy_from_distance",
    "policy_from_mlp",
    "policy_uniform",
    "run_bench",
    "save_distance_table",
    "save_mlp",
    "scramble",
    "softmax",
    "solved_state",
    "state_from_key",
    "state_space_size",
    "summarize",
    "to_facelets",
    "validate",
    "wcd",
    "wcd_batch",
    "write_report_csv",
    "write_report_json",
]
