"""Nim played on a graph.

A piece stands on a vertex; a move slides it across an incident edge and
removes 1..w from that edge's weight, deleting the edge at zero.  Whoever
cannot move loses.  The package ships the game core, an exact memoized
solver with optional hypercube symmetry reduction, strategy verification
by adversarial search, random-playout property checks, a CLI and a JSON
session service for browser play.
"""

from .boards import demo_board
from .core import (
    GameGraph,
    GameState,
    Move,
    Outcome,
    apply_move,
    is_terminal,
    legal_moves,
    new_game,
    options,
    total_weight,
)
from .errors import (
    CorruptedTraceError,
    CubeSizeError,
    GraphFormatError,
    GraphNimError,
    GraphValidationError,
    IllegalMoveError,
    NoCompliantMoveError,
    OracleGuardError,
    PolicyViolationError,
    StrategyDomainError,
    StrategyError,
    StrategyViolationError,
    UnsupportedGraphError,
    WrongMoverError,
)
from .graphio import dumps, graph_from_doc, graph_to_doc, load_graph, loads, save_graph
from .hypercube import (
    MAX_DIMENSION,
    CubeSpec,
    bipartition,
    cube_info,
    display_label,
    generate_hypercube,
    hypercube,
    mask_label,
    maybe_cube_info,
    parse_label,
    truncate_levels,
)
from .solver import (
    BestMoveResult,
    SolveConfig,
    SolveResult,
    best_move,
    canonicalize,
    oracle_solve,
    solve,
    state_key,
    winning_moves,
)
from .strategy import (
    PlayoutTrace,
    PropertyReport,
    Quantifier,
    StrategyKind,
    TieBreak,
    VerificationReport,
    check_playout_properties,
    compliant_moves,
    next_move,
    random_playout,
    verify_strategy,
)

__version__ = "0.1.0"
