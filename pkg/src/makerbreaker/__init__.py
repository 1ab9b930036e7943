"""Biased Maker-Breaker games on complete k-uniform hypergraphs.

Set ``MAKERBREAKER_DISABLE_NUMBA=1`` before import to run the pure numpy /
Python kernels instead of the compiled ones.
"""

from ._kernels import NUMBA_AVAILABLE, USE_NUMBA
from .board import (BREAKER, MAKER, AFamily, Board, EdgeId, GameState, a_family,
                    build_lcycle_board, colex_rank, colex_unrank, complete_board,
                    sample_available_edges, sample_available_incident_edge)
from .breaker import (BoxGameInstance, GreedyBreaker, IsolationBreaker, RandomBreaker,
                      boxmaker_allocation, check_grow_invariant, greedy_breaker_move,
                      play_box_game, solve_box_game)
from .engine import (BREAKER_WIN, MAKER_WIN, MOVE_LIMIT, BiasSpec, GameRecord, compute_bias,
                     play_game, replay)
from .errors import (IllegalMove, InvalidEdge, InvalidParameters, InvalidRank, MakerBreakerError,
                     RecordParseError, SizeLimitExceeded, StrategyFailure)
from .experiments import SummaryStats, TrialConfig, bias_sweep, run_trials
from .games import GameSetup
from .maker import BhcMaker, DangerMaker, DangerTracker, LCycleMaker, RankMaker, danger_move
from .verify import (BergeCertificate, GF2Basis, LCycleCertificate, boosters, find_dependency,
                     gf2_rank, hall_violator, is_berge_hamiltonian, is_expander,
                     longest_berge_path, max_matching, min_degree, verify_lcycle,
                     verify_rainbow, verify_record)

__version__ = "0.1.0"
