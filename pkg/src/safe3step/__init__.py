"""Safe3Step (S3S) ranking engine.

Pipeline: parse a season CSV, fit score-based power ratings, convert them to
a quality-win point allocation, tally every team's games, rank by normalized
totals with a single head-to-head swap pass. An RPI reference implementation
and two schedule-sensitivity experiments ride along for comparison studies.
"""

from ._kernels import backend_name
from .fixtures import Fixture, list_fixtures, load_fixture
from .ingest import (
    Game,
    ParseError,
    SeasonDataset,
    TeamId,
    ValidationError,
    Venue,
    load_dataset,
    parse_dataset,
    save_dataset,
    schedule_components,
    serialize_dataset,
)
from .points import (
    NORMALIZED_GAMES,
    AllocationTable,
    SeasonTally,
    TallyError,
    TallyLine,
    WinValueKinkWarning,
    normalize,
    tally_all,
    tally_team,
)
from .ranking import RankEntry, RankingList, SwapRecord, head_to_head, rank
from .ratings import (
    DEFAULT_ANCHOR,
    DEFAULT_HFA,
    DEFAULT_WIN_CONSTANT,
    RatingTable,
    SolverConfig,
    SolverError,
    allocation_from_ratings,
    neutral_margin,
    residuals,
    solve_ratings,
)
from .rpi import (
    DEFAULT_WEIGHTS,
    RankDelta,
    RpiTable,
    acc_ify,
    compute_rpi,
    flip_game,
    perturb_and_compare,
)

__version__ = "0.1.0"

__all__ = [
    "AllocationTable",
    "DEFAULT_ANCHOR",
    "DEFAULT_HFA",
    "DEFAULT_WEIGHTS",
    "DEFAULT_WIN_CONSTANT",
    "Fixture",
    "Game",
    "NORMALIZED_GAMES",
    "ParseError",
    "RankDelta",
    "RankEntry",
    "RankingList",
    "RatingTable",
    "RpiTable",
    "SeasonDataset",
    "SeasonTally",
    "SolverConfig",
    "SolverError",
    "SwapRecord",
    "TallyError",
    "TallyLine",
    "TeamId",
    "ValidationError",
    "Venue",
    "WinValueKinkWarning",
    "acc_ify",
    "allocation_from_ratings",
    "backend_name",
    "compute_rpi",
    "flip_game",
    "head_to_head",
    "list_fixtures",
    "load_dataset",
    "load_fixture",
    "neutral_margin",
    "normalize",
    "parse_dataset",
    "perturb_and_compare",
    "rank",
    "residuals",
    "save_dataset",
    "schedule_components",
    "serialize_dataset",
    "solve_ratings",
    "tally_all",
    "tally_team",
]
