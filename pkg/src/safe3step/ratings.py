"""Score-based power ratings.

Each game asserts that the rating gap between its two teams equals the
neutralized score margin; the season's games form an over-determined linear
system whose least-squares solution is found by damped simultaneous sweeps.
Ratings within each schedule component are then shifted so the component's
best team sits at the anchor (99.9 by default).
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import _kernels
from .ingest import Game, SeasonDataset, TeamId, Venue, schedule_components
from .points import AllocationTable, WinValueKinkWarning

DEFAULT_HFA = 0.73
DEFAULT_ANCHOR = 99.9
DEFAULT_WIN_CONSTANT = 25.0


class SolverError(ValueError):
    """Raised when a dataset cannot support a rating solve."""


@dataclass(frozen=True)
class SolverConfig:
    """Solver knobs; the defaults reproduce the published configuration."""

    hfa: float = DEFAULT_HFA
    hfa_mode: Literal["fixed", "estimated"] = "fixed"
    margin_cap: float | None = None
    tolerance: float = 1e-9
    max_iterations: int = 10000
    anchor: float = DEFAULT_ANCHOR

    def __post_init__(self) -> None:
        if self.hfa_mode not in ("fixed", "estimated"):
            raise ValueError(f"hfa_mode must be 'fixed' or 'estimated', got {self.hfa_mode!r}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be > 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.margin_cap is not None and self.margin_cap < 0:
            raise ValueError("margin_cap must be >= 0")


@dataclass(frozen=True)
class RatingTable:
    """Solved per-team ratings; treat the mapping as read-only.

    Every schedule component is anchored independently, so ratings are only
    comparable within a component (``components`` lists them, largest first).
    """

    ratings: dict[TeamId, float]
    hfa_used: float
    iterations: int
    converged: bool
    anchor: float = DEFAULT_ANCHOR
    components: tuple[tuple[TeamId, ...], ...] = ()


def capped_margin(game: Game, margin_cap: float | None) -> float:
    """Raw score difference from team1's perspective, clamped to the cap."""
    raw = float(game.score1 - game.score2)
    if margin_cap is not None:
        cap = float(margin_cap)
        raw = max(-cap, min(cap, raw))
    return raw


def neutral_margin(game: Game, cfg: SolverConfig) -> float:
    """Estimated margin, from team1's perspective, had the field been neutral.

    The raw difference is capped first (when configured); then the home edge
    is removed: hfa is subtracted when team1 was home, added when team2 was.
    """
    raw = capped_margin(game, cfg.margin_cap)
    if game.venue is Venue.TEAM1_HOME:
        return raw - cfg.hfa
    if game.venue is Venue.TEAM2_HOME:
        return raw + cfg.hfa
    return raw


_VENUE_SIGN = {Venue.TEAM1_HOME: -1.0, Venue.TEAM2_HOME: 1.0, Venue.NEUTRAL: 0.0}


def solve_ratings(ds: SeasonDataset, cfg: SolverConfig | None = None) -> RatingTable:
    """Fit ratings to the season's games.

    Sweeps update every team simultaneously toward the mean of (opponent
    rating + neutral margin) over its games, with 0.5 damping, until the
    largest per-team change drops below ``cfg.tolerance``. In estimated mode
    the hfa is re-fit after each sweep as the mean home-side residual.
    """
    cfg = cfg or SolverConfig()
    teams = sorted(ds.teams)
    if len(teams) < 2:
        raise SolverError("rating solve needs at least two teams with a game between them")
    index = {team: i for i, team in enumerate(teams)}

    n_games = len(ds.games)
    idx1 = np.empty(n_games, dtype=np.intp)
    idx2 = np.empty(n_games, dtype=np.intp)
    raw_margin = np.empty(n_games, dtype=np.float64)
    venue_sign = np.empty(n_games, dtype=np.float64)
    for g, game in enumerate(ds.games):
        idx1[g] = index[game.team1]
        idx2[g] = index[game.team2]
        raw_margin[g] = capped_margin(game, cfg.margin_cap)
        venue_sign[g] = _VENUE_SIGN[game.venue]

    values, hfa_used, iterations, converged = _kernels.run_sweeps(
        len(teams),
        idx1,
        idx2,
        raw_margin,
        venue_sign,
        cfg.hfa,
        cfg.hfa_mode == "estimated",
        cfg.tolerance,
        cfg.max_iterations,
    )

    components = tuple(schedule_components(ds))
    anchored = dict.fromkeys(teams, 0.0)
    for component in components:
        top = max(float(values[index[t]]) for t in component)
        for team in component:
            # (r - top) is exactly 0.0 for the component max, so the anchored
            # maximum equals cfg.anchor bit-for-bit.
            anchored[team] = (float(values[index[team]]) - top) + cfg.anchor
    return RatingTable(
        ratings=anchored,
        hfa_used=float(hfa_used),
        iterations=int(iterations),
        converged=bool(converged),
        anchor=cfg.anchor,
        components=components,
    )


def residuals(rt: RatingTable, ds: SeasonDataset, cfg: SolverConfig | None = None) -> list[float]:
    """Per-game fit errors: rating gap minus neutralized margin, in dataset order."""
    cfg = cfg or SolverConfig(hfa=rt.hfa_used)
    return [
        rt.ratings[g.team1] - rt.ratings[g.team2] - neutral_margin(g, cfg)
        for g in ds.games
    ]


def allocation_from_ratings(
    rt: RatingTable, win_constant: float = DEFAULT_WIN_CONSTANT
) -> AllocationTable:
    """Derive the point allocation: losing to T costs ``anchor - PR_T`` points,
    beating T earns ``|cost - win_constant|``.

    Warns when a team sits more than ``win_constant`` below the anchor, since
    the absolute value then makes wins over weaker teams pay more again.
    """
    loss_cost: dict[TeamId, float] = {}
    win_value: dict[TeamId, float] = {}
    for team in sorted(rt.ratings):
        cost = rt.anchor - rt.ratings[team]
        loss_cost[team] = cost
        win_value[team] = abs(cost - win_constant)
    table = AllocationTable(
        loss_cost=loss_cost,
        win_value=win_value,
        anchor=rt.anchor,
        win_constant=win_constant,
    )
    weak = table.beyond_kink()
    if weak:
        warnings.warn(
            f"win value bends back upward for {len(weak)} team(s) rated more than "
            f"{win_constant:g} below the anchor: " + ", ".join(t.name for t in weak),
            WinValueKinkWarning,
            stacklevel=2,
        )
    return table


def allocation_to_csv(rt: RatingTable, alloc: AllocationTable) -> str:
    """Ratings plus allocation columns, strongest team first, 2-dp display."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["team", "pr", "loss_cost", "win_value"])
    rows = sorted(rt.ratings.items(), key=lambda item: (-item[1], item[0].key))
    for team, rating in rows:
        writer.writerow(
            [
                team.name,
                f"{rating:.2f}",
                f"{alloc.loss_cost[team]:.2f}",
                f"{alloc.win_value[team]:.2f}",
            ]
        )
    return buffer.getvalue()


def allocation_to_json(rt: RatingTable, alloc: AllocationTable) -> str:
    """Full-precision JSON keyed by team name, with solve metadata."""
    payload = {
        "anchor": rt.anchor,
        "win_constant": alloc.win_constant,
        "hfa_used": rt.hfa_used,
        "iterations": rt.iterations,
        "converged": rt.converged,
        "components": [[t.name for t in comp] for comp in rt.components],
        "teams": {
            team.name: {
                "pr": rating,
                "loss_cost": alloc.loss_cost[team],
                "win_value": alloc.win_value[team],
            }
            for team, rating in rt.ratings.items()
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
