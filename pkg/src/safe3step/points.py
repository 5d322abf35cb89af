"""Quality-win point tallies: per-game win/loss points plus venue adjustment.

Beating a team earns its win value, losing to it deducts its loss cost, and
the home side of a non-neutral game gives back the home-field edge. Season
totals are scaled to a 16-game equivalent so teams with different schedule
lengths compare fairly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .ingest import SeasonDataset, TeamId

# Regular-season length that totals are normalized to.
NORMALIZED_GAMES = 16


class TallyError(ValueError):
    """Raised when a team's point tally cannot be produced."""


class WinValueKinkWarning(UserWarning):
    """Teams rated so far below the anchor that beating them pays more than
    beating stronger sides (the absolute value in the win formula bends back)."""


@dataclass(frozen=True)
class AllocationTable:
    """Per-opponent stakes: points deducted for losing to T, gained for beating T."""

    loss_cost: dict[TeamId, float]
    win_value: dict[TeamId, float]
    anchor: float
    win_constant: float

    def beyond_kink(self) -> tuple[TeamId, ...]:
        """Teams whose loss cost exceeds the win constant, sorted by name."""
        return tuple(
            sorted(t for t, cost in self.loss_cost.items() if cost > self.win_constant)
        )


@dataclass(frozen=True)
class TallyLine:
    """One game's contribution to a team's season tally."""

    game_id: int
    opponent: TeamId
    outcome: str  # "win" | "loss"
    wl_points: float
    hfa_adjust: float
    line_total: float
    score: tuple[int, int]  # from the tallied team's perspective


@dataclass(frozen=True)
class SeasonTally:
    team: TeamId
    lines: tuple[TallyLine, ...]
    raw_total: float
    games_played: int
    normalized_total: float


def normalize(raw_total: float, games_played: int) -> float:
    """Scale a raw season total to its 16-game equivalent."""
    if games_played < 1:
        raise TallyError("cannot normalize a season of zero games")
    return raw_total * NORMALIZED_GAMES / games_played


def tally_team(
    team: TeamId,
    ds: SeasonDataset,
    alloc: AllocationTable,
    hfa: float = 0.73,
) -> SeasonTally:
    """Tally one team's games, in dataset order.

    Ties carry no point outcome and raise TallyError, as does an opponent
    missing from the allocation (a cross-component game).
    """
    games = ds.games_of(team)
    if not games:
        raise TallyError(f"{team} appears in no games")
    lines: list[TallyLine] = []
    for game in games:
        opponent = game.opponent_of(team)
        mine, theirs = (
            (game.score1, game.score2)
            if game.team1 == team
            else (game.score2, game.score1)
        )
        if mine == theirs:
            raise TallyError(
                f"game {game.game_id}: tied score {mine}-{theirs} has no point outcome"
            )
        if opponent not in alloc.win_value:
            raise TallyError(
                f"game {game.game_id}: no allocation entry for opponent {opponent}"
            )
        if mine > theirs:
            outcome, wl_points = "win", alloc.win_value[opponent]
        else:
            outcome, wl_points = "loss", -alloc.loss_cost[opponent]
        home = game.home_team()
        if home is None:
            hfa_adjust = 0.0
        elif home == team:
            hfa_adjust = -hfa
        else:
            hfa_adjust = hfa
        lines.append(
            TallyLine(
                game_id=game.game_id,
                opponent=opponent,
                outcome=outcome,
                wl_points=wl_points,
                hfa_adjust=hfa_adjust,
                line_total=wl_points + hfa_adjust,
                score=(mine, theirs),
            )
        )
    raw_total = 0.0
    for line in lines:
        raw_total += line.line_total
    return SeasonTally(
        team=team,
        lines=tuple(lines),
        raw_total=raw_total,
        games_played=len(lines),
        normalized_total=normalize(raw_total, len(lines)),
    )


def tally_all(
    ds: SeasonDataset, alloc: AllocationTable, hfa: float = 0.73
) -> dict[TeamId, SeasonTally]:
    """Tally every team in the dataset; keys iterate in name order."""
    return {team: tally_team(team, ds, alloc, hfa) for team in sorted(ds.teams)}


def tally_to_csv(tally: SeasonTally) -> str:
    """Season tally as CSV: one row per game plus raw/normalized total rows."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["game_id", "opponent", "score", "wl_points", "hfa", "line_total"])
    for line in tally.lines:
        writer.writerow(
            [
                line.game_id,
                line.opponent.name,
                f"{line.score[0]}-{line.score[1]}",
                f"{line.wl_points:.2f}",
                f"{line.hfa_adjust:.2f}",
                f"{line.line_total:.2f}",
            ]
        )
    writer.writerow(["season_total_raw", "", "", "", "", f"{tally.raw_total:.2f}"])
    writer.writerow(
        [
            f"normalized_to_{NORMALIZED_GAMES}",
            "",
            "",
            "",
            "",
            f"{tally.normalized_total:.2f}",
        ]
    )
    return buffer.getvalue()


def tally_to_json(tally: SeasonTally) -> str:
    payload = {
        "team": tally.team.name,
        "games_played": tally.games_played,
        "raw_total": tally.raw_total,
        "normalized_total": tally.normalized_total,
        "lines": [
            {
                "game_id": line.game_id,
                "opponent": line.opponent.name,
                "score": f"{line.score[0]}-{line.score[1]}",
                "outcome": line.outcome,
                "wl_points": line.wl_points,
                "hfa_adjust": line.hfa_adjust,
                "line_total": line.line_total,
            }
            for line in tally.lines
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
