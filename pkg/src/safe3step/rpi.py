"""Ratings Percentage Index reference plus schedule-sensitivity experiments.

RPI is the weighted sum of a team's win proportion (WP), its opponents' win
proportion (OWP, each opponent's record excluding games against the team in
question), and its opponents' opponents' win proportion (OOWP). The two
experiment helpers expose RPI's known pathologies: schedule replacement
inflates a team's RPI without any change in its own results, and a single
flipped game can reshuffle ranks far from the teams involved.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

from .ingest import Game, SeasonDataset, TeamId, ValidationError
from .ratings import SolverConfig, solve_ratings

DEFAULT_WEIGHTS = (0.25, 0.50, 0.25)

# Win proportion over zero games (an opponent whose only games were against
# the reference team); 0.5 biases neither direction.
EMPTY_RECORD_WP = 0.5


@dataclass(frozen=True)
class RpiTable:
    """Per-team WP/OWP/OOWP and their weighted combination."""

    wp: dict[TeamId, float]
    owp: dict[TeamId, float]
    oowp: dict[TeamId, float]
    rpi: dict[TeamId, float]
    weights: tuple[float, float, float]

    def rank_order(self) -> tuple[TeamId, ...]:
        """Teams by descending RPI; exact ties break by name."""
        return tuple(sorted(self.rpi, key=lambda t: (-self.rpi[t], t.key)))


@dataclass(frozen=True)
class RankDelta:
    """One team's rank movement between the original and perturbed season."""

    team: TeamId
    rank_before: int
    rank_after: int
    metric_before: float
    metric_after: float

    @property
    def moved(self) -> bool:
        return self.rank_before != self.rank_after


def _validate_weights(weights: Sequence[float]) -> tuple[float, float, float]:
    if len(weights) != 3:
        raise ValueError("weights must be three numbers (wp, owp, oowp)")
    w = (float(weights[0]), float(weights[1]), float(weights[2]))
    if abs(sum(w) - 1.0) > 1e-9:
        raise ValueError(f"weights must sum to 1, got {sum(w)!r}")
    return w


def compute_rpi(
    ds: SeasonDataset, weights: Sequence[float] = DEFAULT_WEIGHTS
) -> RpiTable:
    """Compute the RPI table; ties count as half a win throughout.

    OWP and OOWP average per game (an opponent met twice counts twice), and
    each opponent's record excludes its games against the team being rated.
    """
    w1, w2, w3 = _validate_weights(weights)
    teams = sorted(ds.teams)

    # Totals and pairwise records: wins/ties/games of t, and of t versus o.
    totals: dict[TeamId, tuple[float, int]] = {}
    versus: dict[TeamId, dict[TeamId, tuple[float, int]]] = {t: {} for t in teams}
    for team in teams:
        wins, losses, ties = ds.record(team)
        totals[team] = (wins + 0.5 * ties, wins + losses + ties)
    for game in ds.games:
        for me, them in ((game.team1, game.team2), (game.team2, game.team1)):
            mine = game.score1 if me == game.team1 else game.score2
            theirs = game.score2 if me == game.team1 else game.score1
            credit = 1.0 if mine > theirs else (0.5 if mine == theirs else 0.0)
            got, played = versus[me].get(them, (0.0, 0))
            versus[me][them] = (got + credit, played + 1)

    def adjusted_wp(opponent: TeamId, excluding: TeamId) -> float:
        credit, played = totals[opponent]
        credit_vs, played_vs = versus[opponent].get(excluding, (0.0, 0))
        remaining = played - played_vs
        if remaining == 0:
            return EMPTY_RECORD_WP
        return (credit - credit_vs) / remaining

    wp = {t: totals[t][0] / totals[t][1] for t in teams}
    owp: dict[TeamId, float] = {}
    for team in teams:
        opponents = [g.opponent_of(team) for g in ds.games_of(team)]
        owp[team] = sum(adjusted_wp(o, team) for o in opponents) / len(opponents)
    oowp: dict[TeamId, float] = {}
    for team in teams:
        opponents = [g.opponent_of(team) for g in ds.games_of(team)]
        oowp[team] = sum(owp[o] for o in opponents) / len(opponents)
    rpi = {t: w1 * wp[t] + w2 * owp[t] + w3 * oowp[t] for t in teams}
    return RpiTable(wp=wp, owp=owp, oowp=oowp, rpi=rpi, weights=(w1, w2, w3))


def acc_ify(
    ds: SeasonDataset, target: TeamId, replacement_opponents: Sequence[TeamId]
) -> SeasonDataset:
    """Swap every opponent on the target's schedule for the given replacements.

    Scores, venue roles, and game ids are preserved: the target's results do
    not change, only who they were achieved against. Replacements pair with
    the target's games in dataset order and must already exist in the dataset.
    """
    target_games = ds.games_of(target)
    if len(replacement_opponents) != len(target_games):
        raise ValidationError(
            f"{target} played {len(target_games)} games but "
            f"{len(replacement_opponents)} replacements were given"
        )
    for replacement in replacement_opponents:
        if replacement not in ds.teams:
            raise ValidationError(f"replacement team {replacement} is not in the dataset")
        if replacement == target:
            raise ValidationError(f"{target} cannot be scheduled against itself")

    replacement_of = {
        game.game_id: replacement
        for game, replacement in zip(target_games, replacement_opponents)
    }
    rebuilt = []
    for game in ds.games:
        replacement = replacement_of.get(game.game_id)
        if replacement is None:
            rebuilt.append(game)
        elif game.team1 == target:
            rebuilt.append(
                Game(game.game_id, target, replacement, game.score1, game.score2, game.venue)
            )
        else:
            rebuilt.append(
                Game(game.game_id, replacement, target, game.score1, game.score2, game.venue)
            )
    return SeasonDataset(rebuilt)


def flip_game(ds: SeasonDataset, game_id: int) -> SeasonDataset:
    """Reverse one game's result by swapping its two scores."""
    try:
        target = ds.game(game_id)
    except KeyError:
        raise ValidationError(f"unknown game_id {game_id}") from None
    flipped = Game(
        target.game_id,
        target.team1,
        target.team2,
        target.score2,
        target.score1,
        target.venue,
    )
    return SeasonDataset(
        flipped if g.game_id == game_id else g for g in ds.games
    )


def _metric_ranking(
    ds: SeasonDataset,
    method: str,
    weights: Sequence[float],
    solver_config: SolverConfig | None,
) -> tuple[tuple[TeamId, ...], dict[TeamId, float]]:
    if method == "rpi":
        table = compute_rpi(ds, weights)
        return table.rank_order(), table.rpi
    if method == "power":
        rt = solve_ratings(ds, solver_config or SolverConfig())
        order = tuple(sorted(rt.ratings, key=lambda t: (-rt.ratings[t], t.key)))
        return order, rt.ratings
    raise ValueError(f"method must be 'rpi' or 'power', got {method!r}")


def perturb_and_compare(
    ds: SeasonDataset,
    game_id: int,
    method: str,
    weights: Sequence[float] = DEFAULT_WEIGHTS,
    solver_config: SolverConfig | None = None,
) -> list[RankDelta]:
    """Flip one game, re-rank with the chosen method, report every team's movement.

    Returns one RankDelta per team, ordered by original rank.
    """
    flipped = flip_game(ds, game_id)
    order_before, metric_before = _metric_ranking(ds, method, weights, solver_config)
    order_after, metric_after = _metric_ranking(flipped, method, weights, solver_config)
    rank_before = {team: i for i, team in enumerate(order_before, start=1)}
    rank_after = {team: i for i, team in enumerate(order_after, start=1)}
    return [
        RankDelta(
            team=team,
            rank_before=rank_before[team],
            rank_after=rank_after[team],
            metric_before=metric_before[team],
            metric_after=metric_after[team],
        )
        for team in order_before
    ]


def rpi_to_csv(table: RpiTable, ds: SeasonDataset) -> str:
    """Ranked RPI table (rank, team, rpi, wins, losses) at 4-dp display."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["rank", "team", "rpi", "wins", "losses"])
    for position, team in enumerate(table.rank_order(), start=1):
        wins, losses, _ = ds.record(team)
        writer.writerow([position, team.name, f"{table.rpi[team]:.4f}", wins, losses])
    return buffer.getvalue()


def rpi_to_json(table: RpiTable, ds: SeasonDataset) -> str:
    teams = {}
    for position, team in enumerate(table.rank_order(), start=1):
        wins, losses, ties = ds.record(team)
        teams[team.name] = {
            "rank": position,
            "wp": table.wp[team],
            "owp": table.owp[team],
            "oowp": table.oowp[team],
            "rpi": table.rpi[team],
            "wins": wins,
            "losses": losses,
            "ties": ties,
        }
    payload = {"weights": list(table.weights), "teams": teams}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def deltas_to_csv(deltas: Sequence[RankDelta], places: int = 4) -> str:
    """Before/after panels joined per team, with a moved flag."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        ["rank_before", "team", "metric_before", "rank_after", "metric_after", "moved"]
    )
    for delta in deltas:
        writer.writerow(
            [
                delta.rank_before,
                delta.team.name,
                f"{delta.metric_before:.{places}f}",
                delta.rank_after,
                f"{delta.metric_after:.{places}f}",
                str(delta.moved).lower(),
            ]
        )
    return buffer.getvalue()


def deltas_to_json(deltas: Sequence[RankDelta]) -> str:
    payload = [
        {
            "team": delta.team.name,
            "rank_before": delta.rank_before,
            "rank_after": delta.rank_after,
            "metric_before": delta.metric_before,
            "metric_after": delta.metric_after,
            "moved": delta.moved,
        }
        for delta in deltas
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
