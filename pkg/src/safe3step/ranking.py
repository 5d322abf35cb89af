"""Final ordering: sort by normalized totals, then one head-to-head swap pass.

The swap pass walks the sorted list once from the top; whenever the lower
team of an adjacent pair holds strictly more head-to-head wins, the pair is
swapped and the walk continues from the next position (a promoted team is
never re-compared upward).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import cmp_to_key

from .ingest import SeasonDataset, TeamId
from .points import SeasonTally


@dataclass(frozen=True)
class RankEntry:
    rank: int
    team: TeamId
    wins: int
    losses: int
    points: float  # normalized season total


@dataclass(frozen=True)
class SwapRecord:
    """One applied swap; team_a held rank_a before being demoted below team_b."""

    rank_a: int
    rank_b: int
    team_a: TeamId
    team_b: TeamId


@dataclass(frozen=True)
class RankingList:
    entries: tuple[RankEntry, ...]
    swaps_applied: tuple[SwapRecord, ...]

    def order(self) -> tuple[TeamId, ...]:
        return tuple(entry.team for entry in self.entries)


def head_to_head(a: TeamId, b: TeamId, ds: SeasonDataset) -> tuple[int, int]:
    """Win counts over all meetings of a and b; (0, 0) when they never played."""
    wins_a = wins_b = 0
    for game in ds.games_of(a):
        if not game.involves(b):
            continue
        mine, theirs = (
            (game.score1, game.score2)
            if game.team1 == a
            else (game.score2, game.score1)
        )
        if mine > theirs:
            wins_a += 1
        elif mine < theirs:
            wins_b += 1
    return wins_a, wins_b


def rank(tallies: dict[TeamId, SeasonTally], ds: SeasonDataset) -> RankingList:
    """Order teams by normalized total, then apply the single swap pass.

    Exact point ties break by head-to-head wins between the tied pair, then
    higher raw total, then team name; the tie-break chain exists purely for
    determinism.
    """
    if not tallies:
        raise ValueError("no tallies to rank")

    def compare(a: TeamId, b: TeamId) -> int:
        ta, tb = tallies[a], tallies[b]
        if ta.normalized_total != tb.normalized_total:
            return -1 if ta.normalized_total > tb.normalized_total else 1
        wins_a, wins_b = head_to_head(a, b, ds)
        if wins_a != wins_b:
            return -1 if wins_a > wins_b else 1
        if ta.raw_total != tb.raw_total:
            return -1 if ta.raw_total > tb.raw_total else 1
        return -1 if a.key < b.key else (1 if a.key > b.key else 0)

    order = sorted(sorted(tallies), key=cmp_to_key(compare))

    swaps: list[SwapRecord] = []
    for i in range(len(order) - 1):
        upper, lower = order[i], order[i + 1]
        wins_upper, wins_lower = head_to_head(upper, lower, ds)
        if wins_lower > wins_upper:
            order[i], order[i + 1] = lower, upper
            swaps.append(SwapRecord(i + 1, i + 2, upper, lower))

    entries = []
    for position, team in enumerate(order, start=1):
        wins, losses, _ = ds.record(team)
        entries.append(
            RankEntry(
                rank=position,
                team=team,
                wins=wins,
                losses=losses,
                points=tallies[team].normalized_total,
            )
        )
    return RankingList(entries=tuple(entries), swaps_applied=tuple(swaps))


def ranking_to_csv(ranking: RankingList) -> str:
    """Ranked table at 2-dp display; applied swaps appended as '#' comment lines."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["rank", "team", "wins", "losses", "s3s_points"])
    for entry in ranking.entries:
        writer.writerow(
            [entry.rank, entry.team.name, entry.wins, entry.losses, f"{entry.points:.2f}"]
        )
    for swap in ranking.swaps_applied:
        buffer.write(
            f"# swap: ranks {swap.rank_a}<->{swap.rank_b}: "
            f"{swap.team_a.name} <-> {swap.team_b.name}\n"
        )
    return buffer.getvalue()


def ranking_to_json(ranking: RankingList) -> str:
    payload = {
        "entries": [
            {
                "rank": entry.rank,
                "team": entry.team.name,
                "wins": entry.wins,
                "losses": entry.losses,
                "s3s_points": entry.points,
            }
            for entry in ranking.entries
        ],
        "swaps_applied": [
            {
                "rank_a": swap.rank_a,
                "rank_b": swap.rank_b,
                "team_a": swap.team_a.name,
                "team_b": swap.team_b.name,
            }
            for swap in ranking.swaps_applied
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
