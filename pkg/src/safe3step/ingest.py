"""Season game data: parsing, validation, and the schedule graph.

The input is a UTF-8 CSV with header ``game_id,team1,team2,score1,score2,home_team``.
A second accepted header, ``game_id,team1,team2,score,home_team``, carries the
scoreline as a single dash-joined column (``17-13``) and is converted on read.
``home_team`` names one of the two listed teams, or is empty / the literal
``neutral`` for a neutral-field game.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, TextIO


class ParseError(ValueError):
    """Input that never became a game row: bad header, columns, or numbers."""


class ValidationError(ValueError):
    """Readable input that breaks a dataset rule (self-play, bad home team, ...)."""


_SPACE_RUN = re.compile(r"\s+")
_SCORE_SEP = re.compile(r"[-–—]+")  # '-' plus en/em dashes seen in real files


def normalize_name(raw: str) -> str:
    """Trim and collapse internal whitespace runs to single spaces."""
    return _SPACE_RUN.sub(" ", raw.strip())


@dataclass(frozen=True, eq=False)
class TeamId:
    """A team name, trimmed and space-collapsed; compares case-insensitively."""

    name: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", normalize_name(self.name))
        if not self.name:
            raise ValidationError("team name is empty")

    @property
    def key(self) -> str:
        """Case-folded form used for equality, hashing, and sort order."""
        return self.name.casefold()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TeamId):
            return self.key == other.key
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "TeamId") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return self.name


class Venue(Enum):
    """Where a game was played, relative to the listed team order."""

    TEAM1_HOME = "team1"
    TEAM2_HOME = "team2"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class Game:
    """One played match between two distinct teams."""

    game_id: int
    team1: TeamId
    team2: TeamId
    score1: int
    score2: int
    venue: Venue = Venue.NEUTRAL

    def __post_init__(self) -> None:
        if self.team1 == self.team2:
            raise ValidationError(
                f"game {self.game_id}: a team cannot play itself ({self.team1})"
            )
        for score in (self.score1, self.score2):
            if not isinstance(score, int) or isinstance(score, bool) or score < 0:
                raise ValidationError(
                    f"game {self.game_id}: scores must be non-negative integers"
                )

    def involves(self, team: TeamId) -> bool:
        return team == self.team1 or team == self.team2

    def opponent_of(self, team: TeamId) -> TeamId:
        if team == self.team1:
            return self.team2
        if team == self.team2:
            return self.team1
        raise ValueError(f"{team} did not play in game {self.game_id}")

    def home_team(self) -> TeamId | None:
        """The home side, or None for a neutral-field game."""
        if self.venue is Venue.TEAM1_HOME:
            return self.team1
        if self.venue is Venue.TEAM2_HOME:
            return self.team2
        return None

    def is_tie(self) -> bool:
        return self.score1 == self.score2


class SeasonDataset:
    """Immutable, ordered collection of one season's games.

    Iteration order is the file order of the source rows; the team set is
    derived from the games. Safe to share across threads once constructed.
    """

    __slots__ = ("_games", "_teams", "_by_team", "_by_id")

    def __init__(self, games: Iterable[Game]):
        game_tuple = tuple(games)
        by_id: dict[int, Game] = {}
        by_team: dict[TeamId, list[Game]] = {}
        for game in game_tuple:
            if game.game_id in by_id:
                raise ValidationError(f"duplicate game_id {game.game_id}")
            by_id[game.game_id] = game
            by_team.setdefault(game.team1, []).append(game)
            by_team.setdefault(game.team2, []).append(game)
        self._games = game_tuple
        self._by_id = by_id
        self._by_team = {t: tuple(gs) for t, gs in by_team.items()}
        self._teams = frozenset(by_team)

    @property
    def games(self) -> tuple[Game, ...]:
        return self._games

    @property
    def teams(self) -> frozenset[TeamId]:
        return self._teams

    def __len__(self) -> int:
        return len(self._games)

    def __iter__(self) -> Iterator[Game]:
        return iter(self._games)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SeasonDataset):
            return self._games == other._games
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._games)

    def game(self, game_id: int) -> Game:
        """Look up a game by id; raises KeyError when absent."""
        return self._by_id[game_id]

    def games_of(self, team: TeamId) -> tuple[Game, ...]:
        """All games involving ``team``, in dataset order."""
        return self._by_team.get(team, ())

    def record(self, team: TeamId) -> tuple[int, int, int]:
        """(wins, losses, ties) for ``team`` over all its games."""
        wins = losses = ties = 0
        for game in self.games_of(team):
            mine, theirs = (
                (game.score1, game.score2)
                if game.team1 == team
                else (game.score2, game.score1)
            )
            if mine > theirs:
                wins += 1
            elif mine < theirs:
                losses += 1
            else:
                ties += 1
        return wins, losses, ties


_CANONICAL_HEADER = ("game_id", "team1", "team2", "score1", "score2", "home_team")
_COMBINED_HEADER = ("game_id", "team1", "team2", "score", "home_team")


def _parse_int(text: str, what: str, line: int) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"line {line}: {what} {text.strip()!r} is not an integer") from None


def _parse_score(text: str, what: str, line: int) -> int:
    value = _parse_int(text, what, line)
    if value < 0:
        raise ParseError(f"line {line}: {what} must be non-negative, got {value}")
    return value


def _split_scoreline(text: str, line: int) -> tuple[int, int]:
    parts = [p for p in _SCORE_SEP.split(text.strip()) if p]
    if len(parts) != 2:
        raise ParseError(f"line {line}: score {text.strip()!r} is not of the form S1-S2")
    return (
        _parse_score(parts[0], "score1", line),
        _parse_score(parts[1], "score2", line),
    )


def _resolve_venue(raw: str, team1: TeamId, team2: TeamId, line: int) -> Venue:
    label = normalize_name(raw)
    if not label or label.casefold() == "neutral":
        return Venue.NEUTRAL
    home = TeamId(label)
    if home == team1:
        return Venue.TEAM1_HOME
    if home == team2:
        return Venue.TEAM2_HOME
    raise ValidationError(
        f"line {line}: home team {label!r} matches neither {team1} nor {team2}"
    )


def parse_dataset(source: str | TextIO) -> SeasonDataset:
    """Parse season CSV text (or a text stream) into a SeasonDataset.

    Raises ParseError for malformed rows and ValidationError for rule
    violations, both naming the offending line.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        raise ParseError("line 1: empty input, expected a header row")
    columns = tuple(cell.strip().lower() for cell in header)
    if columns == _CANONICAL_HEADER:
        combined_score = False
    elif columns == _COMBINED_HEADER:
        combined_score = True
    else:
        raise ParseError(f"line 1: unrecognized header {header!r}")

    games: list[Game] = []
    first_line_of: dict[int, int] = {}
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(columns):
            raise ParseError(
                f"line {line}: expected {len(columns)} columns, got {len(row)}"
            )
        game_id = _parse_int(row[0], "game_id", line)
        if game_id in first_line_of:
            raise ValidationError(
                f"line {line}: duplicate game_id {game_id} "
                f"(first seen on line {first_line_of[game_id]})"
            )
        first_line_of[game_id] = line
        name1, name2 = normalize_name(row[1]), normalize_name(row[2])
        if not name1 or not name2:
            raise ParseError(f"line {line}: empty team name")
        team1, team2 = TeamId(name1), TeamId(name2)
        if team1 == team2:
            raise ValidationError(f"line {line}: a team cannot play itself ({team1})")
        if combined_score:
            score1, score2 = _split_scoreline(row[3], line)
            home_cell = row[4]
        else:
            score1 = _parse_score(row[3], "score1", line)
            score2 = _parse_score(row[4], "score2", line)
            home_cell = row[5]
        venue = _resolve_venue(home_cell, team1, team2, line)
        games.append(Game(game_id, team1, team2, score1, score2, venue))
    return SeasonDataset(games)


def serialize_dataset(ds: SeasonDataset) -> str:
    """Emit the canonical two-score-column CSV form; round-trips losslessly."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_CANONICAL_HEADER)
    for game in ds.games:
        home = game.home_team()
        writer.writerow(
            [
                game.game_id,
                game.team1.name,
                game.team2.name,
                game.score1,
                game.score2,
                "" if home is None else home.name,
            ]
        )
    return buffer.getvalue()


def load_dataset(path: str | Path) -> SeasonDataset:
    """Read and parse a season CSV file."""
    with Path(path).open("r", encoding="utf-8-sig", newline="") as handle:
        return parse_dataset(handle)


def save_dataset(ds: SeasonDataset, path: str | Path) -> None:
    Path(path).write_text(serialize_dataset(ds), encoding="utf-8")


def schedule_components(ds: SeasonDataset) -> list[tuple[TeamId, ...]]:
    """Connected components of the played-each-other graph.

    Components are sorted largest first (ties by their lexicographically
    smallest member); members are sorted within each component. Rating fits
    carry no information across components, so downstream code treats each
    independently.
    """
    adjacency: dict[TeamId, set[TeamId]] = {team: set() for team in ds.teams}
    for game in ds.games:
        adjacency[game.team1].add(game.team2)
        adjacency[game.team2].add(game.team1)
    seen: set[TeamId] = set()
    components: list[tuple[TeamId, ...]] = []
    for start in sorted(adjacency):
        if start in seen:
            continue
        stack, members = [start], []
        seen.add(start)
        while stack:
            team = stack.pop()
            members.append(team)
            for neighbor in adjacency[team]:
                if neighbor not in seen:
                    seen.add(neighbor)
                    stack.append(neighbor)
        components.append(tuple(sorted(members)))
    components.sort(key=lambda comp: (-len(comp), comp[0].key))
    return components
