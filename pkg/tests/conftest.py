import numpy as np
import pytest

from safe3step.ingest import Game, SeasonDataset, TeamId, Venue

VENUES = (Venue.NEUTRAL, Venue.TEAM1_HOME, Venue.TEAM2_HOME)


def random_season(
    rng: np.random.Generator,
    n_teams: int | None = None,
    n_games: int | None = None,
    max_score: int = 25,
    no_ties: bool = False,
) -> SeasonDataset:
    """Small random season; never pairs a team with itself."""
    n = n_teams if n_teams is not None else int(rng.integers(3, 9))
    m = n_games if n_games is not None else int(rng.integers(5, 21))
    games = []
    for gid in range(1, m + 1):
        i, j = rng.choice(n, size=2, replace=False)
        s1 = int(rng.integers(0, max_score + 1))
        s2 = int(rng.integers(0, max_score + 1))
        if no_ties and s1 == s2:
            s2 = s1 + 1 if rng.integers(0, 2) else max(0, s1 - 1)
            if s2 == s1:
                s2 = s1 + 1
        venue = VENUES[int(rng.integers(0, 3))]
        games.append(
            Game(gid, TeamId(f"Team {i:02d}"), TeamId(f"Team {j:02d}"), s1, s2, venue)
        )
    return SeasonDataset(games)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20250809)
