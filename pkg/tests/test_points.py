import pytest
from hypothesis import given, strategies as st

from conftest import random_season
from safe3step.ingest import Game, SeasonDataset, TeamId, Venue
from safe3step.points import (
    AllocationTable,
    TallyError,
    normalize,
    tally_all,
    tally_team,
    tally_to_csv,
)
from safe3step.ratings import RatingTable, allocation_from_ratings, solve_ratings

V = TeamId("Virginia")


def make_alloc(prs: dict[str, float], anchor: float = 99.9) -> AllocationTable:
    rt = RatingTable(
        ratings={TeamId(name): pr for name, pr in prs.items()},
        hfa_used=0.73,
        iterations=0,
        converged=True,
        anchor=anchor,
    )
    return allocation_from_ratings(rt)


class TestTallyLines:
    def test_home_win_over_michigan(self):
        alloc = make_alloc({"Michigan": 96.61, "Notre Dame": 99.9})
        ds = SeasonDataset([Game(1, V, TeamId("Michigan"), 17, 13, Venue.TEAM1_HOME)])
        tally = tally_team(V, ds, alloc)
        line = tally.lines[0]
        assert line.outcome == "win"
        assert line.wl_points == pytest.approx(21.71, abs=1e-9)
        assert line.hfa_adjust == -0.73
        assert line.line_total == pytest.approx(20.98, abs=1e-9)

    def test_away_loss_at_duke(self):
        alloc = make_alloc({"Duke": 97.89, "Notre Dame": 99.9})
        ds = SeasonDataset([Game(1, TeamId("Duke"), V, 15, 14, Venue.TEAM1_HOME)])
        line = tally_team(V, ds, alloc).lines[0]
        assert line.outcome == "loss"
        assert line.wl_points == pytest.approx(-2.01, abs=1e-9)
        assert line.hfa_adjust == 0.73
        assert line.line_total == pytest.approx(-1.28, abs=1e-9)

    def test_neutral_win_over_anchor_team_is_exactly_the_win_constant(self):
        alloc = make_alloc({"Notre Dame": 99.9})
        ds = SeasonDataset([Game(1, V, TeamId("Notre Dame"), 12, 8, Venue.NEUTRAL)])
        line = tally_team(V, ds, alloc).lines[0]
        assert line.hfa_adjust == 0.0
        assert line.line_total == 25.0

    def test_losing_to_the_anchor_team_costs_exactly_nothing(self):
        alloc = make_alloc({"Notre Dame": 99.9, "Duke": 97.89})
        ds = SeasonDataset([Game(1, V, TeamId("Notre Dame"), 8, 12, Venue.TEAM1_HOME)])
        line = tally_team(V, ds, alloc).lines[0]
        assert line.outcome == "loss"
        assert line.wl_points == 0.0
        assert line.line_total == -0.73

    def test_tie_has_no_point_outcome(self):
        alloc = make_alloc({"Duke": 97.89})
        ds = SeasonDataset([Game(1, V, TeamId("Duke"), 9, 9, Venue.NEUTRAL)])
        with pytest.raises(TallyError, match="tied score"):
            tally_team(V, ds, alloc)

    def test_missing_opponent_allocation_names_the_opponent(self):
        alloc = make_alloc({"Duke": 97.89})
        ds = SeasonDataset([Game(1, V, TeamId("Hobart"), 9, 5, Venue.NEUTRAL)])
        with pytest.raises(TallyError, match="Hobart"):
            tally_team(V, ds, alloc)

    def test_team_without_games_is_an_error(self):
        alloc = make_alloc({"Duke": 97.89})
        ds = SeasonDataset([Game(1, TeamId("Duke"), TeamId("Hobart"), 9, 5, Venue.NEUTRAL)])
        with pytest.raises(TallyError, match="no games"):
            tally_team(V, ds, alloc)


class TestNormalize:
    def test_published_totals(self):
        assert f"{normalize(217.69, 14):.2f}" == "248.79"

    def test_identity_at_sixteen_games(self):
        assert normalize(123.456, 16) == 123.456

    def test_doubling_at_eight_games(self):
        assert normalize(100.0, 8) == 200.0

    def test_zero_games_is_an_error(self):
        with pytest.raises(TallyError):
            normalize(10.0, 0)

    @given(
        a=st.floats(-500, 500),
        b=st.floats(-500, 500),
        n=st.integers(1, 30),
    )
    def test_linearity(self, a, b, n):
        assert normalize(a, n) + normalize(b, n) == pytest.approx(normalize(a + b, n), abs=1e-9)


class TestTallyAll:
    def test_single_neutral_game(self):
        alloc = make_alloc({"A": 99.9, "B": 96.9})
        ds = SeasonDataset([Game(1, TeamId("A"), TeamId("B"), 5, 3, Venue.NEUTRAL)])
        tallies = tally_all(ds, alloc)
        assert tallies[TeamId("A")].raw_total == pytest.approx(22.0)  # |3 - 25|
        assert tallies[TeamId("B")].raw_total == pytest.approx(0.0)  # anchor costs nothing
        assert list(tallies) == [TeamId("A"), TeamId("B")]

    def test_empty_dataset_gives_empty_map(self):
        assert tally_all(SeasonDataset([]), make_alloc({"A": 99.9})) == {}

    def test_four_team_round_robin_matches_hand_tally(self):
        # Costs 0/1/2/3 -> win values 25/24/23/22; A sweeps, B beats C and D,
        # C beats D. Hand-summed totals below.
        names = ["A", "B", "C", "D"]
        alloc = make_alloc({"A": 99.9, "B": 98.9, "C": 97.9, "D": 96.9})
        results = {("A", "B"), ("A", "C"), ("A", "D"), ("B", "C"), ("B", "D"), ("C", "D")}
        games = [
            Game(i + 1, TeamId(w), TeamId(l), 10, 7, Venue.NEUTRAL)
            for i, (w, l) in enumerate(sorted(results))
        ]
        tallies = tally_all(SeasonDataset(games), alloc)
        assert tallies[TeamId("A")].raw_total == pytest.approx(69.0)
        assert tallies[TeamId("B")].raw_total == pytest.approx(45.0)
        assert tallies[TeamId("C")].raw_total == pytest.approx(21.0)
        assert tallies[TeamId("D")].raw_total == pytest.approx(-3.0)
        assert tallies[TeamId("A")].normalized_total == pytest.approx(368.0)
        assert tallies[TeamId("B")].normalized_total == pytest.approx(240.0)
        assert tallies[TeamId("C")].normalized_total == pytest.approx(112.0)
        assert tallies[TeamId("D")].normalized_total == pytest.approx(-16.0)


class TestInvariants:
    @pytest.mark.filterwarnings("ignore::safe3step.points.WinValueKinkWarning")
    def test_wins_never_cost_points_and_hfa_is_antisymmetric(self, rng):
        for _ in range(25):
            ds = random_season(rng, no_ties=True)
            rt = solve_ratings(ds)
            alloc = allocation_from_ratings(rt)
            tallies = tally_all(ds, alloc)
            by_game: dict[int, list[float]] = {}
            for tally in tallies.values():
                for line in tally.lines:
                    if line.outcome == "win":
                        assert line.wl_points >= 0.0
                    by_game.setdefault(line.game_id, []).append(line.hfa_adjust)
            for game in ds.games:
                adjusts = by_game[game.game_id]
                assert len(adjusts) == 2
                assert adjusts[0] + adjusts[1] == pytest.approx(0.0, abs=1e-12)
                if game.venue is Venue.NEUTRAL:
                    assert adjusts == [0.0, 0.0]
                else:
                    assert sorted(adjusts) == [-0.73, 0.73]

    def test_win_monotonicity_below_the_kink(self):
        # Beating a stronger opponent never pays less, while both opponents
        # stay within the win constant of the anchor.
        alloc = make_alloc({"Strong": 99.0, "Weak": 90.0, "Top": 99.9})
        assert alloc.win_value[TeamId("Strong")] > alloc.win_value[TeamId("Weak")]

    def test_raw_total_is_sum_of_lines(self, rng):
        ds = random_season(rng, no_ties=True)
        rt = solve_ratings(ds)
        tallies = tally_all(ds, allocation_from_ratings(rt))
        for tally in tallies.values():
            assert tally.raw_total == pytest.approx(
                sum(line.line_total for line in tally.lines), abs=1e-9
            )
            assert tally.normalized_total == pytest.approx(
                tally.raw_total * 16 / tally.games_played, abs=1e-9
            )


def test_csv_layout_mirrors_season_tally():
    alloc = make_alloc({"Michigan": 96.61, "Duke": 97.89})
    ds = SeasonDataset(
        [
            Game(1, V, TeamId("Michigan"), 17, 13, Venue.TEAM1_HOME),
            Game(2, TeamId("Duke"), V, 15, 14, Venue.TEAM1_HOME),
        ]
    )
    text = tally_to_csv(tally_team(V, ds, alloc))
    lines = text.splitlines()
    assert lines[0] == "game_id,opponent,score,wl_points,hfa,line_total"
    assert lines[1] == "1,Michigan,17-13,21.71,-0.73,20.98"
    assert lines[2] == "2,Duke,14-15,-2.01,0.73,-1.28"
    assert lines[3].startswith("season_total_raw")
    assert lines[4].startswith("normalized_to_16")
