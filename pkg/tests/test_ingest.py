import pytest
from hypothesis import given, strategies as st

from safe3step.ingest import (
    Game,
    ParseError,
    SeasonDataset,
    TeamId,
    ValidationError,
    Venue,
    parse_dataset,
    schedule_components,
    serialize_dataset,
)

CANONICAL = "game_id,team1,team2,score1,score2,home_team\n"
COMBINED = "game_id,team1,team2,score,home_team\n"


def test_parse_combined_score_row():
    ds = parse_dataset(COMBINED + "211,Virginia,Michigan,17-13,Virginia\n")
    game = ds.games[0]
    assert game.game_id == 211
    assert game.team1 == TeamId("Virginia")
    assert game.team2 == TeamId("Michigan")
    assert (game.score1, game.score2) == (17, 13)
    assert game.venue is Venue.TEAM1_HOME


def test_parse_endash_score_and_away_home():
    ds = parse_dataset(COMBINED + "7,Brown,Harvard,25–21,Harvard\n")
    game = ds.games[0]
    assert (game.score1, game.score2) == (25, 21)
    assert game.venue is Venue.TEAM2_HOME


def test_empty_home_column_means_neutral_and_zero_scores_are_legal():
    ds = parse_dataset(COMBINED + "1,A,B,0-0,\n")
    game = ds.games[0]
    assert game.venue is Venue.NEUTRAL
    assert (game.score1, game.score2) == (0, 0)
    assert game.is_tie()


def test_neutral_literal_in_home_column():
    ds = parse_dataset(CANONICAL + "1,A,B,3,2,neutral\n")
    assert ds.games[0].venue is Venue.NEUTRAL


def test_self_play_rejected():
    with pytest.raises(ValidationError, match="cannot play itself"):
        parse_dataset(COMBINED + "2,A,A,5-3,A\n")


def test_home_team_matching_neither_listed_team():
    with pytest.raises(ValidationError, match="matches neither"):
        parse_dataset(CANONICAL + "1,A,B,3,2,C\n")


def test_duplicate_game_id():
    rows = "1,A,B,3,2,\n1,C,D,4,1,\n"
    with pytest.raises(ValidationError, match="duplicate game_id 1"):
        parse_dataset(CANONICAL + rows)


@pytest.mark.parametrize(
    "row, match",
    [
        ("1,A,B,3,2\n", "columns"),
        ("1,A,B,three,2,\n", "not an integer"),
        ("1,A,B,-3,2,\n", "non-negative"),
        ("1,A,B,3,2,,extra\n", "columns"),
        ("x,A,B,3,2,\n", "game_id"),
        ("1,A,,3,2,\n", "empty team name"),
    ],
)
def test_malformed_rows_name_the_line(row, match):
    with pytest.raises((ParseError, ValidationError), match=match) as excinfo:
        parse_dataset(CANONICAL + row)
    assert "line 2" in str(excinfo.value)


def test_bad_scoreline_in_combined_format():
    with pytest.raises(ParseError, match="S1-S2"):
        parse_dataset(COMBINED + "1,A,B,17,\n")


def test_empty_input_and_unknown_header():
    with pytest.raises(ParseError, match="empty input"):
        parse_dataset("")
    with pytest.raises(ParseError, match="unrecognized header"):
        parse_dataset("who,what\n1,2\n")


def test_team_name_normalization_and_case_insensitive_matching():
    ds = parse_dataset(CANONICAL + "1,  Ohio   State ,Denver,5,4,OHIO STATE\n")
    game = ds.games[0]
    assert game.team1.name == "Ohio State"
    assert game.venue is Venue.TEAM1_HOME
    assert TeamId("ohio state") == game.team1
    assert TeamId("ohio state") in ds.teams


def test_blank_lines_are_skipped():
    ds = parse_dataset(CANONICAL + "\n1,A,B,3,2,\n\n2,A,B,1,0,\n")
    assert len(ds) == 2


def test_dataset_team_and_game_cross_references():
    ds = parse_dataset(CANONICAL + "1,A,B,3,2,\n2,B,C,4,1,B\n")
    assert ds.teams == {TeamId("A"), TeamId("B"), TeamId("C")}
    for game in ds:
        assert game.team1 in ds.teams and game.team2 in ds.teams
    assert [g.game_id for g in ds.games_of(TeamId("B"))] == [1, 2]
    assert ds.record(TeamId("B")) == (1, 1, 0)
    assert ds.game(2).team2 == TeamId("C")
    with pytest.raises(KeyError):
        ds.game(99)


_NAMES = [f"Team {c}" for c in "ABCDEFGHIJ"]


@st.composite
def seasons(draw):
    n_teams = draw(st.integers(2, len(_NAMES)))
    n_games = draw(st.integers(1, 25))
    games = []
    for gid in range(1, n_games + 1):
        i = draw(st.integers(0, n_teams - 1))
        j = draw(st.integers(0, n_teams - 2))
        if j >= i:
            j += 1
        games.append(
            Game(
                gid,
                TeamId(_NAMES[i]),
                TeamId(_NAMES[j]),
                draw(st.integers(0, 30)),
                draw(st.integers(0, 30)),
                draw(st.sampled_from(list(Venue))),
            )
        )
    return SeasonDataset(games)


@given(seasons())
def test_serialize_parse_round_trip(ds):
    assert parse_dataset(serialize_dataset(ds)) == ds


@given(seasons())
def test_parse_is_pure(ds):
    text = serialize_dataset(ds)
    first, second = parse_dataset(text), parse_dataset(text)
    assert first == second
    assert serialize_dataset(first) == serialize_dataset(second) == text


def _component_names(ds):
    return [tuple(t.name for t in comp) for comp in schedule_components(ds)]


def test_components_connected_chain():
    ds = parse_dataset(CANONICAL + "1,A,B,3,2,\n2,B,C,4,1,\n")
    assert _component_names(ds) == [("A", "B", "C")]


def test_components_disjoint_pairs_sorted_by_size_then_name():
    ds = parse_dataset(CANONICAL + "1,C,D,3,2,\n2,A,B,4,1,\n3,E,F,1,0,\n4,F,G,1,0,\n")
    assert _component_names(ds) == [("E", "F", "G"), ("A", "B"), ("C", "D")]


def test_components_empty_dataset():
    assert schedule_components(SeasonDataset([])) == []
