"""Batch command-line front end.

One subcommand per invocation: ``ratings | rank | rpi | perturb | accify``.
Data goes to stdout (or ``--output``); warnings and notes go to stderr.
Exit codes: 0 success, 1 usage error, 2 data/validation error, 3 solver
non-convergence under ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import warnings
from pathlib import Path

from .ingest import ParseError, SeasonDataset, TeamId, ValidationError, load_dataset
from .points import TallyError, tally_all, tally_team, tally_to_csv, tally_to_json
from .ranking import rank, ranking_to_csv, ranking_to_json
from .ratings import (
    SolverConfig,
    SolverError,
    allocation_from_ratings,
    allocation_to_csv,
    allocation_to_json,
    solve_ratings,
)
from .rpi import (
    DEFAULT_WEIGHTS,
    acc_ify,
    compute_rpi,
    deltas_to_csv,
    deltas_to_json,
    flip_game,
    perturb_and_compare,
    rpi_to_csv,
    rpi_to_json,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NO_CONVERGENCE = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; remap to 1 to keep 2 for data errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _weights(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated weights")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric weight in {text!r}") from None


def _add_io_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", required=True, help="season CSV file")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", help="output file (default: stdout)")


def _add_solver_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--hfa", type=float, default=0.73, help="home-field advantage in goals")
    sub.add_argument("--hfa-mode", choices=("fixed", "estimated"), default="fixed")
    sub.add_argument("--margin-cap", type=float, default=None, help="cap on raw score margins")
    sub.add_argument("--anchor", type=float, default=99.9, help="rating of the top team")
    sub.add_argument("--tolerance", type=float, default=1e-9)
    sub.add_argument("--max-iters", type=int, default=10000)
    sub.add_argument("--win-constant", type=float, default=25.0)
    sub.add_argument(
        "--strict", action="store_true", help="exit 3 if the solver does not converge"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="s3s", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    ratings = commands.add_parser("ratings", help="power ratings and point allocation")
    _add_io_flags(ratings)
    _add_solver_flags(ratings)

    ranking = commands.add_parser("rank", help="full pipeline: tallies and ranking list")
    _add_io_flags(ranking)
    _add_solver_flags(ranking)
    ranking.add_argument("--team", help="emit this team's tally instead of the ranking")
    ranking.add_argument("--tally-dir", help="also write every team's tally into this directory")

    rpi_cmd = commands.add_parser("rpi", help="RPI table")
    _add_io_flags(rpi_cmd)
    rpi_cmd.add_argument("--weights", type=_weights, default=DEFAULT_WEIGHTS,
                         help="wp,owp,oowp weights (default 0.25,0.50,0.25)")

    perturb = commands.add_parser("perturb", help="flip one game and compare rankings")
    _add_io_flags(perturb)
    _add_solver_flags(perturb)
    perturb.add_argument("--game-id", type=int, required=True)
    perturb.add_argument("--method", choices=("rpi", "power"), required=True)
    perturb.add_argument("--weights", type=_weights, default=DEFAULT_WEIGHTS)

    accify = commands.add_parser(
        "accify", help="replace a team's opponents and compare RPI tables"
    )
    _add_io_flags(accify)
    accify.add_argument("--team", required=True, help="team whose schedule is replaced")
    accify.add_argument(
        "--replacements", required=True,
        help="file with one replacement opponent per line, in schedule order",
    )
    accify.add_argument("--weights", type=_weights, default=DEFAULT_WEIGHTS)

    return parser


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        hfa=args.hfa,
        hfa_mode=args.hfa_mode,
        margin_cap=args.margin_cap,
        tolerance=args.tolerance,
        max_iterations=args.max_iters,
        anchor=args.anchor,
    )


def _solve(ds: SeasonDataset, args: argparse.Namespace):
    rt = solve_ratings(ds, _solver_config(args))
    if not rt.converged:
        print(
            f"warning: solver did not converge within {args.max_iters} iterations",
            file=sys.stderr,
        )
        if args.strict:
            raise _NotConverged()
    if len(rt.components) > 1:
        print(
            f"warning: schedule splits into {len(rt.components)} components; "
            "ratings are only comparable within a component",
            file=sys.stderr,
        )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        alloc = allocation_from_ratings(rt, win_constant=args.win_constant)
    for entry in caught:
        print(f"warning: {entry.message}", file=sys.stderr)
    return rt, alloc


class _NotConverged(Exception):
    pass


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name)


def cmd_ratings(args: argparse.Namespace) -> int:
    ds = load_dataset(args.input)
    rt, alloc = _solve(ds, args)
    text = allocation_to_csv(rt, alloc) if args.format == "csv" else allocation_to_json(rt, alloc)
    _emit(text, args.output)
    return EXIT_OK


def cmd_rank(args: argparse.Namespace) -> int:
    ds = load_dataset(args.input)
    rt, alloc = _solve(ds, args)
    tallies = tally_all(ds, alloc, hfa=args.hfa)
    if args.tally_dir:
        directory = Path(args.tally_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for team, tally in tallies.items():
            body = tally_to_csv(tally) if args.format == "csv" else tally_to_json(tally)
            suffix = "csv" if args.format == "csv" else "json"
            (directory / f"{_slug(team.name)}.{suffix}").write_text(body, encoding="utf-8")
    if args.team:
        team = TeamId(args.team)
        if team not in ds.teams:
            raise ValidationError(f"team {args.team!r} is not in the dataset")
        tally = tally_team(team, ds, alloc, hfa=args.hfa)
        text = tally_to_csv(tally) if args.format == "csv" else tally_to_json(tally)
    else:
        ranking = rank(tallies, ds)
        text = ranking_to_csv(ranking) if args.format == "csv" else ranking_to_json(ranking)
    _emit(text, args.output)
    return EXIT_OK


def cmd_rpi(args: argparse.Namespace) -> int:
    ds = load_dataset(args.input)
    table = compute_rpi(ds, args.weights)
    text = rpi_to_csv(table, ds) if args.format == "csv" else rpi_to_json(table, ds)
    _emit(text, args.output)
    return EXIT_OK


def cmd_perturb(args: argparse.Namespace) -> int:
    ds = load_dataset(args.input)
    solver_config = _solver_config(args) if args.method == "power" else None
    if solver_config is not None and args.strict:
        for season in (ds, flip_game(ds, args.game_id)):
            if not solve_ratings(season, solver_config).converged:
                print(
                    f"warning: solver did not converge within {args.max_iters} iterations",
                    file=sys.stderr,
                )
                return EXIT_NO_CONVERGENCE
    deltas = perturb_and_compare(
        ds, args.game_id, args.method, weights=args.weights, solver_config=solver_config
    )
    moved = sum(1 for d in deltas if d.moved)
    print(f"note: {moved} of {len(deltas)} teams changed rank", file=sys.stderr)
    places = 4 if args.method == "rpi" else 2
    text = deltas_to_csv(deltas, places=places) if args.format == "csv" else deltas_to_json(deltas)
    _emit(text, args.output)
    return EXIT_OK


def _two_panel_csv(before, after) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        ["rank", "team_before", "rpi_before", "team_after", "rpi_after"]
    )
    order_before = before.rank_order()
    order_after = after.rank_order()
    for i in range(max(len(order_before), len(order_after))):
        left = order_before[i] if i < len(order_before) else None
        right = order_after[i] if i < len(order_after) else None
        writer.writerow(
            [
                i + 1,
                left.name if left else "",
                f"{before.rpi[left]:.4f}" if left else "",
                right.name if right else "",
                f"{after.rpi[right]:.4f}" if right else "",
            ]
        )
    return buffer.getvalue()


def cmd_accify(args: argparse.Namespace) -> int:
    ds = load_dataset(args.input)
    target = TeamId(args.team)
    lines = Path(args.replacements).read_text(encoding="utf-8-sig").splitlines()
    replacements = [TeamId(line) for line in lines if line.strip()]
    modified = acc_ify(ds, target, replacements)
    before = compute_rpi(ds, args.weights)
    after = compute_rpi(modified, args.weights)
    if args.format == "csv":
        text = _two_panel_csv(before, after)
    else:
        payload = {
            "target": target.name,
            "before": json.loads(rpi_to_json(before, ds)),
            "after": json.loads(rpi_to_json(after, modified)),
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _emit(text, args.output)
    return EXIT_OK


_COMMANDS = {
    "ratings": cmd_ratings,
    "rank": cmd_rank,
    "rpi": cmd_rpi,
    "perturb": cmd_perturb,
    "accify": cmd_accify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _NotConverged:
        return EXIT_NO_CONVERGENCE
    except (ParseError, ValidationError, TallyError, SolverError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
