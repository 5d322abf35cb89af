"""Bundled desk-scale datasets with pinned expected values.

Every fixture is a season CSV (``<name>.csv``, optional for value-only
fixtures) plus a sidecar ``<name>.expected.json``. Each pinned number in the
sidecar carries a ``source`` marker: ``published-table`` for values taken
from the method's published worked example, ``trivial`` for values obvious
by construction, and ``derived`` for values computed with an independent
oracle (hand tallies, normal-equations solves, or running both engines).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .ingest import SeasonDataset, parse_dataset


@dataclass(frozen=True)
class Fixture:
    name: str
    dataset: SeasonDataset | None
    expected: dict


def _data_root():
    return resources.files("safe3step.fixtures_data")


def list_fixtures() -> list[str]:
    """Names of all bundled fixtures."""
    suffix = ".expected.json"
    return sorted(
        entry.name[: -len(suffix)]
        for entry in _data_root().iterdir()
        if entry.name.endswith(suffix)
    )


def load_fixture(name: str) -> Fixture:
    """Load a bundled fixture by name; raises FileNotFoundError when absent."""
    root = _data_root()
    expected_path = root / f"{name}.expected.json"
    if not expected_path.is_file():
        raise FileNotFoundError(f"no fixture named {name!r}; see list_fixtures()")
    expected = json.loads(expected_path.read_text(encoding="utf-8"))
    csv_path = root / f"{name}.csv"
    dataset = None
    if csv_path.is_file():
        dataset = parse_dataset(csv_path.read_text(encoding="utf-8"))
    return Fixture(name=name, dataset=dataset, expected=expected)
