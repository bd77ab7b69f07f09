"""Readers for the scanner/tracker CSV files and the components JSON."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

from .jobs import PlotInputError


@dataclass(frozen=True)
class PointTable:
    """Rows of a scan.csv or bundle.csv, kept as verbatim strings.

    alpha_columns lists the barycentric coordinate headers (empty for a
    tracked-bundle table). sample_index groups rows that belong to one
    matrix: slot restarts at 0 on each new sample.
    """

    path: str
    columns: tuple
    rows: tuple  # of dicts, column -> raw string
    alpha_columns: tuple
    sample_index: tuple

    @property
    def is_scan(self) -> bool:
        return bool(self.alpha_columns)


def read_point_table(path: str) -> PointTable:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise PlotInputError(f"{path}: empty CSV") from None
        raw_rows = [row for row in reader if row]
    missing = [c for c in ("slot", "re", "im") if c not in header]
    if missing:
        raise PlotInputError(f"{path}: missing columns: {', '.join(missing)}")
    if not raw_rows:
        raise PlotInputError(f"{path}: no data rows")
    alpha_columns = tuple(c for c in header if c.startswith("alpha_"))
    rows = []
    sample_index = []
    current = -1
    for i, row in enumerate(raw_rows):
        if len(row) != len(header):
            raise PlotInputError(
                f"{path}: row {i + 2} has {len(row)} cells, expected {len(header)}"
            )
        entry = dict(zip(header, row))
        if entry["slot"] == "0":
            current += 1
        sample_index.append(current)
        rows.append(entry)
    return PointTable(
        path=path,
        columns=tuple(header),
        rows=tuple(rows),
        alpha_columns=alpha_columns,
        sample_index=tuple(sample_index),
    )


def read_component_map(path: str) -> dict:
    """(sample, slot) -> component id, from a components.json."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise PlotInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PlotInputError(
            f"malformed JSON in {path} at line {exc.lineno}: {exc.msg}"
        ) from exc
    comps = obj.get("components")
    if not isinstance(comps, list):
        raise PlotInputError(f"{path}: expected a components list")
    mapping = {}
    for comp in comps:
        cid = comp.get("id")
        members = comp.get("members")
        if not isinstance(cid, int) or not isinstance(members, list):
            raise PlotInputError(f"{path}: component entries need id and members")
        for member in members:
            mapping[(int(member[0]), int(member[1]))] = cid
    return mapping
