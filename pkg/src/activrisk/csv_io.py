"""Canonical CSV schema and row parsing.

Header order is fixed: the ten categorical variables, the four activity
columns, then label.  Categorical cells are lowercase snake tokens
(really_high, very_poor, not_sport_related, at_risk, ...).  The label
column is optional on prediction input.
"""

from __future__ import annotations

import csv
from typing import Iterable, Sequence

from .errors import ActivriskError, MalformedRow, MissingColumn
from .survey import CATEGORICAL_FIELDS, ActivityLog, RiskLabel, SurveyResponse

FEATURE_COLUMNS = tuple(name for name, _ in CATEGORICAL_FIELDS)
ACTIVITY_COLUMNS = ("mod_days", "mod_min", "vig_days", "vig_min")
LABEL_COLUMN = "label"
COLUMNS = FEATURE_COLUMNS + ACTIVITY_COLUMNS + (LABEL_COLUMN,)


def parse_activity(row: dict, line: int) -> ActivityLog:
    """Read the four activity cells of one row."""
    raw = {}
    for column in ACTIVITY_COLUMNS:
        cell = row.get(column)
        if cell is None:
            raise MissingColumn(column)
        raw[column] = cell
    try:
        return ActivityLog(
            mod_days=int(raw["mod_days"]),
            mod_min=float(raw["mod_min"]),
            vig_days=int(raw["vig_days"]),
            vig_min=float(raw["vig_min"]),
        )
    except ValueError as exc:
        raise MalformedRow(line, str(exc)) from None


def parse_response(row: dict, line: int, need_label: bool) -> SurveyResponse:
    values = {}
    for name, enum_type in CATEGORICAL_FIELDS:
        try:
            values[name] = enum_type.from_token(row[name])
        except ActivriskError as exc:
            raise MalformedRow(line, f"column {name!r}: {exc}") from None

    if all(row.get(c) not in (None, "") for c in ACTIVITY_COLUMNS):
        activity = parse_activity(row, line)
    else:
        activity = ActivityLog(0, 0.0, 0, 0.0)

    label = None
    cell = row.get(LABEL_COLUMN)
    if cell not in (None, ""):
        try:
            label = RiskLabel.from_token(cell)
        except ActivriskError as exc:
            raise MalformedRow(line, f"column 'label': {exc}") from None
    elif need_label:
        raise MalformedRow(line, "missing label")
    return SurveyResponse(**values, activity=activity, label=label)


def read_survey_csv(path: str, need_label: bool) -> list[SurveyResponse]:
    """Parse survey records; activity columns default to zero when absent."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for column in FEATURE_COLUMNS:
            if column not in header:
                raise MissingColumn(column)
        if need_label and LABEL_COLUMN not in header:
            raise MissingColumn(LABEL_COLUMN)
        records = []
        for row in reader:
            records.append(parse_response(row, reader.line_num, need_label))
    return records


def response_row(record: SurveyResponse) -> dict:
    """One canonical CSV row; minutes keep their shortest round-trip text."""
    row = {name: getattr(record, name).token for name, _ in CATEGORICAL_FIELDS}
    log = record.activity
    row["mod_days"] = str(log.mod_days)
    row["mod_min"] = str(log.mod_min)
    row["vig_days"] = str(log.vig_days)
    row["vig_min"] = str(log.vig_min)
    row[LABEL_COLUMN] = record.label.token if record.label is not None else ""
    return row


def write_survey_csv(path: str, records: Iterable[SurveyResponse]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(response_row(record))


def read_rows(path: str, required: Sequence[str]) -> tuple[list[str], list[tuple[int, dict]]]:
    """Generic reader preserving unknown columns; returns (header, rows)."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = list(reader.fieldnames or [])
        for column in required:
            if column not in header:
                raise MissingColumn(column)
        rows = [(reader.line_num, row) for row in reader]
    return header, rows


def write_rows(path: str, header: Sequence[str], rows: Iterable[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(header), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
