"""Experiment reports and their CSV / JSON files.

Both formats carry one record per (experiment, n) with the columns in
REPORT_COLUMNS. Records are sorted by (experiment, n) before writing, and
floats are written in their shortest round-trip form, so equal reports give
byte-identical files.
"""
import csv
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

from ..config import ReportFormat, SpacePair
from .fitting import RateFit

REPORT_COLUMNS = [
    "experiment", "n", "N1", "N2", "p", "q", "u", "v", "m", "trials",
    "mean_error", "std_error", "w_moment_error", "query_count", "bound_value", "seed",
]


class ReportRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    experiment: str
    n: int
    n1: int = Field(alias="N1")
    n2: int = Field(alias="N2")
    p: str
    q: str
    u: str
    v: str
    m: Optional[int] = None
    trials: int
    mean_error: float
    std_error: float
    w_moment_error: float
    query_count: int
    bound_value: float
    seed: int

    @classmethod
    def for_space(cls, sp: SpacePair, **fields) -> "ReportRecord":
        return cls(n1=sp.n1, n2=sp.n2, p=sp.p.label, q=sp.q.label, u=sp.u.label, v=sp.v.label, **fields)


class Report(BaseModel):
    records: List[ReportRecord] = []
    fit: Optional[RateFit] = None
    note: Optional[str] = None

    def sorted_records(self) -> List[ReportRecord]:
        return sorted(self.records, key=lambda r: (r.experiment, r.n))


_RECORDS = TypeAdapter(List[ReportRecord])


def _csv_cell(value) -> str:
    return "" if value is None else str(value)


def emit_report(report: Report, path, format: ReportFormat = "csv") -> None:
    """Write the records of `report` to `path`; raises OSError naming the path."""
    path = Path(path)
    records = report.sorted_records()
    try:
        if format == "json":
            path.write_bytes(_RECORDS.dump_json(records, by_alias=True, indent=2) + b"\n")
        elif format == "csv":
            with path.open("w", encoding="utf-8", newline="") as f:
                writer = csv.DictWriter(f, fieldnames=REPORT_COLUMNS, lineterminator="\n")
                writer.writeheader()
                for record in records:
                    row = record.model_dump(by_alias=True)
                    writer.writerow({key: _csv_cell(row[key]) for key in REPORT_COLUMNS})
        else:
            raise ValueError(f"unknown report format '{format}'")
    except OSError as e:
        raise OSError(f"cannot write report to '{path}': {e}") from e


def load_report(path, format: ReportFormat = "csv") -> List[ReportRecord]:
    path = Path(path)
    try:
        if format == "json":
            return _RECORDS.validate_json(path.read_bytes())
        with path.open("r", encoding="utf-8", newline="") as f:
            rows = list(csv.DictReader(f))
    except OSError as e:
        raise OSError(f"cannot read report from '{path}': {e}") from e
    for row in rows:
        if row.get("m") == "":
            row["m"] = None
    return _RECORDS.validate_python(rows)
