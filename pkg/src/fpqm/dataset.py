"""Tabular intake: schemas, CSV loading, and cleanup into index-coded datasets.

Every downstream stage works on a :class:`Dataset`, an integer matrix whose
columns are nominal attributes with frozen label domains.  Raw CSV tables
pass through :func:`preprocess` once (imputation, range screening, binning)
to produce that form; later tables for the same model are coded against the
frozen schema with :func:`encode_with_schema`, which rejects labels the
training data never defined.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

MISSING_TOKENS = ("", "NA")


class DataError(ValueError):
    """Raised for malformed tables, unknown labels, or unusable columns."""


@dataclass(frozen=True)
class Attribute:
    """One questionnaire attribute: a name plus its ordered label domain."""

    name: str
    domain: tuple[str, ...]
    index: int

    def __post_init__(self) -> None:
        if not self.name:
            raise DataError("attribute name must be non-empty")
        if not self.domain:
            raise DataError(f"attribute {self.name!r} has an empty domain")
        if len(set(self.domain)) != len(self.domain):
            raise DataError(f"attribute {self.name!r} has duplicate labels")
        if self.index < 0:
            raise DataError(f"attribute {self.name!r} has negative index")

    @property
    def size(self) -> int:
        return len(self.domain)

    def label_index(self, label: str) -> int:
        try:
            return self.domain.index(label)
        except ValueError:
            raise DataError(f"label {label!r} not in domain of {self.name!r}") from None

    def to_dict(self) -> dict:
        return {"name": self.name, "domain": list(self.domain)}


def schema_digest(schema: Sequence[Attribute]) -> str:
    """Deterministic fingerprint of attribute names and domains."""
    doc = json.dumps([a.to_dict() for a in schema], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(doc.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Dataset:
    """Index-coded response matrix; ``rows[i, j]`` is a position in ``schema[j].domain``."""

    schema: tuple[Attribute, ...]
    rows: np.ndarray

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows, dtype=np.int64)
        object.__setattr__(self, "rows", rows)
        if rows.ndim != 2:
            raise DataError("rows must be a 2-d matrix")
        if rows.shape[1] != len(self.schema):
            raise DataError(
                f"row width {rows.shape[1]} does not match schema width {len(self.schema)}"
            )
        for j, attr in enumerate(self.schema):
            if attr.index != j:
                raise DataError(f"schema position {j} holds attribute with index {attr.index}")
            col = rows[:, j]
            if col.size and (col.min() < 0 or col.max() >= attr.size):
                bad = int(np.argmax((col < 0) | (col >= attr.size)))
                raise DataError(
                    f"row {bad}, column {attr.name!r}: value index {int(col[bad])} "
                    f"outside domain of size {attr.size}"
                )

    @property
    def n_attributes(self) -> int:
        return len(self.schema)

    @property
    def n_rows(self) -> int:
        return int(self.rows.shape[0])

    @property
    def domain_sizes(self) -> tuple[int, ...]:
        return tuple(a.size for a in self.schema)

    @property
    def digest(self) -> str:
        return schema_digest(self.schema)

    def labels_for(self, row: Sequence[int]) -> tuple[str, ...]:
        return tuple(self.schema[j].domain[v] for j, v in enumerate(row))


@dataclass(frozen=True)
class RawTable:
    """Unprocessed CSV content: header names and string cells, ``None`` for missing."""

    headers: tuple[str, ...]
    cells: tuple[tuple[str | None, ...], ...]

    @property
    def n_rows(self) -> int:
        return len(self.cells)


def load_csv(source: str | Path | io.TextIOBase) -> RawTable:
    """Read an RFC-4180 CSV with a header row; empty or ``NA`` cells become missing.

    Args:
        source: path or open text handle (UTF-8).

    Raises:
        DataError: header absent, duplicate column names, or ragged rows.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return load_csv(fh)
    reader = csv.reader(source)
    try:
        headers = next(reader)
    except StopIteration:
        raise DataError("CSV has no header row") from None
    if len(set(headers)) != len(headers):
        raise DataError("CSV header contains duplicate column names")
    cells: list[tuple[str | None, ...]] = []
    for lineno, record in enumerate(reader, start=2):
        if not record:
            continue  # blank line
        if len(record) != len(headers):
            raise DataError(
                f"line {lineno}: expected {len(headers)} fields, found {len(record)}"
            )
        cells.append(tuple(None if c in MISSING_TOKENS else c for c in record))
    return RawTable(headers=tuple(headers), cells=tuple(cells))


@dataclass(frozen=True)
class ColumnSpec:
    """Cleanup directions for one column.

    kind:        "nominal", "ordinal", or "numeric".
    valid_range: numeric only; values outside it count as noise.
    bins:        numeric only; equal-width interval count after imputation.
    """

    kind: str = "nominal"
    valid_range: tuple[float, float] | None = None
    bins: int = 5

    def __post_init__(self) -> None:
        if self.kind not in ("nominal", "ordinal", "numeric"):
            raise DataError(f"unknown column kind {self.kind!r}")
        if self.bins < 1:
            raise DataError("bins must be >= 1")
        if self.valid_range is not None and self.valid_range[0] > self.valid_range[1]:
            raise DataError("valid_range low end exceeds high end")


def column_specs_from_json(text: str) -> dict[str, ColumnSpec]:
    """Parse a {column name: {kind, valid_range?, bins?}} JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"preprocessing spec is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DataError("preprocessing spec must be a JSON object")
    specs = {}
    for name, body in doc.items():
        if not isinstance(body, dict):
            raise DataError(f"column {name!r}: spec entry must be an object")
        rng = body.get("valid_range")
        specs[name] = ColumnSpec(
            kind=body.get("kind", "nominal"),
            valid_range=tuple(rng) if rng is not None else None,
            bins=body.get("bins", 5),
        )
    return specs


def _mode_first_seen(values: Iterable[str]) -> str:
    counts: dict[str, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    if not counts:
        raise DataError("column has no usable values")
    best = max(counts.values())
    # dict preserves first-seen order, so the first hit wins ties
    return next(label for label, c in counts.items() if c == best)


def _numeric_column(name: str, raw: list[str | None], spec: ColumnSpec) -> list[str]:
    parsed: list[float | None] = []
    for i, cell in enumerate(raw):
        if cell is None:
            parsed.append(None)
            continue
        try:
            x = float(cell)
        except ValueError:
            raise DataError(f"row {i}, column {name!r}: {cell!r} is not numeric") from None
        if spec.valid_range is not None and not (spec.valid_range[0] <= x <= spec.valid_range[1]):
            parsed.append(None)  # out-of-range noise joins the missing pool
        else:
            parsed.append(x)
    surviving = [x for x in parsed if x is not None]
    if not surviving:
        raise DataError(f"column {name!r}: no values survive range screening")
    mean = float(np.mean(surviving))
    filled = np.array([mean if x is None else x for x in parsed])
    lo, hi = float(filled.min()), float(filled.max())
    if hi == lo:
        edges = np.array([lo, lo])
        idx = np.zeros(len(filled), dtype=int)
    else:
        edges = np.linspace(lo, hi, spec.bins + 1)
        idx = np.minimum(np.searchsorted(edges, filled, side="right") - 1, spec.bins - 1)
    labels = []
    for i in range(len(edges) - 1):
        close = "]" if i == len(edges) - 2 else ")"
        labels.append(f"[{edges[i]:.6g}, {edges[i + 1]:.6g}{close}")
    return [labels[k] for k in idx]


def preprocess(raw: RawTable, specs: Mapping[str, ColumnSpec] | None = None) -> Dataset:
    """Clean a raw table and freeze its schema.

    Numeric columns: out-of-range values are treated as noise, noise and
    missing cells are replaced by the mean of the surviving values, then the
    column is cut into equal-width bins whose interval strings become the
    labels.  Nominal and ordinal columns: missing cells take the modal label,
    first-seen label winning ties.  Domains list distinct labels in first
    appearance order.

    Args:
        raw: loaded CSV content.
        specs: per-column directions; absent columns default to nominal.

    Returns:
        Dataset with one attribute per CSV column, in CSV order.
    """
    specs = dict(specs or {})
    for name in specs:
        if name not in raw.headers:
            raise DataError(f"preprocessing spec names unknown column {name!r}")
    columns: list[list[str]] = []
    for j, name in enumerate(raw.headers):
        spec = specs.get(name, ColumnSpec())
        col_raw = [row[j] for row in raw.cells]
        if spec.kind == "numeric":
            columns.append(_numeric_column(name, col_raw, spec))
        else:
            mode = _mode_first_seen(v for v in col_raw if v is not None)
            columns.append([mode if v is None else v for v in col_raw])
    schema = []
    coded = np.zeros((raw.n_rows, len(raw.headers)), dtype=np.int64)
    for j, name in enumerate(raw.headers):
        domain: dict[str, int] = {}
        for label in columns[j]:
            if label not in domain:
                domain[label] = len(domain)
        schema.append(Attribute(name=name, domain=tuple(domain), index=j))
        coded[:, j] = [domain[label] for label in columns[j]]
    return Dataset(schema=tuple(schema), rows=coded)


def encode_with_schema(raw: RawTable, schema: Sequence[Attribute]) -> Dataset:
    """Code a table against a frozen schema, rejecting anything outside it.

    Columns are matched by name; labels unknown to the schema (including
    missing cells) raise :class:`DataError` with row and column coordinates.
    """
    names = [a.name for a in schema]
    if list(raw.headers) != names:
        raise DataError(
            f"column names {list(raw.headers)} do not match schema {names}"
        )
    lookup = [{label: k for k, label in enumerate(a.domain)} for a in schema]
    coded = np.zeros((raw.n_rows, len(schema)), dtype=np.int64)
    for i, row in enumerate(raw.cells):
        for j, cell in enumerate(row):
            if cell is None or cell not in lookup[j]:
                shown = "missing" if cell is None else repr(cell)
                raise DataError(
                    f"row {i}, column {schema[j].name!r}: label {shown} "
                    "not in the frozen domain"
                )
            coded[i, j] = lookup[j][cell]
    return Dataset(schema=tuple(schema), rows=coded)
