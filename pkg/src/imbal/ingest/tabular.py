"""Raw table container and CSV parsing.

A :class:`RawTable` is the untyped middle ground between files and encoded
datasets: a grid of float / category-token / missing cells with per-column
kinds and a designated target column.  Missing cells stay ``None`` — they
are only imputed later, by a preprocessing model fitted on a training
split.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from ..data import ColumnSpec, Dataset, encode_labels, preprocess_apply, preprocess_fit
from ..errors import InvalidArgumentError, InvalidDatasetError

__all__ = ["MISSING_TOKENS", "RawTable", "parse_csv", "table_to_dataset"]

# Cell texts that mean "no value" in CSV input.  Cells are stored as
# float (numeric), str (category token), or None (missing).
MISSING_TOKENS = ("?", "")


@dataclass(frozen=True)
class RawTable:
    """Parsed table: column specs, cell grid, and the target column index."""

    columns: tuple[str, ...]
    kinds: tuple[ColumnSpec, ...]
    rows: tuple[tuple[object, ...], ...]
    target: int

    def __post_init__(self) -> None:
        m = len(self.columns)
        if m == 0:
            raise InvalidDatasetError("table has no columns")
        if len(self.kinds) != m:
            raise InvalidDatasetError(
                f"{len(self.kinds)} column kinds for {m} columns"
            )
        if not 0 <= self.target < m:
            raise InvalidDatasetError(
                f"target column {self.target} outside 0..{m - 1}"
            )
        for i, row in enumerate(self.rows):
            if len(row) != m:
                raise InvalidDatasetError(
                    f"row {i} has {len(row)} cells, expected {m}"
                )
        for j, spec in enumerate(self.kinds):
            if spec.kind == "categorical":
                allowed = set(spec.categories or ())
                for i, row in enumerate(self.rows):
                    c = row[j]
                    if c is not None and str(c) not in allowed:
                        raise InvalidDatasetError(
                            f"row {i}, column {self.columns[j]!r}: "
                            f"value {c!r} not in declared categories"
                        )

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    def feature_indices(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n_cols) if j != self.target)

    def feature_schema(self) -> tuple[ColumnSpec, ...]:
        return tuple(self.kinds[j] for j in self.feature_indices())

    def feature_rows(self) -> list[tuple[object, ...]]:
        idx = self.feature_indices()
        return [tuple(row[j] for j in idx) for row in self.rows]

    def label_cells(self) -> list[object]:
        return [row[self.target] for row in self.rows]

    def with_target(self, target: int) -> "RawTable":
        return RawTable(self.columns, self.kinds, self.rows, target)


def _parse_number(text: str) -> float | None:
    """Finite float value of the text, or None when it is not a number."""
    try:
        v = float(text)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def parse_csv(
    data: bytes | str,
    delimiter: str = ",",
    target_column: int | str | None = None,
    has_header: bool = True,
) -> RawTable:
    """Parse CSV bytes into a typed RawTable.

    A column where every non-missing cell parses as a finite number is
    numeric; anything else is categorical with its category list taken as
    the sorted distinct tokens.  '?' and empty cells are missing.  The
    target defaults to the last column.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    raw_rows: list[list[str]] = []
    header: list[str] | None = None
    width: int | None = None
    for rec in reader:
        if not rec or (len(rec) == 1 and rec[0].strip() == ""):
            continue  # blank line
        if header is None and has_header:
            header = [c.strip() for c in rec]
            width = len(header)
            continue
        if width is None:
            width = len(rec)
        if len(rec) != width:
            raise InvalidDatasetError(
                f"line {reader.line_num}: {len(rec)} cells, expected {width}"
            )
        raw_rows.append([c.strip() for c in rec])
    if width is None:
        raise InvalidDatasetError("empty input: no header and no rows")
    if not raw_rows:
        raise InvalidDatasetError("no data rows")
    columns = tuple(header) if header else tuple(f"c{j}" for j in range(width))
    if len(set(columns)) != len(columns):
        raise InvalidDatasetError("duplicate column names in header")

    if target_column is None:
        target = width - 1
    elif isinstance(target_column, str):
        if header is None:
            raise InvalidArgumentError(
                "target column by name needs a header row"
            )
        try:
            target = columns.index(target_column)
        except ValueError:
            raise InvalidArgumentError(
                f"target column {target_column!r} not in header"
            ) from None
    else:
        target = int(target_column)
        if not 0 <= target < width:
            raise InvalidArgumentError(
                f"target column {target} outside 0..{width - 1}"
            )

    kinds: list[ColumnSpec] = []
    cols: list[list[object]] = [[] for _ in range(width)]
    for j in range(width):
        texts = [r[j] for r in raw_rows]
        present = [t for t in texts if t not in MISSING_TOKENS]
        numbers = [_parse_number(t) for t in present]
        if present and all(v is not None for v in numbers):
            kinds.append(ColumnSpec("numeric", None, columns[j]))
            it = iter(numbers)
            for t in texts:
                cols[j].append(None if t in MISSING_TOKENS else next(it))
        else:
            cats = tuple(sorted(set(present)))
            if not cats:
                # a column of only missing cells carries no information
                # either way; keep it numeric so it encodes to a constant
                kinds.append(ColumnSpec("numeric", None, columns[j]))
                cols[j] = [None] * len(texts)
                continue
            kinds.append(ColumnSpec("categorical", cats, columns[j]))
            for t in texts:
                cols[j].append(None if t in MISSING_TOKENS else t)

    rows = tuple(
        tuple(cols[j][i] for j in range(width)) for i in range(len(raw_rows))
    )
    return RawTable(columns=columns, kinds=tuple(kinds), rows=rows, target=target)


def table_to_dataset(table: RawTable, name: str = "table") -> Dataset:
    """Encode a whole table with itself as the fitting split.

    Benchmark folds fit preprocessing on the training split only; this
    helper is for one-shot use of a table outside cross-validation.
    """
    model = preprocess_fit(table.feature_rows(), table.feature_schema())
    X = preprocess_apply(model, table.feature_rows())
    y, classes = encode_labels(table.label_cells())
    return Dataset(
        name=name, features=X, labels=y, n_classes=len(classes),
        schema=model.out_schema,
    )
