"""Dense ARFF parsing and serialization.

Supports @RELATION / @ATTRIBUTE / @DATA with numeric and nominal
attributes, '%'-comment lines, quoted tokens with backslash escapes, and
'?' missing values.  Sparse data rows ({index value, ...}), string
attributes, and date attributes are rejected explicitly.  The serializer
emits a canonical dense form that re-parses to an identical table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..data import ColumnSpec
from ..errors import InvalidDatasetError
from .tabular import RawTable

__all__ = ["ArffAttribute", "ArffHeader", "parse_arff", "serialize_arff"]

_QUOTE_TRIGGERS = set(" ,\t{}%'\"\\")
_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "\\": "\\", "'": "'", '"': '"', "%": "%"}


@dataclass(frozen=True)
class ArffAttribute:
    name: str
    kind: str  # "numeric" | "nominal" | "string" | "date"
    categories: tuple[str, ...] = ()


@dataclass(frozen=True)
class ArffHeader:
    relation: str
    attributes: tuple[ArffAttribute, ...]

    def __post_init__(self) -> None:
        if not self.attributes:
            raise InvalidDatasetError("ARFF header declares no attributes")
        seen: set[str] = set()
        for a in self.attributes:
            low = a.name.lower()
            if low in seen:
                raise InvalidDatasetError(
                    f"duplicate attribute name {a.name!r} (case-insensitive)"
                )
            seen.add(low)


def _unquote(tok: str, where: str) -> str:
    """Strip one layer of ARFF quoting, resolving backslash escapes."""
    if len(tok) >= 2 and tok[0] in "'\"" and tok[-1] == tok[0]:
        body, out, i = tok[1:-1], [], 0
        while i < len(body):
            ch = body[i]
            if ch == "\\":
                if i + 1 >= len(body):
                    raise InvalidDatasetError(f"{where}: dangling escape in {tok!r}")
                out.append(_ESCAPES.get(body[i + 1], body[i + 1]))
                i += 2
            else:
                out.append(ch)
                i += 1
        return "".join(out)
    return tok


def _split_csv_quoted(line: str, where: str) -> list[str]:
    """Split a data or nominal-list line on commas, honoring quotes."""
    toks: list[str] = []
    buf: list[str] = []
    quote: str | None = None
    i = 0
    while i < len(line):
        ch = line[i]
        if quote is not None:
            buf.append(ch)
            if ch == "\\" and i + 1 < len(line):
                buf.append(line[i + 1])
                i += 2
                continue
            if ch == quote:
                quote = None
            i += 1
            continue
        if ch in "'\"":
            quote = ch
            buf.append(ch)
        elif ch == ",":
            toks.append("".join(buf).strip())
            buf = []
        else:
            buf.append(ch)
        i += 1
    if quote is not None:
        raise InvalidDatasetError(f"{where}: unterminated quote")
    toks.append("".join(buf).strip())
    return toks


def _parse_attribute(rest: str, lineno: int) -> ArffAttribute:
    rest = rest.strip()
    if not rest:
        raise InvalidDatasetError(f"line {lineno}: @ATTRIBUTE without a name")
    # name is either quoted or runs to the first whitespace
    if rest[0] in "'\"":
        q = rest[0]
        j = 1
        while j < len(rest):
            if rest[j] == "\\":
                j += 2
                continue
            if rest[j] == q:
                break
            j += 1
        if j >= len(rest):
            raise InvalidDatasetError(f"line {lineno}: unterminated attribute name")
        name = _unquote(rest[: j + 1], f"line {lineno}")
        typ = rest[j + 1 :].strip()
    else:
        parts = rest.split(None, 1)
        if len(parts) < 2:
            raise InvalidDatasetError(f"line {lineno}: @ATTRIBUTE missing a type")
        name, typ = parts[0], parts[1].strip()
    if not typ:
        raise InvalidDatasetError(f"line {lineno}: @ATTRIBUTE missing a type")
    if typ.startswith("{"):
        if not typ.endswith("}"):
            raise InvalidDatasetError(f"line {lineno}: unclosed nominal list")
        inner = typ[1:-1]
        cats = [
            _unquote(t, f"line {lineno}")
            for t in _split_csv_quoted(inner, f"line {lineno}")
        ]
        cats = [c for c in cats if c != ""]
        if not cats:
            raise InvalidDatasetError(f"line {lineno}: empty nominal list")
        if len(set(cats)) != len(cats):
            raise InvalidDatasetError(f"line {lineno}: duplicate nominal value")
        return ArffAttribute(name, "nominal", tuple(cats))
    low = typ.lower()
    if low in ("numeric", "real", "integer"):
        return ArffAttribute(name, "numeric")
    if low == "string" or low.startswith("date"):
        return ArffAttribute(name, "string" if low == "string" else "date")
    raise InvalidDatasetError(f"line {lineno}: unknown attribute type {typ!r}")


def parse_arff(
    data: bytes | str, target_column: int | None = None
) -> tuple[ArffHeader, RawTable]:
    """Parse dense ARFF into its header and a typed RawTable.

    The target defaults to the last attribute.  String and date
    attributes are rejected: they cannot be used as features here.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    relation: str | None = None
    attrs: list[ArffAttribute] = []
    in_data = False
    data_rows: list[tuple[object, ...]] = []
    data_row_no = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if not in_data and line.startswith("@"):
            parts = line.split(None, 1)
            key = parts[0].lower()
            rest = parts[1] if len(parts) > 1 else ""
            if key == "@relation":
                if not rest.strip():
                    raise InvalidDatasetError(f"line {lineno}: @RELATION without a name")
                relation = _unquote(rest.strip(), f"line {lineno}")
            elif key == "@attribute":
                attrs.append(_parse_attribute(rest, lineno))
            elif key == "@data":
                if relation is None:
                    raise InvalidDatasetError(
                        f"line {lineno}: @DATA before @RELATION"
                    )
                if not attrs:
                    raise InvalidDatasetError(
                        f"line {lineno}: @DATA before any @ATTRIBUTE"
                    )
                in_data = True
            else:
                raise InvalidDatasetError(
                    f"line {lineno}: unknown directive {parts[0]!r}"
                )
            continue
        if not in_data:
            raise InvalidDatasetError(
                f"line {lineno}: data before the @DATA marker"
            )
        if line.startswith("{"):
            raise InvalidDatasetError(
                f"line {lineno}: sparse ARFF rows are not supported"
            )
        data_row_no += 1
        where = f"data row {data_row_no} (line {lineno})"
        toks = _split_csv_quoted(line, where)
        if len(toks) != len(attrs):
            raise InvalidDatasetError(
                f"{where}: {len(toks)} values for {len(attrs)} attributes"
            )
        row: list[object] = []
        for att, tok in zip(attrs, toks):
            if tok == "?":
                row.append(None)
                continue
            val = _unquote(tok, where)
            if att.kind == "numeric":
                try:
                    num = float(val)
                except ValueError:
                    raise InvalidDatasetError(
                        f"{where}: attribute {att.name!r}: "
                        f"non-numeric value {val!r}"
                    ) from None
                if not math.isfinite(num):
                    raise InvalidDatasetError(
                        f"{where}: attribute {att.name!r}: non-finite value"
                    )
                row.append(num)
            else:
                if val not in att.categories:
                    raise InvalidDatasetError(
                        f"{where}: attribute {att.name!r}: "
                        f"value {val!r} outside the declared set"
                    )
                row.append(val)
        data_rows.append(tuple(row))

    if relation is None:
        raise InvalidDatasetError("missing @RELATION declaration")
    if not in_data:
        raise InvalidDatasetError("missing @DATA section")
    header = ArffHeader(relation=relation, attributes=tuple(attrs))
    for a in attrs:
        if a.kind in ("string", "date"):
            raise InvalidDatasetError(
                f"attribute {a.name!r} has type {a.kind}; "
                "string/date attributes are not usable as features"
            )
    kinds = tuple(
        ColumnSpec("numeric", None, a.name)
        if a.kind == "numeric"
        else ColumnSpec("categorical", a.categories, a.name)
        for a in attrs
    )
    target = len(attrs) - 1 if target_column is None else target_column
    table = RawTable(
        columns=tuple(a.name for a in attrs),
        kinds=kinds,
        rows=tuple(data_rows),
        target=target,
    )
    return header, table


def _quote(tok: str) -> str:
    if tok == "" or tok == "?" or any(c in _QUOTE_TRIGGERS for c in tok):
        body = tok.replace("\\", "\\\\").replace("'", "\\'")
        return f"'{body}'"
    return tok


def _format_cell(cell: object, spec: ColumnSpec) -> str:
    if cell is None:
        return "?"
    if spec.kind == "numeric":
        return repr(float(cell))  # shortest text that parses back exactly
    return _quote(str(cell))


def serialize_arff(table: RawTable, relation: str = "table") -> bytes:
    """Emit a RawTable as canonical dense ARFF."""
    lines = [f"@RELATION {_quote(relation)}", ""]
    for name, spec in zip(table.columns, table.kinds):
        if spec.kind == "numeric":
            lines.append(f"@ATTRIBUTE {_quote(name)} NUMERIC")
        else:
            cats = ",".join(_quote(c) for c in spec.categories or ())
            lines.append(f"@ATTRIBUTE {_quote(name)} {{{cats}}}")
    lines.append("")
    lines.append("@DATA")
    for row in table.rows:
        lines.append(
            ",".join(_format_cell(c, s) for c, s in zip(row, table.kinds))
        )
    return ("\n".join(lines) + "\n").encode("utf-8")
