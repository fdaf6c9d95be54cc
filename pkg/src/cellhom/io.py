"""JSON file formats: matrices, ``cellchain/1`` complexes, covers, critical records.

Integers beyond 2**53 - 1 are written as decimal strings and either form is
accepted on input. Filtration values are read as exact decimals.
"""

from __future__ import annotations

import json
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any

from .cw import Cell, CWComplex
from .linalg import IntMatrix
from .morse import CriticalRecord, FilteredComplex, filtered_complex_from_critical_data
from .nerve import Cover

CELLCHAIN = "cellchain/1"
SAFE_INT = 2 ** 53 - 1


class FormatError(ValueError):
    def __init__(self, source: str, field: str, expected: str, got: Any = None):
        msg = f"{source}: field '{field}': expected {expected}"
        if got is not None:
            shown = repr(got)
            msg += f", got {shown if len(shown) < 60 else shown[:57] + '...'}"
        super().__init__(msg)
        self.source, self.field, self.expected = source, field, expected


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(str(path), "<file>", "a readable file", exc.strerror) from exc
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise FormatError(str(path), "<document>",
                          f"valid JSON (line {exc.lineno}, column {exc.colno}: {exc.msg})") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _int(x, src, field, minimum=None) -> int:
    if isinstance(x, bool):
        raise FormatError(src, field, "an integer", x)
    if isinstance(x, int):
        val = x
    elif isinstance(x, str) and x.strip().lstrip("+-").isdigit():
        val = int(x)
    else:
        raise FormatError(src, field, "an integer (or decimal string)", x)
    if minimum is not None and val < minimum:
        raise FormatError(src, field, f"an integer >= {minimum}", x)
    return val


def encode_int(x: int) -> int | str:
    return x if abs(x) <= SAFE_INT else str(x)


def _value(x, src, field) -> Fraction:
    if isinstance(x, bool):
        raise FormatError(src, field, "a real number", x)
    try:
        if isinstance(x, (int, Decimal)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x.strip())
    except (ValueError, ZeroDivisionError):
        pass
    raise FormatError(src, field, "a real number (or decimal/fraction string)", x)


def encode_value(v: Fraction) -> int | str:
    if v.denominator == 1:
        return encode_int(v.numerator)
    d = v.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{v.numerator}/{v.denominator}"
    places = max(twos, fives)
    scaled = v.numerator * 10 ** places // v.denominator
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _obj(x, src, field) -> dict:
    if not isinstance(x, dict):
        raise FormatError(src, field, "an object", x)
    return x


def _list(x, src, field) -> list:
    if not isinstance(x, list):
        raise FormatError(src, field, "an array", x)
    return x


# matrices

def parse_matrix(doc: Any, src: str = "<matrix>") -> IntMatrix:
    doc = _obj(doc, src, "<document>")
    for key in ("rows", "cols", "entries"):
        if key not in doc:
            raise FormatError(src, key, "present (object with rows, cols, entries)")
    rows = _int(doc["rows"], src, "rows", 0)
    cols = _int(doc["cols"], src, "cols", 0)
    entries = _list(doc["entries"], src, "entries")
    if len(entries) != rows:
        raise FormatError(src, "entries", f"{rows} arrays of {cols} integers",
                          f"{len(entries)} rows")
    data = []
    for i, row in enumerate(entries):
        row = _list(row, src, f"entries[{i}]")
        if len(row) != cols:
            raise FormatError(src, f"entries[{i}]", f"an array of {cols} integers",
                              f"{len(row)} entries")
        data.append([_int(x, src, f"entries[{i}][{j}]") for j, x in enumerate(row)])
    return IntMatrix(data, rows, cols)


def matrix_to_json(A: IntMatrix) -> dict:
    return {"rows": A.rows, "cols": A.cols,
            "entries": [[encode_int(x) for x in A.row(i)] for i in range(A.rows)]}


def load_matrix(path) -> IntMatrix:
    return parse_matrix(read_json(path), str(path))


# cellchain/1 complexes

def parse_complex(doc: Any, src: str = "<complex>") -> CWComplex:
    doc = _obj(doc, src, "<document>")
    if doc.get("format") != CELLCHAIN:
        raise FormatError(src, "format", f'the string "{CELLCHAIN}"', doc.get("format"))
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise FormatError(src, "name", "a string", name)
    cells = []
    for i, c in enumerate(_list(doc.get("cells"), src, "cells")):
        where = f"cells[{i}]"
        c = _obj(c, src, where)
        cid = c.get("id")
        if not isinstance(cid, str) or not cid:
            raise FormatError(src, f"{where}.id", "a nonempty string", cid)
        if "dim" not in c:
            raise FormatError(src, f"{where}.dim", "a nonnegative integer")
        dim = _int(c["dim"], src, f"{where}.dim", 0)
        boundary = _obj(c.get("boundary", {}), src, f"{where}.boundary")
        degrees = {str(k): _int(v, src, f"{where}.boundary.{k}") for k, v in boundary.items()}
        value = c.get("value")
        value = None if value is None else _value(value, src, f"{where}.value")
        word = c.get("word")
        if word is not None and not isinstance(word, str):
            raise FormatError(src, f"{where}.word", "an attaching word string like \"a b a' b'\"",
                              word)
        cells.append(Cell(cid, dim, degrees, value, word))
    return CWComplex(cells, name)


def complex_to_json(X: CWComplex) -> dict:
    cells = []
    for c in X:
        entry: dict[str, Any] = {"id": c.id, "dim": c.dim}
        if c.value is not None:
            entry["value"] = encode_value(c.value)
        entry["boundary"] = {k: encode_int(v) for k, v in c.degrees.items()}
        if c.word is not None:
            entry["word"] = " ".join(s + ("'" if e < 0 else "") for s, e in c.word)
        cells.append(entry)
    return {"format": CELLCHAIN, "name": X.name, "cells": cells}


def load_complex(path) -> CWComplex:
    return parse_complex(read_json(path), str(path))


# covers

def parse_cover(doc: Any, src: str = "<cover>") -> Cover:
    doc = _obj(doc, src, "<document>")
    ground = _list(doc.get("ground"), src, "ground")
    sets = _obj(doc.get("sets"), src, "sets")
    gset = {str(g) for g in ground}
    clean = {}
    for name, members in sets.items():
        members = [str(m) for m in _list(members, src, f"sets.{name}")]
        stray = [m for m in members if m not in gset]
        if stray:
            raise FormatError(src, f"sets.{name}", "elements of 'ground'", stray[0])
        clean[name] = members
    return Cover(gset, clean)


def load_cover(path) -> Cover:
    return parse_cover(read_json(path), str(path))


# critical records and filtrations

def parse_critical(doc: Any, src: str = "<records>") -> FilteredComplex:
    boundary = {}
    if isinstance(doc, dict):
        boundary = _obj(doc.get("boundary", {}), src, "boundary")
        doc = doc.get("records")
    recs = []
    for i, r in enumerate(_list(doc, src, "records")):
        where = f"records[{i}]"
        r = _obj(r, src, where)
        if "value" not in r or "index" not in r:
            raise FormatError(src, where, "an object with value, index and optional count", r)
        recs.append(CriticalRecord(_value(r["value"], src, f"{where}.value"),
                                   _int(r["index"], src, f"{where}.index", 0),
                                   _int(r.get("count", 1), src, f"{where}.count", 1)))
    degrees = {str(cid): {str(f): _int(v, src, f"boundary.{cid}.{f}")
                          for f, v in _obj(faces, src, f"boundary.{cid}").items()}
               for cid, faces in boundary.items()}
    return filtered_complex_from_critical_data(recs, degrees)


def load_filtration(path) -> FilteredComplex:
    """A critical-record file, or a ``cellchain/1`` complex whose cells all carry values."""
    doc = read_json(path)
    src = str(path)
    if isinstance(doc, dict) and doc.get("format") == CELLCHAIN:
        X = parse_complex(doc, src)
        missing = [c.id for c in X if c.value is None]
        if missing:
            raise FormatError(src, "cells[].value", "a value on every cell of a filtration",
                              f"missing on {missing[0]!r}")
        return FilteredComplex(X)
    return parse_critical(doc, src)
