"""JSON documents for tuples and second fundamental forms.

Tuple:  {"n": int, "m": int, "matrices": [[[row], ...], ...]}
Form:   {"n": int, "m": int, "c": number, "h": [[[row], ...], ...]}   (h[r][i][j])

Floats are written with ``repr``, the shortest string that round-trips to
the same double, so a written tuple re-reads bit-identically.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .curvature import SecondFundamentalForm
from .matrix_core import InputError, SymTuple


def _int_field(doc: dict, key: str) -> int:
    if key not in doc:
        raise InputError(f"missing field '{key}'")
    val = doc[key]
    if isinstance(val, bool) or not isinstance(val, int) or val < 1:
        raise InputError(f"field '{key}' must be a positive integer, got {val!r}")
    return val


def _matrices(doc: dict, key: str, n: int, m: int) -> np.ndarray:
    if key not in doc:
        raise InputError(f"missing field '{key}'")
    mats = doc[key]
    if not isinstance(mats, list) or len(mats) != m:
        raise InputError(f"field '{key}' must be a list of m={m} matrices")
    for r, mat in enumerate(mats):
        if not isinstance(mat, list) or len(mat) != n:
            raise InputError(f"field '{key}[{r}]' must have n={n} rows")
        for i, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != n:
                raise InputError(f"field '{key}[{r}][{i}]' must have n={n} entries")
            for j, v in enumerate(row):
                if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                    raise InputError(f"field '{key}[{r}][{i}][{j}]' is not a finite number: {v!r}")
    return np.array(mats, dtype=float)


def _validated(build, key: str):
    try:
        return build()
    except InputError as exc:
        raise InputError(f"field '{key}': {exc}") from None


def _read(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    return doc


def tuple_from_doc(doc: dict) -> SymTuple:
    n, m = _int_field(doc, "n"), _int_field(doc, "m")
    mats = _matrices(doc, "matrices", n, m)
    return _validated(lambda: SymTuple(mats), "matrices")


def form_from_doc(doc: dict) -> SecondFundamentalForm:
    n, m = _int_field(doc, "n"), _int_field(doc, "m")
    c = doc.get("c", 0.0)
    if isinstance(c, bool) or not isinstance(c, (int, float)) or not math.isfinite(c):
        raise InputError(f"field 'c' must be a finite number, got {c!r}")
    h = _matrices(doc, "h", n, m)
    return _validated(lambda: SecondFundamentalForm(h, float(c)), "h")


def load_tuple(path) -> SymTuple:
    return tuple_from_doc(_read(path))


def load_form(path) -> SecondFundamentalForm:
    return form_from_doc(_read(path))


def tuple_to_doc(T: SymTuple) -> dict:
    return {"n": T.n, "m": T.m, "matrices": T.mats.tolist()}


def dump_tuple(T: SymTuple, path) -> None:
    Path(path).write_text(json.dumps(tuple_to_doc(T)) + "\n")
