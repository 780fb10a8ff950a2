"""JSON/CSV rendering of results.  Rationals become ``"num/den"`` strings."""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from importlib import resources
from typing import Any, Iterable

import numpy as np

from . import __version__
from .params import GkpParams
from .triangle import Backend, TriangleTable

SCHEMA_VERSION = 1
TOOL = "gkp-laws"


def rat(v) -> Any:
    """Exact value to string; floats pass through; ``None`` stays ``None``."""
    if v is None:
        return None
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return str(Fraction(v))
    return f64(v)


def f64(v) -> Any:
    if v is None:
        return None
    x = float(v)
    if math.isnan(x) or math.isinf(x):
        return str(x)
    return x


def header(command: str, params: GkpParams, backend=None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "tool": TOOL, "version": __version__,
           "command": command, "params": params.to_json()}
    if backend is not None:
        doc["backend"] = Backend.coerce(backend).value
    return doc


def dumps_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def csv_columns(command: str) -> list[str]:
    text = resources.files("gkp_laws").joinpath("csv_schema.json").read_text(encoding="utf-8")
    return json.loads(text)["columns"][command]


def dumps_csv(command: str, rows: Iterable[dict]) -> str:
    cols = csv_columns(command)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", extrasaction="raise")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: "" if row.get(c) is None else row.get(c) for c in cols})
    return buf.getvalue()


def triangle_doc(table: TriangleTable) -> dict:
    doc = header("triangle", table.params, table.backend)
    doc["n_max"] = table.n_max
    if table.backend is Backend.EXACT:
        doc["rows"] = [[rat(v) for v in table.row(n)] for n in table.indices]
    else:
        doc["rows"] = [[float(v) for v in table.row(n)] for n in table.indices]
        doc["log2_scale"] = [table.log2_scale(n) for n in table.indices]
    doc["indices"] = table.indices
    return doc


def read_triangle(doc: dict) -> TriangleTable:
    """Rebuild a :class:`TriangleTable` from :func:`triangle_doc` output."""
    params = GkpParams.from_json(doc["params"])
    backend = Backend.coerce(doc["backend"])
    indices = doc.get("indices", list(range(len(doc["rows"]))))
    rows, scales = {}, {}
    for i, (n, row) in enumerate(zip(indices, doc["rows"])):
        if backend is Backend.EXACT:
            vals = tuple(Fraction(v) for v in row)
            rows[n] = tuple(int(v) if v.denominator == 1 else v for v in vals)
        else:
            arr = np.array(row, dtype=float)
            arr.flags.writeable = False
            rows[n] = arr
            scales[n] = doc["log2_scale"][i]
    return TriangleTable(params, doc["n_max"], backend, rows, scales)
