"""Text serialization for complexes, reports and tables.

Every document starts with the header line ``# palindromic-format 1``
followed by a YAML mapping with a ``kind`` key.  Complex documents look like::

    # palindromic-format 1
    kind: complex
    family: {kind: p_sigma, n: 5, p: 3}
    f_vector: [13, 28, 16]
    cells:
    - dimension: 0
      keys: [...]
    - dimension: 1
      keys: [...]
      faces: [[0, 1], ...]

``faces[c]`` lists the indices (within the previous dimension) of the faces
d_0, ..., d_r of cell ``c``.  ``family`` may be null for hand-made complexes.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml

from .moduli import Family, QuotientComplex

FORMAT_VERSION = 1
HEADER = f"# palindromic-format {FORMAT_VERSION}"


class FormatError(ValueError):
    pass


class _Dumper(yaml.SafeDumper):
    pass


def _flow_list(dumper, data):
    # short scalar lists inline, nested structures block style
    flow = all(not isinstance(x, (list, dict)) for x in data)
    return dumper.represent_sequence("tag:yaml.org,2002:seq", data, flow_style=flow)


_Dumper.add_representer(list, _flow_list)
_Dumper.add_representer(tuple, lambda d, x: _flow_list(d, list(x)))


def dumps(kind: str, body: dict[str, Any]) -> str:
    doc = {"kind": kind, **body}
    text = yaml.dump(doc, Dumper=_Dumper, sort_keys=False, allow_unicode=True, width=100)
    return f"{HEADER}\n{text}"


def loads(text: str, kind: str | None = None) -> dict[str, Any]:
    first, _, rest = text.partition("\n")
    if first.strip() != HEADER:
        raise FormatError(f"missing or unsupported header line: {first.strip()!r}")
    try:
        doc = yaml.safe_load(rest)
    except yaml.YAMLError as exc:
        raise FormatError(f"unparseable body: {exc}") from None
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError("document body must be a mapping with a 'kind' key")
    if kind is not None and doc["kind"] != kind:
        raise FormatError(f"expected a {kind} document, got {doc['kind']!r}")
    return doc


def family_to_dict(family: Family | None):
    if family is None:
        return None
    return {"kind": family.kind, "n": family.n, "p": family.p}


def complex_to_text(q: QuotientComplex) -> str:
    cells = []
    for d, level in enumerate(q.keys):
        entry: dict[str, Any] = {"dimension": d, "keys": list(level)}
        if d > 0:
            entry["faces"] = [list(f) for f in q.faces[d]]
        cells.append(entry)
    return dumps("complex", {"family": family_to_dict(q.family), "f_vector": q.f_vector(), "cells": cells})


def complex_from_text(text: str) -> QuotientComplex:
    doc = loads(text, "complex")
    cells = doc.get("cells")
    if not isinstance(cells, list) or not cells:
        raise FormatError("'cells' must be a nonempty list")
    keys, faces = [], []
    for d, entry in enumerate(cells):
        if not isinstance(entry, dict) or entry.get("dimension") != d:
            raise FormatError(f"cells[{d}] must describe dimension {d}")
        level = entry.get("keys")
        if not isinstance(level, list) or not all(isinstance(k, str) for k in level):
            raise FormatError(f"cells[{d}].keys must be a list of strings")
        if d == 0:
            fl = [() for _ in level]
        else:
            fl = entry.get("faces")
            if not isinstance(fl, list) or len(fl) != len(level):
                raise FormatError(f"cells[{d}].faces must have one entry per key")
            below = len(keys[d - 1])
            for f in fl:
                if (
                    not isinstance(f, list)
                    or len(f) != d + 1
                    or not all(isinstance(i, int) and 0 <= i < below for i in f)
                ):
                    raise FormatError(f"bad face list {f!r} in dimension {d}")
            fl = [tuple(f) for f in fl]
        keys.append(level)
        faces.append(fl)
    fam = doc.get("family")
    family = None
    if fam is not None:
        try:
            family = Family(fam["kind"], fam["n"], fam.get("p"))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad family entry: {exc}") from None
    q = QuotientComplex(keys, faces, family=family)
    declared = doc.get("f_vector")
    if declared is not None and list(declared) != q.f_vector():
        raise FormatError(f"declared f_vector {declared} disagrees with cells {q.f_vector()}")
    return q


def write_complex(q: QuotientComplex, path: str | Path):
    Path(path).write_text(complex_to_text(q))


def read_complex(path: str | Path) -> QuotientComplex:
    try:
        text = Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return complex_from_text(text)
