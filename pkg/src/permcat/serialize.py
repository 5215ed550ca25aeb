"""Text formats for morphisms and derived results.

Morphism files are JSON with a fixed field order so that equal morphisms
produce identical bytes.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .combinatorics import CosetMatrix, ObjectLabel
from .errors import InputError
from .exact import IVPoly, format_ivpoly, parse_ivpoly, scalar_str
from .schur import Morphism, SpecializedMorphism, TensorBlock


_INT_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)?\s*\]")


def _dump(doc: Any) -> str:
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    # keep integer lists on one line
    text = _INT_LIST.sub(lambda m: "[" + ", ".join((m.group(1) or "").replace(",", " ").split()) + "]", text)
    return text + "\n"


def object_doc(obj: ObjectLabel) -> dict:
    return {"sigma": list(obj.sigma), "tau": list(obj.tau)}


def object_from_doc(doc: dict, l: int) -> ObjectLabel:
    try:
        return ObjectLabel(l, tuple(int(x) for x in doc["sigma"]), tuple(int(x) for x in doc["tau"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed object: {doc!r}") from exc


def matrix_doc(q: CosetMatrix) -> dict:
    return {
        "rows": q.rows,
        "cols": q.cols,
        "diag_offsets": list(q.diag_offsets),
        "entries": [x for row in q.entries for x in row],
    }


def matrix_from_doc(doc: dict, l: int) -> CosetMatrix:
    try:
        rows, cols = int(doc["rows"]), int(doc["cols"])
        flat = [int(x) for x in doc["entries"]]
        offs = tuple(int(x) for x in doc["diag_offsets"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix: {doc!r}") from exc
    if len(flat) != rows * cols:
        raise InputError("matrix entry count does not match rows * cols")
    grid = tuple(tuple(flat[i * cols : (i + 1) * cols]) for i in range(rows))
    return CosetMatrix(l, offs, grid)


def morphism_doc(f: Morphism) -> dict:
    return {
        "l": f.l,
        "domain": object_doc(f.domain),
        "codomain": object_doc(f.codomain),
        "terms": [
            {"coeff": format_ivpoly(c), "matrix": matrix_doc(q)} for q, c in f.sorted_terms()
        ],
        "char0": f.char0,
    }


def dump_morphism(f: Morphism) -> str:
    return _dump(morphism_doc(f))


def morphism_from_doc(doc: dict) -> Morphism:
    try:
        l = int(doc["l"])
        dom = object_from_doc(doc["domain"], l)
        cod = object_from_doc(doc["codomain"], l)
        terms: dict = {}
        for t in doc["terms"]:
            q = matrix_from_doc(t["matrix"], l)
            c = parse_ivpoly(str(t["coeff"]), l)
            terms[q] = terms[q] + c if q in terms else c
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed morphism document: {exc}") from exc
    return Morphism(dom, cod, terms, bool(doc.get("char0", False)))


def load_morphism(text: str) -> Morphism:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"morphism file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("morphism file must hold an object")
    return morphism_from_doc(doc)


def block_doc(block: TensorBlock) -> dict:
    return {
        "sym_offsets": list(block.sym_offsets),
        "entries": [list(r) for r in block.entries],
        "label": object_doc(block.flat_label()),
    }


def dump_tensor(result: dict, l: int) -> str:
    items = sorted(result.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))
    doc = {
        "l": l,
        "blocks": [
            {"source": block_doc(src), "target": block_doc(dst), "morphism": morphism_doc(f)}
            for (src, dst), f in items
        ],
    }
    return _dump(doc)


def dump_specialized(s: SpecializedMorphism, mu) -> str:
    terms = []
    for grid, c in sorted(s.terms.items()):
        terms.append(
            {
                "coeff": scalar_str(c),
                "matrix": {
                    "rows": len(grid),
                    "cols": len(grid[0]) if grid else 0,
                    "entries": [x for row in grid for x in row],
                },
            }
        )
    doc = {
        "mu": list(mu),
        "domain": None if s.domain is None else list(s.domain),
        "codomain": None if s.codomain is None else list(s.codomain),
        "terms": terms,
    }
    return _dump(doc)


def dump_polynomial(p: IVPoly) -> str:
    return format_ivpoly(p)
