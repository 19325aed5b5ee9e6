"""JSON document format for complexes, rings, functions, sheaves and kernels.

One document per file: ``{"kind": ..., "name": ..., "body": ...}`` with kind
one of ``complex``, ``ring``, ``function``, ``vsheaf``, ``kernel``,
``cellwise``.  Inside a body, the ``complex``, ``ring``, ``left`` and
``right`` fields either hold the payload inline or name another document in
the workspace directory (``<name>.json``).

Everything is exact: coordinates are integers, floats and booleans are
rejected, and output is canonical (sorted keys, compact separators, UTF-8),
so emitted documents are byte-stable and re-parse to equal values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .cellspace import CellComplex, LocallyClosedSet, ProductComplex, product, validate
from .cfun import CFunction, from_values
from .errors import DocumentError, RelcfError
from .kring import AbelianGroup, Integers, ProductRing, RingModel, RingValue, TruncatedCurve
from .ksheaf import CellwiseComplex, ElementaryTerm, VirtualSheaf
from .xform import Kernel

KINDS = ("complex", "ring", "function", "vsheaf", "kernel", "cellwise")


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _as_int(x: Any, where: str) -> int:
    # bool is an int subclass; reject it explicitly along with floats.
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{where}: expected an integer, got {x!r}")
    return x


def _as_str(x: Any, where: str) -> str:
    if not isinstance(x, str):
        raise DocumentError(f"{where}: expected a string, got {x!r}")
    return x


def _as_dict(x: Any, where: str) -> dict:
    if not isinstance(x, dict):
        raise DocumentError(f"{where}: expected an object, got {x!r}")
    return x


def _as_list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise DocumentError(f"{where}: expected an array, got {x!r}")
    return x


def _coords(x: Any, where: str) -> tuple[int, ...]:
    return tuple(_as_int(c, where) for c in _as_list(x, where))


# ----------------------------------------------------------------- ring model

def model_to_obj(model: RingModel) -> dict:
    if isinstance(model, Integers):
        return {"kind": "int"}
    if isinstance(model, TruncatedCurve):
        return {"kind": "curve", "free_rank": model.group.free_rank,
                "torsion": list(model.group.torsion_orders)}
    if isinstance(model, ProductRing):
        return {"kind": "product", "factors": [model_to_obj(f) for f in model.factors]}
    raise DocumentError(f"cannot serialize ring model {model!r}")


def model_from_obj(obj: Any, where: str = "ring") -> RingModel:
    body = _as_dict(obj, where)
    kind = _as_str(body.get("kind"), f"{where}.kind")
    if kind == "int":
        return Integers()
    if kind == "curve":
        free = _as_int(body.get("free_rank", 0), f"{where}.free_rank")
        torsion = tuple(_as_int(t, f"{where}.torsion") for t in
                        _as_list(body.get("torsion", []), f"{where}.torsion"))
        try:
            return TruncatedCurve(AbelianGroup(free, torsion))
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from exc
    if kind == "product":
        factors = _as_list(body.get("factors"), f"{where}.factors")
        return ProductRing(tuple(model_from_obj(f, f"{where}.factors") for f in factors))
    raise DocumentError(f"{where}: unknown ring kind {kind!r}")


def value_to_obj(value: RingValue) -> dict:
    return {"model": model_to_obj(value.model), "coords": list(value.coords)}


def value_from_obj(obj: Any, where: str = "value") -> RingValue:
    body = _as_dict(obj, where)
    model = model_from_obj(body.get("model"), f"{where}.model")
    return _ring_value(model, body.get("coords"), f"{where}.coords")


def _ring_value(model: RingModel, coords: Any, where: str) -> RingValue:
    try:
        return RingValue(model, _coords(coords, where))
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from exc


# -------------------------------------------------------------------- complex

def complex_to_obj(complex: CellComplex) -> dict:
    return {
        "cells": [{"id": cid, "dim": dim} for cid, dim in complex.cells],
        "covers": [list(c) for c in complex.covers],
    }


def complex_from_obj(obj: Any, where: str = "complex") -> CellComplex:
    body = _as_dict(obj, where)
    cells = []
    for i, cell in enumerate(_as_list(body.get("cells"), f"{where}.cells")):
        cd = _as_dict(cell, f"{where}.cells[{i}]")
        cells.append((_as_str(cd.get("id"), f"{where}.cells[{i}].id"),
                      _as_int(cd.get("dim"), f"{where}.cells[{i}].dim")))
    covers = []
    for i, cov in enumerate(_as_list(body.get("covers", []), f"{where}.covers")):
        pair = _as_list(cov, f"{where}.covers[{i}]")
        if len(pair) != 2:
            raise DocumentError(f"{where}.covers[{i}]: expected a pair")
        covers.append((_as_str(pair[0], f"{where}.covers[{i}]"),
                       _as_str(pair[1], f"{where}.covers[{i}]")))
    cx = CellComplex(cells, covers)
    validate(cx)
    return cx


# ------------------------------------------------------------------ workspace

@dataclass
class Workspace:
    """Resolves by-name references against a directory of documents."""

    root: Path | None = None
    ring_fallback: RingModel | None = None

    def _load(self, name: str, kind: str, seen: frozenset[str]) -> Any:
        if self.root is None:
            raise DocumentError(f"reference {name!r} needs a workspace directory")
        if name in seen:
            raise DocumentError(f"cyclic document reference through {name!r}")
        path = Path(self.root) / f"{name}.json"
        if not path.is_file():
            raise DocumentError(f"no document named {name!r} in workspace", source=str(path))
        doc = load_document(path, self, _seen=seen | {name})
        if doc.kind != kind:
            raise DocumentError(
                f"document {name!r} has kind {doc.kind!r}, expected {kind!r}")
        return doc.value

    def complex(self, ref: Any, where: str, seen: frozenset[str] = frozenset()) -> CellComplex:
        if isinstance(ref, str):
            return self._load(ref, "complex", seen)
        return complex_from_obj(ref, where)

    def ring(self, ref: Any, where: str, seen: frozenset[str] = frozenset()) -> RingModel:
        if ref is None:
            if self.ring_fallback is None:
                raise DocumentError(f"{where}: no ring given and no --ring fallback")
            return self.ring_fallback
        if isinstance(ref, str):
            return self._load(ref, "ring", seen)
        return model_from_obj(ref, where)


# ------------------------------------------------------- body (de)serializers

def function_to_obj(fn: CFunction) -> dict:
    values = {c: list(v.coords) for c, v in sorted(fn.values.items()) if not v.is_zero}
    return {"complex": complex_to_obj(fn.complex), "ring": model_to_obj(fn.ring),
            "values": values}


def function_from_obj(obj: Any, ws: Workspace, where: str = "function",
                      seen: frozenset[str] = frozenset()) -> CFunction:
    body = _as_dict(obj, where)
    cx = ws.complex(body.get("complex"), f"{where}.complex", seen)
    ring = ws.ring(body.get("ring"), f"{where}.ring", seen)
    values = {}
    for cid, coords in _as_dict(body.get("values", {}), f"{where}.values").items():
        values[cid] = _ring_value(ring, coords, f"{where}.values[{cid!r}]")
    return from_values(cx, ring, values)


def vsheaf_to_obj(v: VirtualSheaf) -> dict:
    terms = []
    for coeff, term in v.terms:
        terms.append({"coeff": coeff, "support": sorted(term.support.members),
                      "class": list(term.klass.coords)})
    return {"complex": complex_to_obj(v.complex), "ring": model_to_obj(v.ring),
            "terms": terms}


def vsheaf_from_obj(obj: Any, ws: Workspace, where: str = "vsheaf",
                    seen: frozenset[str] = frozenset()) -> VirtualSheaf:
    body = _as_dict(obj, where)
    cx = ws.complex(body.get("complex"), f"{where}.complex", seen)
    ring = ws.ring(body.get("ring"), f"{where}.ring", seen)
    terms = []
    for i, t in enumerate(_as_list(body.get("terms", []), f"{where}.terms")):
        td = _as_dict(t, f"{where}.terms[{i}]")
        coeff = _as_int(td.get("coeff", 1), f"{where}.terms[{i}].coeff")
        support = LocallyClosedSet(cx, frozenset(
            _as_str(s, f"{where}.terms[{i}].support")
            for s in _as_list(td.get("support"), f"{where}.terms[{i}].support")))
        klass = _ring_value(ring, td.get("class"), f"{where}.terms[{i}].class")
        terms.append((coeff, ElementaryTerm(support, klass)))
    return VirtualSheaf(cx, ring, tuple(terms))


def kernel_to_obj(kernel: Kernel) -> dict:
    prod = kernel.complex
    values: dict[str, dict[str, list[int]]] = {}
    for pid, v in kernel.fn.values.items():
        if v.is_zero:
            continue
        a, b = prod.factors(pid)
        values.setdefault(a, {})[b] = list(v.coords)
    values = {a: dict(sorted(row.items())) for a, row in sorted(values.items())}
    return {"left": complex_to_obj(prod.left), "right": complex_to_obj(prod.right),
            "ring": model_to_obj(kernel.ring), "values": values}


def kernel_from_obj(obj: Any, ws: Workspace, where: str = "kernel",
                    seen: frozenset[str] = frozenset()) -> Kernel:
    body = _as_dict(obj, where)
    left = ws.complex(body.get("left"), f"{where}.left", seen)
    right = ws.complex(body.get("right"), f"{where}.right", seen)
    ring = ws.ring(body.get("ring"), f"{where}.ring", seen)
    prod = product(left, right)
    values = {}
    for a, row in _as_dict(body.get("values", {}), f"{where}.values").items():
        for b, coords in _as_dict(row, f"{where}.values[{a!r}]").items():
            pid = prod.pair(a, b)
            values[pid] = _ring_value(ring, coords, f"{where}.values[{a!r}][{b!r}]")
    return Kernel(from_values(prod, ring, values))


def cellwise_to_obj(cw: CellwiseComplex) -> dict:
    cells = {}
    for cid, degs in sorted(cw.classes.items()):
        nonzero = {str(j): list(v.coords) for j, v in sorted(degs.items()) if not v.is_zero}
        if nonzero:
            cells[cid] = nonzero
    return {"complex": complex_to_obj(cw.complex), "ring": model_to_obj(cw.ring),
            "cells": cells}


def cellwise_from_obj(obj: Any, ws: Workspace, where: str = "cellwise",
                      seen: frozenset[str] = frozenset()) -> CellwiseComplex:
    body = _as_dict(obj, where)
    cx = ws.complex(body.get("complex"), f"{where}.complex", seen)
    ring = ws.ring(body.get("ring"), f"{where}.ring", seen)
    classes: dict[str, dict[int, RingValue]] = {}
    for cid, degs in _as_dict(body.get("cells", {}), f"{where}.cells").items():
        parsed = {}
        for j, coords in _as_dict(degs, f"{where}.cells[{cid!r}]").items():
            try:
                degree = int(j)
            except ValueError:
                raise DocumentError(f"{where}.cells[{cid!r}]: bad degree {j!r}") from None
            parsed[degree] = _ring_value(ring, coords, f"{where}.cells[{cid!r}][{j!r}]")
        classes[cid] = parsed
    return CellwiseComplex(cx, ring, classes)


# ------------------------------------------------------------------ documents

@dataclass(frozen=True)
class Document:
    kind: str
    name: str
    value: Any


_TO_OBJ = {
    "complex": complex_to_obj,
    "ring": model_to_obj,
    "function": function_to_obj,
    "vsheaf": vsheaf_to_obj,
    "kernel": kernel_to_obj,
    "cellwise": cellwise_to_obj,
}


def document_to_obj(doc: Document) -> dict:
    if doc.kind not in _TO_OBJ:
        raise DocumentError(f"unknown document kind {doc.kind!r}")
    return {"kind": doc.kind, "name": doc.name, "body": _TO_OBJ[doc.kind](doc.value)}


def dumps_document(doc: Document) -> str:
    return canonical_dumps(document_to_obj(doc)) + "\n"


def parse_document(text: str, ws: Workspace | None = None, *,
                   source: str | None = None,
                   _seen: frozenset[str] = frozenset()) -> Document:
    ws = ws or Workspace()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg}", source=source,
                            line=exc.lineno, col=exc.colno) from exc
    try:
        top = _as_dict(obj, "document")
        kind = _as_str(top.get("kind"), "document.kind")
        name = _as_str(top.get("name", ""), "document.name")
        body = top.get("body")
        if kind == "complex":
            value: Any = complex_from_obj(body, "body")
        elif kind == "ring":
            value = model_from_obj(body, "body")
        elif kind == "function":
            value = function_from_obj(body, ws, "body", _seen)
        elif kind == "vsheaf":
            value = vsheaf_from_obj(body, ws, "body", _seen)
        elif kind == "kernel":
            value = kernel_from_obj(body, ws, "body", _seen)
        elif kind == "cellwise":
            value = cellwise_from_obj(body, ws, "body", _seen)
        else:
            raise DocumentError(f"unknown document kind {kind!r}")
    except DocumentError as exc:
        if exc.source is None and source is not None:
            exc.source = source
        raise
    except RelcfError as exc:
        raise DocumentError(f"invalid {kind} document: {exc}", source=source,
                            cause=type(exc).__name__) from exc
    return Document(kind, name, value)


def load_document(path: str | Path, ws: Workspace | None = None, *,
                  _seen: frozenset[str] = frozenset()) -> Document:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}", source=str(path)) from exc
    return parse_document(text, ws, source=str(path), _seen=_seen)


def write_document(path: str | Path, doc: Document) -> None:
    Path(path).write_text(dumps_document(doc), encoding="utf-8")
