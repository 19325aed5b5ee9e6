"""Command-line front end.

Verbs: ``validate``, ``index``, ``integrate``, ``transform``, ``normal-form``,
``eq`` and ``demo {ex22|p1ring|fm|radon-fano}``.  Documents are read from
paths; by-name references inside documents resolve against ``--workspace``
(default: the ``RELCF_WORKSPACE`` environment variable).  ``--ring`` supplies
a ring document used when a body omits its ``ring`` field; ``--out`` writes
the produced document to a file instead of stdout.

Output is deterministic: canonical JSON for documents and values, fixed text
for demo reports.  On failure a machine-readable error object is written to
stderr and the exit status is nonzero.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from .cfun import integrate
from .documents import (
    Document,
    Workspace,
    canonical_dumps,
    dumps_document,
    load_document,
    model_to_obj,
    parse_document,
    value_to_obj,
    write_document,
)
from .errors import DemoError, DocumentError, RelcfError
from .kring import Integers, RingValue, ZZ2, fm_value, ring_dual, ring_mul, ring_one
from .ksheaf import chi_of_cellwise, k_equal, normal_form
from .xform import (
    IncidenceGeometry,
    compose_kernels,
    operator_matrix,
    radon_pair,
    transform,
)

WORKSPACE_ENV = "RELCF_WORKSPACE"


def _workspace(args) -> Workspace:
    root = args.workspace or os.environ.get(WORKSPACE_ENV)
    ws = Workspace(root=Path(root) if root else None)
    if args.ring:
        doc = load_document(args.ring, ws)
        if doc.kind != "ring":
            raise DocumentError(f"--ring file has kind {doc.kind!r}, expected 'ring'")
        ws.ring_fallback = doc.value
    return ws


def _load(path: str, ws: Workspace, kind: str) -> Document:
    doc = load_document(path, ws)
    if doc.kind != kind:
        raise DocumentError(f"{path}: document has kind {doc.kind!r}, expected {kind!r}")
    return doc


def _emit(args, kind: str, value) -> None:
    name = Path(args.out).stem if args.out else "result"
    doc = Document(kind, name, value)
    if args.out:
        write_document(args.out, doc)
    else:
        sys.stdout.write(dumps_document(doc))


def fmt_value(value: RingValue) -> str:
    if isinstance(value.model, Integers):
        return str(value.coords[0])
    return "(" + ",".join(str(c) for c in value.coords) + ")"


def cmd_validate(args) -> int:
    ws = _workspace(args)
    failures = 0
    for path in args.paths:
        try:
            doc = load_document(path, ws)
        except RelcfError as exc:
            failures += 1
            print(f"fail {path} {canonical_dumps(exc.info())}")
        else:
            label = f" {doc.name}" if doc.name else ""
            print(f"ok {path} ({doc.kind}{label})")
    return 1 if failures else 0


def cmd_index(args) -> int:
    ws = _workspace(args)
    doc = _load(args.cellwise, ws, "cellwise")
    _emit(args, "function", chi_of_cellwise(doc.value))
    return 0


def cmd_integrate(args) -> int:
    ws = _workspace(args)
    doc = _load(args.function, ws, "function")
    sys.stdout.write(canonical_dumps(value_to_obj(integrate(doc.value))) + "\n")
    return 0


def cmd_transform(args) -> int:
    ws = _workspace(args)
    kernel = _load(args.kernel, ws, "kernel")
    fn = _load(args.function, ws, "function")
    _emit(args, "function", transform(kernel.value, fn.value))
    return 0


def cmd_normal_form(args) -> int:
    ws = _workspace(args)
    doc = _load(args.vsheaf, ws, "vsheaf")
    nf = normal_form(doc.value)
    out = {"ring": model_to_obj(doc.value.ring),
           "normal_form": [[cid, list(v.coords)] for cid, v in nf]}
    sys.stdout.write(canonical_dumps(out) + "\n")
    return 0


def cmd_eq(args) -> int:
    ws = _workspace(args)
    a = _load(args.left, ws, "vsheaf")
    b = _load(args.right, ws, "vsheaf")
    print("true" if k_equal(a.value, b.value) else "false")
    return 0


# ----------------------------------------------------------------------- demos

def _fixture_text(name: str) -> str:
    return (resources.files("relcf") / "fixtures" / name).read_text(encoding="utf-8")


def demo_ex22(ws: Workspace) -> None:
    """Disc with a marked center: index vanishes there, is the unit elsewhere."""
    doc = parse_document(_fixture_text("ex22_cellwise.json"), ws, source="ex22_cellwise.json")
    cw = doc.value
    fn = chi_of_cellwise(cw)
    center = "c"
    one = ring_one(cw.ring)
    if not fn(center).is_zero:
        raise DemoError(f"expected zero index at the center, got {fmt_value(fn(center))}")
    for cid in cw.complex.cell_ids:
        if cid != center and fn(cid) != one:
            raise DemoError(f"expected the unit at {cid!r}, got {fmt_value(fn(cid))}")
    total = integrate(fn)
    if not total.is_zero:
        raise DemoError(f"expected zero integral, got {fmt_value(total)}")
    print(f"chi at center = 0, elsewhere = {fmt_value(one)}; integral = {fmt_value(total)}")


def demo_p1ring(ws: Workspace) -> None:
    """Rank/degree pairs: product, unit, duality, bilinearity."""
    def v(r, d):
        return RingValue(ZZ2, (r, d))

    print("rank/degree pairs (a,b): product is (ac, b+d) on rank-1 elements")
    for a, b in (((1, 2), (1, 3)), ((1, -1), (1, 4)), ((1, 0), (2, 3))):
        p = ring_mul(v(*a), v(*b))
        print(f"{fmt_value(v(*a))} * {fmt_value(v(*b))} = {fmt_value(p)}")
    one = ring_one(ZZ2)
    print(f"unit = {fmt_value(one)}")
    d = ring_dual(v(3, 5))
    print(f"dual{fmt_value(v(3, 5))} = {fmt_value(d)}")
    lhs = ring_mul(v(2, 2), v(1, 1))
    rhs = ring_mul(v(1, 1), v(1, 1)) + ring_mul(v(1, 1), v(1, 1))
    if lhs != rhs:
        raise DemoError(f"bilinearity broke: {fmt_value(lhs)} vs {fmt_value(rhs)}")
    print(f"bilinear at rank 2: (2,2) * (1,1) = {fmt_value(lhs)}"
          f" = (1,1)*(1,1) + (1,1)*(1,1)")


def demo_fm(ws: Workspace) -> None:
    """The value automorphism (r,d) -> (d,-r) and its square, -id."""
    print("fm: (r,d) -> (d,-r); fm applied twice negates")
    for r in range(-3, 4):
        for d in range(-3, 4):
            x = RingValue(ZZ2, (r, d))
            y = fm_value(x)
            z = fm_value(y)
            if z != -x:
                raise DemoError(f"fm^2{fmt_value(x)} = {fmt_value(z)}, expected {fmt_value(-x)}")
            print(f"{fmt_value(x)} -> {fmt_value(y)} -> {fmt_value(z)}")


def demo_radon_fano(ws: Workspace) -> None:
    """Composite of the two non-incidence transforms on the Fano plane."""
    data = json.loads(_fixture_text("fano_plane.json"))
    geometry = IncidenceGeometry(data["points"], tuple(frozenset(l) for l in data["lines"]))
    ring = Integers()
    forward, backward = radon_pair(geometry, ring)
    matrix = operator_matrix(compose_kernels(forward, backward))
    print("fano plane: 7 points, 7 lines, non-incidence kernels")
    print("composite operator matrix (row: target point, column: source point)")
    header = "      " + " ".join(f"{s:>3}" for s in matrix.sources)
    print(header)
    for target, row in zip(matrix.targets, matrix.entries):
        cells = " ".join(f"{fmt_value(v):>3}" for v in row)
        print(f"{target:>4} | {cells}")
    const = sum(row_v.coords[0] for row_v in matrix.entries[0])
    print(f"constants are scaled by {const}")


DEMOS = {
    "ex22": demo_ex22,
    "p1ring": demo_p1ring,
    "fm": demo_fm,
    "radon-fano": demo_radon_fano,
}


def cmd_demo(args) -> int:
    ws = _workspace(args)
    DEMOS[args.name](ws)
    return 0


# ------------------------------------------------------------------ arg parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relcf",
        description="Ring-valued constructible functions on finite cell complexes.",
    )
    parser.add_argument("--workspace", metavar="DIR",
                        help=f"directory for by-name references (default: ${WORKSPACE_ENV})")
    parser.add_argument("--ring", metavar="FILE",
                        help="ring document used when a body omits its ring")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse documents and check every invariant")
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("index", help="Euler index of a cellwise document")
    p.add_argument("cellwise")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("integrate", help="compact-support Euler integral of a function")
    p.add_argument("function")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("transform", help="apply a kernel to a function")
    p.add_argument("kernel")
    p.add_argument("function")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("normal-form", help="canonical open-basis form of a virtual sheaf")
    p.add_argument("vsheaf")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("eq", help="decide equality of two virtual sheaves in K")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("demo", help="run a shipped example")
    p.add_argument("name", choices=sorted(DEMOS))
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "out"):
        args.out = None
    try:
        return args.func(args)
    except RelcfError as exc:
        sys.stderr.write(canonical_dumps({"error": exc.info()}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
