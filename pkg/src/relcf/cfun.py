"""Ring-valued constructible functions on a cell complex.

A function assigns a ring value to every cell; since complexes are finite,
constructibility (finite level sets, constant on cells) is automatic.  The
module provides the pointwise algebra, expansions in the open-cell and
closed-cell bases, compact-support Euler integration, push/pull along
cellular maps, external products, and a combinatorial Verdier duality.

All operations are pure; functions are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .cellspace import (
    CellComplex,
    CellSet,
    CellularMap,
    LocallyClosedSet,
    ProductComplex,
    product,
)
from .errors import (
    ComplexMismatchError,
    ModelMismatchError,
    NotLocallyClosedError,
    NotProductError,
    UnknownCellError,
)
from .kring import (
    RingModel,
    RingValue,
    ring_add,
    ring_dual,
    ring_mul,
    ring_neg,
    ring_scale,
    ring_zero,
)


@dataclass(frozen=True)
class CFunction:
    """A total map from the cells of a complex into a ring model."""

    complex: CellComplex
    ring: RingModel
    values: dict[str, RingValue]

    def __post_init__(self):
        vals = dict(self.values)
        cell_ids = set(self.complex.cell_ids)
        extra = set(vals) - cell_ids
        if extra:
            raise UnknownCellError(f"values given for unknown cells {sorted(extra)}")
        missing = cell_ids - set(vals)
        if missing:
            raise UnknownCellError(f"values missing for cells {sorted(missing)}")
        for cid, v in vals.items():
            if v.model != self.ring:
                raise ModelMismatchError(
                    f"value at cell {cid!r} uses model {v.model}, function declares {self.ring}"
                )
        object.__setattr__(self, "values", vals)

    def __call__(self, cid: str) -> RingValue:
        try:
            return self.values[cid]
        except KeyError:
            raise UnknownCellError(f"unknown cell id {cid!r}") from None

    @property
    def support(self) -> frozenset[str]:
        return frozenset(c for c, v in self.values.items() if not v.is_zero)

    def __repr__(self):
        nz = len(self.support)
        return f"CFunction({len(self.values)} cells, {nz} nonzero)"


def zero_fn(complex: CellComplex, ring: RingModel) -> CFunction:
    z = ring_zero(ring)
    return CFunction(complex, ring, {c: z for c in complex.cell_ids})


def const_fn(complex: CellComplex, ring: RingModel, y: RingValue) -> CFunction:
    if y.model != ring:
        raise ModelMismatchError(f"constant {y} does not live in {ring}")
    return CFunction(complex, ring, {c: y for c in complex.cell_ids})


def from_values(complex: CellComplex, ring: RingModel,
                values: Mapping[str, RingValue]) -> CFunction:
    """Build a function from a partial assignment; omitted cells are zero."""
    z = ring_zero(ring)
    full = {c: z for c in complex.cell_ids}
    for cid, v in values.items():
        if cid not in full:
            raise UnknownCellError(f"values given for unknown cell {cid!r}")
        full[cid] = v
    return CFunction(complex, ring, full)


def indicator(cells: CellSet, y: RingValue) -> CFunction:
    """y on a locally closed set, zero elsewhere."""
    if not isinstance(cells, LocallyClosedSet):
        if not cells.is_locally_closed:
            raise NotLocallyClosedError(
                f"indicator support {sorted(cells.members)} is not order-convex"
            )
    return from_values(cells.complex, y.model, {c: y for c in cells.members})


def _check_compatible(a: CFunction, b: CFunction) -> None:
    if a.complex != b.complex:
        raise ComplexMismatchError("functions live on different complexes")
    if a.ring != b.ring:
        raise ModelMismatchError(f"functions use different ring models: {a.ring} vs {b.ring}")


def cf_add(a: CFunction, b: CFunction) -> CFunction:
    _check_compatible(a, b)
    return CFunction(a.complex, a.ring,
                     {c: ring_add(a.values[c], b.values[c]) for c in a.values})


def cf_neg(a: CFunction) -> CFunction:
    return CFunction(a.complex, a.ring, {c: ring_neg(v) for c, v in a.values.items()})


def cf_mul(a: CFunction, b: CFunction) -> CFunction:
    _check_compatible(a, b)
    return CFunction(a.complex, a.ring,
                     {c: ring_mul(a.values[c], b.values[c]) for c in a.values})


def cf_scale(y: RingValue, a: CFunction) -> CFunction:
    if y.model != a.ring:
        raise ModelMismatchError(f"scalar {y} does not live in {a.ring}")
    return CFunction(a.complex, a.ring, {c: ring_mul(y, v) for c, v in a.values.items()})


def to_open_basis(fn: CFunction) -> list[tuple[str, RingValue]]:
    """Expansion over open-cell indicators: the nonzero values, sorted by id."""
    return [(c, fn.values[c]) for c in sorted(fn.values) if not fn.values[c].is_zero]


def to_closed_basis(fn: CFunction) -> list[tuple[str, RingValue]]:
    """Unique coefficients c_s with fn = sum of c_s * indicator(closure(s)).

    The system is triangular because the strict face order raises dimension:
    solving from the top dimension down, the coefficient at a cell is the
    function value there minus the contributions of the cells above it.
    """
    cx = fn.complex
    coeffs: dict[str, RingValue] = {}
    for cid in sorted(cx.cell_ids, key=lambda c: -cx.dim(c)):
        acc = fn.values[cid]
        for above in cx.above(cid):
            if above != cid and above in coeffs:
                acc = acc - coeffs[above]
        if not acc.is_zero:
            coeffs[cid] = acc
    return sorted(coeffs.items())


def from_closed_basis(complex: CellComplex, ring: RingModel,
                      entries: Iterable[tuple[str, RingValue]]) -> CFunction:
    """Re-sum closed-cell indicator coefficients into a function."""
    z = ring_zero(ring)
    vals = {c: z for c in complex.cell_ids}
    for cid, coeff in entries:
        if coeff.model != ring:
            raise ModelMismatchError(f"coefficient at {cid!r} uses model {coeff.model}")
        for t in complex.below(cid):
            vals[t] = ring_add(vals[t], coeff)
    return CFunction(complex, ring, vals)


def integrate(fn: CFunction) -> RingValue:
    """Compact-support Euler integral: sum of (-1)^dim times the cell value."""
    acc = ring_zero(fn.ring)
    for cid, v in fn.values.items():
        acc = ring_add(acc, ring_scale((-1) ** fn.complex.dim(cid), v))
    return acc


def pullback(f: CellularMap, fn: CFunction) -> CFunction:
    """Compose with a cellular map: the inverse image of a function."""
    if fn.complex != f.target:
        raise ComplexMismatchError("pullback: function does not live on the map target")
    return CFunction(f.source, fn.ring, {c: fn.values[f(c)] for c in f.source.cell_ids})


def pushforward_proj(fn: CFunction) -> CFunction:
    """Integrate out the left factor of a product complex.

    The result on the right factor is the fibrewise Euler integral
    ``tau -> sum over sigma of (-1)^dim(sigma) * fn(sigma x tau)``.
    """
    cx = fn.complex
    if not isinstance(cx, ProductComplex):
        raise NotProductError("pushforward_proj needs a function on a declared product")
    z = ring_zero(fn.ring)
    out = {b: z for b in cx.right.cell_ids}
    for pid, v in fn.values.items():
        if v.is_zero:
            continue
        a, b = cx.factors(pid)
        out[b] = ring_add(out[b], ring_scale((-1) ** cx.left.dim(a), v))
    return CFunction(cx.right, fn.ring, out)


def extend_by_zero(cells: CellSet, fn: CFunction) -> CFunction:
    """Keep the values on a locally closed set, zero everything else.

    Together with restriction of the values to the set, this is a section of
    it: extending and restricting again returns the same data.
    """
    if not isinstance(cells, LocallyClosedSet) and not cells.is_locally_closed:
        raise NotLocallyClosedError(
            f"extension support {sorted(cells.members)} is not order-convex"
        )
    if fn.complex != cells.complex:
        raise ComplexMismatchError("extend_by_zero: set and function disagree on the complex")
    return from_values(fn.complex, fn.ring, {c: fn.values[c] for c in cells.members})


def external_product(a: CFunction, b: CFunction) -> CFunction:
    """Function on the product complex with value a(sigma)*b(tau) at sigma x tau."""
    if a.ring != b.ring:
        raise ModelMismatchError("external product needs a shared ring model")
    prod = product(a.complex, b.complex)
    vals = {}
    for pid in prod.cell_ids:
        sa, sb = prod.factors(pid)
        vals[pid] = ring_mul(a.values[sa], b.values[sb])
    return CFunction(prod, a.ring, vals)


def verdier_dual(fn: CFunction) -> CFunction:
    """Signed open-star sum composed with the value-ring duality.

    ``(D fn)(sigma) = sum over tau >= sigma of (-1)^dim(tau) * dual(fn(tau))``.
    On a complex all of whose closed intervals are faces of honest regular
    cells (simplicial complexes, their products and cones), D is an
    involution; the Euler-characteristic test alone does not guarantee that.
    """
    cx = fn.complex
    out: dict[str, RingValue] = {}
    for cid in cx.cell_ids:
        acc = ring_zero(fn.ring)
        for t in cx.above(cid):
            acc = ring_add(acc, ring_scale((-1) ** cx.dim(t), ring_dual(fn.values[t])))
        out[cid] = acc
    return CFunction(cx, fn.ring, out)
