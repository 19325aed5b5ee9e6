"""Virtual sheaves: formal combinations of elementary terms and their index.

An elementary term is a locally closed support carrying a single ring class;
a virtual sheaf is an integer combination of such terms and stands for a
K-theory class of cellwise sheaf data.  The Euler index ``chi`` turns a
virtual sheaf into a constructible function, and since the index is a
complete invariant, the open-basis expansion of ``chi`` serves as a normal
form: two presentations are equal in K exactly when their normal forms match.

``realize`` inverts the index (one open-cell term per value), ``split_term``
is the rewrite that decomposes a support into a relatively open piece and its
closed complement without changing the class, and ``tensor`` descends the
product.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cellspace import CellComplex, CellSet, LocallyClosedSet
from .cfun import CFunction, from_values, to_open_basis, verdier_dual
from .errors import (
    ComplexMismatchError,
    ModelMismatchError,
    NotRelativelyOpenError,
    UnknownCellError,
)
from .kring import RingModel, RingValue, ring_add, ring_mul, ring_one, ring_scale, ring_zero


@dataclass(frozen=True)
class ElementaryTerm:
    """A locally closed support with one ring class spread over it."""

    support: LocallyClosedSet
    klass: RingValue


@dataclass(frozen=True)
class VirtualSheaf:
    """An integer combination of elementary terms on one complex and ring."""

    complex: CellComplex
    ring: RingModel
    terms: tuple[tuple[int, ElementaryTerm], ...]

    def __post_init__(self):
        terms = tuple((int(c), t) for c, t in self.terms)
        for _, t in terms:
            if t.support.complex != self.complex:
                raise ComplexMismatchError("term support lives on a different complex")
            if t.klass.model != self.ring:
                raise ModelMismatchError(
                    f"term class uses model {t.klass.model}, sheaf declares {self.ring}"
                )
        object.__setattr__(self, "terms", terms)


@dataclass(frozen=True)
class CellwiseComplex:
    """Per-cell graded ring classes: degree -> class, finitely many per cell."""

    complex: CellComplex
    ring: RingModel
    classes: dict[str, dict[int, RingValue]]

    def __post_init__(self):
        classes = {str(c): {int(j): v for j, v in degs.items()}
                   for c, degs in self.classes.items()}
        for cid, degs in classes.items():
            if cid not in self.complex:
                raise UnknownCellError(f"classes given for unknown cell {cid!r}")
            for j, v in degs.items():
                if v.model != self.ring:
                    raise ModelMismatchError(
                        f"class at cell {cid!r} degree {j} uses model {v.model}"
                    )
        object.__setattr__(self, "classes", classes)


def chi_of_cellwise(cw: CellwiseComplex) -> CFunction:
    """Euler index of graded cell data: alternating sum over degrees, cellwise."""
    vals: dict[str, RingValue] = {}
    for cid, degs in cw.classes.items():
        acc = ring_zero(cw.ring)
        for j, v in degs.items():
            acc = ring_add(acc, ring_scale((-1) ** j, v))
        vals[cid] = acc
    return from_values(cw.complex, cw.ring, vals)


def chi(v: VirtualSheaf) -> CFunction:
    """Euler index of a virtual sheaf: the signed sum of its indicator terms."""
    acc = {c: ring_zero(v.ring) for c in v.complex.cell_ids}
    for coeff, term in v.terms:
        val = ring_scale(coeff, term.klass)
        if val.is_zero:
            continue
        for cid in term.support.members:
            acc[cid] = ring_add(acc[cid], val)
    return CFunction(v.complex, v.ring, acc)


def normal_form(v: VirtualSheaf) -> list[tuple[str, RingValue]]:
    """Canonical invariant: the open-basis expansion of chi, sorted by cell id.

    Zero values are dropped, so two virtual sheaves present the same K-class
    exactly when their normal forms are equal lists.
    """
    return to_open_basis(chi(v))


def realize(fn: CFunction) -> VirtualSheaf:
    """A virtual sheaf whose index is the given function, one term per cell."""
    terms = []
    for cid, val in to_open_basis(fn):
        support = LocallyClosedSet(fn.complex, frozenset({cid}))
        terms.append((1, ElementaryTerm(support, val)))
    return VirtualSheaf(fn.complex, fn.ring, tuple(terms))


def split_term(term: ElementaryTerm,
               up_part: CellSet | frozenset[str]) -> tuple[ElementaryTerm, ElementaryTerm]:
    """Split a term along a relatively open subset of its support.

    ``up_part`` must be contained in the support and up-closed within it; the
    two returned terms carry the same class on the open piece and on its
    closed complement.  Both pieces are automatically order-convex.
    """
    support = term.support
    members = up_part.members if isinstance(up_part, CellSet) else frozenset(up_part)
    if not members <= support.members:
        raise NotRelativelyOpenError(
            f"split subset {sorted(members)} is not contained in the support"
        )
    cx = support.complex
    for m in members:
        for up in cx.above(m):
            if up in support.members and up not in members:
                raise NotRelativelyOpenError(
                    f"split subset is not relatively open: {up!r} sits above {m!r}"
                )
    open_piece = LocallyClosedSet(cx, members)
    closed_piece = LocallyClosedSet(cx, support.members - members)
    return ElementaryTerm(open_piece, term.klass), ElementaryTerm(closed_piece, term.klass)


def tensor(v: VirtualSheaf, w: VirtualSheaf) -> VirtualSheaf:
    """Bilinear product: supports intersect, classes multiply."""
    if v.complex != w.complex:
        raise ComplexMismatchError("tensor needs a shared ambient complex")
    if v.ring != w.ring:
        raise ModelMismatchError("tensor needs a shared ring model")
    terms = []
    for c1, t1 in v.terms:
        for c2, t2 in w.terms:
            support = t1.support.intersect(t2.support)
            klass = ring_mul(t1.klass, t2.klass)
            if len(support) == 0 or klass.is_zero:
                continue
            terms.append((c1 * c2, ElementaryTerm(support, klass)))
    return VirtualSheaf(v.complex, v.ring, tuple(terms))


def dual_sheaf(v: VirtualSheaf) -> VirtualSheaf:
    """Duality through the index: realize the Verdier dual of chi."""
    return realize(verdier_dual(chi(v)))


def unit_sheaf(complex: CellComplex, ring: RingModel) -> VirtualSheaf:
    """The unit for tensor: the whole complex carrying the ring unit."""
    support = LocallyClosedSet(complex, frozenset(complex.cell_ids))
    return VirtualSheaf(complex, ring, ((1, ElementaryTerm(support, ring_one(ring))),))


def k_equal(v: VirtualSheaf, w: VirtualSheaf) -> bool:
    """Equality of K-classes: matching normal forms."""
    if v.complex != w.complex or v.ring != w.ring:
        return False
    return normal_form(v) == normal_form(w)
