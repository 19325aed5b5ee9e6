"""Finite regular cell complexes as graded face posets.

A complex is a finite set of cells, each with a dimension, plus the covering
relation of its face poset (covers must raise dimension by exactly one).  No
geometric realization is stored: stars, closures, Euler characteristics and
products are all poset computations.

Regularity is enforced combinatorially: the closure of every cell must have
compact-support Euler characteristic 1, which is what a closed cell of an
honest regular complex satisfies.  Complexes are immutable once built and all
queries are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    DuplicateCellError,
    GradingError,
    InvariantError,
    MapError,
    NotLocallyClosedError,
    RegularityError,
    UnknownCellError,
)


class CellComplex:
    """A finite graded face poset given by cells ``(id, dim)`` and covers.

    The constructor only requires the data to be representable (unique ids,
    covers between known cells); :func:`validate` checks the actual complex
    invariants and names the first witness that fails.
    """

    def __init__(self, cells: Iterable[tuple[str, int]], covers: Iterable[tuple[str, str]]):
        dims: dict[str, int] = {}
        for cid, dim in cells:
            cid = str(cid)
            if cid in dims:
                raise DuplicateCellError(f"duplicate cell id {cid!r}")
            if dim < 0:
                raise InvariantError(f"cell {cid!r} has negative dimension {dim}")
            dims[cid] = int(dim)
        cover_list: list[tuple[str, str]] = []
        for a, b in covers:
            a, b = str(a), str(b)
            for c in (a, b):
                if c not in dims:
                    raise UnknownCellError(f"cover ({a!r}, {b!r}) mentions unknown cell {c!r}")
            cover_list.append((a, b))
        self._dims = dims
        self._covers = tuple(sorted(set(cover_list)))
        self._up: dict[str, tuple[str, ...]] = {c: () for c in dims}
        self._down: dict[str, tuple[str, ...]] = {c: () for c in dims}
        up: dict[str, list[str]] = {c: [] for c in dims}
        down: dict[str, list[str]] = {c: [] for c in dims}
        for a, b in self._covers:
            up[a].append(b)
            down[b].append(a)
        self._up = {c: tuple(v) for c, v in up.items()}
        self._down = {c: tuple(v) for c, v in down.items()}
        self._below = self._reachability(self._down)
        self._above = self._reachability(self._up)

    def _reachability(self, adj: Mapping[str, tuple[str, ...]]) -> dict[str, frozenset[str]]:
        # Covers that do not raise dimension would make the dim-ordered pass
        # wrong (and validate() will reject them), so fall back to a DFS.
        graded = all(self._dims[a] < self._dims[b] for a, b in self._covers)
        out: dict[str, frozenset[str]] = {}
        if graded:
            increasing = adj is self._up
            order = sorted(self._dims, key=lambda c: self._dims[c], reverse=increasing)
            for cid in order:
                acc = {cid}
                for n in adj[cid]:
                    acc |= out[n]
                out[cid] = frozenset(acc)
            return out
        for cid in self._dims:
            seen = {cid}
            stack = [cid]
            while stack:
                for n in adj[stack.pop()]:
                    if n not in seen:
                        seen.add(n)
                        stack.append(n)
            out[cid] = frozenset(seen)
        return out

    @property
    def cells(self) -> tuple[tuple[str, int], ...]:
        return tuple(sorted(self._dims.items(), key=lambda kv: (kv[1], kv[0])))

    @property
    def covers(self) -> tuple[tuple[str, str], ...]:
        return self._covers

    @property
    def cell_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._dims))

    def __len__(self) -> int:
        return len(self._dims)

    def __contains__(self, cid: str) -> bool:
        return cid in self._dims

    def dim(self, cid: str) -> int:
        try:
            return self._dims[cid]
        except KeyError:
            raise UnknownCellError(f"unknown cell id {cid!r}") from None

    def below(self, cid: str) -> frozenset[str]:
        """All cells <= cid in the face order (cid included)."""
        self.dim(cid)
        return self._below[cid]

    def above(self, cid: str) -> frozenset[str]:
        """All cells >= cid in the face order (cid included)."""
        self.dim(cid)
        return self._above[cid]

    def leq(self, a: str, b: str) -> bool:
        return a in self.below(b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CellComplex):
            return NotImplemented
        return self._dims == other._dims and self._covers == other._covers

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None  # structural equality, mutable-dict internals: keep unhashable

    def __repr__(self):
        return f"CellComplex({len(self._dims)} cells, {len(self._covers)} covers)"


def validate(complex: CellComplex) -> None:
    """Check the complex invariants, raising a typed error naming the witness.

    Covers must raise dimension by exactly one (this also rules out cycles),
    and every closed cell must have compact-support Euler characteristic 1.
    """
    for a, b in complex.covers:
        if complex.dim(b) != complex.dim(a) + 1:
            raise GradingError(
                f"cover ({a!r}, {b!r}) goes from dim {complex.dim(a)} to dim {complex.dim(b)}"
            )
    for cid in complex.cell_ids:
        total = sum((-1) ** complex.dim(t) for t in complex.below(cid))
        if total != 1:
            raise RegularityError(
                f"closed cell of {cid!r} has Euler characteristic {total}, expected 1"
            )


@dataclass(frozen=True)
class CellSet:
    """A subset of the cells of a complex."""

    complex: CellComplex
    members: frozenset[str]

    def __post_init__(self):
        members = frozenset(str(m) for m in self.members)
        for m in members:
            if m not in self.complex:
                raise UnknownCellError(f"cell set mentions unknown cell {m!r}")
        object.__setattr__(self, "members", members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, cid: str) -> bool:
        return cid in self.members

    @property
    def is_locally_closed(self) -> bool:
        """True when the set is order-convex in the face poset."""
        up: set[str] = set()
        down: set[str] = set()
        for m in self.members:
            up |= self.complex.above(m)
            down |= self.complex.below(m)
        return (up & down) <= self.members

    def intersect(self, other: "CellSet") -> "CellSet":
        return CellSet(self.complex, self.members & other.members)


@dataclass(frozen=True)
class LocallyClosedSet(CellSet):
    """A cell set that is order-convex; construction enforces convexity."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_locally_closed:
            raise NotLocallyClosedError(
                f"cell set {sorted(self.members)} is not order-convex"
            )

    def intersect(self, other: CellSet) -> "LocallyClosedSet":
        # Intersections of order-convex sets stay order-convex.
        return LocallyClosedSet(self.complex, self.members & other.members)


def open_star(complex: CellComplex, cid: str) -> LocallyClosedSet:
    """The up-set of a cell: the open star in the face poset."""
    return LocallyClosedSet(complex, complex.above(cid))


def closure(complex: CellComplex, cells: CellSet | Iterable[str]) -> LocallyClosedSet:
    """The down-set generated by the given cells."""
    members = cells.members if isinstance(cells, CellSet) else frozenset(cells)
    acc: set[str] = set()
    for m in members:
        acc |= complex.below(m)
    return LocallyClosedSet(complex, frozenset(acc))


def euler_cs(complex: CellComplex, cells: CellSet | Iterable[str]) -> int:
    """Compact-support Euler characteristic: sum of (-1)^dim over the cells."""
    members = cells.members if isinstance(cells, CellSet) else cells
    return sum((-1) ** complex.dim(c) for c in members)


@dataclass(frozen=True)
class CellularMap:
    """A monotone, dimension-nonincreasing map of face posets."""

    source: CellComplex
    target: CellComplex
    assignment: dict[str, str]

    def __post_init__(self):
        asg = dict(self.assignment)
        missing = set(self.source.cell_ids) - set(asg)
        if missing:
            raise MapError(f"assignment missing source cells {sorted(missing)}")
        for s, t in asg.items():
            if s not in self.source:
                raise MapError(f"assignment mentions unknown source cell {s!r}")
            if t not in self.target:
                raise MapError(f"assignment sends {s!r} to unknown target cell {t!r}")
            if self.target.dim(t) > self.source.dim(s):
                raise MapError(
                    f"map raises dimension at {s!r}: {self.source.dim(s)} -> {self.target.dim(t)}"
                )
        for a, b in self.source.covers:
            if not self.target.leq(asg[a], asg[b]):
                raise MapError(f"map is not monotone on cover ({a!r}, {b!r})")
        object.__setattr__(self, "assignment", asg)

    def __call__(self, cid: str) -> str:
        try:
            return self.assignment[cid]
        except KeyError:
            raise UnknownCellError(f"unknown cell id {cid!r}") from None


def _escape(part: str) -> str:
    return part.replace("\\", "\\\\").replace("*", "\\*")


def pair_id(a: str, b: str) -> str:
    """Deterministic, collision-free id for a product cell."""
    return f"{_escape(a)}*{_escape(b)}"


class ProductComplex(CellComplex):
    """The product of two complexes; dims add and covers act factorwise.

    Remembers the factorization: ``factors`` recovers the pair behind each
    product cell and ``proj_left`` / ``proj_right`` are the projections.
    """

    def __init__(self, left: CellComplex, right: CellComplex):
        pairs: dict[str, tuple[str, str]] = {}
        cells: list[tuple[str, int]] = []
        for a, da in left.cells:
            for b, db in right.cells:
                pid = pair_id(a, b)
                pairs[pid] = (a, b)
                cells.append((pid, da + db))
        covers: list[tuple[str, str]] = []
        right_ids = right.cell_ids
        left_ids = left.cell_ids
        for a, a2 in left.covers:
            for b in right_ids:
                covers.append((pair_id(a, b), pair_id(a2, b)))
        for b, b2 in right.covers:
            for a in left_ids:
                covers.append((pair_id(a, b), pair_id(a, b2)))
        super().__init__(cells, covers)
        self._left = left
        self._right = right
        self._pairs = pairs
        self._proj_left: CellularMap | None = None
        self._proj_right: CellularMap | None = None

    @property
    def left(self) -> CellComplex:
        return self._left

    @property
    def right(self) -> CellComplex:
        return self._right

    def pair(self, a: str, b: str) -> str:
        pid = pair_id(a, b)
        if pid not in self._pairs:
            raise UnknownCellError(f"no product cell for pair ({a!r}, {b!r})")
        return pid

    def factors(self, pid: str) -> tuple[str, str]:
        try:
            return self._pairs[pid]
        except KeyError:
            raise UnknownCellError(f"unknown product cell id {pid!r}") from None

    @property
    def proj_left(self) -> CellularMap:
        if self._proj_left is None:
            asg = {pid: ab[0] for pid, ab in self._pairs.items()}
            self._proj_left = CellularMap(self, self._left, asg)
        return self._proj_left

    @property
    def proj_right(self) -> CellularMap:
        if self._proj_right is None:
            asg = {pid: ab[1] for pid, ab in self._pairs.items()}
            self._proj_right = CellularMap(self, self._right, asg)
        return self._proj_right


def product(left: CellComplex, right: CellComplex) -> ProductComplex:
    """Product complex with its two projections attached."""
    return ProductComplex(left, right)
