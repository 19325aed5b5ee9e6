"""Kernel transforms on constructible functions.

A kernel is a function on a product complex X x Y; its transform sends a
function on X to the function on Y obtained by multiplying with the kernel
and integrating out the X factor with Euler weights.  Kernels compose, the
signed diagonal is the two-sided identity, and finite incidence geometries
give Radon-style kernel pairs whose composite is reported as an explicit
operator matrix.  The Fourier-Mukai operator acts on values only: its kernel
lives entirely on the parameter side, so it never interacts with the complex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cellspace import CellComplex, ProductComplex, product
from .cfun import CFunction, cf_mul, from_values, pullback, pushforward_proj
from .errors import FactorMismatchError, GeometryError, ModelMismatchError, NotProductError
from .kring import (
    RingModel,
    RingValue,
    fm_value,
    ring_add,
    ring_mul,
    ring_one,
    ring_scale,
    ring_zero,
)


@dataclass(frozen=True)
class Kernel:
    """A constructible function on a declared product complex."""

    fn: CFunction

    def __post_init__(self):
        if not isinstance(self.fn.complex, ProductComplex):
            raise NotProductError("a kernel must live on a declared product complex")

    @property
    def complex(self) -> ProductComplex:
        return self.fn.complex

    @property
    def left(self) -> CellComplex:
        return self.complex.left

    @property
    def right(self) -> CellComplex:
        return self.complex.right

    @property
    def ring(self) -> RingModel:
        return self.fn.ring


def diagonal_kernel(complex: CellComplex, ring: RingModel) -> Kernel:
    """The identity kernel on X x X: (-1)^dim on each diagonal cell.

    The sign cancels the Euler weight of the integrated factor, which makes
    this kernel the two-sided unit for composition and its transform the
    identity; the unsigned diagonal has neither property above dimension 0.
    """
    prod = product(complex, complex)
    vals = {}
    for cid in complex.cell_ids:
        sign = (-1) ** complex.dim(cid)
        vals[prod.pair(cid, cid)] = ring_scale(sign, ring_one(ring))
    return Kernel(from_values(prod, ring, vals))


def transform(kernel: Kernel, fn: CFunction) -> CFunction:
    """Apply a kernel: pull back along the left projection, multiply, push.

    ``(Phi fn)(tau) = sum over sigma of (-1)^dim(sigma) K(sigma x tau) fn(sigma)``,
    linear over the value ring in both the kernel and the function.
    """
    if fn.complex != kernel.left:
        raise FactorMismatchError("transform: function does not live on the kernel's left factor")
    if fn.ring != kernel.ring:
        raise ModelMismatchError("transform: kernel and function use different ring models")
    pulled = pullback(kernel.complex.proj_left, fn)
    return pushforward_proj(cf_mul(kernel.fn, pulled))


def compose_kernels(first: Kernel, second: Kernel) -> Kernel:
    """Kernel of the composite transform (apply ``first``, then ``second``).

    For ``first`` on X x Y and ``second`` on Y x Z the result lives on X x Z
    with values ``sum over tau of (-1)^dim(tau) first(sigma x tau) second(tau x rho)``.
    """
    if first.right != second.left:
        raise FactorMismatchError("compose_kernels: middle factors differ")
    if first.ring != second.ring:
        raise ModelMismatchError("compose_kernels: kernels use different ring models")
    x, y, z = first.left, first.right, second.right
    prod = product(x, z)
    vals: dict[str, RingValue] = {}
    for a in x.cell_ids:
        for c in z.cell_ids:
            acc = ring_zero(first.ring)
            for b in y.cell_ids:
                k1 = first.fn.values[first.complex.pair(a, b)]
                if k1.is_zero:
                    continue
                k2 = second.fn.values[second.complex.pair(b, c)]
                if k2.is_zero:
                    continue
                acc = ring_add(acc, ring_scale((-1) ** y.dim(b), ring_mul(k1, k2)))
            if not acc.is_zero:
                vals[prod.pair(a, c)] = acc
    return Kernel(from_values(prod, first.ring, vals))


@dataclass(frozen=True)
class OperatorMatrix:
    """A transform written out on the open-cell basis.

    ``entries[i][j]`` is the value of the transformed indicator of source
    cell ``sources[j]`` at target cell ``targets[i]``.
    """

    sources: tuple[str, ...]
    targets: tuple[str, ...]
    entries: tuple[tuple[RingValue, ...], ...]


def operator_matrix(kernel: Kernel) -> OperatorMatrix:
    """Matrix of the kernel transform over open-cell indicator functions."""
    sources = kernel.left.cell_ids
    targets = kernel.right.cell_ids
    rows = []
    for t in targets:
        row = []
        for s in sources:
            sign = (-1) ** kernel.left.dim(s)
            row.append(ring_scale(sign, kernel.fn.values[kernel.complex.pair(s, t)]))
        rows.append(tuple(row))
    return OperatorMatrix(sources, targets, tuple(rows))


@dataclass(frozen=True)
class IncidenceGeometry:
    """A finite point-line incidence geometry: lines are sets of point indices."""

    n_points: int
    lines: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n_points < 1:
            raise GeometryError("an incidence geometry needs at least one point")
        lines = tuple(frozenset(int(p) for p in line) for line in self.lines)
        for i, line in enumerate(lines):
            if not line:
                raise GeometryError(f"line {i} is empty")
            bad = [p for p in line if p < 0 or p >= self.n_points]
            if bad:
                raise GeometryError(f"line {i} mentions unknown points {sorted(bad)}")
        object.__setattr__(self, "lines", lines)


def fano_plane() -> IncidenceGeometry:
    """The 7-point, 7-line projective plane of order 2."""
    lines = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))
    return IncidenceGeometry(7, tuple(frozenset(l) for l in lines))


def point_complex(geometry: IncidenceGeometry) -> CellComplex:
    """The points as a 0-dimensional complex with ids p0, p1, ..."""
    return CellComplex([(f"p{i}", 0) for i in range(geometry.n_points)], [])


def line_complex(geometry: IncidenceGeometry) -> CellComplex:
    """The lines as a 0-dimensional complex with ids l0, l1, ..."""
    return CellComplex([(f"l{j}", 0) for j in range(len(geometry.lines))], [])


def incidence_kernel(geometry: IncidenceGeometry, ring: RingModel) -> Kernel:
    """Unit class on the non-incident point-line pairs."""
    x, y = point_complex(geometry), line_complex(geometry)
    prod = product(x, y)
    one = ring_one(ring)
    vals = {}
    for i in range(geometry.n_points):
        for j, line in enumerate(geometry.lines):
            if i not in line:
                vals[prod.pair(f"p{i}", f"l{j}")] = one
    return Kernel(from_values(prod, ring, vals))


def radon_pair(geometry: IncidenceGeometry, ring: RingModel) -> tuple[Kernel, Kernel]:
    """The non-incidence kernel and its reversed mate.

    The composite of their transforms is not the identity; it is returned to
    the caller as data (see :func:`operator_matrix`) so the correction terms
    can be inspected rather than assumed.
    """
    forward = incidence_kernel(geometry, ring)
    x, y = point_complex(geometry), line_complex(geometry)
    prod = product(y, x)
    one = ring_one(ring)
    vals = {}
    for j, line in enumerate(geometry.lines):
        for i in range(geometry.n_points):
            if i not in line:
                vals[prod.pair(f"l{j}", f"p{i}")] = one
    backward = Kernel(from_values(prod, ring, vals))
    return forward, backward


def fm_transform(fn: CFunction) -> CFunction:
    """Apply the Fourier-Mukai value automorphism cellwise.

    The kernel is constant along the complex, so this commutes with every
    push/pull along cellular maps; applying it twice negates the rank and
    degree coordinates of every value.
    """
    vals = {c: fm_value(v) for c, v in fn.values.items()}
    return CFunction(fn.complex, fn.ring, vals)
