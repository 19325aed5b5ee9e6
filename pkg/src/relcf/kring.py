"""Value rings for cellwise Euler calculus, with exact integer arithmetic.

Three models cover the desk-scale class rings used throughout:

* ``Integers`` -- ordinary integer multiplicities.
* ``TruncatedCurve(M)`` -- elements ``(r, m)`` with integer rank ``r`` and
  ``m`` in a finitely generated abelian group ``M``, multiplied by
  ``(r1, m1) * (r2, m2) = (r1*r2, r1*m2 + r2*m1)``.  The ``m`` part is a
  square-zero ideal, which is the rank/degree arithmetic of classes of
  bundles on a smooth projective curve.
* ``ProductRing`` -- a finite product of models, componentwise.

Values are immutable coordinate tuples; torsion coordinates are kept reduced
modulo their order at all times.  Every operation is pure and safe for
concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ModelMismatchError, UnsupportedModelError


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group Z^free_rank x Z/t_1 x ... x Z/t_k."""

    free_rank: int = 0
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_orders", tuple(self.torsion_orders))
        if self.free_rank < 0:
            raise ValueError(f"free_rank must be >= 0, got {self.free_rank}")
        for t in self.torsion_orders:
            if t < 2:
                raise ValueError(f"torsion orders must be >= 2, got {t}")

    @property
    def arity(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    def reduce(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        """Reduce torsion coordinates modulo their orders."""
        free = coords[: self.free_rank]
        tors = tuple(c % t for c, t in zip(coords[self.free_rank:], self.torsion_orders))
        return free + tors


@dataclass(frozen=True)
class Integers:
    """The ring of integers; a single coordinate."""

    @property
    def arity(self) -> int:
        return 1

    def reduce(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        return coords


@dataclass(frozen=True)
class TruncatedCurve:
    """Pairs (rank, m) with m in ``group`` and square-zero multiplication on m."""

    group: AbelianGroup

    @property
    def arity(self) -> int:
        return 1 + self.group.arity

    def reduce(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        return coords[:1] + self.group.reduce(coords[1:])


@dataclass(frozen=True)
class ProductRing:
    """A finite product of ring models, operated on componentwise."""

    factors: tuple["RingModel", ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a product ring needs at least one factor")

    @property
    def arity(self) -> int:
        return sum(f.arity for f in self.factors)

    def reduce(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        out: list[int] = []
        i = 0
        for f in self.factors:
            out.extend(f.reduce(coords[i: i + f.arity]))
            i += f.arity
        return tuple(out)


RingModel = Union[Integers, TruncatedCurve, ProductRing]

INT = Integers()
# Rank/degree pairs over the integers: the default curve-style model.
ZZ2 = TruncatedCurve(AbelianGroup(free_rank=1))


@dataclass(frozen=True)
class RingValue:
    """An element of a declared ring model, stored as a reduced integer tuple."""

    model: RingModel
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.model.arity:
            raise ValueError(
                f"expected {self.model.arity} coordinates for {self.model}, got {len(coords)}"
            )
        object.__setattr__(self, "coords", self.model.reduce(coords))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "RingValue") -> "RingValue":
        return ring_add(self, other)

    def __neg__(self) -> "RingValue":
        return ring_neg(self)

    def __sub__(self, other: "RingValue") -> "RingValue":
        return ring_add(self, ring_neg(other))

    def __mul__(self, other: "RingValue") -> "RingValue":
        return ring_mul(self, other)

    def __repr__(self):
        return f"RingValue{self.coords}"


def _check_same_model(a: RingValue, b: RingValue) -> None:
    if a.model != b.model:
        raise ModelMismatchError(f"ring models differ: {a.model} vs {b.model}")


def ring_zero(model: RingModel) -> RingValue:
    return RingValue(model, (0,) * model.arity)


def ring_one(model: RingModel) -> RingValue:
    if isinstance(model, Integers):
        return RingValue(model, (1,))
    if isinstance(model, TruncatedCurve):
        return RingValue(model, (1,) + (0,) * model.group.arity)
    if isinstance(model, ProductRing):
        coords: tuple[int, ...] = ()
        for f in model.factors:
            coords += ring_one(f).coords
        return RingValue(model, coords)
    raise UnsupportedModelError(f"unknown ring model {model!r}")


def ring_add(a: RingValue, b: RingValue) -> RingValue:
    _check_same_model(a, b)
    return RingValue(a.model, tuple(x + y for x, y in zip(a.coords, b.coords)))


def ring_neg(a: RingValue) -> RingValue:
    return RingValue(a.model, tuple(-x for x in a.coords))


def ring_scale(n: int, a: RingValue) -> RingValue:
    """Integer multiple n*a, the group action of Z on any model."""
    return RingValue(a.model, tuple(n * x for x in a.coords))


def _split(model: ProductRing, coords: tuple[int, ...]):
    i = 0
    for f in model.factors:
        yield f, coords[i: i + f.arity]
        i += f.arity


def ring_mul(a: RingValue, b: RingValue) -> RingValue:
    """Product in the declared model; bilinear in each argument.

    On ``TruncatedCurve`` the non-rank parts multiply to zero, so
    ``(r1, m1) * (r2, m2) = (r1*r2, r1*m2 + r2*m1)``.  This agrees with the
    naive rule ``(a, b)*(c, d) = (ac, b+d)`` exactly on rank-1 elements and
    is the unique extension that distributes over addition.
    """
    _check_same_model(a, b)
    model = a.model
    if isinstance(model, Integers):
        return RingValue(model, (a.coords[0] * b.coords[0],))
    if isinstance(model, TruncatedCurve):
        r1, r2 = a.coords[0], b.coords[0]
        m = tuple(r1 * y + r2 * x for x, y in zip(a.coords[1:], b.coords[1:]))
        return RingValue(model, (r1 * r2,) + m)
    if isinstance(model, ProductRing):
        coords: tuple[int, ...] = ()
        off = 0
        for f in model.factors:
            fa = RingValue(f, a.coords[off: off + f.arity])
            fb = RingValue(f, b.coords[off: off + f.arity])
            coords += ring_mul(fa, fb).coords
            off += f.arity
        return RingValue(model, coords)
    raise UnsupportedModelError(f"unknown ring model {model!r}")


def ring_dual(a: RingValue) -> RingValue:
    """Duality involution: identity on ranks, negation on the residual part."""
    model = a.model
    if isinstance(model, Integers):
        return a
    if isinstance(model, TruncatedCurve):
        return RingValue(model, a.coords[:1] + tuple(-x for x in a.coords[1:]))
    if isinstance(model, ProductRing):
        coords: tuple[int, ...] = ()
        for f, part in _split(model, a.coords):
            coords += ring_dual(RingValue(f, part)).coords
        return RingValue(model, coords)
    raise UnsupportedModelError(f"unknown ring model {model!r}")


def fm_value(a: RingValue) -> RingValue:
    """Fourier-Mukai automorphism of a curve-model value.

    Sends ``(r, d, rest...)`` to ``(d, -r, -rest...)``: the rank/degree swap
    induced by the Poincare kernel on an elliptic curve, with negation on the
    remaining coordinates.  Applying it twice negates rank and degree; it is
    plain negation on the whole value whenever the residual coordinates are
    zero or 2-torsion.
    """
    model = a.model
    if not isinstance(model, TruncatedCurve) or model.group.free_rank < 1:
        raise UnsupportedModelError(
            f"fm_value needs a TruncatedCurve model with a degree coordinate, got {model}"
        )
    r, d, rest = a.coords[0], a.coords[1], a.coords[2:]
    return RingValue(model, (d, -r) + tuple(-x for x in rest))
