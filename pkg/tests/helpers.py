"""Shared builders, random generators, and decomposition oracles for tests."""

from __future__ import annotations

import random
from itertools import combinations

from relcf import (
    INT,
    ZZ2,
    AbelianGroup,
    CellComplex,
    CFunction,
    LocallyClosedSet,
    ProductRing,
    RingValue,
    TruncatedCurve,
    closure,
    from_values,
    open_star,
    product,
    ring_scale,
)
from relcf.kring import RingModel

Z2TORSION = TruncatedCurve(AbelianGroup(free_rank=1, torsion_orders=(2,)))
WIDE = TruncatedCurve(AbelianGroup(free_rank=2, torsion_orders=(3,)))
PAIR = ProductRing((INT, ZZ2))

MODELS = (INT, ZZ2, Z2TORSION, WIDE, PAIR)


# ------------------------------------------------------------- fixed complexes

def point() -> CellComplex:
    return CellComplex([("pt", 0)], [])


def interval() -> CellComplex:
    return CellComplex([("v0", 0), ("v1", 0), ("e", 1)], [("v0", "e"), ("v1", "e")])


def triangle_boundary() -> CellComplex:
    cells = [("v0", 0), ("v1", 0), ("v2", 0), ("e01", 1), ("e12", 1), ("e20", 1)]
    covers = [("v0", "e01"), ("v1", "e01"), ("v1", "e12"), ("v2", "e12"),
              ("v2", "e20"), ("v0", "e20")]
    return CellComplex(cells, covers)


def disc() -> CellComplex:
    """Cone over the triangle boundary with apex cell ``c``."""
    cells = [("c", 0), ("v0", 0), ("v1", 0), ("v2", 0),
             ("e01", 1), ("e12", 1), ("e20", 1), ("s0", 1), ("s1", 1), ("s2", 1),
             ("t0", 2), ("t1", 2), ("t2", 2)]
    covers = [("v0", "e01"), ("v1", "e01"), ("v1", "e12"), ("v2", "e12"),
              ("v2", "e20"), ("v0", "e20"),
              ("c", "s0"), ("v0", "s0"), ("c", "s1"), ("v1", "s1"),
              ("c", "s2"), ("v2", "s2"),
              ("e01", "t0"), ("s0", "t0"), ("s1", "t0"),
              ("e12", "t1"), ("s1", "t1"), ("s2", "t1"),
              ("e20", "t2"), ("s2", "t2"), ("s0", "t2")]
    return CellComplex(cells, covers)


def simplicial_complex(facets) -> CellComplex:
    """The complex of all nonempty subsets of the given vertex sets."""
    simplices = set()
    for facet in facets:
        facet = frozenset(facet)
        for k in range(1, len(facet) + 1):
            simplices.update(frozenset(c) for c in combinations(sorted(facet), k))
    def sid(s):
        return "x" + "-".join(str(v) for v in sorted(s))
    cells = [(sid(s), len(s) - 1) for s in simplices]
    covers = []
    for s in simplices:
        for v in s:
            face = s - {v}
            if face:
                covers.append((sid(face), sid(s)))
    return CellComplex(cells, covers)


# ---------------------------------------------------------- random generators

def random_simplicial(rng: random.Random, max_vertices=7, max_facets=5,
                      max_facet_size=4) -> CellComplex:
    nv = rng.randint(1, max_vertices)
    facets = []
    for _ in range(rng.randint(1, max_facets)):
        size = rng.randint(1, min(max_facet_size, nv))
        facets.append(rng.sample(range(nv), size))
    return simplicial_complex(facets)


def random_complex(rng: random.Random, max_vertices=7) -> CellComplex:
    """A random honestly regular complex: simplicial, a cone, or a product."""
    shape = rng.randrange(4)
    if shape == 0:
        return random_simplicial(rng, max_vertices)
    if shape == 1:
        base = random_simplicial(rng, max_vertices=5, max_facets=4, max_facet_size=3)
        # cone: join every facet with a fresh apex vertex
        apex = max_vertices + 10
        facets = _facets_of_simplicial(base)
        return simplicial_complex([f | {apex} for f in facets])
    left = random_simplicial(rng, max_vertices=4, max_facets=3, max_facet_size=3)
    right = random_simplicial(rng, max_vertices=3, max_facets=2, max_facet_size=2)
    return product(left, right)


def random_large_complex(rng: random.Random, max_cells=200) -> CellComplex:
    """A simplicial complex pushed toward the given cell budget."""
    while True:
        nv = rng.randint(8, 10)
        facets = [rng.sample(range(nv), rng.randint(4, 5))
                  for _ in range(rng.randint(6, 10))]
        cx = simplicial_complex(facets)
        if 60 <= len(cx) <= max_cells:
            return cx


def _facets_of_simplicial(cx: CellComplex) -> list[frozenset[int]]:
    out = []
    for cid, _ in cx.cells:
        if not any(a == cid for a, _b in cx.covers):
            out.append(frozenset(int(v) for v in cid[1:].split("-")))
    return out


def random_model(rng: random.Random) -> RingModel:
    return MODELS[rng.randrange(len(MODELS))]


def random_value(rng: random.Random, model: RingModel, lo=-9, hi=9) -> RingValue:
    return RingValue(model, tuple(rng.randint(lo, hi) for _ in range(model.arity)))


def random_fn(rng: random.Random, cx: CellComplex, model: RingModel,
              sparsity=0.3) -> CFunction:
    vals = {}
    for cid in cx.cell_ids:
        if rng.random() >= sparsity:
            vals[cid] = random_value(rng, model)
    return from_values(cx, model, vals)


def random_locally_closed(rng: random.Random, cx: CellComplex,
                          nonempty=False) -> LocallyClosedSet:
    """Intersection of a random open star with a random closure."""
    ids = cx.cell_ids
    while True:
        star = open_star(cx, ids[rng.randrange(len(ids))])
        down = closure(cx, rng.sample(ids, rng.randint(1, min(3, len(ids)))))
        got = star.intersect(down)
        if got.members or not nonempty:
            return got


# ----------------------------------------------------------- oracle arithmetic

def oracle_mul(a: RingValue, b: RingValue) -> RingValue:
    """Curve-model product via decomposition into rank-1 pieces.

    Writes each element as (rank-1)*(1,0) + (1, m) and multiplies the pieces
    with the rank-1 rule (1,x)*(1,y) = (1, x+y) only, so it is independent of
    the bilinear formula it checks.
    """
    model = a.model
    assert isinstance(model, TruncatedCurve)
    one = RingValue(model, (1,) + (0,) * model.group.arity)

    def rank1(v: RingValue) -> RingValue:
        assert v.coords[0] == 1
        return v

    def r1_mul(u: RingValue, v: RingValue) -> RingValue:
        u, v = rank1(u), rank1(v)
        return RingValue(model, (1,) + tuple(x + y for x, y in zip(u.coords[1:], v.coords[1:])))

    ra, rb = a.coords[0], b.coords[0]
    pa = RingValue(model, (1,) + a.coords[1:])
    pb = RingValue(model, (1,) + b.coords[1:])
    total = ring_scale((ra - 1) * (rb - 1), r1_mul(one, one))
    total = total + ring_scale(ra - 1, r1_mul(one, pb))
    total = total + ring_scale(rb - 1, r1_mul(pa, one))
    return total + r1_mul(pa, pb)


def curve_pair(rng: random.Random, lo=-50, hi=50) -> tuple[RingValue, RingValue]:
    return (RingValue(ZZ2, (rng.randint(lo, hi), rng.randint(lo, hi))),
            RingValue(ZZ2, (rng.randint(lo, hi), rng.randint(lo, hi))))


def naive_rank1_mul(a: RingValue, b: RingValue) -> RingValue:
    """The (a,b)*(c,d) = (ac, b+d) rule, meaningful on rank-1 elements."""
    return RingValue(a.model, (a.coords[0] * b.coords[0],)
                     + tuple(x + y for x, y in zip(a.coords[1:], b.coords[1:])))
