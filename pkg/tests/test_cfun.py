"""The function algebra: bases, integration, push/pull, duality."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import (
    disc,
    interval,
    point,
    random_complex,
    random_fn,
    random_locally_closed,
    random_model,
)
from relcf import (
    INT,
    ZZ2,
    CellularMap,
    LocallyClosedSet,
    RingValue,
    cf_add,
    cf_mul,
    cf_neg,
    cf_scale,
    closure,
    const_fn,
    euler_cs,
    extend_by_zero,
    external_product,
    from_closed_basis,
    from_values,
    indicator,
    integrate,
    open_star,
    product,
    pullback,
    pushforward_proj,
    ring_mul,
    ring_one,
    ring_scale,
    ring_zero,
    to_closed_basis,
    to_open_basis,
    verdier_dual,
    zero_fn,
)
from relcf.errors import (
    ComplexMismatchError,
    ModelMismatchError,
    NotLocallyClosedError,
    NotProductError,
)


def one(model=ZZ2):
    return ring_one(model)


def test_indicator_of_closed_edge():
    cx = interval()
    f = indicator(closure(cx, ["e"]), one(INT))
    assert [f(c).coords[0] for c in ("v0", "v1", "e")] == [1, 1, 1]


def test_indicator_of_open_edge():
    cx = interval()
    f = indicator(LocallyClosedSet(cx, frozenset({"e"})), RingValue(ZZ2, (1, 2)))
    assert f("v0").is_zero and f("v1").is_zero
    assert f("e") == RingValue(ZZ2, (1, 2))


def test_indicator_rejects_non_convex_support():
    from relcf import CellSet

    cx = disc()
    with pytest.raises(NotLocallyClosedError):
        indicator(CellSet(cx, frozenset({"v0", "t0"})), one(INT))


def test_const_on_point():
    f = const_fn(point(), ZZ2, RingValue(ZZ2, (2, 3)))
    assert f("pt") == RingValue(ZZ2, (2, 3))


def test_indicator_product_is_intersection():
    cx = interval()
    closed = indicator(closure(cx, ["e"]), one(INT))
    opened = indicator(LocallyClosedSet(cx, frozenset({"e"})), one(INT))
    assert cf_mul(closed, opened).values == opened.values


def test_scaling_collects():
    cx = interval()
    f = const_fn(cx, ZZ2, one())
    lhs = cf_add(cf_scale(RingValue(ZZ2, (2, 0)), f), cf_scale(RingValue(ZZ2, (0, 1)), f))
    assert lhs.values == cf_scale(RingValue(ZZ2, (2, 1)), f).values


def test_mul_uses_the_ring_product():
    cx = interval()
    f = indicator(closure(cx, ["e"]), RingValue(ZZ2, (1, 1)))
    assert cf_mul(f, f)("e") == RingValue(ZZ2, (1, 2))


def test_mismatches_rejected():
    f = const_fn(interval(), INT, one(INT))
    g = const_fn(point(), INT, one(INT))
    with pytest.raises(ComplexMismatchError):
        cf_add(f, g)
    h = const_fn(interval(), ZZ2, one())
    with pytest.raises(ModelMismatchError):
        cf_mul(f, h)
    with pytest.raises(ModelMismatchError):
        cf_scale(one(), f)


def test_closed_basis_of_closed_edge():
    cx = interval()
    f = indicator(closure(cx, ["e"]), one(INT))
    assert to_closed_basis(f) == [("e", one(INT))]


def test_closed_basis_of_vertex():
    cx = interval()
    f = indicator(LocallyClosedSet(cx, frozenset({"v0"})), one(INT))
    basis = to_closed_basis(f)
    assert basis == [("v0", one(INT))]
    assert from_closed_basis(cx, INT, basis).values == f.values


def test_basis_round_trips_randomized():
    rng = random.Random(42)
    for _ in range(100):
        cx = random_complex(rng)
        f = random_fn(rng, cx, ZZ2)
        basis = to_closed_basis(f)
        assert from_closed_basis(cx, ZZ2, basis).values == f.values
        resummed = zero_fn(cx, ZZ2)
        for cid, val in to_open_basis(f):
            resummed = cf_add(resummed, indicator(LocallyClosedSet(cx, frozenset({cid})), val))
        assert resummed.values == f.values


def test_closed_coefficients_round_trip_backwards():
    rng = random.Random(43)
    for _ in range(50):
        cx = random_complex(rng)
        entries = [(cid, v) for cid, v in random_fn(rng, cx, ZZ2).values.items()
                   if not v.is_zero]
        f = from_closed_basis(cx, ZZ2, entries)
        assert to_closed_basis(f) == sorted(entries)


def test_integrate_examples():
    cx = interval()
    assert integrate(indicator(closure(cx, ["e"]), one(INT))) == one(INT)
    assert integrate(indicator(LocallyClosedSet(cx, frozenset({"e"})), one(INT))).coords == (-1,)


def test_integrate_disc_without_center():
    cx = disc()
    f = from_values(cx, ZZ2, {c: one() for c in cx.cell_ids if c != "c"})
    assert integrate(f).is_zero


def test_integrate_is_ring_linear():
    rng = random.Random(44)
    for _ in range(30):
        cx = random_complex(rng)
        model = random_model(rng)
        f = random_fn(rng, cx, model)
        g = random_fn(rng, cx, model)
        y = RingValue(model, tuple(rng.randint(-9, 9) for _ in range(model.arity)))
        assert integrate(cf_add(f, g)) == integrate(f) + integrate(g)
        assert integrate(cf_scale(y, f)) == ring_mul(y, integrate(f))


def test_pullback_along_vertex_inclusion():
    y = interval()
    include = CellularMap(point(), y, {"pt": "v1"})
    f = from_values(y, ZZ2, {"v1": RingValue(ZZ2, (4, 5))})
    assert pullback(include, f)("pt") == RingValue(ZZ2, (4, 5))


def test_pushforward_needs_a_product():
    with pytest.raises(NotProductError):
        pushforward_proj(const_fn(interval(), INT, one(INT)))


def test_projection_formula_interval_factor():
    rng = random.Random(45)
    x = interval()  # chi_c = 1
    y = disc()
    prod = product(x, y)
    f = random_fn(rng, y, ZZ2)
    lifted = pullback(prod.proj_right, f)
    assert pushforward_proj(lifted).values == f.values


def test_fubini_randomized():
    rng = random.Random(46)
    for _ in range(50):
        x = random_complex(rng, max_vertices=4)
        y = random_complex(rng, max_vertices=4)
        prod = product(x, y)
        k = random_fn(rng, prod, ZZ2)
        # independent double sum over pairs
        direct = ring_zero(ZZ2)
        for pid, val in k.values.items():
            a, b = prod.factors(pid)
            direct = direct + ring_scale((-1) ** (x.dim(a) + y.dim(b)), val)
        assert integrate(pushforward_proj(k)) == direct
        assert integrate(k) == direct


def test_extend_by_zero_sections_restriction():
    rng = random.Random(47)
    for _ in range(20):
        cx = random_complex(rng)
        area = random_locally_closed(rng, cx)
        f = random_fn(rng, cx, ZZ2)
        g = extend_by_zero(area, f)
        for cid in cx.cell_ids:
            if cid in area.members:
                assert g(cid) == f(cid)
            else:
                assert g(cid).is_zero
        assert extend_by_zero(area, g).values == g.values


def test_external_product_of_indicators():
    x, y = interval(), interval()
    a = RingValue(ZZ2, (1, 2))
    b = RingValue(ZZ2, (2, 1))
    f = indicator(LocallyClosedSet(x, frozenset({"e"})), a)
    g = indicator(LocallyClosedSet(y, frozenset({"v0"})), b)
    prod_fn = external_product(f, g)
    box = prod_fn.complex
    for pid in box.cell_ids:
        expected = ring_mul(a, b) if box.factors(pid) == ("e", "v0") else ring_zero(ZZ2)
        assert prod_fn(pid) == expected


def test_external_product_of_units_is_unit():
    x, y = interval(), disc()
    f = const_fn(x, ZZ2, one())
    g = const_fn(y, ZZ2, one())
    assert set(external_product(f, g).values.values()) == {one()}


def test_external_product_integral_multiplicative():
    rng = random.Random(48)
    for _ in range(30):
        x = random_complex(rng, max_vertices=4)
        y = random_complex(rng, max_vertices=4)
        f = random_fn(rng, x, ZZ2)
        g = random_fn(rng, y, ZZ2)
        assert integrate(external_product(f, g)) == ring_mul(integrate(f), integrate(g))


def test_verdier_dual_of_closed_edge():
    cx = interval()
    f = indicator(closure(cx, ["e"]), one(INT))
    d = verdier_dual(f)
    assert d("v0").is_zero and d("v1").is_zero
    assert d("e").coords == (-1,)
    assert verdier_dual(d).values == f.values


def test_verdier_dual_of_zero():
    cx = disc()
    z = zero_fn(cx, ZZ2)
    assert verdier_dual(z).values == z.values


def test_verdier_dual_signed_indicator_on_top_cells():
    rng = random.Random(49)
    for _ in range(20):
        cx = random_complex(rng)
        top = max(cx.cell_ids, key=cx.dim)
        if open_star(cx, top).members != {top}:
            continue
        f = indicator(closure(cx, [top]), one())
        d = verdier_dual(f)
        sign = (-1) ** cx.dim(top)
        expected = indicator(LocallyClosedSet(cx, frozenset({top})), ring_scale(sign, one()))
        assert d.values == expected.values


def test_verdier_involution_randomized():
    rng = random.Random(50)
    for _ in range(60):
        cx = random_complex(rng)
        model = random_model(rng)
        f = random_fn(rng, cx, model)
        assert verdier_dual(verdier_dual(f)).values == f.values


def test_local_dual_matches_neighborhood_euler_sums():
    # dual of a closed-cell indicator at s is the signed count of the
    # star of s inside that closure, computed here by raw poset queries
    rng = random.Random(51)
    for _ in range(20):
        cx = random_complex(rng)
        ids = cx.cell_ids
        rho = ids[rng.randrange(len(ids))]
        f = indicator(closure(cx, [rho]), one(INT))
        d = verdier_dual(f)
        for sigma in ids:
            patch = cx.above(sigma) & cx.below(rho)
            assert d(sigma).coords[0] == euler_cs(cx, patch)


# ------------------------------------------------------- algebra law properties

@st.composite
def fn_pair(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    cx = random_complex(rng, max_vertices=5)
    model = random_model(rng)
    return (random_fn(rng, cx, model), random_fn(rng, cx, model),
            random_fn(rng, cx, model))


@settings(max_examples=60, deadline=None)
@given(fn_pair())
def test_function_algebra_laws(fns):
    f, g, h = fns
    assert cf_add(f, g).values == cf_add(g, f).values
    assert cf_add(cf_add(f, g), h).values == cf_add(f, cf_add(g, h)).values
    assert cf_mul(f, g).values == cf_mul(g, f).values
    assert cf_mul(cf_mul(f, g), h).values == cf_mul(f, cf_mul(g, h)).values
    assert cf_mul(f, cf_add(g, h)).values == cf_add(cf_mul(f, g), cf_mul(f, h)).values
    assert cf_add(f, cf_neg(f)).values == zero_fn(f.complex, f.ring).values
    unit = const_fn(f.complex, f.ring, ring_one(f.ring))
    assert cf_mul(f, unit).values == f.values
