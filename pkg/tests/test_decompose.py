from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_so3.decompose import (
    ALL_ORDERS,
    CARDANO_ORDERS,
    EULER_ORDERS,
    Decomposition,
    cardano_decompose,
    cardano_decompose_1mod4,
    counterexample_euler,
    counterexample_p2,
    counterexample_xzy,
    decompose,
    feasibility_check,
    second_solution,
    twin,
    verify_no_decomposition,
)
from padic_so3.errors import DecompositionInfeasible, NotOrthogonal, UnsupportedPrime
from padic_so3.padic import PadicContext, class_of_int, is_square
from padic_so3.so2 import ProjectivePoint, inverse_point
from padic_so3.so3 import Rotation3, random_element, reference_rotation

ODD = (3, 5, 7, 13)
CTX = {p: PadicContext(p) for p in (2, 3, 5, 7, 11, 13)}


def point(ctx, x):
    return ProjectivePoint.infinity(ctx) if x == "inf" else ProjectivePoint.affine(ctx, x)


@pytest.mark.parametrize("p", (2,) + ODD)
@pytest.mark.parametrize("order", ALL_ORDERS)
def test_identity_decomposes(p, order):
    ctx = CTX[p]
    d1, d2 = decompose(Rotation3.identity(ctx), order)
    for d in (d1, d2):
        assert d.matrix(ctx).equals(Rotation3.identity(ctx))


def test_single_z_rotation():
    ctx = CTX[7]
    m = reference_rotation(ctx, "z", point(ctx, 5))
    sols = decompose(m, "ZYX")
    assert any(
        d.params[0].equals(point(ctx, 5)) and d.params[1].is_origin and d.params[2].is_origin
        for d in sols
    )


def test_second_solution_of_origin_triple():
    ctx = CTX[5]
    o = ProjectivePoint.origin(ctx)
    d = second_solution(Decomposition("ZYX", (o, o, o)), ctx)
    assert all(x.is_infinity for x in d.params)
    assert d.matrix(ctx).equals(Rotation3.identity(ctx))


@pytest.mark.parametrize("p", ODD)
@given(seed=st.integers(0, 10**9), order=st.sampled_from(("ZYX", "ZXY", "XYZ", "YXZ")))
def test_cardano_orders_universal(p, seed, order):
    ctx = CTX[p]
    m = random_element(ctx, seed)
    d1, d2 = cardano_decompose(m, order)
    assert d1.matrix(ctx).equals(m) and d2.matrix(ctx).equals(m)
    assert second_solution(d1).equals(d2)
    assert second_solution(second_solution(d1)).equals(d1)


@pytest.mark.parametrize("p", ODD)
@given(a=st.integers(-(10**6), 10**6), b=st.integers(-(10**6), 10**6), c=st.integers(-(10**6), 10**6))
def test_generating_triple_is_recovered(p, a, b, c):
    ctx = CTX[p]
    params = (point(ctx, a), point(ctx, b), point(ctx, c))
    src = Decomposition("ZYX", params)
    sols = decompose(src.matrix(ctx), "ZYX")
    assert any(d.equals(src) for d in sols)


@pytest.mark.parametrize("p", ODD)
@given(seed=st.integers(0, 10**9))
def test_inverse_duality(p, seed):
    ctx = CTX[p]
    m = random_element(ctx, seed)
    fwd = decompose(m, "XYZ")
    back = decompose(m.inverse(), "ZYX")
    mirrored = [
        Decomposition("XYZ", tuple(inverse_point(x) for x in reversed(d.params))) for d in back
    ]
    for d in fwd:
        assert any(d.equals(e) for e in mirrored)


@pytest.mark.parametrize("p", (5, 13))
@given(seed=st.integers(0, 10**9), order=st.sampled_from(("XZY", "YZX")))
def test_one_mod_four_orders(p, seed, order):
    ctx = CTX[p]
    m = random_element(ctx, seed)
    d1, d2 = cardano_decompose_1mod4(m, order)
    assert d1.matrix(ctx).equals(m) and second_solution(d1).equals(d2)


@given(seed=st.integers(0, 10**9), p=st.sampled_from(ODD), order=st.sampled_from(ALL_ORDERS))
def test_feasibility_matches_decompose(seed, p, order):
    ctx = CTX[p]
    m = random_element(ctx, seed)
    rep = feasibility_check(m, order)
    if rep.feasible:
        d1, d2 = decompose(m, order)
        assert twin(d1, ctx).equals(d2)
        assert d2.matrix(ctx).equals(m)
    else:
        with pytest.raises(DecompositionInfeasible) as info:
            decompose(m, order)
        assert not is_square(info.value.report.witness)


@pytest.mark.parametrize("p", (3, 7, 11))
def test_xzy_counterexample(p):
    ctx = CTX[p]
    m = counterexample_xzy(ctx)
    rep = feasibility_check(m, "XZY")
    assert not rep.feasible and rep.witness_class == class_of_int(p, p)
    d1, _ = decompose(m, "ZYX")
    assert d1.matrix(ctx).equals(m)


@pytest.mark.parametrize("p", (3, 5, 7))
@pytest.mark.parametrize("order", EULER_ORDERS)
def test_euler_counterexamples(p, order):
    ctx = CTX[p]
    m = counterexample_euler(ctx, order)
    assert not feasibility_check(m, order).feasible


def test_p2_counterexample():
    ctx = CTX[2]
    m = counterexample_p2(ctx)
    reports = verify_no_decomposition(m)
    assert len(reports) == 12 and not any(r.feasible for r in reports.values())
    assert reports["XYZ"].witness.equals(8)
    assert reports["YXZ"].witness.equals(-3)


def test_errors():
    with pytest.raises(UnsupportedPrime):
        cardano_decompose(Rotation3.identity(CTX[2]))
    with pytest.raises(UnsupportedPrime):
        cardano_decompose_1mod4(Rotation3.identity(CTX[7]))
    with pytest.raises(UnsupportedPrime):
        counterexample_xzy(CTX[5])
    with pytest.raises(ValueError):
        decompose(Rotation3.identity(CTX[3]), "XXY")
    with pytest.raises(ValueError):
        second_solution(Decomposition("ZYZ", (point(CTX[3], 0),) * 3))
    with pytest.raises(NotOrthogonal):
        decompose(Rotation3(CTX[3], ((1, 1, 0), (0, 1, 0), (0, 0, 1))), "ZYX")


def test_cardano_order_list():
    assert set(CARDANO_ORDERS) | set(EULER_ORDERS) == set(ALL_ORDERS)
    assert len(ALL_ORDERS) == 12
