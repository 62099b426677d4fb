from __future__ import annotations

import itertools

import pytest

from oracles import class_reps
from padic_so3.errors import NotDefinite, ZeroVector
from padic_so3.padic import PadicContext, class_of_int, square_class
from padic_so3.quadforms import (
    DiagonalQuadraticForm,
    bilinear,
    classify_definite_2d,
    definite_form,
    equivalent,
    evaluate,
    invariants,
    isotropic_companion,
    kappa_for_class,
    kappa_labels,
    represents_zero,
    restrict_to_plane,
)

PRIMES = (2, 3, 5, 7, 13)


def form(p, *coeffs):
    ctx = PadicContext(p)
    return DiagonalQuadraticForm(ctx, tuple(ctx(c) for c in coeffs))


def test_invariants_of_ternary_form():
    inv = invariants(form(3, 1, 1, 3))
    assert inv.rank == 3
    assert inv.discriminant == class_of_int(3, 3)
    assert inv.hasse == 1


def test_invariants_examples():
    inv = invariants(form(2, 2, 5))
    assert inv.discriminant == class_of_int(2, 10) and inv.hasse == -1
    for p in (3, 5, 7, 13):
        inv = invariants(form(p, 1, 1))
        assert inv.discriminant == class_of_int(p, 1) and inv.hasse == 1


def test_equivalence_examples():
    assert equivalent(form(2, 1, 2), form(2, -5, -10))
    assert not equivalent(form(3, 1, 1), form(3, 3, 3))


def test_represents_zero_examples():
    assert represents_zero(form(5, 1, 1))
    assert not represents_zero(form(3, 1, 1))
    assert represents_zero(form(2, 1, -1))
    assert represents_zero(form(7, 1, 1, 1, 1, 1))


@pytest.mark.parametrize("p", PRIMES)
def test_definite_forms(p):
    ctx = PadicContext(p)
    assert not represents_zero(definite_form(ctx, 3))
    assert not represents_zero(definite_form(ctx, 4))
    for n in (2, 3, 4):
        assert represents_zero(isotropic_companion(ctx, n))
    labels = kappa_labels(ctx)
    assert len(labels) == (7 if p == 2 else 3)
    for k in labels:
        q = definite_form(ctx, k)
        assert not represents_zero(q)
        assert classify_definite_2d(q) == k


def test_canonical_form_coefficients():
    q = definite_form(PadicContext(7), 3)
    assert [c.to_fraction() for c in q.coeffs] == [1, 1, 7]
    q = definite_form(PadicContext(2), 3)
    assert [c.to_fraction() for c in q.coeffs] == [1, 1, 1]
    q = definite_form(PadicContext(5), "up")
    assert [c.to_fraction() for c in q.coeffs] == [2, 5]


def test_classify_examples():
    assert classify_definite_2d(form(3, 1, 1)).label == "-v"
    assert classify_definite_2d(form(5, 3, 15)).label == "p"
    assert classify_definite_2d(form(2, 1, 5)).label == "5"
    with pytest.raises(NotDefinite):
        classify_definite_2d(form(5, 1, 1))


@pytest.mark.parametrize("p", PRIMES)
def test_binary_definiteness_matches_discriminant(p):
    """A binary form is isotropic exactly when ``-d`` is a square."""
    reps = class_reps(p)
    for a, b in itertools.product(reps, repeat=2):
        q = form(p, a, b)
        iso = class_of_int(p, -a * b) == class_of_int(p, 1)
        assert represents_zero(q) == iso


@pytest.mark.parametrize("p", PRIMES)
def test_every_anisotropic_class_has_a_label(p):
    ctx = PadicContext(p)
    minus_one = class_of_int(p, -1)
    for a in class_reps(p):
        cls = class_of_int(p, a)
        if cls == minus_one:
            with pytest.raises(NotDefinite):
                kappa_for_class(ctx, cls)
        else:
            assert square_class(kappa_for_class(ctx, cls).alpha) == cls


def test_evaluate_basis_vector():
    ctx = PadicContext(3)
    assert evaluate(definite_form(ctx, 3), (0, 0, 1)).equals(3)


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("n", [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (3, -2, 5), (0, 7, 2)])
def test_restrict_to_plane(p, n):
    ctx = PadicContext(p)
    q = definite_form(ctx, 3)
    r = restrict_to_plane(q, n)
    for vec in (r.g, r.h):
        assert bilinear(q, n, vec).is_zero
    assert bilinear(q, r.g, r.h).is_zero
    assert r.alpha.equals(evaluate(q, r.h) / evaluate(q, r.g))
    # the restricted binary form has discriminant Q(n) * disc(Q) up to squares
    d = invariants(q).discriminant
    assert square_class(r.alpha) == d * square_class(evaluate(q, n))


def test_reference_planes():
    ctx = PadicContext(7)
    q = definite_form(ctx, 3)
    assert restrict_to_plane(q, (0, 0, 1)).kappa.label == "-v"
    ctx = PadicContext(5)
    assert restrict_to_plane(definite_form(ctx, 3), (1, 0, 0)).kappa.label == "up"
    ctx = PadicContext(2)
    assert restrict_to_plane(definite_form(ctx, 3), (1, 0, 0)).kappa.label == "1"


def test_restrict_zero_vector():
    ctx = PadicContext(3)
    with pytest.raises(ZeroVector):
        restrict_to_plane(definite_form(ctx, 3), (0, 0, 0))
