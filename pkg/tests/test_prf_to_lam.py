"""Lambda-definability of recursive functions: compile and run as terms."""

import pytest

from churing.errors import FuelExhausted, ValidationError
from churing.lam import church_decode, church_encode, free_vars, normalize
from churing.prf import (
    Compose, Mu, PrimRec, Proj, Succ, Zero, evaluate, stdlib,
)
from churing.prf_to_lam import compile_prf_to_lambda, recursion_gadget_check

FUEL = 10 ** 6


def _run(term, args, fuel=FUEL):
    t = term
    for a in args:
        from churing.lam import App
        t = App(t, church_encode(a))
    r = normalize(t, fuel)
    assert r.normal, "term did not normalize"
    return church_decode(r.term)


def test_compiled_terms_are_closed():
    for e in [Zero(2), Succ(), Proj(3, 2), stdlib("add"), stdlib("mul"),
              stdlib("pred"), stdlib("monus"), stdlib("eq")]:
        assert free_vars(compile_prf_to_lambda(e)) == set()


def test_base_functions():
    z = compile_prf_to_lambda(Zero(2))
    for x in range(3):
        for y in range(3):
            assert _run(z, [x, y]) == 0
    s = compile_prf_to_lambda(Succ())
    for x in range(5):
        assert _run(s, [x]) == x + 1
    p = compile_prf_to_lambda(Proj(3, 2))
    assert _run(p, [4, 7, 1]) == 7


def test_composition():
    # succ(succ(x)) and a two-place rearrangement through projections
    e = Compose(Succ(), (Compose(Succ(), (Proj(1, 1),)),))
    t = compile_prf_to_lambda(e)
    for x in range(4):
        assert _run(t, [x]) == x + 2


@pytest.mark.parametrize("name,fn,arity", [
    ("add", lambda x, y: x + y, 2),
    ("mul", lambda x, y: x * y, 2),
    ("pred", lambda x: max(x - 1, 0), 1),
    ("monus", lambda x, y: max(x - y, 0), 2),
    ("eq", lambda x, y: int(x == y), 2),
])
def test_arithmetic_grids(name, fn, arity):
    t = compile_prf_to_lambda(stdlib(name))
    pts = range(4)
    if arity == 1:
        for x in pts:
            assert _run(t, [x]) == fn(x), (name, x)
    else:
        for x in pts:
            for y in pts:
                assert _run(t, [x, y]) == fn(x, y), (name, x, y)


def test_primrec_matches_evaluator():
    # f(x, y) = y + 2x via primitive recursion on the first argument
    e = PrimRec(Proj(1, 1),
                Compose(Succ(), (Compose(Succ(), (Proj(3, 3),)),)))
    t = compile_prf_to_lambda(e)
    for x in range(4):
        for y in range(4):
            assert _run(t, [x, y]) == evaluate(e, [x, y], FUEL)


def test_mu_least_witness():
    # mu y. eq(x, y*y): integer square root of perfect squares
    sq = Compose(stdlib("mul"), (Proj(2, 2), Proj(2, 2)))
    pred = Compose(stdlib("eq"), (Proj(2, 1), sq))
    e = Mu(pred)
    t = compile_prf_to_lambda(e)
    for x in [0, 1, 4, 9]:
        assert _run(t, [x]) == evaluate(e, [x], FUEL)


def test_mu_divergence_exhausts_fuel():
    e = Mu(Compose(Succ(), (Zero(2),)))  # witness predicate is never 0
    t = compile_prf_to_lambda(e)
    from churing.lam import App
    r = normalize(App(t, church_encode(0)), 10 ** 4)
    assert not r.normal


def test_recursion_gadgets():
    for g in "DQRTP":
        report = recursion_gadget_check(g)
        assert report["all_equal"], report


def test_rejects_unknown_node():
    class Bogus:
        pass

    with pytest.raises((ValidationError, TypeError)):
        compile_prf_to_lambda(Bogus())
