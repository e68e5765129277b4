"""Recursive functions compiled to multitape machines (unary convention)."""

import itertools

import pytest

from churing.errors import ValidationError
from churing.prf import Compose, Mu, Proj, Succ, Zero, const, evaluate, stdlib
from churing.prf_to_tm import compile_prf_to_tm, layout_report, succ_machine
from churing.tm import run, run_numeric

FUEL = 10 ** 6


def test_succ_machine_exact_behaviour():
    m = succ_machine()
    assert m.tapes == 1
    for n in range(5):
        assert run_numeric(m, [n], fuel=100) == n + 1
    # accepting head parks on the numeral's first cell
    from churing.tm import numeric_start
    out = run(m, "", fuel=100, start=numeric_start(m, [2]))
    assert out.tag == "Accept" and out.final.heads == (1,)


@pytest.mark.parametrize("name,oracle", [
    ("add", lambda a, b: a + b),
    ("mul", lambda a, b: a * b),
    ("monus", lambda a, b: max(a - b, 0)),
])
def test_compiled_binary_functions(name, oracle):
    f = stdlib(name)
    m, layout = compile_prf_to_tm(f)
    assert layout.arity == 2
    for a, b in itertools.product(range(5), repeat=2):
        got = run_numeric(m, [a, b], fuel=FUEL, output_tape=layout.output_tape)
        assert got == oracle(a, b), (name, a, b)


def test_compiled_pred():
    m, layout = compile_prf_to_tm(stdlib("pred"))
    for n in range(5):
        got = run_numeric(m, [n], fuel=FUEL, output_tape=layout.output_tape)
        assert got == max(n - 1, 0)


def test_compiled_zero_is_tiny():
    m, layout = compile_prf_to_tm(Zero(2))
    assert len(m.states) <= 8
    for a, b in itertools.product(range(3), repeat=2):
        assert run_numeric(m, [a, b], fuel=1000,
                           output_tape=layout.output_tape) == 0


def test_compiled_projection():
    m, layout = compile_prf_to_tm(Proj(3, 2))
    assert run_numeric(m, [4, 7, 1], fuel=FUEL,
                       output_tape=layout.output_tape) == 7


def test_compiled_composition():
    # succ(succ(x))
    f = Compose(Succ(), (Compose(Succ(), (Proj(1, 1),)),))
    m, layout = compile_prf_to_tm(f)
    for n in range(4):
        assert run_numeric(m, [n], fuel=FUEL,
                           output_tape=layout.output_tape) == n + 2


def test_compiled_mu():
    # least y with monus(x, y) = 0, i.e. the identity
    f = Mu(Compose(stdlib("monus"), (Proj(2, 1), Proj(2, 2))))
    m, layout = compile_prf_to_tm(f)
    for n in range(4):
        assert run_numeric(m, [n], fuel=FUEL,
                           output_tape=layout.output_tape) == n


def test_compiled_mu_divergence_runs_out_of_fuel():
    m, layout = compile_prf_to_tm(Mu(const(1, 2)))
    out = run_numeric(m, [0], fuel=5000, output_tape=layout.output_tape)
    assert not isinstance(out, int) and out.tag == "FuelExhausted"


def test_accepting_heads_park_at_cell_one():
    m, layout = compile_prf_to_tm(stdlib("add"))
    from churing.tm import numeric_start
    out = run(m, "", fuel=FUEL, start=numeric_start(m, [2, 2]))
    assert out.tag == "Accept"
    assert all(h == 1 for h in out.final.heads)
    # the cell-0 markers are erased before accepting
    assert all("^" not in t.content() for t in out.final.tapes)


def test_tape_budget_guard():
    # deep nesting beyond 16 tapes is refused, not silently miscompiled
    f = stdlib("add")
    for _ in range(8):
        f = Compose(stdlib("add"), (f, f))
    with pytest.raises(ValidationError):
        compile_prf_to_tm(f)


def test_layout_report_mentions_the_tapes():
    m, layout = compile_prf_to_tm(stdlib("add"))
    rep = layout_report(m, layout)
    assert "output tape" in rep and str(layout.output_tape) in rep


def test_compiled_matches_evaluator_on_random_exprs():
    exprs = [
        stdlib("sg"),
        Compose(stdlib("add"), (Proj(2, 2), Proj(2, 1))),
        Compose(stdlib("mul"), (stdlib("pred"), Proj(1, 1))),
    ]
    for e in exprs:
        m, layout = compile_prf_to_tm(e)
        k = layout.arity
        for pt in itertools.product(range(3), repeat=k):
            want = evaluate(e, pt, FUEL)
            got = run_numeric(m, list(pt), fuel=FUEL,
                              output_tape=layout.output_tape)
            assert got == want, (e, pt)
