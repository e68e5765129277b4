"""Acceptance criteria: ten end-to-end checks, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import itertools
import random
import time
from pathlib import Path

import pytest

from churing.errors import FuelExhausted
from churing.formats import parse_lam, parse_prf, parse_tm, print_lam, \
    print_prf, print_tm
from churing.lam import (
    Abs, App, Var, alpha_eq, beta_eq, beta_step, church_decode, church_encode,
    fixed_point, is_normal_form, lam, normalize, substitute,
)
from churing.lam_to_tm import build_machine, br1_on_tm, freshen, nf_on_tm, \
    reduce_on_tm, render_term
from churing.prf import (
    Compose, Mu, Proj, Succ, Zero, ackermann, bounded_mu, evaluate, stdlib,
)
from churing.prf_to_lam import compile_prf_to_lambda, recursion_gadget_check
from churing.prf_to_tm import compile_prf_to_tm
from churing.tm import make_machine, run, run_numeric
from churing.tm_to_prf import compile_tm_to_prf
from churing.transform import nd_run, single_tape_segments, successors, \
    to_single_tape

CORPUS = Path(__file__).parent.parent / "corpus"
FUEL = 10 ** 6


def _report(n, text):
    print(f"\ncriterion {n:2d}: PASS - {text}")


# --- 1. corrected 0^n 1^n machine ---------------------------------------

def test_criterion_1_zeros_then_ones():
    m = parse_tm((CORPUS / "onon.tm").read_text())
    for w in ["", "01", "0011", "000111"]:
        assert run(m, w, fuel=999).tag == "Accept", w
    for w in ["0", "1", "10", "0101", "001", "011"]:
        assert run(m, w, fuel=999).tag == "Reject", w
    _report(1, "0^n 1^n machine: 4 accepts, 6 rejects, every run < 10^3 steps")


# --- 2. multitape fidelity ----------------------------------------------

def test_criterion_2_single_tape_copier():
    started = time.monotonic()
    host = parse_tm((CORPUS / "copier.tm").read_text())
    flat = to_single_tape(host)
    n = 0
    for length in range(7):
        for w in itertools.product("ab", repeat=length):
            word = "".join(w)
            a = run(host, word, fuel=FUEL)
            b = run(flat, word, fuel=FUEL)
            assert a.tag == b.tag, word
            if a.tag == "Accept":
                segs = single_tape_segments(host, b.final)
                assert segs == [t.content() for t in a.final.tapes], word
            n += 1
    elapsed = time.monotonic() - started
    assert elapsed < 5.0
    _report(2, f"2-tape copier vs its single-tape squeeze: {n} inputs, "
               f"verdicts and tape contents agree in {elapsed:.2f}s")


# --- 3. NDTM simulation --------------------------------------------------

def _brute_force_accepts(m, word, depth):
    from churing.tm import initial_configuration
    level = [initial_configuration(m, [word])]
    for _ in range(depth):
        nxt = []
        for c in level:
            if c.state in m.accept:
                return True
            nxt.extend(successors(m, c))
        if not nxt:
            return any(c.state in m.accept for c in level)
        level = nxt
    return any(c.state in m.accept for c in level)


def test_criterion_3_ndtm_simulation():
    g = parse_tm((CORPUS / "contains11_guesser.tm").read_text())
    n = 0
    for length in range(6):
        for w in itertools.product("01", repeat=length):
            word = "".join(w)
            want = _brute_force_accepts(g, word, 12)
            got = nd_run(g, word, max_depth=12) == "Accept"
            assert got == want, word
            n += 1
    _report(3, f"nd_run vs brute-force branch enumeration (depth 12): "
               f"{n} inputs agree")


# --- 4. p.r.f. stdlib ----------------------------------------------------

def test_criterion_4_prf_stdlib():
    def is_prime(n):
        return n > 1 and all(n % d for d in range(2, n))

    oracles = {
        "add": lambda x, y: x + y, "mul": lambda x, y: x * y,
        "exp": lambda x, y: x ** y, "pred": lambda x: max(x - 1, 0),
        "monus": lambda x, y: max(x - y, 0), "absdiff": lambda x, y: abs(x - y),
        "sg": lambda x: int(x > 0), "eq": lambda x, y: int(x == y),
        "lt": lambda x, y: int(x < y),
        "divides": lambda d, m: int(m == 0 or (d != 0 and m % d == 0)),
        "prime": lambda x: int(is_prime(x)),
    }
    checked = 0
    for name, fn in oracles.items():
        e = stdlib(name)
        from churing.prf import arity_check
        k = arity_check(e)
        for pt in itertools.product(range(9), repeat=k):
            assert evaluate(e, list(pt), FUEL) == fn(*pt), (name, pt)
            checked += 1
    # bounded_mu vs linear scan over R(x, y) : y*y >= x
    from churing.prf import pnot
    sq = Compose(stdlib("mul"), (Proj(2, 2), Proj(2, 2)))
    bm = bounded_mu(pnot(Compose(stdlib("lt"), (sq, Proj(2, 1)))))
    for x in range(10):
        for n in range(6):
            want = next((y for y in range(n + 1) if y * y >= x), 0)
            assert evaluate(bm, [x, n], FUEL) == want, (x, n)
    # Ackermann: A(2,2) = 7 and the monotonicity triple on x <= 5, n <= 3
    assert ackermann(2, 2) == 7
    for n in range(4):
        for x in range(6):
            a = ackermann(x, n)
            assert a > x
            assert ackermann(x + 1, n) > a
            if n <= 2 or x <= 0:
                assert ackermann(x, n + 1) >= ackermann(x + 1, n)
    _report(4, f"stdlib vs big-integer oracles on [0..8]^k ({checked} points), "
               "bounded_mu vs linear scan, Ackermann triple and A(2,2)=7")


# --- 5. lambda core ------------------------------------------------------

def _closed_terms(size, binders=()):
    if size == 0:
        for b in binders:
            yield Var(b)
        return
    v = f"x{len(binders)}"
    for body in _closed_terms(size - 1, binders + (v,)):
        yield Abs(v, body)
    for ls in range(size):
        for fn in _closed_terms(ls, binders):
            for arg in _closed_terms(size - 1 - ls, binders):
                yield App(fn, arg)


def _one_step_results(t):
    out = []
    if isinstance(t, App):
        if isinstance(t.fn, Abs):
            out.append(substitute(t.fn.body, t.fn.param, t.arg))
        out.extend(App(f, t.arg) for f in _one_step_results(t.fn))
        out.extend(App(t.fn, a) for a in _one_step_results(t.arg))
    elif isinstance(t, Abs):
        out.extend(Abs(t.param, b) for b in _one_step_results(t.body))
    return out


def _nodes(t):
    stack, n = [t], 0
    while stack:
        x = stack.pop()
        n += 1
        if isinstance(x, App):
            stack += [x.fn, x.arg]
        elif isinstance(x, Abs):
            stack.append(x.body)
    return n


def _bounded_nf(t, fuel=1000, max_nodes=20_000):
    for _ in range(fuel):
        if is_normal_form(t):
            return t
        t = beta_step(t)
        if _nodes(t) > max_nodes:
            return None
    return None


def test_criterion_5_lambda_core():
    # confluence sampling: diverge on two distinct single contractions, then
    # re-normalize; every pair of normal forms must be alpha-equal
    pairs = 0
    for size in range(1, 8):
        for t in _closed_terms(size):
            succ1 = _one_step_results(t)
            if len(succ1) < 2:
                continue
            nfs = []
            for s in succ1[:3]:
                nf = _bounded_nf(s)
                if nf is not None:
                    nfs.append(nf)
            for a, b in itertools.combinations(nfs, 2):
                assert alpha_eq(a, b), t
                pairs += 1
    assert pairs > 4000
    # recursion/minimization gadget derivations all report Equal
    for g in "DQRTP":
        assert recursion_gadget_check(g)["all_equal"], g
    # fixed-point one-step law on 20 random closed F
    rng = random.Random(11)
    pool = [t for t in _closed_terms(4) if isinstance(t, Abs)]
    for f in rng.sample(pool, 20):
        x = fixed_point(f)
        assert beta_step(x) == App(f, x)
    _report(5, f"confluence holds on {pairs} divergence pairs (closed terms, "
               "size <= 7); D/Q/R/T/P gadgets Equal; fixed-point law x 20")


# --- 6. four-way equivalence --------------------------------------------

def test_criterion_6_four_way_equivalence():
    started = time.monotonic()
    oracles = {
        "succ": lambda x: x + 1, "add": lambda x, y: x + y,
        "mul": lambda x, y: x * y, "pred": lambda x: max(x - 1, 0),
        "monus": lambda x, y: max(x - y, 0),
    }
    from churing.prf import arity_check
    points = 0
    for name, fn in oracles.items():
        e = Compose(Succ(), (Proj(1, 1),)) if name == "succ" else stdlib(name)
        k = arity_check(e)
        machine, layout = compile_prf_to_tm(e)
        term = compile_prf_to_lambda(e)
        for pt in itertools.product(range(4), repeat=k):
            want = fn(*pt)
            assert evaluate(e, list(pt), FUEL) == want, (name, pt)
            got = run_numeric(machine, list(pt), FUEL,
                              output_tape=layout.output_tape)
            assert got == want, (name, pt, "tm")
            applied = term
            for a in pt:
                applied = App(applied, church_encode(a))
            r = normalize(applied, FUEL)
            assert r.normal and church_decode(r.term) == want, (name, pt, "lam")
            points += 1
    elapsed = time.monotonic() - started
    assert elapsed < 60.0
    _report(6, f"prf = compiled TM = compiled lambda on {points} grid points "
               f"in {elapsed:.1f}s, zero disagreements")


# --- 7. round trip --------------------------------------------------------

def test_criterion_7_round_trip():
    started = time.monotonic()
    machine, _ = compile_prf_to_tm(Succ())
    flat = to_single_tape(machine)
    back = compile_tm_to_prf(flat)
    for n in range(4):
        assert evaluate(back, [n], 10 ** 9) == n + 1, n
    elapsed = time.monotonic() - started
    assert elapsed < 120.0
    _report(7, "succ -> TM -> single tape -> p.r.f. -> eval gives n+1 "
               f"for n in 0..3 ({elapsed:.1f}s)")


# --- 8. lambda => TM machine suite ----------------------------------------

def test_criterion_8_reduction_machines():
    rng = random.Random(3)
    corpus, seen = [], set()
    for size in range(1, 7):
        corpus.extend(_closed_terms(size))
    rng.shuffle(corpus)
    picked = []
    for t in corpus:
        r = normalize(t, 1000)
        if r.normal:
            picked.append((t, r.term))
        if len(picked) == 50:
            break
    assert len(picked) == 50
    v_machine = build_machine("V")
    for t, nf in picked:
        assert alpha_eq(reduce_on_tm(t, fuel=1100), nf), t
        # NF machine agrees with the host predicate
        assert nf_on_tm(t) == is_normal_form(t), t
        # BR1 agrees with one host contraction
        f = freshen(t)
        assert alpha_eq(br1_on_tm(t), beta_step(f) or f), t
        # V machine lists exactly the wire's variables
        import re
        wire = render_term(t)
        out = run(v_machine, wire, fuel=FUEL)
        assert out.tag == "Accept"
        entries = [e for e in out.final.tapes[1].content().split("#") if e]
        assert set(entries) == {m.group(0)
                                for m in re.finditer(r"v\|+", wire)}, t
        assert len(entries) == len(set(entries))
    _report(8, "reduce_on_tm alpha-agrees with normalize on 50 terms; "
               "NF/V/BR1 machines match the host exactly")


# --- 9. divergence fidelity ------------------------------------------------

def test_criterion_9_divergence_fidelity():
    diverge = Mu(Compose(Succ(), (Zero(2),)))  # witness never appears
    with pytest.raises(FuelExhausted):
        evaluate(diverge, [0], 10 ** 4)
    machine, layout = compile_prf_to_tm(diverge)
    out = run_numeric(machine, [0], 10 ** 5, output_tape=layout.output_tape)
    assert getattr(out, "tag", None) == "FuelExhausted"
    term = compile_prf_to_lambda(diverge)
    r = normalize(App(term, church_encode(0)), 10 ** 4)
    assert not r.normal
    _report(9, "mu over a never-zero predicate exhausts fuel in all three "
               "models (never a value, never a reject-as-value)")


# --- 10. format round trips -------------------------------------------------

def test_criterion_10_format_round_trips():
    def as_dict(obj):
        return obj if isinstance(obj, dict) else {"": obj}

    tm_n = prf_n = lam_n = 0
    for p in sorted(CORPUS.glob("*.tm")):
        m = parse_tm(p.read_text())
        assert parse_tm(print_tm(m)) == m, p.name
        tm_n += 1
    for p in sorted(CORPUS.glob("*.prf")):
        d = parse_prf(p.read_text())
        d2 = parse_prf(print_prf(d))
        assert as_dict(d2) == as_dict(d), p.name
        prf_n += len(as_dict(d))
    for p in sorted(CORPUS.glob("*.lam")):
        d = as_dict(parse_lam(p.read_text()))
        d2 = as_dict(parse_lam(print_lam(parse_lam(p.read_text()))))
        assert list(d2) == list(d)
        for k in d:
            assert alpha_eq(d2[k], d[k]), (p.name, k)
        lam_n += len(d)
    assert tm_n >= 10 and prf_n >= 10 and lam_n >= 15
    _report(10, f"parse/print identity on the corpus: {tm_n} machines, "
                f"{prf_n} p.r.f. defs, {lam_n} lambda terms")
