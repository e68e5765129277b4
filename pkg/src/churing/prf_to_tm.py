"""Compile partial recursive expressions into multitape Turing machines.

Conventions (shared with tm.run_numeric): argument i sits in unary on tape
i starting at cell 1, cell 0 stays blank; the result appears on the output
tape; accepting runs leave every head on cell 1.

Machines mark cell 0 of every tape with `^` at startup so heads can rewind
by scanning left for the marker; the markers are erased again just before
accepting.  The one exception is the standalone successor machine, which
is a single tape over {0,1,_} (the shape the machine-to-function
translator requires).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ValidationError
from .prf import Compose, Mu, PrfExpr, PrimRec, Proj, Succ, Zero, arity_check, expand
from .tm import BLANK, WILD, MachineSpec, validate_machine

MARK = "^"
MAX_TAPES = 16


@dataclass(frozen=True)
class NumericLayout:
    arity: int
    argument_tapes: Tuple[int, ...]
    output_tape: int
    scratch_tapes: Tuple[int, ...]


# ---------------------------------------------------------------------------
# Rule builder over sparse per-tape actions


class _Builder:
    def __init__(self):
        self.rules: List[tuple] = []  # (state, reads, nxt, writes, moves) sparse dicts
        self.n = 0
        self.max_tape = 0

    def fresh(self) -> str:
        self.n += 1
        return f"g{self.n}"

    def note_tape(self, *ts: int):
        for t in ts:
            self.max_tape = max(self.max_tape, t)

    def rule(self, state, reads: dict, nxt, writes: dict = None, moves: dict = None):
        self.rules.append((state, dict(reads), nxt, dict(writes or {}), dict(moves or {})))

    # -- gadgets; each wires entry -> exit and keeps heads at cell 1 --------

    def rewind(self, t: int, entry: str, exit_: str):
        self.note_tape(t)
        self.rule(entry, {t: MARK}, exit_, {}, {t: "R"})
        self.rule(entry, {}, entry, {}, {t: "L"})

    def erase(self, t: int, entry: str, exit_: str):
        sweep, back = self.fresh(), self.fresh()
        self.rewind(t, entry, sweep)
        for s in ("0", "1"):
            self.rule(sweep, {t: s}, sweep, {t: BLANK}, {t: "R"})
        self.rule(sweep, {t: BLANK}, back, {}, {})
        self.rewind(t, back, exit_)

    def write_zero(self, t: int, entry: str, exit_: str):
        put = self.fresh()
        self.erase(t, entry, put)
        self.rule(put, {t: BLANK}, exit_, {t: "0"}, {})

    def append_one(self, t: int, entry: str, exit_: str):
        look, scan, back = self.fresh(), self.fresh(), self.fresh()
        self.rewind(t, entry, look)
        self.rule(look, {t: "0"}, exit_, {t: "1"}, {})
        self.rule(look, {t: BLANK}, exit_, {t: "1"}, {})
        self.rule(look, {t: "1"}, scan, {}, {t: "R"})
        self.rule(scan, {t: "1"}, scan, {}, {t: "R"})
        self.rule(scan, {t: BLANK}, back, {t: "1"}, {})
        self.rewind(t, back, exit_)

    def copy(self, src: int, dst: int, entry: str, exit_: str):
        pre, loop, back1, back2 = (self.fresh() for _ in range(4))
        self.erase(dst, entry, pre)
        self.rewind(src, pre, loop)
        for s in ("0", "1"):
            self.rule(loop, {src: s}, loop, {dst: s}, {src: "R", dst: "R"})
        self.rule(loop, {src: BLANK}, back1, {}, {})
        self.rewind(src, back1, back2)
        self.rewind(dst, back2, exit_)

    def equal(self, a: int, b: int, entry: str, eq_exit: str, ne_exit: str):
        cmp_, ready = self.fresh(), self.fresh()
        self.rewind(a, entry, ready)
        self.rewind(b, ready, cmp_)
        eq1, eq2 = self.fresh(), self.fresh()
        ne1, ne2 = self.fresh(), self.fresh()
        self.rule(cmp_, {a: "1", b: "1"}, cmp_, {}, {a: "R", b: "R"})
        for ra, rb in [("0", "0"), (BLANK, BLANK)]:
            self.rule(cmp_, {a: ra, b: rb}, eq1, {}, {})
        for ra, rb in [("0", "1"), ("1", "0"), ("0", BLANK), (BLANK, "0"),
                       ("1", BLANK), (BLANK, "1")]:
            self.rule(cmp_, {a: ra, b: rb}, ne1, {}, {})
        self.rewind(a, eq1, eq2)
        self.rewind(b, eq2, eq_exit)
        self.rewind(a, ne1, ne2)
        self.rewind(b, ne2, ne_exit)

    def is_zero(self, t: int, entry: str, zero_exit: str, nonzero_exit: str):
        look = self.fresh()
        self.rewind(t, entry, look)
        self.rule(look, {t: "0"}, zero_exit, {}, {})
        self.rule(look, {t: "1"}, nonzero_exit, {}, {})


class _Alloc:
    """Stack-discipline scratch tape allocator."""

    def __init__(self, first: int):
        self.next = first
        self.high = first - 1

    def take(self, n: int) -> List[int]:
        out = list(range(self.next, self.next + n))
        self.next += n
        self.high = max(self.high, self.next - 1)
        if self.high > MAX_TAPES:
            raise ValidationError(
                f"expression needs more than {MAX_TAPES} tapes; too deep to compile"
            )
        return out

    def release(self, n: int):
        self.next -= n


# ---------------------------------------------------------------------------


def _emit(b: _Builder, alloc: _Alloc, e: PrfExpr, args: Sequence[int], out: int,
          entry: str, exit_: str):
    """States computing e(args) onto tape `out`; argument tapes are read-only;
    all touched heads are back on cell 1 at `exit_`."""
    if isinstance(e, Zero):
        b.write_zero(out, entry, exit_)
        return
    if isinstance(e, Succ):
        mid = b.fresh()
        b.copy(args[0], out, entry, mid)
        b.append_one(out, mid, exit_)
        return
    if isinstance(e, Proj):
        b.copy(args[e.i - 1], out, entry, exit_)
        return
    if isinstance(e, Compose):
        l = len(e.hs)
        stage = alloc.take(l)
        cur = entry
        for h, t in zip(e.hs, stage):
            nxt = b.fresh()
            _emit(b, alloc, h, args, t, cur, nxt)
            cur = nxt
        _emit(b, alloc, e.g, stage, out, cur, exit_)
        alloc.release(l)
        return
    if isinstance(e, PrimRec):
        xs, m = list(args[:-1]), args[-1]
        c, a = alloc.take(2)
        s1 = b.fresh()
        _emit(b, alloc, e.g, xs, a, entry, s1)  # acc := g(x)
        top = b.fresh()
        b.write_zero(c, s1, top)  # counter := 0
        # loop: counter == m ? finish : acc := h(x, counter, acc); counter++
        body, done = b.fresh(), b.fresh()
        b.equal(c, m, top, done, body)
        s2, s3 = b.fresh(), b.fresh()
        _emit(b, alloc, e.h, xs + [c, a], out, body, s2)  # out used as staging
        b.copy(out, a, s2, s3)
        b.append_one(c, s3, top)
        b.copy(a, out, done, exit_)
        alloc.release(2)
        return
    if isinstance(e, Mu):
        (y,) = alloc.take(1)
        top = b.fresh()
        b.write_zero(y, entry, top)
        check, bump, found = b.fresh(), b.fresh(), b.fresh()
        _emit(b, alloc, e.g, list(args) + [y], out, top, check)
        b.is_zero(out, check, found, bump)
        b.append_one(y, bump, top)
        b.copy(y, out, found, exit_)
        alloc.release(1)
        return
    raise ValidationError(f"cannot compile node {e!r}")


def compile_prf_to_tm(e: PrfExpr) -> Tuple[MachineSpec, NumericLayout]:
    e = expand(e)
    k = arity_check(e)
    if isinstance(e, Succ):
        return succ_machine(), NumericLayout(1, (1,), 1, ())
    if isinstance(e, Zero):
        return _zero_machine(e.k), NumericLayout(k, tuple(range(1, k + 1)), k + 1, ())

    b = _Builder()
    out = k + 1
    b.note_tape(out)
    alloc = _Alloc(k + 2)
    body_entry, body_exit = "g_body", "g_done"
    _emit(b, alloc, e, list(range(1, k + 1)), out, body_entry, body_exit)
    tapes = max(b.max_tape, out)
    return _assemble(b, tapes, k, out, body_entry, body_exit, f"prf_{_describe(e)}")


def _zero_machine(k: int) -> MachineSpec:
    """Minimal machine for a bare constant-zero function: heads never move,
    a single write of "0" on the (virgin) output tape suffices."""
    out = k + 1
    reads = tuple(WILD if t != out else BLANK for t in range(1, out + 1))
    writes = tuple(WILD if t != out else "0" for t in range(1, out + 1))
    stays = ("S",) * out
    return validate_machine(MachineSpec(
        name=f"prf_zero{k}",
        states=frozenset({"s0", "acc"}),
        initial="s0",
        accept=frozenset({"acc"}),
        input_alphabet=frozenset({"0", "1"}),
        tape_alphabet=frozenset({"0", "1", BLANK}),
        tapes=out,
        delta={("s0", reads): (("acc", writes, stays),)},
    ))


def _assemble(b: _Builder, tapes: int, k: int, out: int, body_entry: str,
              body_exit: str, name: str) -> Tuple[MachineSpec, NumericLayout]:
    # init: step every head to cell 0, plant markers, step back
    init_rules = [
        ("i0", {}, "i1", {}, {t: "L" for t in range(1, tapes + 1)}),
        ("i1", {}, body_entry, {t: MARK for t in range(1, tapes + 1)},
         {t: "R" for t in range(1, tapes + 1)}),
    ]
    # finish: rewind everything, erase the markers, accept
    fin_rules = []
    cur = body_exit
    for t in range(1, tapes + 1):
        nxt = f"f_rw{t}"
        fin_rules.append((cur, {t: MARK}, nxt, {}, {t: "R"}))
        fin_rules.append((cur, {}, cur, {}, {t: "L"}))
        cur = nxt
    fin_rules.append((cur, {}, "f_mark", {}, {t: "L" for t in range(1, tapes + 1)}))
    fin_rules.append(
        ("f_mark", {}, "acc", {t: BLANK for t in range(1, tapes + 1)},
         {t: "R" for t in range(1, tapes + 1)})
    )

    def full(d: dict, default: str) -> Tuple[str, ...]:
        return tuple(d.get(t, default) for t in range(1, tapes + 1))

    flat = []
    states = {"acc"}
    for state, reads, nxt, writes, moves in init_rules + b.rules + fin_rules:
        flat.append((state, full(reads, WILD), nxt, full(writes, WILD), full(moves, "S")))
        states.add(state)
        states.add(nxt)
    delta: Dict = {}
    for s, r, n, w, mv in flat:
        delta.setdefault((s, r), []).append((n, w, mv))
    spec = MachineSpec(
        name=name,
        states=frozenset(states),
        initial="i0",
        accept=frozenset({"acc"}),
        input_alphabet=frozenset({"0", "1"}),
        tape_alphabet=frozenset({"0", "1", MARK, BLANK}),
        tapes=tapes,
        delta={kk: tuple(v) for kk, v in delta.items()},
    )
    layout = NumericLayout(
        arity=k,
        argument_tapes=tuple(range(1, k + 1)),
        output_tape=out,
        scratch_tapes=tuple(range(k + 2, tapes + 1)),
    )
    return validate_machine(spec), layout


def succ_machine() -> MachineSpec:
    """Successor on a single tape over {0,1,_}: flip a lone 0 to 1, else
    append a 1 to the block of ones; halt with the head back on cell 1."""
    return validate_machine(MachineSpec(
        name="succ",
        states=frozenset({"s0", "s1", "s2", "acc"}),
        initial="s0",
        accept=frozenset({"acc"}),
        input_alphabet=frozenset({"0", "1"}),
        tape_alphabet=frozenset({"0", "1", BLANK}),
        tapes=1,
        delta={
            ("s0", ("0",)): ((("acc", ("1",), ("S",))),),
            ("s0", (BLANK,)): ((("acc", ("1",), ("S",))),),
            ("s0", ("1",)): ((("s1", ("1",), ("R",))),),
            ("s1", ("1",)): ((("s1", ("1",), ("R",))),),
            ("s1", (BLANK,)): ((("s2", ("1",), ("L",))),),
            ("s2", ("1",)): ((("s2", ("1",), ("L",))),),
            ("s2", (BLANK,)): ((("acc", (BLANK,), ("R",))),),
        },
    ))


def _describe(e: PrfExpr) -> str:
    if isinstance(e, Zero):
        return f"zero{e.k}"
    if isinstance(e, Succ):
        return "succ"
    if isinstance(e, Proj):
        return f"proj{e.k}_{e.i}"
    if isinstance(e, Compose):
        return "compose"
    if isinstance(e, PrimRec):
        return "primrec"
    if isinstance(e, Mu):
        return "mu"
    return "expr"


def layout_report(machine: MachineSpec, layout: NumericLayout) -> str:
    lines = [
        f"machine {machine.name}: {len(machine.states)} states, "
        f"{machine.tapes} tapes, {len(machine.delta)} transition entries",
        f"  arity:          {layout.arity}",
        f"  argument tapes: {', '.join(map(str, layout.argument_tapes)) or 'none'}",
        f"  output tape:    {layout.output_tape}",
        f"  scratch tapes:  {', '.join(map(str, layout.scratch_tapes)) or 'none'}",
    ]
    return "\n".join(lines)
