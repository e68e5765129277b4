"""Lambda terms on Turing machines.

A lambda term travels between the host and a machine as a *wire*: a flat
string over the alphabet  {v, |, L, ., (, ), #, @, _}.  Variables are spelled
``v`` followed by one bar per index unit (``v||`` is variable 2), an
abstraction is ``(L<var>.<body>)``, an application is ``(<fn><arg>)``, ``#``
separates list entries, and ``@`` marks a context hole.

`build_machine` produces real multitape machines for six jobs:

    V    collect the variables of a term, deduplicated, in first-occurrence
         order (term on tape 1, ``#``-separated list on tape 2)
    CF   fill every hole of a context with a filler term
         (context tape 1, filler tape 2, result tape 3)
    CBV  change of bound variable: build context[(Ly.M[x:=y])]
         (x tape 1, y tape 2, context tape 3, body M tape 4, result tape 5)
    AE   compare two wires for literal equality, verdict 0/1 on tape 3
    NF   decide beta-normal-form by scanning for the redex signature ``((L``,
         verdict 0/1 on tape 2
    BR1  contract the leftmost redex once (input tape 1, result tape 5)

`reduce_on_tm` drives NF and BR1 in a loop, refreshing bound variables on the
host between machine runs so BR1's textual substitution is capture-free.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import FuelExhausted, ValidationError, WireParseError
from .lam import Abs, App, Hole, Term, Var, free_vars, fresh_name
from .tm import BLANK, MachineSpec, Outcome, make_machine, run

# Wire glyphs.  MARK is the rewind anchor planted at cell 0 of work tapes,
# DOT_V / DOT_P are "remembered position" variants of v and (.
VAR, BAR, LAM, DOT, LP, RP, SEP, HOLE_GLYPH = "v", "|", "L", ".", "(", ")", "#", "@"
WIRE_SYMBOLS = (VAR, BAR, LAM, DOT, LP, RP, SEP, HOLE_GLYPH)
MARK, DOT_V, DOT_P = "^", "w", "{"

TermWire = str


# ---------------------------------------------------------------------------
# Wire codec
# ---------------------------------------------------------------------------

def render_term(t: Term) -> TermWire:
    """Flatten a term to its wire string.

    Variables (free and bound alike) are numbered 1, 2, ... in order of first
    occurrence, so alpha-equal terms with identically named free variables
    render identically up to binder numbering.
    """
    wire, _ = render_with_names(t)
    return wire


def render_with_names(t: Term) -> Tuple[TermWire, Dict[int, str]]:
    """Render and also return the index -> variable-name assignment."""
    index: Dict[str, int] = {}
    out: List[str] = []

    def idx(name: str) -> int:
        if name not in index:
            index[name] = len(index) + 1
        return index[name]

    def go(t: Term) -> None:
        if isinstance(t, Var):
            out.append(VAR + BAR * idx(t.name))
        elif isinstance(t, Abs):
            out.append(LP + LAM + VAR + BAR * idx(t.param) + DOT)
            go(t.body)
            out.append(RP)
        elif isinstance(t, App):
            out.append(LP)
            go(t.fn)
            go(t.arg)
            out.append(RP)
        elif isinstance(t, Hole):
            out.append(HOLE_GLYPH)
        else:  # pragma: no cover
            raise ValidationError(f"cannot render {t!r}")

    go(t)
    return "".join(out), {i: name for name, i in index.items()}


def parse_wire(s: TermWire, names: Optional[Dict[int, str]] = None) -> Term:
    """Parse a wire string back into a term.

    Variable index i becomes ``names[i]`` when given, else ``x{i}``.
    """
    names = names or {}
    pos = 0

    def fail(msg: str) -> WireParseError:
        return WireParseError(msg, line=1, column=pos + 1)

    def peek() -> str:
        return s[pos] if pos < len(s) else ""

    def var_name() -> str:
        nonlocal pos
        pos += 1  # past 'v'
        n = 0
        while peek() == BAR:
            n += 1
            pos += 1
        if n == 0:
            raise fail("variable needs at least one bar")
        return names.get(n, f"x{n}")

    def term() -> Term:
        nonlocal pos
        c = peek()
        if c == VAR:
            return Var(var_name())
        if c == HOLE_GLYPH:
            pos += 1
            return Hole()
        if c != LP:
            raise fail(f"expected term, saw {c!r}" if c else "unexpected end of wire")
        pos += 1
        if peek() == LAM:
            pos += 1
            if peek() != VAR:
                raise fail("expected binder after L")
            param = var_name()
            if peek() != DOT:
                raise fail("expected '.' after binder")
            pos += 1
            body = term()
            if peek() != RP:
                raise fail("unclosed abstraction")
            pos += 1
            return Abs(param, body)
        fn = term()
        arg = term()
        if peek() != RP:
            raise fail("unclosed application")
        pos += 1
        return App(fn, arg)

    t = term()
    if pos != len(s):
        raise fail("trailing characters after term")
    return t


# ---------------------------------------------------------------------------
# Rule builder shared by the machine suite
# ---------------------------------------------------------------------------

@dataclass
class _Suite:
    """Accumulates sparse wildcard rules and assembles a MachineSpec."""

    tapes: int
    extra_symbols: Tuple[str, ...] = ()
    rules: List[tuple] = field(default_factory=list)

    def rule(self, state, reads: dict, nxt, writes: dict = None, moves: dict = None):
        """Add one rule; reads/writes/moves map 1-based tape -> symbol/move."""
        writes = writes or {}
        moves = moves or {}
        rd = tuple(reads.get(i, "*") for i in range(1, self.tapes + 1))
        wr = tuple(writes.get(i, "*") for i in range(1, self.tapes + 1))
        mv = tuple(moves.get(i, "S") for i in range(1, self.tapes + 1))
        self.rules.append((state, rd, nxt, wr, mv))

    def build(self, name: str, initial: str, accept) -> MachineSpec:
        alphabet = frozenset(WIRE_SYMBOLS) | frozenset(self.extra_symbols) | {BLANK}
        states = {initial, *accept}
        for state, _, nxt, _, _ in self.rules:
            states.add(state)
            states.add(nxt)
        return make_machine(
            name=name,
            states=states,
            rules=self.rules,
            initial=initial,
            accept=accept,
            tapes=self.tapes,
            input_alphabet=frozenset(WIRE_SYMBOLS),
            tape_alphabet=alphabet,
        )


# ---------------------------------------------------------------------------
# V: variable collection
# ---------------------------------------------------------------------------

def _v_machine() -> MachineSpec:
    b = _Suite(tapes=2, extra_symbols=(MARK, DOT_V))
    R, L = "R", "L"
    # init: anchor tape 2.
    b.rule("init", {}, "scan", writes={2: MARK}, moves={2: R})
    # scan tape 1 left to right; on a variable, mark it and compare with the
    # list; on blank, finish.
    b.rule("scan", {1: VAR}, "rw2", writes={1: DOT_V}, moves={1: R})
    b.rule("scan", {1: BLANK}, "fin")
    b.rule("scan", {}, "scan", moves={1: R})
    # rewind the list tape to its anchor.
    b.rule("rw2", {2: MARK}, "entry", moves={2: R})
    b.rule("rw2", {}, "rw2", moves={2: L})
    # entry: at the start of a list entry (or the blank past the last one).
    b.rule("entry", {2: VAR}, "cmp", moves={2: R})
    b.rule("entry", {2: BLANK}, "ap_rewind")
    # cmp: bars of the current variable vs bars of the entry.
    b.rule("cmp", {1: BAR, 2: BAR}, "cmp", moves={1: R, 2: R})
    b.rule("cmp", {1: BAR, 2: SEP}, "sk_rewind")   # entry shorter
    b.rule("cmp", {2: SEP}, "found")               # both ended: match
    b.rule("cmp", {2: BAR}, "sk_rewind")           # entry longer
    # mismatch: rewind tape 1 to the marked v, skip tape 2 to the next entry.
    b.rule("sk_rewind", {1: DOT_V}, "sk_next", moves={1: R})
    b.rule("sk_rewind", {}, "sk_rewind", moves={1: L})
    b.rule("sk_next", {2: SEP}, "entry", moves={2: R})
    b.rule("sk_next", {}, "sk_next", moves={2: R})
    # append: rewind tape 1, copy v + bars to the list, close with '#'.
    b.rule("ap_rewind", {1: DOT_V}, "ap_bars", writes={2: VAR}, moves={1: R, 2: R})
    b.rule("ap_rewind", {}, "ap_rewind", moves={1: L})
    b.rule("ap_bars", {1: BAR}, "ap_bars", writes={2: BAR}, moves={1: R, 2: R})
    b.rule("ap_bars", {}, "ap_close", writes={2: SEP}, moves={2: R})
    b.rule("ap_close", {1: DOT_V}, "scan", writes={1: VAR}, moves={1: R})
    b.rule("ap_close", {}, "ap_close", moves={1: L})
    # found: unmark and resume the scan.
    b.rule("found", {1: DOT_V}, "scan", writes={1: VAR}, moves={1: R})
    b.rule("found", {}, "found", moves={1: L})
    # finish: blank out the anchor so tape 2 holds exactly the list.
    b.rule("fin", {2: MARK}, "acc", writes={2: BLANK})
    b.rule("fin", {}, "fin", moves={2: L})
    return b.build("V", "init", ["acc"])


# ---------------------------------------------------------------------------
# CF: context filling
# ---------------------------------------------------------------------------

def _cf_machine() -> MachineSpec:
    b = _Suite(tapes=3, extra_symbols=(DOT_P, DOT_V))
    R, L = "R", "L"
    # init: dot the filler's first cell so it can be rewound (a term starts
    # with '(' or 'v').
    b.rule("init", {2: LP}, "scan", writes={2: DOT_P})
    b.rule("init", {2: VAR}, "scan", writes={2: DOT_V})
    # scan the context; plain symbols copy through, holes trigger a fill.
    b.rule("scan", {1: HOLE_GLYPH}, "fill")
    b.rule("scan", {1: BLANK}, "fin")
    for s in WIRE_SYMBOLS:
        if s != HOLE_GLYPH:
            b.rule("scan", {1: s}, "scan", writes={3: s}, moves={1: R, 3: R})
    # fill: copy the whole filler (undotting on the fly), then rewind it.
    b.rule("fill", {2: DOT_P}, "fill", writes={3: LP}, moves={2: R, 3: R})
    b.rule("fill", {2: DOT_V}, "fill", writes={3: VAR}, moves={2: R, 3: R})
    b.rule("fill", {2: BLANK}, "fill_rw")
    for s in WIRE_SYMBOLS:
        b.rule("fill", {2: s}, "fill", writes={3: s}, moves={2: R, 3: R})
    b.rule("fill_rw", {2: DOT_P}, "fill_done")
    b.rule("fill_rw", {2: DOT_V}, "fill_done")
    b.rule("fill_rw", {}, "fill_rw", moves={2: L})
    b.rule("fill_done", {}, "scan", moves={1: R})
    # finish: restore the filler's dotted first cell.
    b.rule("fin", {2: DOT_P}, "acc", writes={2: LP})
    b.rule("fin", {2: DOT_V}, "acc", writes={2: VAR})
    b.rule("fin", {}, "fin", moves={2: L})
    return b.build("CF", "init", ["acc"])


# ---------------------------------------------------------------------------
# CBV: change of bound variable
# ---------------------------------------------------------------------------

def _cbv_machine() -> MachineSpec:
    b = _Suite(tapes=5, extra_symbols=(DOT_V,))
    R, L = "R", "L"
    # init: dot the first cell of x and y (both are single variables).
    b.rule("i1", {1: VAR}, "i2", writes={1: DOT_V})
    b.rule("i2", {2: VAR}, "ctx", writes={2: DOT_V})
    # copy the context to the result; at the hole, emit "(Ly.M[x:=y])".
    b.rule("ctx", {3: HOLE_GLYPH}, "e_lam", writes={5: LP}, moves={5: R})
    b.rule("ctx", {3: BLANK}, "fin1")
    for s in WIRE_SYMBOLS:
        if s != HOLE_GLYPH:
            b.rule("ctx", {3: s}, "ctx", writes={5: s}, moves={3: R, 5: R})
    b.rule("e_lam", {}, "y_rw", writes={5: LAM}, moves={5: R})
    # emit y as the new binder.
    b.rule("y_rw", {2: DOT_V}, "y_bars", writes={5: VAR}, moves={2: R, 5: R})
    b.rule("y_rw", {}, "y_rw", moves={2: L})
    b.rule("y_bars", {2: BAR}, "y_bars", writes={5: BAR}, moves={2: R, 5: R})
    b.rule("y_bars", {2: BLANK}, "body", writes={5: DOT}, moves={5: R})
    # copy the body, replacing occurrences of x by y.
    b.rule("body", {4: VAR}, "x_rw", writes={4: DOT_V}, moves={4: R})
    b.rule("body", {4: BLANK}, "close", writes={5: RP}, moves={5: R})
    for s in WIRE_SYMBOLS:
        if s != VAR:
            b.rule("body", {4: s}, "body", writes={5: s}, moves={4: R, 5: R})
    # compare the marked body variable with x (tape 1).
    b.rule("x_rw", {1: DOT_V}, "x_cmp", moves={1: R})
    b.rule("x_rw", {}, "x_rw", moves={1: L})
    b.rule("x_cmp", {1: BAR, 4: BAR}, "x_cmp", moves={1: R, 4: R})
    b.rule("x_cmp", {1: BAR}, "mm_rw")      # x longer: mismatch
    b.rule("x_cmp", {4: BAR}, "mm_rw")      # x shorter: mismatch
    b.rule("x_cmp", {}, "sub_rw")           # both ended: substitute
    # substitute: emit y, then restore the body marker and skip its bars.
    b.rule("sub_rw", {2: DOT_V}, "sub_bars", writes={5: VAR}, moves={2: R, 5: R})
    b.rule("sub_rw", {}, "sub_rw", moves={2: L})
    b.rule("sub_bars", {2: BAR}, "sub_bars", writes={5: BAR}, moves={2: R, 5: R})
    b.rule("sub_bars", {2: BLANK}, "m_restore")
    b.rule("m_restore", {4: DOT_V}, "m_skip", writes={4: VAR}, moves={4: R})
    b.rule("m_restore", {}, "m_restore", moves={4: L})
    b.rule("m_skip", {4: BAR}, "m_skip", moves={4: R})
    b.rule("m_skip", {}, "body")
    # mismatch: copy the body variable through unchanged.
    b.rule("mm_rw", {4: DOT_V}, "mm_bars", writes={4: VAR, 5: VAR}, moves={4: R, 5: R})
    b.rule("mm_rw", {}, "mm_rw", moves={4: L})
    b.rule("mm_bars", {4: BAR}, "mm_bars", writes={5: BAR}, moves={4: R, 5: R})
    b.rule("mm_bars", {}, "body")
    # after the body: ')' was emitted by "close"; resume the context.
    b.rule("close", {}, "ctx", moves={3: R})
    # finish: restore the dots on x and y.
    b.rule("fin1", {1: DOT_V}, "fin2", writes={1: VAR})
    b.rule("fin1", {}, "fin1", moves={1: L})
    b.rule("fin2", {2: DOT_V}, "acc", writes={2: VAR})
    b.rule("fin2", {}, "fin2", moves={2: L})
    return b.build("CBV", "i1", ["acc"])


# ---------------------------------------------------------------------------
# AE: literal wire equality
# ---------------------------------------------------------------------------

def _ae_machine() -> MachineSpec:
    # render_with_names numbers binders canonically, so literal equality of
    # rendered wires decides alpha-equivalence of the underlying terms.
    b = _Suite(tapes=3)
    for s in WIRE_SYMBOLS:
        b.rule("a0", {1: s, 2: s}, "a0", moves={1: "R", 2: "R"})
    b.rule("a0", {1: BLANK, 2: BLANK}, "acc", writes={3: "1"})
    b.rule("a0", {}, "acc", writes={3: "0"})
    b.extra_symbols = ("0", "1")
    return b.build("AE", "a0", ["acc"])


# ---------------------------------------------------------------------------
# NF: normal-form test
# ---------------------------------------------------------------------------

def _nf_machine() -> MachineSpec:
    # A wire contains a redex iff it contains the substring "((L".
    b = _Suite(tapes=2, extra_symbols=("0", "1"))
    R = "R"
    for state, on_lp in (("n0", "n1"), ("n1", "n2"), ("n2", "n2")):
        b.rule(state, {1: LP}, on_lp, moves={1: R})
        b.rule(state, {1: BLANK}, "acc", writes={2: "1"})
        b.rule(state, {}, "n0", moves={1: R})
    b.rule("n2", {1: LAM}, "acc", writes={2: "0"})
    return b.build("NF", "n0", ["acc"])


# ---------------------------------------------------------------------------
# BR1: one leftmost contraction
# ---------------------------------------------------------------------------

def _br1_machine() -> MachineSpec:
    """Contract the leftmost redex of the wire on tape 1.

    Tapes: 1 input, 2 function body with holes for the bound variable,
    3 argument, 4 binder bars, 5 result, 6 unary parenthesis-depth counter.
    The input must have all-distinct binders disjoint from its free
    variables; the host freshening pass in reduce_on_tm guarantees that.
    """
    b = _Suite(tapes=6, extra_symbols=(MARK, DOT_V))
    R, L = "R", "L"
    b.rule("init", {}, "s0",
           writes={i: MARK for i in (2, 3, 4, 5, 6)},
           moves={i: R for i in (2, 3, 4, 5, 6)})
    # -- search for "((L", copying the prefix to the result tape --
    for state, on_lp in (("s0", "s1"), ("s1", "s2"), ("s2", "s2")):
        b.rule(state, {1: LP}, on_lp, writes={5: LP}, moves={1: R, 5: R})
        b.rule(state, {1: BLANK}, "fin")  # no redex: result = input
        for s in WIRE_SYMBOLS:
            if s != LP and not (state == "s2" and s == LAM):
                b.rule(state, {1: s}, "s0", writes={5: s}, moves={1: R, 5: R})
    # found "((L": take back the two copied parens, then read the binder.
    b.rule("s2", {1: LAM}, "e1", moves={1: R})
    b.rule("e1", {}, "e2", moves={5: L})
    b.rule("e2", {}, "e3", writes={5: BLANK}, moves={5: L})
    b.rule("e3", {}, "bx", writes={5: BLANK})
    b.rule("bx", {1: VAR}, "bbars", moves={1: R})
    b.rule("bbars", {1: BAR}, "bbars", writes={4: BAR}, moves={1: R, 4: R})
    b.rule("bbars", {1: DOT}, "mcopy", moves={1: R})
    # -- copy the body M to tape 2, holing out the bound variable --
    b.rule("mcopy", {1: LP}, "mcopy", writes={2: LP, 6: BAR},
           moves={1: R, 2: R, 6: R})
    b.rule("mcopy", {1: RP}, "m_pop", moves={6: L})
    b.rule("m_pop", {6: BAR}, "mcopy", writes={2: RP, 6: BLANK}, moves={1: R, 2: R})
    b.rule("m_pop", {6: MARK}, "narg", moves={1: R, 6: R})  # ')' closed (Lx.M
    b.rule("mcopy", {1: VAR}, "v_rw", writes={1: DOT_V}, moves={1: R})
    for s in (LAM, DOT):
        b.rule("mcopy", {1: s}, "mcopy", writes={2: s}, moves={1: R, 2: R})
    # compare the marked variable with the binder on tape 4.
    b.rule("v_rw", {4: MARK}, "v_cmp", moves={4: R})
    b.rule("v_rw", {}, "v_rw", moves={4: L})
    b.rule("v_cmp", {1: BAR, 4: BAR}, "v_cmp", moves={1: R, 4: R})
    b.rule("v_cmp", {1: BAR}, "v_mm")
    b.rule("v_cmp", {4: BAR}, "v_mm")
    b.rule("v_cmp", {}, "mcopy", writes={2: HOLE_GLYPH}, moves={2: R})
    b.rule("v_mm", {1: DOT_V}, "v_mmb", writes={1: VAR, 2: VAR}, moves={1: R, 2: R})
    b.rule("v_mm", {}, "v_mm", moves={1: L})
    b.rule("v_mmb", {1: BAR}, "v_mmb", writes={2: BAR}, moves={1: R, 2: R})
    b.rule("v_mmb", {}, "mcopy")
    # -- copy the argument N to tape 3 --
    b.rule("narg", {1: VAR}, "n_var", writes={3: VAR}, moves={1: R, 3: R})
    b.rule("n_var", {1: BAR}, "n_var", writes={3: BAR}, moves={1: R, 3: R})
    b.rule("n_var", {}, "n_end")
    b.rule("narg", {1: LP}, "n_deep", writes={3: LP, 6: BAR},
           moves={1: R, 3: R, 6: R})
    b.rule("n_deep", {1: LP}, "n_deep", writes={3: LP, 6: BAR},
           moves={1: R, 3: R, 6: R})
    b.rule("n_deep", {1: RP}, "n_pop", moves={6: L})
    b.rule("n_pop", {6: BAR}, "n_chk", writes={3: RP, 6: BLANK}, moves={1: R, 3: R})
    b.rule("n_chk", {}, "n_chk2", moves={6: L})
    b.rule("n_chk2", {6: MARK}, "n_end", moves={6: R})
    b.rule("n_chk2", {6: BAR}, "n_deep", moves={6: R})
    for s in (VAR, BAR, LAM, DOT):
        b.rule("n_deep", {1: s}, "n_deep", writes={3: s}, moves={1: R, 3: R})
    # n_end: tape 1 sits on the ')' that closes the redex; skip it.
    b.rule("n_end", {1: RP}, "f_rw2", moves={1: R})
    # -- fill: result += M with each hole replaced by N --
    b.rule("f_rw2", {2: MARK}, "fill", moves={2: R})
    b.rule("f_rw2", {}, "f_rw2", moves={2: L})
    b.rule("fill", {2: HOLE_GLYPH}, "f_rw3")
    b.rule("fill", {2: BLANK}, "sfx")
    for s in WIRE_SYMBOLS:
        if s != HOLE_GLYPH:
            b.rule("fill", {2: s}, "fill", writes={5: s}, moves={2: R, 5: R})
    b.rule("f_rw3", {3: MARK}, "f_arg", moves={3: R})
    b.rule("f_rw3", {}, "f_rw3", moves={3: L})
    b.rule("f_arg", {3: BLANK}, "fill", moves={2: R})
    for s in WIRE_SYMBOLS:
        b.rule("f_arg", {3: s}, "f_arg", writes={5: s}, moves={3: R, 5: R})
    # -- copy the rest of the input, then clear the result anchor --
    b.rule("sfx", {1: BLANK}, "fin")
    for s in WIRE_SYMBOLS:
        b.rule("sfx", {1: s}, "sfx", writes={5: s}, moves={1: R, 5: R})
    b.rule("fin", {5: MARK}, "acc", writes={5: BLANK})
    b.rule("fin", {}, "fin", moves={5: L})
    return b.build("BR1", "init", ["acc"])


_BUILDERS = {
    "V": _v_machine,
    "CF": _cf_machine,
    "CBV": _cbv_machine,
    "AE": _ae_machine,
    "NF": _nf_machine,
    "BR1": _br1_machine,
}


def build_machine(name: str) -> MachineSpec:
    """Machine suite entry point; name is one of V, CF, CBV, AE, NF, BR1."""
    if name not in _BUILDERS:
        raise ValidationError(f"unknown machine {name!r}; choose from {sorted(_BUILDERS)}")
    return _BUILDERS[name]()


# ---------------------------------------------------------------------------
# Driving the machines from the host
# ---------------------------------------------------------------------------

def freshen(t: Term) -> Term:
    """Rename every binder to a globally fresh name.

    Afterwards the bound variables are all distinct and disjoint from the
    free variables, which is what BR1's textual substitution requires.
    """
    avoid = set(free_vars(t))

    def go(t: Term, env: dict) -> Term:
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, App):
            return App(go(t.fn, env), go(t.arg, env))
        if isinstance(t, Abs):
            nb = fresh_name("b", avoid)
            avoid.add(nb)
            env2 = dict(env)
            env2[t.param] = nb
            return Abs(nb, go(t.body, env2))
        return t

    return go(t, {})


def _run_wire(spec: MachineSpec, word: str, fuel: int) -> Outcome:
    out = run(spec, word, fuel=fuel)
    if out.tag != "Accept":
        if out.tag == "FuelExhausted":
            raise FuelExhausted(f"{spec.name} machine ran out of fuel")
        raise ValidationError(f"{spec.name} machine rejected wire {word!r}")
    return out


def nf_on_tm(t: Term, fuel: int = 1_000_000) -> bool:
    """Normal-form verdict of the NF machine for t."""
    out = _run_wire(build_machine("NF"), render_term(t), fuel)
    return out.final.tapes[1].content() == "1"


def br1_on_tm(t: Term, fuel: int = 1_000_000) -> Term:
    """One leftmost contraction of t, computed by the BR1 machine.

    t is freshened first; the result is alpha-equal to beta_step(t) when t
    has a redex, and alpha-equal to t otherwise.
    """
    wire, names = render_with_names(freshen(t))
    out = _run_wire(build_machine("BR1"), wire, fuel)
    return parse_wire(out.final.tapes[4].content(), names)


def reduce_on_tm(t: Term, fuel: int = 200,
                 machine_fuel: int = 2_000_000) -> Term:
    """Normalize t by iterating the NF and BR1 machines.

    Each round freshens the binders on the host, asks NF whether the wire is
    normal, and if not lets BR1 contract the leftmost redex.  fuel bounds the
    number of contractions; exceeding it raises FuelExhausted.
    """
    nfm = build_machine("NF")
    br = build_machine("BR1")
    cur = t
    for _ in range(fuel + 1):
        cur = freshen(cur)
        wire, names = render_with_names(cur)
        out = _run_wire(nfm, wire, machine_fuel)
        if out.final.tapes[1].content() == "1":
            return cur
        out = _run_wire(br, wire, machine_fuel)
        cur = parse_wire(out.final.tapes[4].content(), names)
    raise FuelExhausted(f"no beta-normal form within {fuel} contractions")
