"""Turing machines: multitape specs, fuel-bounded execution, traces.

Symbols are single printable characters; `_` is the blank.  Transition
tables are sparse: a read position may be the wildcard `*` (matches any
symbol), a write position may be `*` (leave the scanned symbol alone),
and moves are L, R or S (stay).  When several entries match a scanned
vector the most specific one (fewest wildcards) wins.

Tape modes: ``semi_infinite`` protects cell 0 (an L move there is a stuck
halt), ``two_way`` allows negative cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import FuelExhausted, NonEncodable, ValidationError

BLANK = "_"
WILD = "*"
MOVES = ("L", "R", "S")

SEMI_INFINITE = "semi_infinite"
TWO_WAY = "two_way"

# (next_state, writes, moves)
Target = Tuple[str, Tuple[str, ...], Tuple[str, ...]]


# ---------------------------------------------------------------------------
# Tapes and configurations


@dataclass(frozen=True)
class Tape:
    """One tape as an explicit window of cells, blanks beyond.

    ``cells[i]`` is the symbol at absolute position ``origin + i``; the
    window is kept canonical (no leading/trailing blanks) so equal tape
    contents compare equal.
    """

    origin: int = 0
    cells: str = ""

    @staticmethod
    def from_word(word: str, origin: int = 0) -> "Tape":
        return _canon_tape(origin, word)

    def read(self, pos: int) -> str:
        i = pos - self.origin
        if 0 <= i < len(self.cells):
            return self.cells[i]
        return BLANK

    def write(self, pos: int, sym: str) -> "Tape":
        i = pos - self.origin
        if 0 <= i < len(self.cells):
            return _canon_tape(self.origin, self.cells[:i] + sym + self.cells[i + 1 :])
        if i < 0:
            return _canon_tape(pos, sym + BLANK * (-i - 1) + self.cells)
        return _canon_tape(self.origin, self.cells + BLANK * (i - len(self.cells)) + sym)

    def content(self) -> str:
        """The canonical window (blanks trimmed at both ends)."""
        return self.cells


def _canon_tape(origin: int, cells: str) -> Tape:
    left = len(cells) - len(cells.lstrip(BLANK))
    cells = cells.strip(BLANK)
    if not cells:
        return Tape(0, "")
    return Tape(origin + left, cells)


@dataclass(frozen=True)
class Configuration:
    state: str
    tapes: Tuple[Tape, ...]
    heads: Tuple[int, ...]
    steps_taken: int = 0

    def scanned(self) -> Tuple[str, ...]:
        return tuple(t.read(h) for t, h in zip(self.tapes, self.heads))


@dataclass(frozen=True)
class Outcome:
    tag: str  # "Accept" | "Reject" | "FuelExhausted"
    final: Configuration
    trace: Optional[Tuple[Configuration, ...]] = None

    @property
    def accepted(self) -> bool:
        return self.tag == ACCEPT


ACCEPT = "Accept"
REJECT = "Reject"
FUEL_EXHAUSTED = "FuelExhausted"


# ---------------------------------------------------------------------------
# Machine specs


@dataclass(frozen=True)
class MachineSpec:
    name: str
    states: frozenset
    initial: str
    accept: frozenset
    input_alphabet: frozenset
    tape_alphabet: frozenset
    tapes: int
    delta: Dict[Tuple[str, Tuple[str, ...]], Tuple[Target, ...]]
    tape_mode: str = SEMI_INFINITE
    deterministic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "accept", frozenset(self.accept))
        object.__setattr__(self, "input_alphabet", frozenset(self.input_alphabet))
        object.__setattr__(self, "tape_alphabet", frozenset(self.tape_alphabet))


def make_machine(
    name: str,
    states: Iterable[str],
    initial: str,
    accept: Iterable[str],
    input_alphabet: Iterable[str],
    tape_alphabet: Iterable[str],
    tapes: int,
    rules: Iterable[tuple],
    tape_mode: str = SEMI_INFINITE,
) -> MachineSpec:
    """Build and validate a machine from flat rules.

    Each rule is (state, reads, next_state, writes, moves); for a 1-tape
    machine the vectors may be given as plain strings of length 1.
    """
    delta: Dict[Tuple[str, Tuple[str, ...]], List[Target]] = {}
    for state, reads, nxt, writes, moves in rules:
        reads_t = _vec(reads, tapes)
        writes_t = _vec(writes, tapes)
        moves_t = _vec(moves, tapes)
        delta.setdefault((state, reads_t), []).append((nxt, writes_t, moves_t))
    spec = MachineSpec(
        name=name,
        states=frozenset(states),
        initial=initial,
        accept=frozenset(accept),
        input_alphabet=frozenset(input_alphabet),
        tape_alphabet=frozenset(tape_alphabet),
        tapes=tapes,
        delta={k: tuple(v) for k, v in delta.items()},
        tape_mode=tape_mode,
    )
    return validate_machine(spec)


def _vec(v, k: int) -> Tuple[str, ...]:
    if isinstance(v, str):
        t = tuple(v)
    else:
        t = tuple(v)
    if len(t) != k:
        raise ValidationError(f"vector {v!r} has length {len(t)}, machine has {k} tapes")
    return t


def validate_machine(spec: MachineSpec) -> MachineSpec:
    """Check every MachineSpec invariant; classify det/nondet."""
    if spec.tapes < 1:
        raise ValidationError("machine needs at least one tape")
    if spec.tape_mode not in (SEMI_INFINITE, TWO_WAY):
        raise ValidationError(f"unknown tape mode {spec.tape_mode!r}")
    if not spec.input_alphabet <= spec.tape_alphabet:
        raise ValidationError("input alphabet must be a subset of the tape alphabet")
    if BLANK not in spec.tape_alphabet:
        raise ValidationError("blank symbol missing from tape alphabet")
    if BLANK in spec.input_alphabet:
        raise ValidationError("blank symbol may not appear in the input alphabet")
    if WILD in spec.tape_alphabet:
        raise ValidationError("'*' is reserved and may not be a tape symbol")
    for s in spec.tape_alphabet:
        if len(s) != 1:
            raise ValidationError(f"symbols are single characters, got {s!r}")
    if spec.initial not in spec.states:
        raise ValidationError(f"initial state {spec.initial!r} not declared")
    if not spec.accept <= spec.states:
        raise ValidationError("accept states must be declared states")
    deterministic = True
    for (state, reads), targets in spec.delta.items():
        if state not in spec.states:
            raise ValidationError(f"transition from undeclared state {state!r}")
        if len(reads) != spec.tapes:
            raise ValidationError(f"read vector {reads!r} does not match tape count")
        for r in reads:
            if r != WILD and r not in spec.tape_alphabet:
                raise ValidationError(f"read symbol {r!r} outside tape alphabet")
        if len(targets) > 1:
            deterministic = False
        for nxt, writes, moves in targets:
            if nxt not in spec.states:
                raise ValidationError(f"transition into undeclared state {nxt!r}")
            if len(writes) != spec.tapes or len(moves) != spec.tapes:
                raise ValidationError("write/move vectors must match tape count")
            for w in writes:
                if w != WILD and w not in spec.tape_alphabet:
                    raise ValidationError(f"write symbol {w!r} outside tape alphabet")
            for mv in moves:
                if mv not in MOVES:
                    raise ValidationError(f"move {mv!r} is not one of {MOVES}")
    return replace(spec, deterministic=deterministic)


# ---------------------------------------------------------------------------
# Execution


def _by_state(spec: MachineSpec):
    """Delta entries grouped by source state (cached on the spec)."""
    cached = getattr(spec, "_state_index", None)
    if cached is None:
        cached = {}
        for (s, reads), targets in spec.delta.items():
            cached.setdefault(s, []).append((reads, targets))
        object.__setattr__(spec, "_state_index", cached)
    return cached


def _match(spec: MachineSpec, state: str, scanned: Tuple[str, ...]) -> Tuple[Target, ...]:
    """Targets of the most specific delta entries matching the scan."""
    best: List[Target] = []
    best_rank = -1
    for reads, targets in _by_state(spec).get(state, ()):
        rank = 0
        ok = True
        for r, c in zip(reads, scanned):
            if r == WILD:
                continue
            if r != c:
                ok = False
                break
            rank += 1
        if not ok:
            continue
        if rank > best_rank:
            best_rank, best = rank, list(targets)
        elif rank == best_rank:
            best.extend(targets)
    return tuple(best)


def _apply(
    spec: MachineSpec,
    target: Target,
    tapes: Tuple[Tape, ...],
    heads: Tuple[int, ...],
    scanned: Tuple[str, ...],
):
    """Write/move for one target; returns (state, tapes, heads) or None if stuck."""
    nxt, writes, moves = target
    new_tapes = []
    new_heads = []
    for i in range(spec.tapes):
        sym = scanned[i] if writes[i] == WILD else writes[i]
        t = tapes[i] if sym == scanned[i] else tapes[i].write(heads[i], sym)
        h = heads[i]
        if moves[i] == "L":
            if spec.tape_mode == SEMI_INFINITE and h == 0:
                return None  # stuck: cell 0 is protected
            h -= 1
        elif moves[i] == "R":
            h += 1
        new_tapes.append(t)
        new_heads.append(h)
    return nxt, tuple(new_tapes), tuple(new_heads)


def successors(spec: MachineSpec, c: Configuration) -> List[Configuration]:
    """All next configurations (empty when halted)."""
    scanned = c.scanned()
    out = []
    for target in _match(spec, c.state, scanned):
        applied = _apply(spec, target, c.tapes, c.heads, scanned)
        if applied is not None:
            nxt, tapes, heads = applied
            out.append(Configuration(nxt, tapes, heads, c.steps_taken + 1))
    return out


def step(spec: MachineSpec, c: Configuration) -> Optional[Configuration]:
    """One deterministic step; None means Halted (no applicable entry, or a
    protected-cell left move)."""
    scanned = c.scanned()
    targets = _match(spec, c.state, scanned)
    if not targets:
        return None
    if len(targets) > 1:
        raise ValidationError(
            f"ambiguous transition in {spec.name!r} at state {c.state!r} reading {scanned}"
        )
    applied = _apply(spec, targets[0], c.tapes, c.heads, scanned)
    if applied is None:
        return None
    nxt, tapes, heads = applied
    return Configuration(nxt, tapes, heads, c.steps_taken + 1)


def initial_configuration(
    spec: MachineSpec, words: Sequence[str], heads: Optional[Sequence[int]] = None
) -> Configuration:
    if len(words) > spec.tapes:
        raise ValidationError(f"{len(words)} input words for {spec.tapes} tapes")
    tapes = []
    for i in range(spec.tapes):
        w = words[i] if i < len(words) else ""
        for ch in w:
            if ch not in spec.tape_alphabet:
                raise ValidationError(f"input symbol {ch!r} outside tape alphabet")
        tapes.append(Tape.from_word(w))
    hs = tuple(heads) if heads is not None else (0,) * spec.tapes
    return Configuration(spec.initial, tuple(tapes), hs, 0)


def run(
    spec: MachineSpec,
    word: str,
    fuel: int,
    want_trace: bool = False,
    start: Optional[Configuration] = None,
) -> Outcome:
    """Run a deterministic machine on ``word`` (tape 1, head at its first
    symbol); Accept as soon as the state is accepting."""
    if not spec.deterministic:
        raise ValidationError("run requires a deterministic machine; see nd_run")
    c = start if start is not None else initial_configuration(spec, [word])
    trace = [c] if want_trace else None
    for _ in range(fuel):
        if c.state in spec.accept:
            return Outcome(ACCEPT, c, tuple(trace) if trace else None)
        n = step(spec, c)
        if n is None:
            return Outcome(REJECT, c, tuple(trace) if trace else None)
        c = n
        if trace is not None:
            trace.append(c)
    if c.state in spec.accept:
        return Outcome(ACCEPT, c, tuple(trace) if trace else None)
    return Outcome(FUEL_EXHAUSTED, c, tuple(trace) if trace else None)


# ---------------------------------------------------------------------------
# Unary numeric convention: 0 is the glyph "0", n > 0 is n ones; argument i
# sits on tape i starting at cell 1 (cell 0 stays blank); on Accept the head
# of the output tape is expected at the first nonblank cell.


def encode_unary(n: int) -> str:
    if n < 0:
        raise ValidationError("unary encoding takes naturals")
    return "0" if n == 0 else "1" * n


def decode_unary(word: str) -> int:
    if word == "0":
        return 0
    if word and set(word) == {"1"}:
        return len(word)
    raise NonEncodable(f"{word!r} is not a unary numeral")


def numeric_start(spec: MachineSpec, args: Sequence[int]) -> Configuration:
    words = [BLANK + encode_unary(a) for a in args]
    c = initial_configuration(spec, words)
    return replace(c, heads=(1,) * spec.tapes)


def run_numeric(
    spec: MachineSpec,
    args: Sequence[int],
    fuel: int,
    output_tape: int = 1,
):
    """Run under the unary convention; returns the decoded output natural on
    Accept, otherwise the failing Outcome.  Raises NonEncodable if the final
    output tape holds no numeral."""
    if not 1 <= output_tape <= spec.tapes:
        raise ValidationError(f"no tape {output_tape} on a {spec.tapes}-tape machine")
    if len(args) > spec.tapes:
        raise ValidationError(f"{len(args)} arguments for {spec.tapes} tapes")
    out = run(spec, "", fuel, start=numeric_start(spec, args))
    if out.tag != ACCEPT:
        return out
    return decode_unary(out.final.tapes[output_tape - 1].content())


# ---------------------------------------------------------------------------
# Corpus machines


def zeros_then_ones() -> MachineSpec:
    """Decider for {0^n 1^n}: mark a 0 as X, find the matching 1, mark it Y,
    rewind, repeat; a residue of Ys (or nothing) accepts."""
    return make_machine(
        name="zeros_then_ones",
        states={"q0", "q1", "q2", "q4", "q5"},
        initial="q0",
        accept={"q5"},
        input_alphabet={"0", "1"},
        tape_alphabet={"0", "1", "X", "Y", BLANK},
        tapes=1,
        rules=[
            ("q0", "0", "q1", "X", "R"),
            ("q0", "Y", "q4", "Y", "R"),
            ("q0", BLANK, "q5", BLANK, "R"),
            ("q1", "0", "q1", "0", "R"),
            ("q1", "Y", "q1", "Y", "R"),
            ("q1", "1", "q2", "Y", "L"),
            ("q2", "0", "q2", "0", "L"),
            ("q2", "Y", "q2", "Y", "L"),
            ("q2", "X", "q0", "X", "R"),
            ("q4", "Y", "q4", "Y", "R"),
            ("q4", BLANK, "q5", BLANK, "R"),
        ],
    )


def identity_numeric() -> MachineSpec:
    """Numeric identity: the start state already accepts, leaving tape 1 (and
    the head position) untouched."""
    return make_machine(
        name="identity_numeric",
        states={"q0"},
        initial="q0",
        accept={"q0"},
        input_alphabet={"0", "1"},
        tape_alphabet={"0", "1", BLANK},
        tapes=1,
        rules=[],
    )
