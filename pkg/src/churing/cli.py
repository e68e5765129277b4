"""Command line for running, compiling, and cross-checking the three models.

Subcommands:

    run tm|prf|lam FILE [--input W | --args N... | --apply TERMS]
                        [--fuel N] [--trace]
    compile --from {prf,tm,lam} --to {tm,prf,lam,tm-suite} FILE -o OUT
    transform --single-tape FILE | --nd-run FILE --input W --depth D
    equiv --prf FILE --tm FILE --lam FILE --grid A..B [--fuel N]
    check FILE

Exit codes: 0 success / Accept / all-Agree, 1 Reject / Disagree,
2 FuelExhausted / Inconclusive, 3 parse or validation error.
"""

import argparse
import itertools
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ChuringError, FuelExhausted, ParseError, ValidationError
from .formats import parse, print_source
from .lam import Term, app, church_decode, church_encode, normalize, render
from .lam_to_tm import build_machine
from .prf import PrfExpr, arity_check, evaluate
from .prf_to_lam import compile_prf_to_lambda
from .prf_to_tm import compile_prf_to_tm, layout_report
from .tm import MachineSpec, Outcome, run, run_numeric
from .tm_to_prf import compile_tm_to_prf
from .transform import nd_run, to_single_tape

DEFAULT_FUEL = 10 ** 6

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_ERROR = 0, 1, 2, 3

AGREE, DISAGREE, INCONCLUSIVE = "Agree", "Disagree", "Inconclusive"


# ---------------------------------------------------------------------------
# Differential harness
# ---------------------------------------------------------------------------

@dataclass
class EquivReport:
    """Per-point results of evaluating one function in every model."""

    name: str
    grid: List[Tuple[int, ...]]
    results: Dict[Tuple[int, ...], Dict[str, Optional[int]]]
    verdicts: Dict[Tuple[int, ...], str]
    counts: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.counts:
            for v in self.verdicts.values():
                self.counts[v] = self.counts.get(v, 0) + 1

    def lines(self) -> List[str]:
        """Machine-readable serialization: one ``point;model;value`` line per
        result, then one ``point;verdict;V`` line per point."""
        out = []
        for pt in self.grid:
            key = ",".join(map(str, pt))
            for model in sorted(self.results[pt]):
                val = self.results[pt][model]
                out.append(f"{key};{model};{'?' if val is None else val}")
            out.append(f"{key};verdict;{self.verdicts[pt]}")
        return out

    def table(self) -> str:
        models = sorted({m for r in self.results.values() for m in r})
        header = ["point"] + models + ["verdict"]
        rows = [header]
        for pt in self.grid:
            row = [",".join(map(str, pt))]
            for m in models:
                v = self.results[pt].get(m)
                row.append("?" if v is None else str(v))
            row.append(self.verdicts[pt])
            rows.append(row)
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
                         for r in rows)

    def counterexample(self) -> Optional[Tuple[int, ...]]:
        """Smallest disagreeing point (by sum, then lexicographically)."""
        bad = [p for p, v in self.verdicts.items() if v == DISAGREE]
        return min(bad, key=lambda p: (sum(p), p)) if bad else None


def _eval_lam(t: Term, args: Sequence[int], fuel: int) -> Optional[int]:
    applied = app(t, *[church_encode(a) for a in args])
    res = normalize(applied, fuel=fuel)
    if not res.normal:
        return None
    return church_decode(res.term)


def equiv_grid(prf: PrfExpr, tm: MachineSpec, lam: Term,
               grid: Sequence[Sequence[int]], fuel: int = DEFAULT_FUEL,
               tm_output_tape: Optional[int] = None) -> EquivReport:
    """Evaluate the same function in all three models over a grid of points.

    A point is Agree when every model that completed returned the same
    number, Disagree when two completed results differ, and Inconclusive when
    nothing completed.  For unary functions the report gains a ``roundtrip``
    column: the compiled machine is squeezed to one tape and translated back
    to a recursive function before evaluating — skipped silently for
    functions whose compiled machine does not fit the one-tape translator.

    ``tm_output_tape`` names the machine's result tape; by default tape k+1
    when the machine has more than k tapes (the compiled-machine layout),
    else tape 1.
    """
    k = arity_check(prf)
    if tm_output_tape is None:
        tm_output_tape = k + 1 if tm.tapes > k else 1
    rt: Optional[PrfExpr] = None
    if k == 1:
        try:
            rt = compile_tm_to_prf(to_single_tape(compile_prf_to_tm(prf)[0]))
        except ChuringError:
            rt = None

    results: Dict[Tuple[int, ...], Dict[str, Optional[int]]] = {}
    verdicts: Dict[Tuple[int, ...], str] = {}
    pts = [tuple(p) for p in grid]
    for pt in pts:
        row: Dict[str, Optional[int]] = {}
        try:
            row["prf"] = evaluate(prf, pt, fuel)
        except (FuelExhausted, ChuringError):
            row["prf"] = None
        got = run_numeric(tm, pt, fuel=fuel, output_tape=tm_output_tape)
        row["tm"] = got if isinstance(got, int) else None
        try:
            row["lam"] = _eval_lam(lam, pt, fuel)
        except ChuringError:
            row["lam"] = None
        if rt is not None:
            try:
                row["roundtrip"] = evaluate(rt, pt, fuel)
            except (FuelExhausted, ChuringError):
                row["roundtrip"] = None
        done = [v for v in row.values() if v is not None]
        if not done:
            verdicts[pt] = INCONCLUSIVE
        elif len(set(done)) == 1:
            verdicts[pt] = AGREE
        else:
            verdicts[pt] = DISAGREE
        results[pt] = row
    return EquivReport("equiv", pts, results, verdicts)


# ---------------------------------------------------------------------------
# CLI plumbing
# ---------------------------------------------------------------------------

_KIND_BY_SUFFIX = {".tm": "tm", ".prf": "prf", ".lam": "lam"}


def _kind_of(path: str) -> str:
    kind = _KIND_BY_SUFFIX.get(Path(path).suffix)
    if kind is None:
        raise ParseError(f"cannot tell the format of {path!r}; "
                         "use a .tm, .prf or .lam suffix", line=1, column=1)
    return kind


def _load(path: str, kind: Optional[str] = None):
    kind = kind or _kind_of(path)
    obj = parse(kind, Path(path).read_text())
    if isinstance(obj, dict):
        if not obj:
            raise ParseError(f"{path} defines nothing", line=1, column=1)
        return next(reversed(obj.values()))  # last definition is the main one
    return obj


def _outcome_exit(tag: str) -> int:
    return {"Accept": EXIT_OK, "Reject": EXIT_NEGATIVE,
            "FuelExhausted": EXIT_INCONCLUSIVE}[tag]


def _cmd_run(args) -> int:
    fuel = args.fuel
    if args.model == "tm":
        m = _load(args.file, "tm")
        out = run(m, args.input or "", fuel=fuel, want_trace=args.trace)
        if args.trace and out.trace:
            for c in out.trace:
                print(c.state, [t.content() for t in c.tapes], file=sys.stderr)
        print(out.tag)
        return _outcome_exit(out.tag)
    if args.model == "prf":
        e = _load(args.file, "prf")
        vals = [int(a) for a in (args.args or [])]
        try:
            print(evaluate(e, vals, fuel))
            return EXIT_OK
        except FuelExhausted:
            print("FuelExhausted")
            return EXIT_INCONCLUSIVE
    t = _load(args.file, "lam")
    if args.apply:
        for part in parse_apply(args.apply):
            t = app(t, part)
    res = normalize(t, fuel=fuel)
    if not res.normal:
        print("FuelExhausted")
        return EXIT_INCONCLUSIVE
    try:
        print(f"#{church_decode(res.term)}")
    except ChuringError:
        print(print_source("lam", res.term), end="")
    return EXIT_OK


def parse_apply(text: str) -> List[Term]:
    """Arguments for ``run lam --apply``: a whitespace-juxtaposed term list."""
    t = parse("lam", f"__probe__ {text}")
    parts: List[Term] = []
    while hasattr(t, "arg"):
        parts.append(t.arg)
        t = t.fn
    return list(reversed(parts))


def _cmd_compile(args) -> int:
    src_kind, dst = args.src, args.dst
    pairs = {("prf", "tm"), ("prf", "lam"), ("tm", "prf"), ("lam", "tm-suite")}
    if (src_kind, dst) not in pairs:
        print(f"no translation from {src_kind} to {dst}", file=sys.stderr)
        return EXIT_ERROR
    obj = _load(args.file, src_kind)
    if dst == "tm":
        m, layout = compile_prf_to_tm(obj)
        text = print_source("tm", m, layout_comment=layout_report(m, layout))
    elif dst == "lam":
        text = print_source("lam", compile_prf_to_lambda(obj))
    elif dst == "prf":
        text = print_source("prf", {"main": compile_tm_to_prf(obj)})
    else:  # lam -> tm-suite: one .tm file per machine, OUT is a prefix
        for name in ("V", "CF", "CBV", "AE", "NF", "BR1"):
            path = Path(f"{args.out}.{name}.tm")
            path.write_text(print_source("tm", build_machine(name)))
            print(path)
        return EXIT_OK
    Path(args.out).write_text(text)
    print(args.out)
    return EXIT_OK


def _cmd_transform(args) -> int:
    m = _load(args.file, "tm")
    if args.single_tape:
        print(print_source("tm", to_single_tape(m)), end="")
        return EXIT_OK
    verdict = nd_run(m, args.input or "", max_depth=args.depth)
    print(verdict)
    return EXIT_OK if verdict == "Accept" else EXIT_NEGATIVE


def _parse_grid(spec: str, k: int) -> List[Tuple[int, ...]]:
    lo_s, _, hi_s = spec.partition("..")
    try:
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise ParseError(f"grid must look like 0..4, got {spec!r}", line=1, column=1)
    return [tuple(p) for p in itertools.product(range(lo, hi + 1), repeat=k)]


def _cmd_equiv(args) -> int:
    e = _load(args.prf, "prf")
    m = _load(args.tm, "tm")
    t = _load(args.lam, "lam")
    report = equiv_grid(e, m, t, _parse_grid(args.grid, arity_check(e)),
                        fuel=args.fuel)
    print(report.table())
    for line in report.lines():
        print(line)
    cex = report.counterexample()
    if cex is not None:
        print(f"counterexample: {cex} -> {report.results[cex]}", file=sys.stderr)
        return EXIT_NEGATIVE
    if report.counts.get(INCONCLUSIVE):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_check(args) -> int:
    kind = _kind_of(args.file)
    obj = parse(kind, Path(args.file).read_text())
    n = len(obj) if isinstance(obj, dict) else 1
    print(f"ok: {kind} source with {n} object(s)")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="churing",
                description="Turing machines, recursive "
                            "functions, and lambda terms.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a machine, function, or term")
    r.add_argument("model", choices=["tm", "prf", "lam"])
    r.add_argument("file")
    r.add_argument("--input", help="input word (tm)")
    r.add_argument("--args", nargs="*", help="numeric arguments (prf)")
    r.add_argument("--apply", help="terms to apply (lam)")
    r.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    r.add_argument("--trace", action="store_true")
    r.set_defaults(fn=_cmd_run)

    c = sub.add_parser("compile", help="translate between the models")
    c.add_argument("--from", dest="src", required=True,
                   choices=["prf", "tm", "lam"])
    c.add_argument("--to", dest="dst", required=True,
                   choices=["tm", "prf", "lam", "tm-suite"])
    c.add_argument("file")
    c.add_argument("-o", "--out", required=True)
    c.set_defaults(fn=_cmd_compile)

    t = sub.add_parser("transform", help="single-tape squeeze or NDTM run")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--single-tape", action="store_true")
    g.add_argument("--nd-run", action="store_true")
    t.add_argument("file")
    t.add_argument("--input")
    t.add_argument("--depth", type=int, default=12)
    t.set_defaults(fn=_cmd_transform)

    e = sub.add_parser("equiv", help="differential equivalence over a grid")
    e.add_argument("--prf", required=True)
    e.add_argument("--tm", required=True)
    e.add_argument("--lam", required=True)
    e.add_argument("--grid", required=True, help="A..B inclusive range")
    e.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    e.set_defaults(fn=_cmd_equiv)

    k = sub.add_parser("check", help="parse and validate a source file")
    k.add_argument("file")
    k.set_defaults(fn=_cmd_check)
    return p


def cli(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return args.fn(args)
    except SystemExit as ex:  # argparse usage errors / --help
        return ex.code if isinstance(ex.code, int) else EXIT_ERROR
    except (ParseError, ValidationError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_ERROR
    except FuelExhausted as ex:
        print(f"fuel exhausted: {ex}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except FileNotFoundError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(cli())
