"""Lambda terms: alpha congruence, capture-avoiding substitution, normal
order reduction, Church numerals and the combinator library.

Reduction strategy is leftmost-outermost throughout; ``normalize`` finds
the normal form whenever one exists, so ``beta_eq`` verdicts are as
strong as a fuel-bounded procedure can be.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import Fuel, FuelExhausted, NotANumeral, ValidationError

sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str
    __slots__ = ("name",)


@dataclass(frozen=True)
class Abs(Term):
    param: str
    body: Term
    __slots__ = ("param", "body")


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term
    __slots__ = ("fn", "arg")


@dataclass(frozen=True)
class Hole(Term):
    """Context hole.  Only legal inside contexts, never in reducible terms."""

    __slots__ = ()


HOLE = Hole()

_fresh_counter = itertools.count(1)


def fresh_name(base: str = "x", avoid: frozenset | set = frozenset()) -> str:
    base = base.split("~")[0] or "x"
    while True:
        cand = f"{base}~{next(_fresh_counter)}"
        if cand not in avoid:
            return cand


def lam(params, body: Term) -> Term:
    """Nested abstraction sugar: lam("x y", t) == Abs('x', Abs('y', t))."""
    if isinstance(params, str):
        params = params.split()
    for p in reversed(params):
        body = Abs(p, body)
    return body


def app(*terms: Term) -> Term:
    """Left-associated application of two or more terms."""
    out = terms[0]
    for t in terms[1:]:
        out = App(out, t)
    return out


def subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, Abs):
            stack.append(s.body)
        elif isinstance(s, App):
            stack.append(s.arg)
            stack.append(s.fn)


def has_hole(t: Term) -> bool:
    return any(isinstance(s, Hole) for s in subterms(t))


def free_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Abs):
        return free_vars(t.body) - {t.param}
    if isinstance(t, App):
        return free_vars(t.fn) | free_vars(t.arg)
    return frozenset()


def bound_vars(t: Term) -> frozenset:
    if isinstance(t, Abs):
        return bound_vars(t.body) | {t.param}
    if isinstance(t, App):
        return bound_vars(t.fn) | bound_vars(t.arg)
    return frozenset()


def analyze(t: Term) -> dict:
    """FV, BV and the sub-term set of a hole-free term."""
    if has_hole(t):
        raise ValidationError("analyze expects a hole-free term")
    return {"FV": free_vars(t), "BV": bound_vars(t), "Sub": frozenset(subterms(t))}


def fill_context(context: Term, filler: Term) -> Term:
    """Replace every hole with ``filler`` verbatim; capture is permitted."""
    if has_hole(filler):
        raise ValidationError("filler must be hole-free")

    def go(c: Term) -> Term:
        if isinstance(c, Hole):
            return filler
        if isinstance(c, Abs):
            return Abs(c.param, go(c.body))
        if isinstance(c, App):
            return App(go(c.fn), go(c.arg))
        return c

    return go(context)


# ---------------------------------------------------------------------------
# Alpha congruence and substitution


def alpha_eq(a: Term, b: Term) -> bool:
    def go(a, b, env_a, env_b, depth):
        if isinstance(a, Var) and isinstance(b, Var):
            return env_a.get(a.name, a.name) == env_b.get(b.name, b.name)
        if isinstance(a, Abs) and isinstance(b, Abs):
            ea = dict(env_a)
            eb = dict(env_b)
            ea[a.param] = depth
            eb[b.param] = depth
            return go(a.body, b.body, ea, eb, depth + 1)
        if isinstance(a, App) and isinstance(b, App):
            return go(a.fn, b.fn, env_a, env_b, depth) and go(
                a.arg, b.arg, env_a, env_b, depth
            )
        return isinstance(a, Hole) and isinstance(b, Hole)

    return go(a, b, {}, {}, 0)


def substitute(m: Term, x: str, n: Term) -> Term:
    """Capture-avoiding M[x := N]; binders that would capture FV(N) are
    renamed fresh before descending."""
    fv_n = free_vars(n)

    def go(t: Term) -> Term:
        if isinstance(t, Var):
            return n if t.name == x else t
        if isinstance(t, App):
            return App(go(t.fn), go(t.arg))
        if isinstance(t, Abs):
            if t.param == x:
                return t
            if t.param in fv_n and x in free_vars(t.body):
                avoid = fv_n | free_vars(t.body) | {x}
                y = fresh_name(t.param, avoid)
                renamed = substitute(t.body, t.param, Var(y))
                return Abs(y, go(renamed))
            return Abs(t.param, go(t.body))
        raise ValidationError("substitution over a context hole")

    return go(m)


# ---------------------------------------------------------------------------
# Beta reduction


def is_redex(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.fn, Abs)


def beta_step(t: Term) -> Optional[Term]:
    """Contract the leftmost-outermost redex; None when t is in beta-nf."""
    if is_redex(t):
        return substitute(t.fn.body, t.fn.param, t.arg)
    if isinstance(t, App):
        f = beta_step(t.fn)
        if f is not None:
            return App(f, t.arg)
        a = beta_step(t.arg)
        if a is not None:
            return App(t.fn, a)
        return None
    if isinstance(t, Abs):
        b = beta_step(t.body)
        return None if b is None else Abs(t.param, b)
    return None


def is_normal_form(t: Term) -> bool:
    return all(not is_redex(s) for s in subterms(t))


@dataclass(frozen=True)
class NormalizeResult:
    term: Term
    normal: bool


def _whnf_shallow(t: Term, fuel: Fuel) -> Term:
    # Head reduction loop used after a contraction re-exposes a spine.
    while True:
        if isinstance(t, App):
            f = _whnf_shallow(t.fn, fuel)
            if isinstance(f, Abs):
                fuel.spend()
                t = substitute(f.body, f.param, t.arg)
                continue
            return t if f is t.fn else App(f, t.arg)
        return t


def _norm(t: Term, fuel: Fuel) -> Term:
    # Normal order: reduce the head to whnf, then normalize spine left to
    # right.  Performs contractions in exactly leftmost-outermost order,
    # spending one unit per contraction, matching iterated beta_step.
    t = _whnf_shallow(t, fuel)
    if isinstance(t, Var):
        return t
    if isinstance(t, Abs):
        return Abs(t.param, _norm(t.body, fuel))
    if isinstance(t, App):
        return App(_norm(t.fn, fuel), _norm(t.arg, fuel))
    raise ValidationError("cannot normalize a context hole")


def normalize(t: Term, fuel: int = 10_000) -> NormalizeResult:
    if has_hole(t):
        raise ValidationError("normalize expects a hole-free term")
    budget = Fuel(fuel + 1)
    budget.spend()  # reserve so that exactly `fuel` contractions are allowed
    try:
        return NormalizeResult(_norm(t, budget), True)
    except FuelExhausted:
        return NormalizeResult(t, False)


EQUAL = "equal"
DISTINCT = "distinct"
UNKNOWN = "unknown"


def beta_eq(a: Term, b: Term, fuel: int = 10_000) -> str:
    ra = normalize(a, fuel)
    rb = normalize(b, fuel)
    if ra.normal and rb.normal:
        return EQUAL if alpha_eq(ra.term, rb.term) else DISTINCT
    return UNKNOWN


# ---------------------------------------------------------------------------
# Church numerals


def church_encode(n: int) -> Term:
    if n < 0:
        raise ValidationError("Church numerals encode naturals only")
    body: Term = Var("y")
    for _ in range(n):
        body = App(Var("x"), body)
    return Abs("x", Abs("y", body))


def church_decode(t: Term, fuel: int = 100_000) -> int:
    res = normalize(t, fuel)
    if not res.normal:
        raise FuelExhausted("term did not normalize within fuel")
    t = canonical_binders(res.term)  # rules out shadowed binders
    if not (isinstance(t, Abs) and isinstance(t.body, Abs)):
        raise NotANumeral(f"not a numeral shape: {render(t)}")
    f, z = t.param, t.body.param
    body = t.body.body
    n = 0
    while isinstance(body, App):
        if not (isinstance(body.fn, Var) and body.fn.name == f):
            raise NotANumeral(f"not an iterated application: {render(t)}")
        n += 1
        body = body.arg
    if not (isinstance(body, Var) and body.name == z):
        raise NotANumeral(f"bad numeral tail: {render(t)}")
    return n


def fixed_point(f: Term) -> Term:
    """X with beta_step(X) syntactically App(f, X): X = WW, W = \\x.f(xx)."""
    x = fresh_name("x", free_vars(f))
    w = Abs(x, App(f, App(Var(x), Var(x))))
    return App(w, w)


# ---------------------------------------------------------------------------
# Combinators


def combinator(name: str) -> Term:
    builders = {
        "K": _comb_k,
        "I": _comb_i,
        "S": _comb_succ,
        "D": _comb_d,
        "Q": _comb_q,
        "R": _comb_r,
        "T": _comb_t,
        "P": _comb_p,
        "OMEGA": _comb_omega,
    }
    try:
        return builders[name]()
    except KeyError:
        raise ValidationError(f"unknown combinator {name!r}") from None


def _comb_k() -> Term:
    return lam("x y", Var("x"))


def _comb_i() -> Term:
    return Abs("x", Var("x"))


def _comb_succ() -> Term:
    # successor on Church numerals
    return lam("u x y", App(Var("x"), app(Var("u"), Var("x"), Var("y"))))


def _comb_d() -> Term:
    # pairing: D X Y 0 -> X, D X Y (m+1) -> Y
    return lam("x y z", app(Var("z"), App(_comb_k(), Var("y")), Var("x")))


def _comb_q() -> Term:
    d, s = _comb_d(), _comb_succ()
    v0, v1 = church_encode(0), church_encode(1)
    return lam(
        "y v",
        app(
            d,
            App(s, App(Var("v"), v0)),
            app(Var("y"), App(Var("v"), v0), App(Var("v"), v1)),
        ),
    )


def _comb_r() -> Term:
    # Bernays' recursion combinator
    d, q = _comb_d(), _comb_q()
    return lam(
        "x y u",
        app(Var("u"), App(q, Var("y")), app(d, church_encode(0), Var("x")), church_encode(1)),
    )


def _comb_t() -> Term:
    d, s = _comb_d(), _comb_succ()
    inner = lam(
        "u v",
        app(Var("u"), App(Var("x"), App(s, Var("v"))), Var("u"), App(s, Var("v"))),
    )
    return Abs("x", app(d, church_encode(0), inner))


def _comb_p() -> Term:
    t = _comb_t()
    return lam(
        "x y",
        app(App(t, Var("x")), App(Var("x"), Var("y")), App(t, Var("x")), Var("y")),
    )


def _comb_omega() -> Term:
    w = Abs("x", App(Var("x"), Var("x")))
    return App(w, w)


# ---------------------------------------------------------------------------
# Printing


def render(t: Term) -> str:
    """Deterministic print with canonically renumbered binders."""
    return _render(canonical_binders(t))


def _render(t: Term, top: bool = True) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Hole):
        return "[]"
    if isinstance(t, Abs):
        params = []
        while isinstance(t, Abs):
            params.append(t.param)
            t = t.body
        s = "\\" + " ".join(params) + ". " + _render(t)
        return s if top else f"({s})"
    # application spine, left associated
    parts = []
    cur = t
    while isinstance(cur, App):
        parts.append(cur.arg)
        cur = cur.fn
    parts.append(cur)
    parts.reverse()
    rendered = []
    for i, p in enumerate(parts):
        atom = isinstance(p, (Var, Hole))
        head_app = i == 0 and isinstance(p, App)
        rendered.append(_render(p, top=False) if (atom or head_app) else "(" + _render(p) + ")")
    return " ".join(rendered)


def canonical_binders(t: Term) -> Term:
    """Rename every binder to x1, x2, ... in traversal order, avoiding the
    free variables; alpha-equal terms print identically."""
    fv = free_vars(t)
    counter = itertools.count(1)

    def next_binder():
        while True:
            cand = f"x{next(counter)}"
            if cand not in fv:
                return cand

    def go(t: Term, env: dict) -> Term:
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, App):
            return App(go(t.fn, env), go(t.arg, env))
        if isinstance(t, Abs):
            fresh = next_binder()
            env2 = dict(env)
            env2[t.param] = fresh
            return Abs(fresh, go(t.body, env2))
        return t

    return go(t, {})
