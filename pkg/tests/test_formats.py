"""Parsers and canonical printers for the .tm / .prf / .lam formats."""

from pathlib import Path

import pytest

from churing.errors import ParseError
from churing.formats import (
    parse, parse_lam, parse_prf, parse_tm, print_lam, print_prf, print_source,
    print_tm,
)
from churing.lam import alpha_eq, church_decode
from churing.prf import evaluate
from churing.tm import run

CORPUS = Path(__file__).parent.parent / "corpus"


def _corpus(ext):
    return sorted(CORPUS.glob(f"*.{ext}"))


def _as_dict(obj):
    # source files may hold one bare term instead of def bindings
    return obj if isinstance(obj, dict) else {"": obj}


def test_corpus_is_large_enough():
    assert len(_corpus("tm")) >= 10
    prf_defs = sum(len(_as_dict(parse_prf(p.read_text()))) for p in _corpus("prf"))
    assert prf_defs >= 10
    lam_defs = sum(len(_as_dict(parse_lam(p.read_text()))) for p in _corpus("lam"))
    assert lam_defs >= 15


@pytest.mark.parametrize("path", _corpus("tm"), ids=lambda p: p.name)
def test_tm_round_trip(path):
    m1 = parse_tm(path.read_text())
    text = print_tm(m1)
    m2 = parse_tm(text)
    assert m2 == m1
    assert print_tm(m2) == text  # canonical form is a fixed point


@pytest.mark.parametrize("path", _corpus("prf"), ids=lambda p: p.name)
def test_prf_round_trip(path):
    d1 = parse_prf(path.read_text())
    text = print_prf(d1)
    d2 = parse_prf(text)
    a, b = _as_dict(d1), _as_dict(d2)
    assert list(b) == list(a)
    for k in a:
        assert b[k] == a[k]
    assert print_prf(d2) == text


@pytest.mark.parametrize("path", _corpus("lam"), ids=lambda p: p.name)
def test_lam_round_trip(path):
    d1 = parse_lam(path.read_text())
    text = print_lam(d1)
    d2 = parse_lam(text)
    a, b = _as_dict(d1), _as_dict(d2)
    assert list(b) == list(a)
    for k in a:
        assert alpha_eq(b[k], a[k]), k
    assert print_lam(d2) == text


def test_parsed_tm_behaves():
    m = parse_tm((CORPUS / "onon.tm").read_text())
    assert run(m, "0011", fuel=1000).tag == "Accept"
    assert run(m, "010", fuel=1000).tag == "Reject"


def test_parsed_prf_evaluates():
    defs = parse_prf((CORPUS / "arith.prf").read_text())
    assert evaluate(defs["add"], [3, 4], 10 ** 6) == 7
    assert evaluate(defs["monus"], [2, 5], 10 ** 6) == 0


def test_parsed_lam_reduces():
    defs = parse_lam((CORPUS / "combinators.lam").read_text())
    from churing.lam import App, normalize
    r = normalize(App(App(defs["add"], defs["two"]), defs["three"]), 10 ** 5)
    assert r.normal and church_decode(r.term) == 5


def test_lam_church_literal():
    defs = parse_lam("def n = #3\n")
    assert church_decode(defs["n"]) == 3


def test_parse_dispatch():
    assert parse("lam", "def i = \\x. x\n")["i"] is not None
    with pytest.raises(ParseError):
        parse("tm", "no such header\n")


@pytest.mark.parametrize("kind,text", [
    ("tm", "name: x\n"),                      # missing required headers
    ("tm", "!!!"),
    ("prf", "def f = C S\n"),                 # C needs an argument list
    ("prf", "def f = (S)\n"),                 # no grouping parens
    ("lam", "def f = \\. x\n"),               # abstraction needs a binder
    ("lam", "def f = (x\n"),                  # unbalanced
    ("lam", "def f = y z\ndef f = x\n"),      # duplicate definition
])
def test_malformed_sources_raise(kind, text):
    with pytest.raises(ParseError):
        parse(kind, text)


def test_parse_error_reports_location():
    try:
        parse_lam("def f = \\x. x\ndef g = (y\n")
    except ParseError as e:
        assert e.line == 2 or "line 2" in str(e)
    else:
        pytest.fail("expected a ParseError")


def test_print_source_dispatch():
    m = parse_tm((CORPUS / "succ.tm").read_text())
    assert print_source("tm", m) == print_tm(m)
