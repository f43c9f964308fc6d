import pytest
from hypothesis import given

from capc.corpus import CHECK_CASES, EVAL_CASES, HEAD, NAT, TYPES, list_of
from capc.parser import (
    BranchError,
    ParseError,
    parse_context,
    parse_source,
    parse_term,
    parse_type,
    render_term,
    render_type,
    tokenize,
)
from capc.syntax import Abs, App, Compound, Const, Matchable, Var
from capc.types import Arrow, Atom, Comp, DVar, Mu, TVar, Union
from strategies import types
from termgen import well_typed_terms

T = parse_type


def test_precedence_and_associativity():
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    assert T("'a -> 'b -> 'c") == Arrow(a, Arrow(b, c))
    assert T("'a + 'b + 'c") == Union(Union(a, b), c)
    assert T("'a @ 'b @ 'c") == Comp(Comp(a, b), c)
    assert T("'a @ 'b + 'c -> 'a") == Arrow(Union(Comp(a, b), c), a)
    assert T("mu X . 'a -> X") == Mu(TVar("X"), Arrow(a, TVar("X")))
    assert T("mu l . 'a + l") == Mu(DVar("l"), Union(a, DVar("l")))


def test_terms_and_patterns():
    assert parse_term("f 'a b") == App(App(Var("f"), Const("a")), Var("b"))
    t = parse_term("{ ('cons x) xs [x : 'a, xs : 'b] => x | 'nil => 'nil }")
    assert isinstance(t, Abs) and len(t.branches) == 2
    b = t.branches[0]
    assert b.pattern == Compound(Compound(Const("cons"), Matchable("x")), Matchable("xs"))
    assert b.context == {"x": Atom("a"), "xs": Atom("b")}


def test_quoted_context_keys_are_accepted():
    src = f"{{ 'nil => 'nothing | ('cons x) xs ['x : {NAT}, 'xs : {list_of(NAT)}] => 'just x }}"
    assert parse_term(src) == parse_term(HEAD)


@pytest.mark.parametrize("src", TYPES)
def test_corpus_types_round_trip(src):
    t = T(src)
    assert T(render_type(t)) == t


@pytest.mark.parametrize("src", [c[2] for c in CHECK_CASES] + [c[1] for c in EVAL_CASES])
def test_corpus_terms_round_trip(src):
    t = parse_term(src)
    assert parse_term(render_term(t)) == t


@given(types)
def test_generated_types_round_trip(t):
    assert T(render_type(t)) == t


def test_generated_terms_round_trip():
    for t, _ in well_typed_terms(200, seed=3):
        assert parse_term(render_term(t)) == t


def test_comments_and_positions():
    toks = tokenize("'a -- note\n  -> 'b")
    assert [(k.kind, k.line, k.column) for k in toks] == [
        ("atom", 1, 1),
        ("arrow", 2, 3),
        ("atom", 2, 6),
        ("eof", 2, 8),
    ]


@pytest.mark.parametrize(
    "fn,src,line,col",
    [
        (parse_type, "'a ->", 1, 6),
        (parse_type, "'a + $", 1, 6),
        (parse_type, "mu . 'a", 1, 4),
        (parse_type, "('a\n + 'b", 2, 6),
        (parse_term, "{ x [x : 'a] 'b }", 1, 14),
        (parse_term, "f )", 1, 3),
        (parse_term, "{ x [x : 'a, x : 'b] => x }", 1, 14),
    ],
)
def test_errors_carry_line_and_column(fn, src, line, col):
    with pytest.raises(ParseError) as e:
        fn(src)
    assert (e.value.line, e.value.column) == (line, col)
    assert str(e.value).startswith(f"{line}:{col}:")


def test_invalid_branches_are_reported_at_the_branch():
    with pytest.raises(BranchError) as e:
        parse_term("'f\n  { x x [x : 'a] => x }")
    assert (e.value.line, e.value.column) == (2, 5)
    with pytest.raises(BranchError):
        parse_term("{ x [x : 'a, y : 'b] => x }")


def test_parse_context():
    ctx = parse_context("-- header\nf : 'a -> 'b\n\ng : 'c\n")
    assert ctx == {"f": T("'a -> 'b"), "g": Atom("c")}
    with pytest.raises(ParseError) as e:
        parse_context("f : 'a\nf : 'b")
    assert e.value.line == 2
    with pytest.raises(ParseError) as e:
        parse_context("f 'a", first_line=5)
    assert e.value.line == 5


def test_parse_source_splits_header_from_term():
    ctx, t = parse_source("x : 'c -> 'd\n-- apply it\nx\n  'c\n")
    assert ctx == {"x": T("'c -> 'd")}
    assert t == App(Var("x"), Const("c"))
    ctx, t = parse_source("'a")
    assert ctx == {} and t == Const("a")


def test_parse_source_reports_term_lines():
    with pytest.raises(ParseError) as e:
        parse_source("x : 'c\n\nx )")
    assert e.value.line == 3
