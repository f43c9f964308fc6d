import re

import pytest
from hypothesis import given

from capc.automata import APP, ARROW, CompileError, Label, compile_type, compile_types
from capc.corpus import exponential_type
from capc.parser import parse_type as T
from capc.types import size as type_size
from capc.types import Mu, truncate, unfold_mu
from oracles import dedup_nested, flatten_nested, tree_to_nested
from strategies import types

LIST_A = T("mu a . 'nil + ('cons @ A) @ a")


def test_single_atom():
    m = compile_type(T("'c"))
    assert len(m.states) == 1
    assert m.label(0) == Label("atom", "c")
    assert m.size() == 1
    assert m.dump() == "q0: 'c -> []"


def test_list_automaton_paths():
    m = compile_type(LIST_A)
    assert str(m.label(m.initial)) == "+2"
    assert m.label(m.succ(m.initial, 1)) == Label("atom", "nil")
    assert m.label(m.run("211")) == Label("atom", "cons")
    assert m.label(m.run("212")) == Label("var", "A")
    assert m.run("22") == m.initial


def test_list_dump_reads_back():
    m = compile_type(LIST_A)
    rows = {}
    for line in m.dump().splitlines():
        q, lab, targets = re.fullmatch(r"q(\d+): (\S+) -> \[(.*)\]", line).groups()
        rows[int(q)] = (lab, [int(t[1:]) for t in targets.split(", ") if t])
    q = 0
    for i in "211":
        q = rows[q][1][int(i) - 1]
    assert rows[q][0] == "'cons"


def test_union_siblings_are_deduplicated_on_request():
    u = T("('c + 'd) + ('e + 'c)")
    m = compile_type(u)
    assert str(m.label(m.initial)) == "+3"
    assert [str(m.label(q)) for q in m.delta[m.initial]] == ["'c", "'d", "'e"]
    m4 = compile_type(u, dedup=False)
    assert str(m4.label(m4.initial)) == "+4"


def test_succ_rejects_bad_index():
    m = compile_type(LIST_A)
    with pytest.raises(IndexError):
        m.succ(m.initial, 3)
    with pytest.raises(IndexError):
        m.succ(m.succ(m.initial, 1), 1)


def test_labels_render():
    assert str(APP) == "@" and str(ARROW) == "->"
    assert str(Label("+", arity=4)) == "+4"


def test_non_contractive_input_is_reported():
    with pytest.raises(CompileError):
        compile_type(T("mu X . X + 'c"))


def test_shared_compilation_reuses_states():
    m, (r1, r2) = compile_types([LIST_A, LIST_A])
    assert r1 == r2
    m, (r1, r2) = compile_types([T("'c + 'd"), T("'d")])
    assert r2 in m.delta[r1]
    m, (r1, r2) = compile_types([T("'c"), T("'d")])
    assert r1 != r2 and m.initial == r1


def test_exponential_family_compiles_to_few_states():
    m = compile_type(T(exponential_type(12)))
    assert len(m.states) <= 13 + 1


def test_type_of_rebuilds_an_equivalent_type():
    from capc.naive import eqtype_naive

    m = compile_type(LIST_A)
    for q in m.states:
        assert eqtype_naive(m.type_of(q), m.type_of(q))
    assert eqtype_naive(m.type_of(m.initial), LIST_A)


# -- properties -----------------------------------------------------------------


@given(types)
def test_unrolling_agrees_with_truncation(a):
    m = compile_type(a, dedup=False)
    for k in range(6):
        assert m.unroll(k) == flatten_nested(tree_to_nested(truncate(a, k)))


@given(types)
def test_dedup_only_removes_repeated_siblings(a):
    m = compile_type(a)
    for k in range(5):
        assert dedup_nested(m.unroll(k)) == dedup_nested(flatten_nested(tree_to_nested(truncate(a, k))))


@given(types)
def test_no_union_state_has_a_union_child(a):
    m = compile_type(a)
    for q in m.states:
        if m.label(q).kind == "+":
            assert all(m.label(t).kind != "+" for t in m.delta[q])
            assert m.label(q).arity == len(m.delta[q]) >= 2


@given(types)
def test_head_unfolding_gives_the_same_language(a):
    if not isinstance(a, Mu):
        return
    m1, m2 = compile_type(a), compile_type(unfold_mu(a))
    for k in range(5):
        assert m1.unroll(k) == m2.unroll(k)


@given(types)
def test_size_is_at_most_quadratic(a):
    n = type_size(a)
    assert compile_type(a).size() <= n * n + 1


@given(types)
def test_arities_match_labels(a):
    m = compile_type(a)
    for q in m.states:
        lab = m.label(q)
        if lab.kind in ("@", "->"):
            assert len(m.delta[q]) == 2
        elif lab.kind in ("atom", "var"):
            assert m.delta[q] == ()
