import pytest
from hypothesis import given

from capc.generate import _nest
from capc.parser import parse_type as T
from capc.types import (
    CUT,
    Arrow,
    Atom,
    Comp,
    DVar,
    Mu,
    SortError,
    TruncationFuelExhausted,
    TVar,
    Tree,
    UndefinedLookup,
    Union,
    check_sort,
    flatten_union,
    free_vars,
    head_components,
    is_closed,
    is_contractive,
    is_datatype,
    lookup,
    mu,
    size,
    subst_type,
    tree_eq,
    tree_sub,
    truncate,
    unfold_first_mu,
    unfold_mu,
    union_of,
)
from strategies import datatypes, seeds, types

C, D, E = Atom("c"), Atom("d"), Atom("e")
LIST_A = T("mu a . 'nil + ('cons @ A) @ a")
LIST_C = T("mu a . 'nil + ('cons @ 'c) @ a")
CUT_T = Tree(CUT)


def leaf(s):
    return Tree(s)


# -- construction and sorts -------------------------------------------------------


def test_mu_picks_binder_sort_by_case():
    assert isinstance(mu("a", C).var, DVar)
    assert isinstance(mu("X", C).var, TVar)


def test_contractiveness_examples():
    assert is_contractive(T("mu X . X -> 'c"))
    assert not is_contractive(T("mu X . X"))
    assert not is_contractive(T("mu X . X + X"))
    assert is_contractive(T("mu X . 'c @ (X + X)"))
    assert not is_contractive(T("mu X . 'c + mu Y . X"))


def test_datatype_examples():
    assert is_datatype(C)
    assert not is_datatype(Arrow(C, D))
    assert is_datatype(T("mu a . 'nil + ('cons @ A) @ a"))
    assert not is_datatype(T("mu X . 'c"))  # type variables bind types, not datatypes


def test_check_sort():
    check_sort(LIST_A)
    with pytest.raises(SortError, match="contractive"):
        check_sort(T("mu X . X"))
    with pytest.raises(SortError):
        check_sort(T("mu a . a -> a"))
    with pytest.raises(SortError):
        check_sort(T("('c -> 'd) @ 'e"))


def test_free_vars():
    assert free_vars(LIST_A) == {TVar("A")}
    assert is_closed(LIST_C)
    assert not is_closed(T("mu X . Y -> X"))


def test_size_counts_constructors():
    assert size(C) == 1
    assert size(T("'c + 'd")) == 3
    assert size(LIST_C) == 8


# -- substitution and unfolding ------------------------------------------------------


def test_subst_examples():
    r = T("mu X . 'c -> X")
    assert subst_type(TVar("X"), r, Arrow(C, TVar("X"))) == Arrow(C, r)
    assert subst_type(TVar("Y"), r, Arrow(C, TVar("X"))) == Arrow(C, TVar("X"))


def test_unfolding_list_once():
    assert unfold_mu(LIST_A) == Union(Atom("nil"), Comp(Comp(Atom("cons"), TVar("A")), LIST_A))


def test_subst_avoids_capture():
    # [Y/X](mu Y . X -> Y): the inner binder must be renamed
    t = T("mu Y . X -> Y")
    r = subst_type(TVar("X"), TVar("Y"), t)
    assert isinstance(r, Mu) and r.var != TVar("Y")
    assert r.body == Arrow(TVar("Y"), r.var)


def test_subst_rejects_non_datatype_for_datatype_variable():
    with pytest.raises(SortError):
        subst_type(DVar("a"), Arrow(C, D), Comp(DVar("a"), C))


def test_unfold_first_mu():
    t = Union(C, Union(LIST_C, LIST_A))
    u = unfold_first_mu(t)
    assert u == Union(C, Union(unfold_mu(LIST_C), LIST_A))
    assert unfold_first_mu(T("'c + 'd")) is None


def test_head_components():
    assert head_components(T("'c + ('d + 'c)")) == [C, D]
    assert head_components(T("'c + ('d + 'c)"), dedup=False) == [C, D, C]
    assert head_components(LIST_C)[0] == Atom("nil")


# -- flattening ----------------------------------------------------------------------


def test_flatten_examples():
    assert flatten_union(T("('c + 'd) + ('e + 'c)")) == [C, D, E, C]
    assert flatten_union(C) == [C]
    assert flatten_union(T("('c + 'd) + 'e")) == flatten_union(T("'c + ('d + 'e)"))


@given(types, seeds)
def test_flatten_is_association_invariant(a, s):
    import random

    comps = flatten_union(a)
    assert flatten_union(_nest(random.Random(s), comps)) == comps


def test_union_of():
    assert union_of([C, D, C]) == Union(C, D)
    assert union_of([C, D, C], dedup=False) == Union(Union(C, D), C)
    with pytest.raises(ValueError):
        union_of([])


# -- lookup ------------------------------------------------------------------------------


def test_lookup_examples():
    assert lookup(Atom("nil"), ()) == {"'nil"}
    nat = T("mu n . 'zero + 'succ @ n")
    list_nat = T("mu l . 'nil + ('cons @ N) @ l")
    assert lookup(Comp(Comp(Atom("cons"), nat), list_nat), ()) == {"@"}
    a = Union(C, Arrow(D, E))
    assert lookup(a, ()) == lookup(C, ()) | {"->"}
    assert lookup(LIST_A, ()) == {"'nil", "@"}


def test_lookup_descends_and_rejects_bad_positions():
    t = T("('cons @ 'c) @ 'nil")
    assert lookup(t, (1, 1)) == {"'cons"}
    assert lookup(t, (2,)) == {"'nil"}
    with pytest.raises(UndefinedLookup):
        lookup(C, (1,))


@given(types)
def test_lookup_sees_through_fold(a):
    if isinstance(a, Mu):
        for pos in [(), (1,), (2,)]:
            try:
                expect = lookup(unfold_mu(a), pos)
            except UndefinedLookup:
                with pytest.raises(UndefinedLookup):
                    lookup(a, pos)
                continue
            assert lookup(a, pos) == expect


# -- truncation and tree relations ----------------------------------------------------


def test_truncate_examples():
    assert truncate(LIST_C, 0) == CUT_T
    assert truncate(C, 3) == leaf("'c")
    app = Tree("@", (CUT_T, CUT_T))
    inner = Tree("+", (leaf("'nil"), app))
    expected = Tree("+", (leaf("'nil"), Tree("@", (app, inner))))
    assert truncate(LIST_C, 2) == expected
    assert str(truncate(LIST_C, 2)) == "('nil + ((∘ @ ∘) @ ('nil + (∘ @ ∘))))"


def test_truncate_guards_against_non_contractive_input():
    with pytest.raises(TruncationFuelExhausted):
        truncate(T("mu X . X"), 2)
    with pytest.raises(ValueError):
        truncate(C, -1)


def test_tree_relation_examples():
    u = T("('c + 'd) + ('e + 'c)")
    for k in range(1, 6):
        assert tree_sub(truncate(C, k), truncate(u, k))
        assert not tree_sub(truncate(u, k), truncate(C, k))
    a = T("'c @ 'd -> 'e")
    for k in range(5):
        assert tree_eq(truncate(Union(a, a), k), truncate(a, k))


def test_tree_sub_is_contravariant_in_the_domain():
    small, big = T("'c -> 'e"), T("('c + 'd) -> 'e")
    assert tree_sub(truncate(big, 3), truncate(small, 3))
    assert not tree_sub(truncate(small, 3), truncate(big, 3))


@given(types)
def test_fold_is_invisible_to_truncation(a):
    if isinstance(a, Mu):
        for k in range(5):
            assert truncate(a, k) == truncate(unfold_mu(a), k)


@given(types)
def test_tree_relations_are_reflexive(a):
    for k in range(5):
        t = truncate(a, k)
        assert tree_eq(t, t) and tree_sub(t, t)


@given(types, types)
def test_tree_equivalence_implies_mutual_subtyping(a, b):
    for k in range(4):
        ta, tb = truncate(a, k), truncate(b, k)
        if tree_eq(ta, tb):
            assert tree_sub(ta, tb) and tree_sub(tb, ta)


def test_mutual_subtyping_does_not_imply_aci_equality():
    # absorption: a component below another one can be dropped under subtyping
    big = T("'c @ ('c + 'd)")
    both = T("'c @ ('c + 'd) + 'c @ 'c")
    t1, t2 = truncate(both, 3), truncate(big, 3)
    assert tree_sub(t1, t2) and tree_sub(t2, t1)
    assert not tree_eq(t1, t2)


@given(datatypes)
def test_generated_datatypes_are_datatypes(a):
    assert is_datatype(a)
    check_sort(a)
