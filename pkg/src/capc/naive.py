"""Invertible coinductive checkers for equivalence and subtyping on μ-types.

Both functions take an assumption set ``S`` and either return an extended set
witnessing the relation or ``None``. Internally ``S`` is one mutable set with
an undo trail, so ``seq`` can roll back a failed alternative cheaply.
"""
from __future__ import annotations

import sys
from contextlib import contextmanager

from capc.types import (
    Arrow,
    Atom,
    Comp,
    DVar,
    Mu,
    TVar,
    Union,
    flatten_union,
    is_datatype,
    size,
    unfold_first_mu,
    unfold_mu,
)

_LEAVES = (Atom, DVar, TVar)


class NaiveFuelExhausted(RuntimeError):
    """Recursion depth guard tripped; indicates a checker bug, not a verdict."""


class _Fail(Exception):
    pass


class _State:
    __slots__ = ("S", "trail", "fuel", "calls")

    def __init__(self, S, fuel):
        self.S = set(S)
        self.trail = []
        self.fuel = fuel
        self.calls = 0

    def add(self, pair):
        self.S.add(pair)
        self.trail.append(pair)

    def mark(self):
        return len(self.trail)

    def rollback(self, mark):
        while len(self.trail) > mark:
            self.S.discard(self.trail.pop())

    def seq(self, fn, alternatives):
        """Ordered alternation: keep the first alternative that does not fail."""
        for a, b in alternatives:
            m = self.mark()
            try:
                fn(self, a, b)
                return
            except _Fail:
                self.rollback(m)
        raise _Fail


@contextmanager
def _deep_recursion(limit):
    old = sys.getrecursionlimit()
    if limit > old:
        sys.setrecursionlimit(limit)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


def _guard(st, depth):
    st.calls += 1
    if depth > st.fuel:
        raise NaiveFuelExhausted(f"depth {depth} exceeds {st.fuel}")


def _eq(st, a, b, depth=0):
    if (a, b) in st.S:
        return
    _guard(st, depth)
    st.add((a, b))
    d = depth + 1
    if isinstance(a, _LEAVES) and a == b:
        return
    if isinstance(a, Comp) and isinstance(b, Comp):
        if not (is_datatype(a.left) and is_datatype(b.left)):
            raise _Fail
        _eq(st, a.left, b.left, d)
        _eq(st, a.right, b.right, d)
        return
    if isinstance(a, Arrow) and isinstance(b, Arrow):
        _eq(st, a.dom, b.dom, d)
        _eq(st, a.cod, b.cod, d)
        return
    a2 = unfold_first_mu(a)
    if a2 is not None:
        _eq(st, a2, b, d)
        return
    b2 = unfold_first_mu(b)
    if b2 is not None:
        _eq(st, a, b2, d)
        return
    xs, ys = flatten_union(a), flatten_union(b)
    if len(xs) + len(ys) > 2:
        step = lambda s, x, y: _eq(s, x, y, d)  # noqa: E731
        for x in xs:
            st.seq(step, [(x, y) for y in ys])
        for y in ys:
            st.seq(step, [(x, y) for x in xs])
        return
    raise _Fail


def _sub(st, a, b, depth=0):
    if (a, b) in st.S:
        return
    _guard(st, depth)
    st.add((a, b))
    d = depth + 1
    if isinstance(a, _LEAVES) and a == b:
        return
    if isinstance(a, Comp) and isinstance(b, Comp):
        if not (is_datatype(a.left) and is_datatype(b.left)):
            raise _Fail
        _sub(st, a.left, b.left, d)
        _sub(st, a.right, b.right, d)
        return
    if isinstance(a, Arrow) and isinstance(b, Arrow):
        _sub(st, b.dom, a.dom, d)
        _sub(st, a.cod, b.cod, d)
        return
    if isinstance(a, Mu):
        _sub(st, unfold_mu(a), b, d)
        return
    if isinstance(b, Mu):
        _sub(st, a, unfold_mu(b), d)
        return
    if isinstance(a, Union):
        for x in flatten_union(a):
            _sub(st, x, b, d)
        return
    if isinstance(b, Union):
        st.seq(lambda s, x, y: _sub(s, x, y, d), [(a, y) for y in flatten_union(b)])
        return
    raise _Fail


def _run(fn, S, a, b, stats):
    n = size(a) + size(b)
    st = _State(S or (), fuel=10 * n * n)
    try:
        with _deep_recursion(max(10_000, 4 * st.fuel + 1000)):
            fn(st, a, b)
        result = frozenset(st.S)
    except _Fail:
        result = None
    if stats is not None:
        stats["calls"] = stats.get("calls", 0) + st.calls
    return result


def eqtype(S, a, b, stats=None):
    """Assumption set proving ``a ≈ b`` extended from ``S``, or ``None``."""
    return _run(_eq, S, a, b, stats)


def subtype(S, a, b, stats=None):
    """Assumption set proving ``a ⪯ b`` extended from ``S``, or ``None``."""
    return _run(_sub, S, a, b, stats)


def eqtype_naive(a, b, stats=None) -> bool:
    return eqtype(frozenset(), a, b, stats) is not None


def subtype_naive(a, b, stats=None) -> bool:
    return subtype(frozenset(), a, b, stats) is not None
