"""Matching and small-step reduction.

Reduction is weak (never under a branch body) and leftmost-outermost, which
makes ``step`` a function.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from capc.syntax import (
    Abs,
    App,
    Compound,
    Const,
    Matchable,
    Var,
    apply_subst,
)


class FuelExhausted(RuntimeError):
    def __init__(self, term, steps):
        super().__init__(f"no normal form within {steps} steps")
        self.term = term
        self.steps = steps


@dataclass(frozen=True)
class Success:
    subst: Mapping

    def __hash__(self):
        return hash(tuple(sorted(self.subst.items(), key=lambda kv: kv[0])))


class _Outcome:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


FAIL = _Outcome("FAIL")
WAIT = _Outcome("WAIT")


def is_data(t) -> bool:
    while isinstance(t, App):
        t = t.fun
    return isinstance(t, Const)


def is_matchable_form(t) -> bool:
    return isinstance(t, Abs) or is_data(t)


def is_value(t) -> bool:
    if isinstance(t, Abs):
        return True
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    return isinstance(t, (Var, Const)) and all(is_value(a) for a in args)


def _disjoint_union(r1, r2):
    if r1 is FAIL or r2 is FAIL:
        return FAIL
    if r1 is WAIT or r2 is WAIT:
        return WAIT
    return Success({**r1.subst, **r2.subst})


def match(p, s):
    """Match pattern ``p`` against term ``s``: a :class:`Success`, ``FAIL`` or ``WAIT``."""
    if isinstance(p, Matchable):
        return Success({p.name: s})
    if isinstance(p, Const) and s == p:
        return Success({})
    if isinstance(p, Compound) and isinstance(s, App) and is_matchable_form(s):
        return _disjoint_union(match(p.left, s.fun), match(p.right, s.arg))
    if is_matchable_form(s):
        return FAIL
    return WAIT


def select_branch(abs_: Abs, arg):
    """Index and substitution of the branch that fires, or ``None`` if not a redex."""
    for j, b in enumerate(abs_.branches):
        r = match(b.pattern, arg)
        if r is FAIL:
            continue
        if r is WAIT:
            return None
        return j, r.subst
    return None


def step(t):
    """One leftmost-outermost reduction step, or ``None`` for a normal form."""
    if isinstance(t, App):
        if isinstance(t.fun, Abs):
            hit = select_branch(t.fun, t.arg)
            if hit is not None:
                j, subst = hit
                return apply_subst(subst, t.fun.branches[j].body)
        f = step(t.fun)
        if f is not None:
            return App(f, t.arg)
        a = step(t.arg)
        if a is not None:
            return App(t.fun, a)
    return None


def evaluate(t, fuel: int = 10_000):
    """Iterate :func:`step` until a normal form; raise :class:`FuelExhausted` otherwise."""
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    for _ in range(fuel):
        nxt = step(t)
        if nxt is None:
            return t
        t = nxt
    if step(t) is not None:
        raise FuelExhausted(t, fuel)
    return t


def trace(t, fuel: int = 10_000):
    """The reduction sequence from ``t``, at most ``fuel`` steps long."""
    out = [t]
    for _ in range(fuel):
        t = step(t)
        if t is None:
            break
        out.append(t)
    return out


eval = evaluate  # noqa: A001
