"""Terms, patterns, branches and the structural operations on them.

Constants are shared between terms and patterns. Matchables are the variables
of a pattern; they bind in the body of their branch.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from capc.types import MuType


class ValidationError(ValueError):
    """A branch violates linearity or its context does not cover its matchables."""


class UndefinedPosition(KeyError):
    pass


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return "'" + self.name


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"

    def __str__(self):
        from capc.parser import render_term

        return render_term(self)


@dataclass(frozen=True)
class Matchable:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Compound:
    """Compound pattern ``p q``."""

    left: "Pattern"
    right: "Pattern"

    def __str__(self):
        from capc.parser import render_pattern

        return render_pattern(self)


@dataclass(frozen=True)
class Branch:
    """``pattern [theta] => body``; ``theta`` is stored as sorted (name, type) pairs."""

    pattern: "Pattern"
    theta: tuple
    body: "Term"

    def __init__(self, pattern, theta, body):
        if isinstance(theta, Mapping):
            items = tuple(sorted(theta.items()))
        else:
            items = tuple(sorted(theta))
        object.__setattr__(self, "pattern", pattern)
        object.__setattr__(self, "theta", items)
        object.__setattr__(self, "body", body)
        _validate_branch(self)

    @property
    def context(self) -> dict:
        return dict(self.theta)


@dataclass(frozen=True)
class Abs:
    branches: tuple

    def __init__(self, branches: Iterable[Branch]):
        bs = tuple(branches)
        if not bs:
            raise ValidationError("an abstraction needs at least one branch")
        object.__setattr__(self, "branches", bs)

    def __str__(self):
        from capc.parser import render_term

        return render_term(self)


Term = Var | Const | App | Abs
Pattern = Matchable | Const | Compound


def matchable_list(p) -> list:
    """Matchable names of ``p`` in left-to-right order, repeats included."""
    if isinstance(p, Matchable):
        return [p.name]
    if isinstance(p, Compound):
        return matchable_list(p.left) + matchable_list(p.right)
    return []


def free_matchables(p) -> frozenset:
    return frozenset(matchable_list(p))


def is_linear(p) -> bool:
    names = matchable_list(p)
    return len(names) == len(set(names))


def _validate_branch(b: Branch) -> None:
    names = matchable_list(b.pattern)
    dup = {n for n in names if names.count(n) > 1}
    if dup:
        raise ValidationError(f"pattern is not linear: {sorted(dup)} repeated")
    keys = [k for k, _ in b.theta]
    if len(keys) != len(set(keys)):
        raise ValidationError("context binds a name twice")
    for _, ty in b.theta:
        if not isinstance(ty, MuType):
            raise ValidationError(f"context entry is not a type: {ty!r}")
    if set(keys) != set(names):
        raise ValidationError(
            f"context domain {sorted(keys)} differs from matchables {sorted(set(names))}"
        )


def free_vars(t) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return frozenset()
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    out = frozenset()
    for b in t.branches:
        out |= free_vars(b.body) - free_matchables(b.pattern)
    return out


def is_closed(t) -> bool:
    return not free_vars(t)


# ---------------------------------------------------------------------------
# substitution

_fresh = itertools.count()


def _fresh_name(base: str, avoid: set) -> str:
    base = base.split("_")[0] or "v"
    while True:
        cand = f"{base}_{next(_fresh)}"
        if cand not in avoid:
            return cand


def _rename_pattern(p, ren: dict):
    if isinstance(p, Matchable):
        return Matchable(ren.get(p.name, p.name))
    if isinstance(p, Compound):
        return Compound(_rename_pattern(p.left, ren), _rename_pattern(p.right, ren))
    return p


def apply_subst(s: Mapping[str, "Term"], t):
    """Capture-avoiding simultaneous substitution of terms for free variables."""
    if not s:
        return t
    if isinstance(t, Var):
        return s.get(t.name, t)
    if isinstance(t, Const):
        return t
    if isinstance(t, App):
        return App(apply_subst(s, t.fun), apply_subst(s, t.arg))
    return Abs(_subst_branch(s, b) for b in t.branches)


def _subst_branch(s, b: Branch) -> Branch:
    bound = free_matchables(b.pattern)
    body_fv = free_vars(b.body)
    inner = {k: v for k, v in s.items() if k not in bound and k in body_fv}
    if not inner:
        return b
    range_fv = frozenset().union(*(free_vars(v) for v in inner.values()))
    clash = bound & range_fv
    pattern, theta, body = b.pattern, b.context, b.body
    if clash:
        avoid = set(range_fv) | body_fv | bound | set(inner)
        ren = {}
        for n in sorted(clash):
            ren[n] = _fresh_name(n, avoid)
            avoid.add(ren[n])
        pattern = _rename_pattern(pattern, ren)
        theta = {ren.get(k, k): v for k, v in theta.items()}
        body = apply_subst({k: Var(v) for k, v in ren.items()}, body)
    return Branch(pattern, theta, apply_subst(inner, body))


def pattern_to_term(p):
    """Read a pattern as a term: matchables become variables."""
    if isinstance(p, Matchable):
        return Var(p.name)
    if isinstance(p, Compound):
        return App(pattern_to_term(p.left), pattern_to_term(p.right))
    return p


# ---------------------------------------------------------------------------
# patterns: subsumption and positions


def subsumes(p, q) -> bool:
    """True iff some substitution of patterns for the matchables of ``p`` yields ``q``.

    Linearity of ``p`` means each matchable is instantiated independently.
    """
    if isinstance(p, Matchable):
        return True
    if isinstance(p, Const):
        return p == q
    return (
        isinstance(q, Compound) and subsumes(p.left, q.left) and subsumes(p.right, q.right)
    )


def positions(p) -> frozenset:
    if isinstance(p, Compound):
        return frozenset(
            {()}
            | {(1,) + pi for pi in positions(p.left)}
            | {(2,) + pi for pi in positions(p.right)}
        )
    return frozenset({()})


def subpattern_at(p, pos):
    for i in pos:
        if not isinstance(p, Compound) or i not in (1, 2):
            raise UndefinedPosition(tuple(pos))
        p = p.left if i == 1 else p.right
    return p


def format_position(pos) -> str:
    return "".join(map(str, pos)) or "ε"


def term_size(t) -> int:
    if isinstance(t, (Var, Const)):
        return 1
    if isinstance(t, App):
        return 1 + term_size(t.fun) + term_size(t.arg)
    return 1 + sum(term_size(b.body) + term_size(pattern_to_term(b.pattern)) for b in t.branches)
