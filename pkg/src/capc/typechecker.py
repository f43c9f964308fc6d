"""Syntax-directed type checking for terms and patterns."""
from __future__ import annotations

import enum
from typing import Mapping

from capc.compat import TypedPattern, first_incompatible
from capc.relations import Engine
from capc.syntax import Abs, App, Compound, Const, Matchable, Var
from capc.types import (
    Arrow,
    Atom,
    Comp,
    Mu,
    SortError,
    Union,
    check_sort,
    is_datatype,
    union_of,
    unfold_mu,
)


class ErrorKind(str, enum.Enum):
    UnboundVariable = "UnboundVariable"
    NotADatatype = "NotADatatype"
    NotAFunction = "NotAFunction"
    ArgumentMismatch = "ArgumentMismatch"
    IncompatibleBranches = "IncompatibleBranches"
    SortError = "SortError"
    UnfoldFailure = "UnfoldFailure"
    InvalidPattern = "InvalidPattern"


class TypeCheckError(Exception):
    def __init__(self, kind: ErrorKind, path=(), detail: str = ""):
        super().__init__(f"{kind.value} at {list(path)}: {detail}")
        self.kind = kind
        self.path = tuple(path)
        self.detail = detail


class UnfoldFailure(TypeCheckError):
    def __init__(self, ty):
        super().__init__(ErrorKind.UnfoldFailure, (), f"not a union of arrows: {ty}")
        self.ty = ty


def tcp(theta: Mapping, p, path=()):
    """Type of pattern ``p`` under the matchable context ``theta``."""
    if isinstance(p, Matchable):
        if p.name not in theta:
            raise TypeCheckError(ErrorKind.UnboundVariable, path, f"matchable {p.name} has no type")
        return theta[p.name]
    if isinstance(p, Const):
        return Atom(p.name)
    if isinstance(p, Compound):
        a = tcp(theta, p.left, path)
        b = tcp(theta, p.right, path)
        if not is_datatype(a):
            raise TypeCheckError(
                ErrorKind.NotADatatype, path, f"head of compound pattern {p} has type {a}"
            )
        return Comp(a, b)
    raise TypeError(f"not a pattern: {p!r}")


def unfold(a) -> list:
    """Arrow components ``[(dom, cod), ...]`` of a type equivalent to a union of arrows."""
    out = []
    fuel = [10_000]

    def go(t):
        fuel[0] -= 1
        if fuel[0] < 0:
            raise UnfoldFailure(a)
        if isinstance(t, Arrow):
            out.append((t.dom, t.cod))
        elif isinstance(t, Union):
            go(t.left)
            go(t.right)
        elif isinstance(t, Mu):
            go(unfold_mu(t))
        else:
            raise UnfoldFailure(a)

    go(a)
    return out


def _check_type(ty, path, what):
    try:
        check_sort(ty)
    except SortError as e:
        raise TypeCheckError(ErrorKind.SortError, path, f"{what}: {e}") from None


def validate(t, gamma: Mapping | None = None, path=()) -> None:
    """Reject ill-sorted or non-contractive annotations before checking."""
    for name, ty in (gamma or {}).items():
        _check_type(ty, (), f"context entry {name}")
    _validate(t, tuple(path))


def _validate(t, path):
    if isinstance(t, App):
        _validate(t.fun, path + (1,))
        _validate(t.arg, path + (2,))
    elif isinstance(t, Abs):
        for i, b in enumerate(t.branches, 1):
            for name, ty in b.theta:
                _check_type(ty, path + (i,), f"annotation of {name}")
            _validate(b.body, path + (i,))


def tc(gamma: Mapping, t, engine: Engine | None = None, path=()):
    """Type of ``t`` under ``gamma``; raises :class:`TypeCheckError`."""
    engine = engine or Engine()
    return _tc(dict(gamma), t, engine, tuple(path))


def _tc(gamma, t, engine, path):
    if isinstance(t, Var):
        if t.name not in gamma:
            raise TypeCheckError(ErrorKind.UnboundVariable, path, f"variable {t.name}")
        return gamma[t.name]
    if isinstance(t, Const):
        return Atom(t.name)
    if isinstance(t, Abs):
        doms, cods, typed = [], [], []
        for i, b in enumerate(t.branches, 1):
            theta = b.context
            a = tcp(theta, b.pattern, path + (i,))
            body = _tc({**gamma, **theta}, b.body, engine, path + (i,))
            doms.append(a)
            cods.append(body)
            typed.append(TypedPattern(b.pattern, b.theta, a))
        bad = first_incompatible(typed, engine)
        if bad is not None:
            i, j = bad
            raise TypeCheckError(
                ErrorKind.IncompatibleBranches,
                path + (j + 1,),
                f"branch {j + 1} ({typed[j].ty}) overlaps branch {i + 1} ({typed[i].ty}) "
                f"without being a subtype of it",
            )
        return Arrow(union_of(doms), union_of(cods))
    if isinstance(t, App):
        a = _tc(gamma, t.fun, engine, path + (1,))
        c = _tc(gamma, t.arg, engine, path + (2,))
        if is_datatype(a):
            return Comp(a, c)
        try:
            arrows = unfold(a)
        except UnfoldFailure:
            raise TypeCheckError(
                ErrorKind.NotAFunction, path + (1,), f"applied term has type {a}"
            ) from None
        for k, (dom, _) in enumerate(arrows, 1):
            if not engine.subtype(c, dom):
                raise TypeCheckError(
                    ErrorKind.ArgumentMismatch,
                    path + (2,),
                    f"argument type {c} is not a subtype of domain {k} ({dom})",
                )
        return union_of([cod for _, cod in arrows])
    raise TypeError(f"not a term: {t!r}")


def check_term(gamma: Mapping, t, engine: Engine | None = None):
    """Validate then type-check."""
    validate(t, gamma)
    return tc(gamma, t, engine)
