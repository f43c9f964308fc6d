"""Typed pattern compatibility.

Two typed branches ``p : A`` then ``q : B`` are compatible when, wherever the
patterns could both match the same argument, ``B ⪯ A``.
"""
from __future__ import annotations

from dataclasses import dataclass

from capc.syntax import Compound, Const, Matchable, positions, subpattern_at, subsumes
from capc.types import Comp, lookup


class PatternShapeError(ValueError):
    """A compound pattern was paired with a type that is not ``@``-headed."""


@dataclass(frozen=True)
class TypedPattern:
    pattern: object
    theta: tuple
    ty: object


def mpos(ps) -> frozenset:
    """Positions with no proper extension in ``ps``."""
    ps = frozenset(ps)
    prefixes = {pi[:k] for pi in ps for k in range(len(pi))}
    return frozenset(pi for pi in ps if pi not in prefixes)


def cpos(p, q) -> frozenset:
    """Maximal common positions where the subpattern of ``p`` does not subsume that of ``q``."""
    common = mpos(positions(p) & positions(q))
    return frozenset(
        pi for pi in common if not subsumes(subpattern_at(p, pi), subpattern_at(q, pi))
    )


def pcomp(tp: TypedPattern, tq: TypedPattern) -> bool:
    """Whether the two typed patterns may overlap at every mismatching position."""
    return _pcomp(tp.pattern, tp.ty, tq.pattern, tq.ty)


def _pcomp(p, a, q, b) -> bool:
    if isinstance(p, Compound) and isinstance(q, Compound):
        if not isinstance(a, Comp) or not isinstance(b, Comp):
            raise PatternShapeError(f"compound pattern typed by non-@ type: {a} / {b}")
        return _pcomp(p.left, a.left, q.left, b.left) and _pcomp(
            p.right, a.right, q.right, b.right
        )
    if isinstance(p, Matchable):
        return True
    if isinstance(p, Const) and p == q:
        return True
    return bool(lookup(a, ()) & lookup(b, ()))


def comp(tp: TypedPattern, tq: TypedPattern, engine) -> bool:
    return not pcomp(tp, tq) or engine.subtype(tq.ty, tp.ty)


def first_incompatible(branches, engine):
    """The first pair ``(i, j)`` with ``i < j`` that fails :func:`comp`, or ``None``."""
    for i, tp in enumerate(branches):
        for j in range(i + 1, len(branches)):
            if not comp(tp, branches[j], engine):
                return i, j
    return None


def list_compatible(branches, engine) -> bool:
    return first_incompatible(list(branches), engine) is None
