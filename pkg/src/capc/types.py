"""Contractive recursive types with union, type application and arrows.

Two sorts are distinguished: datatypes (variables ``α``, atoms, compounds
``D @ A``, unions of datatypes and ``μα.D``) and types, which additionally
admit type variables ``X``, arrows and ``μX.A``.

Types are immutable and hashable; structural equality is syntactic identity
(no ACI or fold/unfold quotient).
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Union as _U


class SortError(ValueError):
    """Raised for ill-sorted or non-contractive types."""


class UndefinedLookup(KeyError):
    pass


class MuType:
    __slots__ = ()

    def __str__(self) -> str:
        from capc.parser import render_type

        return render_type(self)


def _cached_hash(cls):
    # structural hashes are recomputed recursively otherwise
    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((cls.__name__,) + tuple(getattr(self, f) for f in cls._fields))
            object.__setattr__(self, "_h", h)
        return h

    cls.__hash__ = __hash__
    return cls


@_cached_hash
@dataclass(frozen=True, eq=True, repr=False)
class DVar(MuType):
    """Datatype variable ``α``."""

    name: str
    _fields = ("name",)

    def __repr__(self):
        return f"DVar({self.name!r})"


@_cached_hash
@dataclass(frozen=True, eq=True, repr=False)
class TVar(MuType):
    """Type variable ``X``."""

    name: str
    _fields = ("name",)

    def __repr__(self):
        return f"TVar({self.name!r})"


@_cached_hash
@dataclass(frozen=True, eq=True, repr=False)
class Atom(MuType):
    """Singleton type of the constant with the same name."""

    name: str
    _fields = ("name",)

    def __repr__(self):
        return f"Atom({self.name!r})"


@_cached_hash
@dataclass(frozen=True, eq=True, repr=False)
class Comp(MuType):
    """Type application ``D @ A``."""

    left: MuType
    right: MuType
    _fields = ("left", "right")

    def __repr__(self):
        return f"Comp({self.left!r}, {self.right!r})"


@_cached_hash
@dataclass(frozen=True, eq=True, repr=False)
class Arrow(MuType):
    dom: MuType
    cod: MuType
    _fields = ("dom", "cod")

    def __repr__(self):
        return f"Arrow({self.dom!r}, {self.cod!r})"


@_cached_hash
@dataclass(frozen=True, eq=True, repr=False)
class Union(MuType):
    left: MuType
    right: MuType
    _fields = ("left", "right")

    def __repr__(self):
        return f"Union({self.left!r}, {self.right!r})"


@_cached_hash
@dataclass(frozen=True, eq=True, repr=False)
class Mu(MuType):
    """Recursive type; the binder's sort is the class of ``var``."""

    var: _U[DVar, TVar]
    body: MuType
    _fields = ("var", "body")

    def __repr__(self):
        return f"Mu({self.var!r}, {self.body!r})"


Var = _U[DVar, TVar]
LEAVES = (DVar, TVar, Atom)


def mu(name: str, body: MuType) -> Mu:
    """Build ``μ`` with the binder sort chosen by case, as in the surface syntax."""
    var = TVar(name) if name[:1].isupper() else DVar(name)
    return Mu(var, body)


def union_of(types, dedup: bool = True) -> MuType:
    """Left-nested union of ``types``; identical components are merged if ``dedup``."""
    items = []
    for t in types:
        for c in flatten_union(t):
            if not dedup or c not in items:
                items.append(c)
    if not items:
        raise ValueError("empty union")
    return functools.reduce(Union, items)


# ---------------------------------------------------------------------------
# structural utilities


def size(a: MuType) -> int:
    """Number of constructors, leaves included."""
    if isinstance(a, LEAVES):
        return 1
    if isinstance(a, Mu):
        return 1 + size(a.body)
    return 1 + sum(size(c) for c in _kids(a))


def _kids(a: MuType) -> tuple:
    if isinstance(a, (Comp, Union)):
        return (a.left, a.right)
    if isinstance(a, Arrow):
        return (a.dom, a.cod)
    if isinstance(a, Mu):
        return (a.body,)
    return ()


@functools.lru_cache(maxsize=200_000)
def free_vars(a: MuType) -> frozenset:
    if isinstance(a, (DVar, TVar)):
        return frozenset((a,))
    if isinstance(a, Atom):
        return frozenset()
    if isinstance(a, Mu):
        return free_vars(a.body) - {a.var}
    return frozenset().union(*(free_vars(c) for c in _kids(a)))


def is_closed(a: MuType) -> bool:
    return not free_vars(a)


@functools.lru_cache(maxsize=200_000)
def is_datatype(a: MuType) -> bool:
    """Membership in the datatype grammar ``α | c | D@A | D⊕D | μα.D``."""
    if isinstance(a, (DVar, Atom)):
        return True
    if isinstance(a, Comp):
        return is_datatype(a.left)
    if isinstance(a, Union):
        return is_datatype(a.left) and is_datatype(a.right)
    if isinstance(a, Mu):
        return isinstance(a.var, DVar) and is_datatype(a.body)
    return False


def _guarded(v: Var, a: MuType, under: bool) -> bool:
    if a == v:
        return under
    if isinstance(a, LEAVES):
        return True
    if isinstance(a, Mu):
        if a.var == v:
            return True
        return _guarded(v, a.body, under)
    if isinstance(a, Union):
        return _guarded(v, a.left, under) and _guarded(v, a.right, under)
    return all(_guarded(v, c, True) for c in _kids(a))


@functools.lru_cache(maxsize=200_000)
def is_contractive(a: MuType) -> bool:
    """Every ``μV.B`` inside ``a`` has ``V`` only beneath ``@`` or ``⊃``."""
    if isinstance(a, LEAVES):
        return True
    if isinstance(a, Mu) and not _guarded(a.var, a.body, False):
        return False
    return all(is_contractive(c) for c in _kids(a))


def sort_errors(a: MuType) -> Iterator[str]:
    """Yield a message for each sorting violation in ``a``."""
    if isinstance(a, Comp):
        if not is_datatype(a.left):
            yield f"left argument of @ is not a datatype: {a.left}"
    elif isinstance(a, Mu):
        if isinstance(a.var, DVar) and not is_datatype(a.body):
            yield f"body of mu {a.var.name} is not a datatype: {a}"
    for c in _kids(a):
        yield from sort_errors(c)


def check_sort(a: MuType) -> None:
    """Raise :class:`SortError` unless ``a`` is well sorted and contractive."""
    if not is_contractive(a):
        raise SortError(f"type is not contractive: {a}")
    for msg in sort_errors(a):
        raise SortError(msg)


# ---------------------------------------------------------------------------
# substitution and unfolding

_fresh = itertools.count()


def _rename(v: Var) -> Var:
    base = v.name.split("__")[0]
    return type(v)(f"{base}__{next(_fresh)}")


def subst_type(v: Var, replacement: MuType, a: MuType) -> MuType:
    """Capture-avoiding ``[replacement/v]a``."""
    if isinstance(v, DVar) and not is_datatype(replacement):
        raise SortError(f"cannot substitute non-datatype {replacement} for {v.name}")
    if v not in free_vars(a):
        return a
    return _subst(v, replacement, free_vars(replacement), a)


def _subst(v, r, fv_r, a):
    if a == v:
        return r
    if v not in free_vars(a):
        return a
    if isinstance(a, Mu):
        var, body = a.var, a.body
        if var in fv_r:
            new = _rename(var)
            body = _subst(var, new, frozenset((new,)), body)
            var = new
        return Mu(var, _subst(v, r, fv_r, body))
    return type(a)(*(_subst(v, r, fv_r, c) for c in _kids(a)))


def unfold_mu(a: Mu) -> MuType:
    """One fold step: ``μV.B`` becomes ``[μV.B/V]B``."""
    return subst_type(a.var, a, a.body)


def flatten_union(a: MuType) -> list:
    """Components of the maximal union ``a``, left to right."""
    out = []
    stack = [a]
    while stack:
        t = stack.pop()
        if isinstance(t, Union):
            stack.append(t.right)
            stack.append(t.left)
        else:
            out.append(t)
    return out


def unfold_first_mu(a: MuType):
    """Unfold the leftmost μ component of the maximal union ``a`` in place.

    Returns ``None`` when no component is a μ. Association of the surrounding
    union is preserved.
    """
    if isinstance(a, Mu):
        return unfold_mu(a)
    if isinstance(a, Union):
        left = unfold_first_mu(a.left)
        if left is not None:
            return Union(left, a.right)
        right = unfold_first_mu(a.right)
        if right is not None:
            return Union(a.left, right)
    return None


def head_components(a: MuType, dedup: bool = True) -> list:
    """Components of ``a`` after unfolding μ heads until none is ``μ`` or ``⊕``."""
    out = []
    stack = [a]
    while stack:
        t = stack.pop()
        if isinstance(t, Union):
            stack.append(t.right)
            stack.append(t.left)
        elif isinstance(t, Mu):
            stack.append(unfold_mu(t))
        elif not dedup or t not in out:
            out.append(t)
    return out


# ---------------------------------------------------------------------------
# lookup at positions


def symbol(a: MuType) -> str:
    """Rendering of a leaf or constructor symbol as used by :func:`lookup`."""
    if isinstance(a, Atom):
        return "'" + a.name
    if isinstance(a, (DVar, TVar)):
        return a.name
    if isinstance(a, Comp):
        return "@"
    if isinstance(a, Arrow):
        return "->"
    raise ValueError(f"no symbol for {a!r}")


def lookup(a: MuType, pos) -> frozenset:
    """Symbols ``a`` admits at position ``pos`` (a sequence over {1, 2})."""
    pos = tuple(pos)
    if isinstance(a, Union):
        return lookup(a.left, pos) | lookup(a.right, pos)
    if isinstance(a, Mu):
        return lookup(unfold_mu(a), pos)
    if not pos:
        return frozenset((symbol(a),))
    if isinstance(a, (Comp, Arrow)):
        i, rest = pos[0], pos[1:]
        if i not in (1, 2):
            raise UndefinedLookup(pos)
        return lookup(_kids(a)[i - 1], rest)
    raise UndefinedLookup(f"cannot descend into {a} at {pos}")


# ---------------------------------------------------------------------------
# finite truncations of the infinite unfolding

CUT = "∘"


@dataclass(frozen=True)
class Tree:
    """Finite tree over leaf symbols, ``@``, ``->``, binary ``+`` and ``∘``."""

    label: str
    children: tuple = ()
    _h: int = field(default=0, compare=False, repr=False)

    def __hash__(self):
        if not self._h:
            object.__setattr__(self, "_h", hash((self.label, self.children)) or 1)
        return self._h

    def __str__(self):
        if not self.children:
            return self.label
        if self.label == "+":
            return f"({self.children[0]} + {self.children[1]})"
        return f"({self.children[0]} {self.label} {self.children[1]})"


CUT_TREE = Tree(CUT)


class TruncationFuelExhausted(RuntimeError):
    pass


def truncate(a: MuType, k: int) -> Tree:
    """The depth-``k`` truncation of the infinite tree denoted by ``a``.

    ``+`` does not consume depth; μ is unfolded in place.
    """
    if k < 0:
        raise ValueError("depth must be non-negative")
    # In a contractive type a stretch without @ or -> visits each syntax node
    # at most once, so a longer stretch means the input is not contractive.
    return _cut(a, k, 0, size(a) + 1)


def _cut(a, k, run, limit):
    if k == 0:
        return CUT_TREE
    while True:
        run += 1
        if run > limit:
            raise TruncationFuelExhausted(f"truncation did not terminate on {a}")
        if not isinstance(a, Mu):
            break
        a = unfold_mu(a)
    if isinstance(a, LEAVES):
        return Tree(symbol(a))
    if isinstance(a, Union):
        return Tree("+", (_cut(a.left, k, run, limit), _cut(a.right, k, run, limit)))
    label = "@" if isinstance(a, Comp) else "->"
    l, r = _kids(a)
    return Tree(label, (_cut(l, k - 1, 0, limit), _cut(r, k - 1, 0, limit)))


def tree_components(t: Tree) -> list:
    out = []
    stack = [t]
    while stack:
        s = stack.pop()
        if s.label == "+":
            stack.append(s.children[1])
            stack.append(s.children[0])
        else:
            out.append(s)
    return out


def tree_eq(t1: Tree, t2: Tree) -> bool:
    """Equality of finite trees modulo associativity, commutativity and idempotence of ``+``."""
    memo = {}

    def eq(x, y):
        key = (x, y)
        if key in memo:
            return memo[key]
        xs, ys = tree_components(x), tree_components(y)
        if len(xs) + len(ys) > 2:
            r = all(any(eq(a, b) for b in ys) for a in xs) and all(
                any(eq(a, b) for a in xs) for b in ys
            )
        elif x.label != y.label or len(x.children) != len(y.children):
            r = False
        else:
            r = all(eq(a, b) for a, b in zip(x.children, y.children))
        memo[key] = r
        return r

    return eq(t1, t2)


def tree_sub(t1: Tree, t2: Tree) -> bool:
    """Subtyping of finite trees; ``->`` is contravariant in its domain."""
    memo = {}

    def sub(x, y):
        key = (x, y)
        if key in memo:
            return memo[key]
        xs, ys = tree_components(x), tree_components(y)
        if len(xs) > 1:
            r = all(sub(a, y) for a in xs)
        elif len(ys) > 1:
            r = any(sub(x, b) for b in ys)
        elif x.label != y.label or len(x.children) != len(y.children):
            r = False
        elif x.label == "->":
            r = sub(y.children[0], x.children[0]) and sub(x.children[1], y.children[1])
        else:
            r = all(sub(a, b) for a, b in zip(x.children, y.children))
        memo[key] = r
        return r

    return sub(t1, t2)
