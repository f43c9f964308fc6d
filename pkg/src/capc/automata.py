"""Term automata over the alphabet with n-ary unions.

A state stands for a head-normalised type: leading μ binders are unfolded and
unions are flattened, so a union state never has a union child.
"""
from __future__ import annotations

from dataclasses import dataclass

from capc.types import (
    Arrow,
    Atom,
    Comp,
    DVar,
    Mu,
    TVar,
    Union,
    free_vars,
    size as type_size,
    subst_type,
    union_of,
)


@dataclass(frozen=True)
class Label:
    kind: str  # "atom", "var", "@", "->" or "+"
    name: str = ""
    arity: int = 0

    def __str__(self):
        if self.kind == "atom":
            return "'" + self.name
        if self.kind == "var":
            return self.name
        if self.kind == "+":
            return f"+{self.arity}"
        return self.kind


APP = Label("@", arity=2)
ARROW = Label("->", arity=2)


class CompileError(ValueError):
    pass


@dataclass(frozen=True)
class TermAutomaton:
    labels: tuple
    delta: tuple  # delta[q] is the tuple of successor states, indexed from 0
    initial: int = 0
    keys: tuple = ()  # (node, environment) item or union of items, per state
    closures: tuple = ()

    def type_of(self, q: int):
        """The closed type state ``q`` stands for, rebuilt by substitution (diagnostics)."""
        key = self.keys[q]
        if key[0] == "+":
            return union_of([_item_type(k, self.closures) for k in key[1:]], dedup=False)
        return _item_type(key, self.closures)

    @property
    def states(self) -> range:
        return range(len(self.labels))

    def label(self, q: int) -> Label:
        return self.labels[q]

    def succ(self, q: int, i: int) -> int:
        """Transition on 1-based index ``i``."""
        kids = self.delta[q]
        if not 1 <= i <= len(kids):
            raise IndexError(f"state q{q} ({self.labels[q]}) has no child {i}")
        return kids[i - 1]

    def run(self, path, q: int | None = None) -> int:
        q = self.initial if q is None else q
        for i in path:
            q = self.succ(q, int(i))
        return q

    def size(self) -> int:
        """States plus transitions."""
        return len(self.labels) + sum(len(k) for k in self.delta)

    def dump(self) -> str:
        return "\n".join(
            f"q{q}: {self.labels[q]} -> [{', '.join(f'q{t}' for t in self.delta[q])}]"
            for q in self.states
        )

    def unroll(self, k: int, q: int | None = None):
        """Depth-``k`` tree below ``q`` as nested tuples; unions do not consume depth."""
        q = self.initial if q is None else q
        if k == 0:
            return ("∘",)
        lab = self.labels[q]
        if lab.kind == "+":
            return ("+",) + tuple(self.unroll(k, t) for t in self.delta[q])
        return (str(lab),) + tuple(self.unroll(k - 1, t) for t in self.delta[q])


def _restrict(env: dict, node) -> tuple:
    if not env:
        return ()
    return tuple(sorted(((v.name, env[v]) for v in free_vars(node) if v in env)))


class _Closures:
    """Hash-consed closures ``(binder, environment)``; environments hold closure ids."""

    def __init__(self):
        self.index = {}
        self.table = []

    def intern(self, binder, env: tuple) -> int:
        key = (binder, env)
        cid = self.index.get(key)
        if cid is None:
            cid = len(self.table)
            self.index[key] = cid
            self.table.append(key)
        return cid

    def env(self, binder_env: tuple, node) -> dict:
        # rebuild a variable-keyed environment from a name-keyed one
        if not binder_env:
            return {}
        names = dict(binder_env)
        return {v: names[v.name] for v in free_vars(node) if v.name in names}


def _components(node, env: dict, dedup: bool, fuel: int, cl: _Closures) -> list:
    """Head components of ``node`` under ``env`` as ``(node, env)`` items.

    ``env`` maps a bound variable to the id of its closure (binder plus the
    environment at the binder); unfolding re-enters the binder instead of
    substituting, so every item is a subterm of the input paired with a
    canonical environment.
    """
    out = []
    stack = [(node, env)]
    while stack:
        t, e = stack.pop()
        if isinstance(t, Union):
            stack.append((t.right, e))
            stack.append((t.left, e))
        elif isinstance(t, Mu):
            fuel -= 1
            if fuel < 0:
                raise CompileError(f"head unfolding does not terminate: {node}")
            inner = dict(e)
            inner[t.var] = cl.intern(t, _restrict(e, t))
            stack.append((t.body, inner))
        elif isinstance(t, (DVar, TVar)) and t in e:
            binder, benv = cl.table[e[t]]
            stack.append((binder, cl.env(benv, binder)))
        else:
            item = (t, _restrict(e, t))
            if not dedup or item not in out:
                out.append(item)
    return out


def _leaf_label(t) -> Label:
    if isinstance(t, Atom):
        return Label("atom", t.name)
    if isinstance(t, (DVar, TVar)):
        return Label("var", t.name)
    if isinstance(t, Comp):
        return APP
    if isinstance(t, Arrow):
        return ARROW
    raise CompileError(f"unexpected type node {t!r}")


def compile_types(types, dedup: bool = True):
    """Compile several closed types into one automaton sharing states.

    Returns the automaton (initial state is the first root) and the root of
    each input type.
    """
    index = {}
    labels, delta, keys = [], [], []
    pending = []
    cl = _Closures()

    def state_of(t, env, fuel):
        comps = _components(t, env, dedup, fuel, cl)
        key = comps[0] if len(comps) == 1 else ("+",) + tuple(comps)
        q = index.get(key)
        if q is None:
            q = len(labels)
            index[key] = q
            labels.append(None)
            delta.append(None)
            keys.append(key)
            pending.append((q, comps))
        return q

    roots = []
    for a in types:
        fuel = 64 * type_size(a) + 64
        roots.append(state_of(a, {}, fuel))
        while pending:
            q, comps = pending.pop()
            if len(comps) > 1:
                labels[q] = Label("+", arity=len(comps))
                delta[q] = tuple(state_of(c, cl.env(e, c), fuel) for c, e in comps)
                continue
            ((t, e),) = comps
            labels[q] = _leaf_label(t)
            e = cl.env(e, t)
            if isinstance(t, Comp):
                delta[q] = (state_of(t.left, e, fuel), state_of(t.right, e, fuel))
            elif isinstance(t, Arrow):
                delta[q] = (state_of(t.dom, e, fuel), state_of(t.cod, e, fuel))
            else:
                delta[q] = ()
    m = TermAutomaton(
        tuple(labels), tuple(delta), roots[0] if roots else 0, tuple(keys), tuple(cl.table)
    )
    return m, roots


def _item_type(item, closures):
    node, env = item
    names = dict(env)
    for v in sorted(free_vars(node), key=lambda v: v.name):
        if v.name in names:
            node = subst_type(v, _item_type(closures[names[v.name]], closures), node)
    return node


def compile_type(a, dedup: bool = True) -> TermAutomaton:
    """Build the term automaton of ``a``.

    With ``dedup`` syntactically identical union siblings share one edge.
    """
    return compile_types([a], dedup)[0]


compile = compile_type  # noqa: A001
