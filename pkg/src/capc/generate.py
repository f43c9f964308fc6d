"""Seeded random generation of well-sorted, contractive, closed μ-types."""
from __future__ import annotations

import random

from capc.types import (
    Arrow,
    Atom,
    Comp,
    DVar,
    Mu,
    TVar,
    Union,
    flatten_union,
    size,
    unfold_first_mu,
)

ATOMS = ("a", "b", "c", "d")
DATA, TYPE = "data", "type"


class _Gen:
    def __init__(self, rng: random.Random, atoms=ATOMS, max_width=4, max_mu=3):
        self.rng = rng
        self.atoms = atoms
        self.max_width = max_width
        self.max_mu = max_mu
        self.names = 0

    def fresh(self, sort):
        self.names += 1
        return DVar(f"a{self.names}") if sort == DATA else TVar(f"X{self.names}")

    def leaf(self, sort, env):
        # env: list of (var, guarded)
        usable = [v for v, g in env if g and (sort == TYPE or isinstance(v, DVar))]
        if usable and self.rng.random() < 0.45:
            return self.rng.choice(usable)
        return Atom(self.rng.choice(self.atoms))

    def gen(self, budget, sort, env, mu_depth=0):
        if budget <= 1:
            return self.leaf(sort, env)
        r = self.rng.random()
        choices = ["comp", "union"]
        if sort == TYPE:
            choices.append("arrow")
        if mu_depth < self.max_mu and budget >= 3:
            choices.append("mu")
        pick = self.rng.choice(choices) if r < 0.85 else "leaf"
        if pick == "leaf":
            return self.leaf(sort, env)
        guarded = [(v, True) for v, _ in env]
        if pick == "comp":
            left, right = self.split(budget - 1, 2)
            return Comp(
                self.gen(left, DATA, guarded, mu_depth),
                self.gen(right, TYPE, guarded, mu_depth),
            )
        if pick == "arrow":
            left, right = self.split(budget - 1, 2)
            return Arrow(
                self.gen(left, TYPE, guarded, mu_depth),
                self.gen(right, TYPE, guarded, mu_depth),
            )
        if pick == "union":
            width = self.rng.randint(2, min(self.max_width, max(2, budget // 2 + 1)))
            # a union of w components needs w - 1 binary nodes
            parts = self.split(max(budget - (width - 1), width), width)
            comps = [self.gen(n, sort, env, mu_depth) for n in parts]
            return _nest(self.rng, comps)
        bsort = DATA if sort == DATA or self.rng.random() < 0.4 else TYPE
        v = self.fresh(bsort)
        body = self.gen(budget - 1, bsort, env + [(v, False)], mu_depth + 1)
        return Mu(v, body)

    def split(self, total, k):
        total = max(total, k)
        cuts = sorted(self.rng.sample(range(1, total), k - 1)) if total > k else list(range(1, k))
        bounds = [0] + cuts + [total]
        return [bounds[i + 1] - bounds[i] for i in range(k)]


def _nest(rng, comps):
    """Random association of a list of union components."""
    if len(comps) == 1:
        return comps[0]
    k = rng.randint(1, len(comps) - 1)
    return Union(_nest(rng, comps[:k]), _nest(rng, comps[k:]))


def union_width(t) -> int:
    """Largest number of components of any maximal union inside ``t``."""
    best = 1
    stack = [(t, False)]
    while stack:
        n, inside_union = stack.pop()
        if isinstance(n, Union):
            if not inside_union:
                best = max(best, len(flatten_union(n)))
            stack.append((n.left, True))
            stack.append((n.right, True))
        elif isinstance(n, Mu):
            stack.append((n.body, False))
        elif isinstance(n, Comp):
            stack += [(n.left, False), (n.right, False)]
        elif isinstance(n, Arrow):
            stack += [(n.dom, False), (n.cod, False)]
    return best


def generate(seed, size_limit: int = 8, sort: str = TYPE, **kw):
    """A well-sorted contractive closed type with at most ``size_limit`` constructors."""
    if size_limit < 1:
        raise ValueError("size must be at least 1")
    rng = random.Random(seed)
    width = kw.get("max_width", 4)
    for _ in range(64):
        t = _Gen(rng, **kw).gen(rng.randint(1, size_limit), sort, [])
        if size(t) <= size_limit and union_width(t) <= width:
            return t
    return Atom(rng.choice(kw.get("atoms", ATOMS)))


# ---------------------------------------------------------------------------
# related pairs


def _mutate(rng, t, sort):
    """Replace one random leaf with a different atom."""
    if isinstance(t, Atom):
        others = [a for a in ATOMS if a != t.name]
        return Atom(rng.choice(others))
    if isinstance(t, (DVar, TVar)):
        return Atom(rng.choice(ATOMS))
    if isinstance(t, Mu):
        return Mu(t.var, _mutate(rng, t.body, DATA if isinstance(t.var, DVar) else TYPE))
    if isinstance(t, Comp):
        if rng.random() < 0.5:
            return Comp(_mutate(rng, t.left, DATA), t.right)
        return Comp(t.left, _mutate(rng, t.right, TYPE))
    if isinstance(t, Arrow):
        if rng.random() < 0.5:
            return Arrow(_mutate(rng, t.dom, TYPE), t.cod)
        return Arrow(t.dom, _mutate(rng, t.cod, TYPE))
    if rng.random() < 0.5:
        return Union(_mutate(rng, t.left, sort), t.right)
    return Union(t.left, _mutate(rng, t.right, sort))


def derive(rng: random.Random, t, sort: str = TYPE):
    """A type related to ``t`` by one of several rewrites; often equivalent, sometimes not."""
    op = rng.choice(["unfold", "extend", "reassoc", "commute", "mutate", "dup"])
    if op == "unfold":
        u = unfold_first_mu(t)
        return u if u is not None else t
    if op == "extend":
        return Union(t, generate(rng.random(), 4, sort))
    comps = flatten_union(t)
    if op == "reassoc":
        return _nest(rng, comps)
    if op == "commute":
        rng.shuffle(comps)
        return _nest(rng, comps)
    if op == "dup":
        return _nest(rng, comps + [rng.choice(comps)])
    return _mutate(rng, t, sort)


def generate_pair(seed, size_limit: int = 12):
    """Two types of one sort, each within ``size_limit``.

    About a third are independent draws; the rest are derived by rewriting,
    which yields a healthy share of related pairs.
    """
    rng = random.Random(seed)
    while True:
        sort = DATA if rng.random() < 0.4 else TYPE
        a = generate(rng.random(), size_limit, sort)
        if rng.random() < 0.35:
            b = generate(rng.random(), size_limit, sort)
        else:
            b = derive(rng, a, sort)
            if rng.random() < 0.3:
                b = derive(rng, b, sort)
        if max(size(a), size(b)) <= size_limit and max(union_width(a), union_width(b)) <= 4:
            break
    if rng.random() < 0.5:
        a, b = b, a
    return a, b
