"""Greatest-fixed-point engine for subtyping and equivalence over term automata.

Phase one closes the initial state pair under :func:`children` to build the
universe. Phase two refines the partition (W, S, F): a pair popped from W that
passes :func:`check` moves to S, otherwise it is invalidated, which sends it to
F and returns its parents in S to W. The answer is whether the initial pair
ends in S.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from capc.automata import TermAutomaton, compile_types


class Kind(enum.Enum):
    SUBTYPE = "sub"
    EQUIVALENCE = "eq"


SUBTYPE = Kind.SUBTYPE
EQUIVALENCE = Kind.EQUIVALENCE


class InvariantViolation(AssertionError):
    pass


def children(m: TermAutomaton, p, kind: Kind) -> list:
    """Child obligations of the state pair ``p``, in a fixed order."""
    a, b = p
    la, lb = m.labels[a], m.labels[b]
    da, db = m.delta[a], m.delta[b]
    ka, kb = la.kind, lb.kind
    if ka == "@" and kb == "@":
        return [(da[0], db[0]), (da[1], db[1])]
    if ka == "->" and kb == "->":
        if kind is Kind.SUBTYPE:
            return [(db[0], da[0]), (da[1], db[1])]
        return [(da[0], db[0]), (da[1], db[1])]
    if ka == "+" and kb == "+":
        return [(x, y) for x in da for y in db]
    if ka == "+":
        return [(x, b) for x in da]
    if kb == "+":
        return [(a, y) for y in db]
    return []


@dataclass
class Universe:
    """Pair graph reachable from the root, with parent links."""

    automaton: TermAutomaton
    kind: Kind
    root: tuple
    nodes: list = field(default_factory=list)
    kids: dict = field(default_factory=dict)
    parents: dict = field(default_factory=dict)

    def u(self, p) -> int:
        return len(self.parents[p])

    def size(self) -> int:
        """Σ (1 + u(p)) over the universe; bounds the number of refinement steps."""
        return sum(1 + len(ps) for ps in self.parents.values())

    def __len__(self):
        return len(self.nodes)


def build_universe(m: TermAutomaton, root, kind: Kind) -> Universe:
    U = Universe(m, kind, root)
    U.nodes.append(root)
    U.parents[root] = {}
    stack = [root]
    while stack:
        p = stack.pop()
        ks = children(m, p, kind)
        U.kids[p] = ks
        for c in ks:
            if c not in U.parents:
                U.parents[c] = {}
                U.nodes.append(c)
                stack.append(c)
            U.parents[c][p] = None  # ordered set
    return U


def scc_order(U: Universe) -> list:
    """Pairs grouped by strongly connected component, children's components first.

    Iterative Tarjan; components come out in reverse topological order of the
    child relation.
    """
    index, low = {}, {}
    on_stack = set()
    stack, out = [], []
    counter = 0
    for start in U.nodes:
        if start in index:
            continue
        work = [(start, iter(U.kids[start]))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(U.kids[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.extend(comp)
    return out


def check(m: TermAutomaton, p, F, kind: Kind) -> bool:
    """Label-directed test of ``p`` against the refuted set ``F`` (direct scan)."""
    a, b = p
    la, lb = m.labels[a], m.labels[b]
    ka, kb = la.kind, lb.kind
    da, db = m.delta[a], m.delta[b]
    if ka in ("@", "->") and ka == kb:
        return all(c not in F for c in children(m, p, kind))
    if ka == "+" and kb == "+":
        fwd = all(any((x, y) not in F for y in db) for x in da)
        if kind is Kind.SUBTYPE or not fwd:
            return fwd
        return all(any((x, y) not in F for x in da) for y in db)
    if ka == "+":
        return all((x, b) not in F for x in da)
    if kb == "+":
        if kind is Kind.SUBTYPE:
            return any((a, y) not in F for y in db)
        return all((a, y) not in F for y in db)
    return ka in ("atom", "var") and la == lb


class _Tables:
    """Counting tables for union/union pairs.

    ``rows[p][i]`` counts partners ``j`` with ``(A_i, B_j)`` outside F; for
    equivalence ``cols[p][j]`` is the symmetric count. ``zeros[p]`` is the
    number of empty rows and columns.
    """

    def __init__(self, U: Universe, kind: Kind):
        m = U.automaton
        self.rows, self.cols, self.zeros, self.occ = {}, {}, {}, {}
        for p in U.nodes:
            a, b = p
            if m.labels[a].kind == "+" and m.labels[b].kind == "+":
                da, db = m.delta[a], m.delta[b]
                self.rows[p] = [len(db)] * len(da)
                if kind is Kind.EQUIVALENCE:
                    self.cols[p] = [len(da)] * len(db)
                self.zeros[p] = 0
                occ = {}
                for i, x in enumerate(da):
                    for j, y in enumerate(db):
                        occ.setdefault((x, y), []).append((i, j))
                self.occ[p] = occ

    def refute(self, parent, child) -> None:
        occ = self.occ.get(parent)
        if occ is None:
            return
        rows, cols = self.rows[parent], self.cols.get(parent)
        for i, j in occ.get(child, ()):
            rows[i] -= 1
            if rows[i] == 0:
                self.zeros[parent] += 1
            if cols is not None:
                cols[j] -= 1
                if cols[j] == 0:
                    self.zeros[parent] += 1

    def ok(self, p) -> bool:
        return self.zeros[p] == 0


@dataclass
class GfpStats:
    universe: int = 0
    size: int = 0
    iterations: int = 0
    invalidations: int = 0
    reenqueues: int = 0
    states: int = 0
    max_arity: int = 1

    def as_dict(self) -> dict:
        return dict(self.__dict__)


class Refinement:
    """Partition refinement over a built universe."""

    def __init__(self, U: Universe, scc: bool = True, debug: bool = False):
        self.U = U
        self.m = U.automaton
        self.kind = U.kind
        self.debug = debug
        self.tables = _Tables(U, U.kind)
        self.S, self.F = set(), set()
        order = scc_order(U) if scc else list(U.nodes)
        # pop() takes from the end, so the first pair in ``order`` goes last
        self.W = list(reversed(order))
        self.in_w = set(order)
        self.stats = GfpStats(universe=len(U), size=U.size(), states=len(self.m.labels))

    def _check(self, p) -> bool:
        if p in self.tables.zeros:
            return self.tables.ok(p)
        return check(self.m, p, self.F, self.kind)

    def invalidate(self, p) -> None:
        self.F.add(p)
        self.stats.invalidations += 1
        for q in self.U.parents[p]:
            self.tables.refute(q, p)
            if q in self.S:
                self.S.discard(q)
                self.W.append(q)
                self.in_w.add(q)
                self.stats.reenqueues += 1

    def run(self) -> bool:
        while self.W:
            p = self.W.pop()
            self.in_w.discard(p)
            self.stats.iterations += 1
            if self._check(p):
                self.S.add(p)
            else:
                self.invalidate(p)
            if self.debug:
                self.assert_invariants()
        return self.U.root in self.S

    def assert_invariants(self) -> None:
        W, S, F = self.in_w, self.S, self.F
        if len(W) + len(S) + len(F) != len(self.U) or (W & S) or (W & F) or (S & F):
            raise InvariantViolation("W, S, F do not partition the universe")
        for p in S:
            if not check(self.m, p, F, self.kind):
                raise InvariantViolation(f"pair {p} in S fails check")
        for p in self.tables.zeros:
            if self.tables.ok(p) != check(self.m, p, F, self.kind):
                raise InvariantViolation(f"counting table out of date at {p}")
        if self.stats.iterations > self.stats.size:
            raise InvariantViolation("iteration bound exceeded")


def gfp(a, b, kind: Kind = Kind.SUBTYPE, *, scc: bool = True, dedup: bool = True,
        stats: dict | None = None, debug: bool = False) -> bool:
    """Decide ``a ⪯ b`` (or ``a ≈ b``) on the automata of both types."""
    m, (ra, rb) = compile_types([a, b], dedup)
    return gfp_states(m, (ra, rb), kind, scc=scc, stats=stats, debug=debug)


def gfp_states(m: TermAutomaton, root, kind: Kind, *, scc: bool = True,
               stats: dict | None = None, debug: bool = False) -> bool:
    U = build_universe(m, root, kind)
    r = Refinement(U, scc=scc, debug=debug)
    result = r.run()
    if stats is not None:
        r.stats.max_arity = max([lab.arity for lab in m.labels if lab.kind == "+"] + [1])
        stats.update(r.stats.as_dict())
    return result
