"""Scaling measurements for the two relation engines.

Two families are provided:

* ``width_family(d, k)``: ``k`` nested recursive types, each a union of
  width ``d`` whose first component descends one level and whose other
  components loop back.  Compared against the same type with every union
  reversed, so the product universe is dominated by union/union pairs.
* ``exponential_type(n)`` from :mod:`capc.corpus`, whose head unfolding
  doubles in size with each binder.

Timings take the minimum over repeats with the garbage collector paused.
"""
from __future__ import annotations

import gc
import time
from dataclasses import dataclass

import numpy as np

from capc.corpus import exponential_type
from capc.gfp import Kind, gfp
from capc.naive import eqtype_naive, subtype_naive
from capc.parser import parse_type
from capc.types import Atom, Comp, DVar, Mu, union_of, unfold_mu


def width_family(d: int, k: int, reverse: bool = False):
    """``k`` nested binders over unions of width ``d``; size is ``O(d*k)``."""
    if d < 1 or k < 1:
        raise ValueError("width and depth must be positive")
    body = DVar("a1")
    for lvl in range(k, 0, -1):
        var = DVar(f"a{lvl}")
        comps = [Comp(Atom("c1"), body)]
        comps += [Comp(Atom(f"c{i}"), var) for i in range(2, d + 1)]
        if reverse:
            comps.reverse()
        body = Mu(var, union_of(comps, dedup=False))
    return body


def best_time(fn, repeats: int = 5) -> float:
    enabled = gc.isenabled()
    gc.disable()
    try:
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
    finally:
        if enabled:
            gc.enable()
    return best


@dataclass(frozen=True)
class ScalingPoint:
    d: int
    k: int
    kind: Kind
    holds: bool
    universe: int
    size: int
    iterations: int
    seconds: float

    @property
    def per_node_width(self) -> float:
        """Seconds per unit of ``|U| * d``."""
        return self.seconds / (self.universe * self.d)

    @property
    def per_size(self) -> float:
        """Seconds per unit of ``size(U)``."""
        return self.seconds / self.size


def measure_point(d: int, k: int, kind: Kind = Kind.EQUIVALENCE, repeats: int = 5) -> ScalingPoint:
    a, b = width_family(d, k), width_family(d, k, reverse=True)
    stats: dict = {}
    holds = gfp(a, b, kind, stats=stats)
    secs = best_time(lambda: gfp(a, b, kind), repeats)
    return ScalingPoint(d, k, kind, holds, stats["universe"], stats["size"], stats["iterations"], secs)


def measure_scaling(ds=range(2, 9), ks=(2, 4, 8), kinds=(Kind.EQUIVALENCE, Kind.SUBTYPE),
                    repeats: int = 5) -> list:
    return [measure_point(d, k, kind, repeats) for kind in kinds for d in ds for k in ks]


def band(values) -> float:
    """Ratio of the largest to the smallest value."""
    v = np.asarray(list(values), dtype=float)
    if v.size == 0 or v.min() <= 0:
        raise ValueError("band needs positive values")
    return float(v.max() / v.min())


def loglog_slope(x, y) -> float:
    """Least-squares exponent ``e`` in ``y ~ x**e``."""
    lx = np.log(np.asarray(list(x), dtype=float))
    ly = np.log(np.asarray(list(y), dtype=float))
    return float(np.polyfit(lx, ly, 1)[0])


@dataclass(frozen=True)
class BlowupPoint:
    n: int
    naive_calls: int
    naive_seconds: float
    automata_seconds: float
    partner_size: int


def exponential_pair(n: int):
    """``T_n`` and its one-step unfolding, which are equivalent."""
    t = parse_type(exponential_type(n))
    return t, unfold_mu(t)


def measure_blowup(ns=range(2, 9), repeats: int = 3, relation: str = "eq") -> list:
    from capc.types import size

    naive = eqtype_naive if relation == "eq" else subtype_naive
    kind = Kind.EQUIVALENCE if relation == "eq" else Kind.SUBTYPE
    out = []
    for n in ns:
        a, b = exponential_pair(n)
        stats: dict = {}
        if not naive(a, b, stats):
            raise AssertionError(f"naive engine rejected T_{n} against its unfolding")
        ns_ = best_time(lambda: naive(a, b), repeats)
        as_ = best_time(lambda: gfp(a, b, kind), repeats)
        out.append(BlowupPoint(n, stats["calls"], ns_, as_, size(b)))
    return out


def report(points) -> str:
    lines = [f"{'kind':<12}{'d':>3}{'k':>4}{'|U|':>8}{'size':>8}{'iter':>7}{'ms':>10}"
             f"{'us/(|U|d)':>11}{'us/size':>9}"]
    for p in points:
        lines.append(
            f"{p.kind.name.lower():<12}{p.d:>3}{p.k:>4}{p.universe:>8}{p.size:>8}{p.iterations:>7}"
            f"{p.seconds * 1e3:>10.3f}{p.per_node_width * 1e6:>11.3f}{p.per_size * 1e6:>9.3f}"
        )
    return "\n".join(lines)
