"""A single entry point for subtyping and equivalence with a selectable engine."""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from capc import gfp as _gfp
from capc import naive as _naive

ENGINES = ("automata", "naive")


def default_engine_name() -> str:
    name = os.environ.get("CAPC_ENGINE", "automata")
    return name if name in ENGINES else "automata"


@dataclass
class Engine:
    """Relation oracle. Counters from automata queries accumulate in ``stats``."""

    name: str = "automata"
    stats: dict = field(default_factory=dict)
    queries: list = field(default_factory=list)
    record: bool = False

    def __post_init__(self):
        if self.name not in ENGINES:
            raise ValueError(f"unknown engine {self.name!r}; expected one of {ENGINES}")

    def _run(self, kind, a, b) -> bool:
        if self.name == "naive":
            s = {}
            fn = _naive.subtype_naive if kind is _gfp.SUBTYPE else _naive.eqtype_naive
            result = fn(a, b, stats=s)
        else:
            s = {}
            result = _gfp.gfp(a, b, kind, stats=s)
        for k, v in s.items():
            if isinstance(v, int) and k != "max_arity":
                self.stats[k] = self.stats.get(k, 0) + v
        self.stats["queries"] = self.stats.get("queries", 0) + 1
        if self.record:
            self.queries.append((kind, a, b, result, s))
        return result

    def subtype(self, a, b) -> bool:
        return self._run(_gfp.SUBTYPE, a, b)

    def equivalent(self, a, b) -> bool:
        return self._run(_gfp.EQUIVALENCE, a, b)


def subtype(a, b, engine: str = "automata") -> bool:
    return Engine(engine).subtype(a, b)


def equivalent(a, b, engine: str = "automata") -> bool:
    return Engine(engine).equivalent(a, b)
