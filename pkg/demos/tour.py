"""A walk through matching, typing and the two relation engines.

    python3 demos/tour.py
"""
from capc import corpus
from capc.automata import compile_type
from capc.evaluator import Success, evaluate, match
from capc.parser import parse_context, parse_term, parse_type, render_term, render_type
from capc.relations import Engine
from capc.typechecker import TypeCheckError, check_term


def show(title):
    print(f"\n== {title}")


show("matching")
pat = parse_term("{ ('cons x) xs [x : 'a, xs : 'b] => x }").branches[0].pattern
for arg in ("('cons '1) 'nil", "'nil", "('cons ({ y [y : 'a] => y })) 'nil", "z 'nil"):
    r = match(pat, parse_term(arg))
    if isinstance(r, Success):
        r = ", ".join(f"{k} := {render_term(v)}" for k, v in sorted(r.subst.items()))
    print(f"  {pat}  against  {arg:<34} -> {r}")

show("evaluation")
for name, src, _ in corpus.EVAL_CASES:
    print(f"  {name:<9} {render_term(evaluate(parse_term(src)))}")

show("type checking")
cases = [(n, c, s) for n, c, s, _ in corpus.CHECK_CASES]
for name, ctx, src in cases:
    try:
        ty = check_term(parse_context(ctx), parse_term(src))
        print(f"  {name:<16} : {render_type(ty)}")
    except TypeCheckError as e:
        print(f"  {name:<16} rejected, {e.kind.value} at {list(e.path)}")

show("subtyping and equivalence")
LIST_C = corpus.list_of("'c")
pairs = [
    ("'c", "('c + 'd) + ('e + 'c)"),
    (LIST_C, f"'nil + ('cons @ 'c) @ {LIST_C}"),
    ("('c + 'd) -> 'e", "'c -> 'e"),
    (corpus.NAT, corpus.BOOL),
]
for engine in ("automata", "naive"):
    e = Engine(engine)
    verdicts = [(e.subtype(parse_type(a), parse_type(b)), e.equivalent(parse_type(a), parse_type(b))) for a, b in pairs]
    print(f"  {engine:<9} sub/eq: {verdicts}")
    print(f"            counters: {e.stats}")

show("term automaton of List A")
print("  " + compile_type(parse_type(corpus.list_of("A"))).dump().replace("\n", "\n  "))
