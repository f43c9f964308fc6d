"""Worked examples in concrete syntax.

Numbers and booleans are constructor encodings: ``Nat`` is
``mu n . 'zero + 'succ @ n`` and ``Bool`` is ``'true + 'false``. Numerals
such as ``'4`` are opaque constants used only where matching is exercised.
"""
from __future__ import annotations

NAT = "(mu n . 'zero + 'succ @ n)"
BOOL = "('true + 'false)"


def list_of(elem: str) -> str:
    return f"(mu l . 'nil + ('cons @ {elem}) @ l)"


def tagged_tree(x: str) -> str:
    """Type of lists and trees of ``'vl``-tagged leaves holding ``x``."""
    return f"(mu a . ('vl @ {x} + a @ a) + ('cons + ('node + 'nil)))"


HEAD = f"""{{ 'nil => 'nothing
| ('cons x) xs [x : {NAT}, xs : {list_of(NAT)}] => 'just x }}"""

HEAD_NIL = f"{HEAD} 'nil"
HEAD_CONS = f"{HEAD} (('cons '4) 'nil)"

# a constant that can never match the only pattern
NEVER_MATCHES = "{ 'nil => '0 } 'cons"

# the argument's tag payload is not a number
BAD_PAYLOAD = f"{{ 'vl x [x : {NAT}] => 'succ x }} ('vl 'true)"

# overlapping branches whose later type is not below the earlier one
OVERLAPPING_VL = f"""{{ 'vl x [x : {BOOL}] => ({{ 'true => 'succ 'zero | 'false => 'zero }} x)
| 'vl y [y : {NAT}] => 'succ y }} ('vl '4)"""

# a variable typed by a union of arrows, applied to a constant
UNION_OF_ARROWS_CTX = "x : (('c + 'e) -> 'd) + (('c + 'f) -> 'd)"
UNION_OF_ARROWS = "x 'c"

UPD_A, UPD_B = "'one", "'two"
UPD_CTX = f"upd : ({UPD_A} -> {UPD_B}) -> ({tagged_tree(UPD_A)} -> {tagged_tree(UPD_B)})"
UPD = f"""{{ f [f : {UPD_A} -> {UPD_B}] =>
  {{ 'vl z [z : {UPD_A}] => 'vl (f z)
  | x y [x : {tagged_tree(UPD_A)}, y : {tagged_tree(UPD_A)}] => (upd f x) (upd f y)
  | w [w : 'cons + ('node + 'nil)] => w }} }}"""
UPD_EXPECTED = f"({UPD_A} -> {UPD_B}) -> ({tagged_tree(UPD_A)} -> {tagged_tree(UPD_B)})"

# An untyped-in-spirit run of the same traversal: recursion by self-application,
# with placeholder annotations since every branch must annotate its matchables.
_UPD_BODY = """{ 'vl z [z : 'top] => 'vl (f z)
    | x y [x : 'top, y : 'top] => (u u f x) (u u f y)
    | w [w : 'top] => w }"""
UPD_SELF = f"{{ u [u : 'top] => {{ f [f : 'top] => {_UPD_BODY} }} }}"
SUCC = "{ n [n : 'top] => 'succ n }"
TWO_LIST = "('cons ('vl '1)) (('cons ('vl '2)) 'nil)"
UPD_RUN = f"({UPD_SELF} {UPD_SELF}) {SUCC} ({TWO_LIST})"
UPD_RUN_EXPECTED = "('cons ('vl ('succ '1))) (('cons ('vl ('succ '2))) 'nil)"
TREE = "(('node ('vl '3)) ((('node ('vl '4)) 'nil) 'nil)) ((('node ('vl '5)) 'nil) 'nil)"
TREE_EXPECTED = (
    "(('node ('vl ('succ '3))) ((('node ('vl ('succ '4))) 'nil) 'nil))"
    " ((('node ('vl ('succ '5))) 'nil) 'nil)"
)
UPD_TREE_RUN = f"({UPD_SELF} {UPD_SELF}) {SUCC} ({TREE})"


def exponential_type(n: int) -> str:
    """``mu X1 ... mu Xn . X1 -> ... -> Xn -> 'c``."""
    binders = " ".join(f"mu X{i} ." for i in range(1, n + 1))
    arrows = " -> ".join([f"X{i}" for i in range(1, n + 1)] + ["'c"])
    return f"{binders} {arrows}"


# (name, context, term, expected verdict) for the checker
CHECK_CASES = [
    ("head", "", HEAD, "ok"),
    ("never-matches", "", NEVER_MATCHES, "ArgumentMismatch"),
    ("bad-payload", "", BAD_PAYLOAD, "ArgumentMismatch"),
    ("overlapping-vl", "", OVERLAPPING_VL, "IncompatibleBranches"),
    ("union-of-arrows", UNION_OF_ARROWS_CTX, UNION_OF_ARROWS, "ok"),
    ("upd", UPD_CTX, UPD, "ok"),
]

# (name, term, expected normal form)
EVAL_CASES = [
    ("head-nil", HEAD_NIL, "'nothing"),
    ("head-cons", HEAD_CONS, "'just '4"),
    ("upd-list", UPD_RUN, UPD_RUN_EXPECTED),
    ("upd-tree", UPD_TREE_RUN, TREE_EXPECTED),
]

TYPES = [
    list_of("A"),
    list_of(NAT),
    NAT,
    BOOL,
    tagged_tree("X"),
    "('c + 'd) + ('e + 'c)",
    "'c + ('d + 'e)",
    "(mu X . X -> 'c)",
    "mu X . 'c @ (X + X)",
    "(('c + 'e) -> 'd) + (('c + 'f) -> 'd)",
    "('a -> 'b) -> 'c -> 'd",
    "(('a -> 'b) -> 'c) -> 'd",
    "'f @ ('a @ 'b) @ 'c",
    "mu a . 'c @ (mu X . X -> a)",
    exponential_type(3),
]
