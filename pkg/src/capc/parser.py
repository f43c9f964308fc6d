"""Concrete syntax for types and terms, and renderers that round-trip.

Types::

    T ::= U ('->' T)?              arrows associate to the right
    U ::= P ('+' P)*               unions associate to the left
    P ::= L ('@' L)*               application associates to the left
    L ::= 'c | a | X | '(' T ')' | 'mu' v '.' T

Lowercase identifiers are datatype variables, capitalised ones are type
variables, ``'name`` is an atom. ``mu`` extends as far right as possible.

Terms::

    t ::= a a*                     application by juxtaposition
    a ::= x | 'c | '(' t ')' | '{' branch ('|' branch)* '}'
    branch ::= pat ('[' x ':' T (',' x ':' T)* ']')? '=>' t

Comments run from ``--`` to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from capc.syntax import Abs, App, Branch, Compound, Const, Matchable, ValidationError, Var
from capc.types import Arrow, Atom, Comp, DVar, Mu, TVar, Union


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>--[^\n]*)
  | (?P<arrow>->)
  | (?P<fat>=>)
  | (?P<atom>'[A-Za-z0-9_]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[()\[\]{}|,:.@+])
    """,
    re.VERBOSE,
)


def tokenize(text: str, line: int = 1) -> list:
    toks = []
    pos, col0 = 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - col0 + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            col0 = m.end()
        elif kind not in ("ws", "comment"):
            tk = m.group()
            toks.append(Token(tk if kind == "sym" else kind, tk, line, pos - col0 + 1))
        pos = m.end()
    toks.append(Token("eof", "", line, pos - col0 + 1))
    return toks


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        raise ParseError(f"{msg}, found {found!r}", tok.line, tok.column)

    def accept(self, kind):
        if self.tok.kind == kind:
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, kind, what=None):
        t = self.accept(kind)
        if t is None:
            self.error(f"expected {what or kind!r}")
        return t

    # types ---------------------------------------------------------------

    def type_(self):
        left = self.union()
        if self.accept("arrow"):
            return Arrow(left, self.type_())
        return left

    def union(self):
        t = self.app_type()
        while self.accept("+"):
            t = Union(t, self.app_type())
        return t

    def app_type(self):
        t = self.leaf_type()
        while self.accept("@"):
            t = Comp(t, self.leaf_type())
        return t

    def leaf_type(self):
        tok = self.tok
        if tok.kind == "atom":
            self.i += 1
            return Atom(tok.text[1:])
        if tok.kind == "ident" and tok.text == "mu":
            self.i += 1
            name = self.expect("ident", "binder").text
            self.expect(".")
            return Mu(_type_var(name), self.type_())
        if tok.kind == "ident":
            self.i += 1
            return _type_var(tok.text)
        if self.accept("("):
            t = self.type_()
            self.expect(")")
            return t
        self.error("expected a type")

    # terms ---------------------------------------------------------------

    _TERM_START = ("ident", "atom", "(", "{")

    def term(self):
        t = self.aterm()
        while self.tok.kind in self._TERM_START:
            t = App(t, self.aterm())
        return t

    def aterm(self):
        tok = self.tok
        if tok.kind == "ident":
            self.i += 1
            return Var(tok.text)
        if tok.kind == "atom":
            self.i += 1
            return Const(tok.text[1:])
        if self.accept("("):
            t = self.term()
            self.expect(")")
            return t
        if self.accept("{"):
            branches = [self.branch()]
            while self.accept("|"):
                branches.append(self.branch())
            self.expect("}")
            return Abs(branches)
        self.error("expected a term")

    def branch(self):
        start = self.tok
        p = self.pattern()
        ctx = {}
        if self.accept("["):
            if self.tok.kind != "]":
                while True:
                    # a quoted key ('x) is accepted as a spelling of x
                    name = self.accept("atom") or self.expect("ident", "matchable name")
                    key = name.text.lstrip("'")
                    self.expect(":")
                    if key in ctx:
                        self.error(f"{key} annotated twice", name)
                    ctx[key] = self.type_()
                    if not self.accept(","):
                        break
            self.expect("]")
        self.expect("fat", "=>")
        body = self.term()
        try:
            return Branch(p, ctx, body)
        except ValidationError as e:
            raise BranchError(str(e), start.line, start.column) from None

    def pattern(self):
        p = self.apattern()
        while self.tok.kind in ("ident", "atom", "("):
            p = Compound(p, self.apattern())
        return p

    def apattern(self):
        tok = self.tok
        if tok.kind == "ident":
            self.i += 1
            return Matchable(tok.text)
        if tok.kind == "atom":
            self.i += 1
            return Const(tok.text[1:])
        if self.accept("("):
            p = self.pattern()
            self.expect(")")
            return p
        self.error("expected a pattern")

    def done(self):
        if self.tok.kind != "eof":
            self.error("unexpected trailing input")


class BranchError(ParseError):
    """A syntactically valid branch failed linearity or context validation."""


def _type_var(name):
    return TVar(name) if name[0].isupper() else DVar(name)


def parse_type(text: str, line: int = 1):
    p = _Parser(tokenize(text, line))
    t = p.type_()
    p.done()
    return t


def parse_term(text: str, line: int = 1):
    p = _Parser(tokenize(text, line))
    t = p.term()
    p.done()
    return t


_CTX_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*:(?!\s*$)(.*)$")


def parse_context(text: str, first_line: int = 1) -> dict:
    """``name : Type`` bindings, one per line; blank and comment lines are skipped."""
    ctx = {}
    for n, raw in enumerate(text.splitlines(), first_line):
        line = raw.split("--", 1)[0]
        if not line.strip():
            continue
        m = _CTX_LINE.match(line)
        if not m:
            raise ParseError("expected 'name : Type'", n, 1)
        name = m.group(1)
        if name in ctx:
            raise ParseError(f"{name} bound twice", n, 1)
        ctx[name] = parse_type(m.group(2), n)
    return ctx


def parse_source(text: str):
    """Leading ``name : Type`` lines followed by one term."""
    lines = text.splitlines(keepends=True)
    k = 0
    while k < len(lines):
        bare = lines[k].split("--", 1)[0]
        if bare.strip() and not _CTX_LINE.match(bare):
            break
        k += 1
    ctx = parse_context("".join(lines[:k]))
    term = parse_term("".join(lines[k:]), k + 1)
    return ctx, term


# ---------------------------------------------------------------------------
# rendering

_ARROW, _UNION, _APP, _LEAF = range(4)


def render_type(t, level: int = _ARROW) -> str:
    if isinstance(t, Atom):
        return "'" + t.name
    if isinstance(t, (DVar, TVar)):
        return t.name
    if isinstance(t, Arrow):
        s, need = f"{render_type(t.dom, _UNION)} -> {render_type(t.cod, _ARROW)}", _ARROW
    elif isinstance(t, Union):
        s, need = f"{render_type(t.left, _UNION)} + {render_type(t.right, _APP)}", _UNION
    elif isinstance(t, Comp):
        s, need = f"{render_type(t.left, _APP)} @ {render_type(t.right, _LEAF)}", _APP
    elif isinstance(t, Mu):
        s, need = f"mu {t.var.name} . {render_type(t.body, _ARROW)}", _ARROW
    else:
        raise TypeError(f"not a type: {t!r}")
    return f"({s})" if level > need else s


def render_pattern(p, atomic: bool = False) -> str:
    if isinstance(p, Matchable):
        return p.name
    if isinstance(p, Const):
        return "'" + p.name
    s = f"{render_pattern(p.left)} {render_pattern(p.right, True)}"
    return f"({s})" if atomic else s


def render_term(t, atomic: bool = False) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return "'" + t.name
    if isinstance(t, App):
        s = f"{render_term(t.fun)} {render_term(t.arg, True)}"
        return f"({s})" if atomic else s
    parts = []
    for b in t.branches:
        ctx = ""
        if b.theta:
            ctx = " [" + ", ".join(f"{k} : {render_type(v)}" for k, v in b.theta) + "]"
        parts.append(f"{render_pattern(b.pattern)}{ctx} => {render_term(b.body)}")
    return "{ " + " | ".join(parts) + " }"
