"""Concrete text syntax: a recursive-descent parser and the matching printer.

Grammar summary (ASCII)::

    type     ::= tprod ('->' type)?          tprod ::= tatom ('*' tatom)*
    tatom    ::= '0' | '(' type ')'

    term     ::= '\\' var+ '.' term | sum
    sum      ::= prod ('+' prod)*            prod ::= app ('*' app)*
    app      ::= prim prim* ['\\' ...]       (juxtaposition, left-assoc)
    prim     ::= NUM | var | k | s | p | p0 | p1 | succ | r | 'S' prim
               | '@' NAME | 'eps' '[' var ';' vars '|' formula ']' | '(' term ')'

    tterm    ::= '\\' (var ':' tatom)+ '.' tterm | tprim+
    tprim    ::= NUM | Zero | Succ | pair | K[..] | S[..] | P[..] | P0[..] | P1[..]
               | R[..] | E[..] | var (':' tatom)? | '(' tterm ')'

    formula  ::= quant | disj ('->' formula)?
    quant    ::= ('forall' | 'exists') binder+ '.' formula
    binder   ::= var (':' type)? ('@' NAME)?
    disj     ::= conj ('|' conj)*            conj ::= unary ('&' unary)*
    unary    ::= '~' unary | quant | atom
    atom     ::= 'bot' | '(' formula ')' | '!' prim | term '=' term | term '~=' term
               | 'F' '(' term ',' term ')' | 'Cond' '[' var ',' var ':' formula ']' '(' term ')'
               | term '<=' term | '(' term ',' term ')' 'in' term

A variable index is written with a quote: ``x'2`` is ``Var('x', 2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    COMBINATORS, GROUND, TPAIR, TSUCC, TZERO, And, App, Arrow, Bot, Comb, CondSpec,
    Defined, EpsSpec, Eq, Exists, Forall, FRel, Implies, IsCond, KleeneEq, Lam, Leq,
    Member, Not, Num, Oracle, Or, Plus, Prod, SuccOf, SyntaxError_, TApp, TConst, TLam,
    TVar, Times, Var, tnum,
)


class ParseError(SyntaxError_):
    def __init__(self, message, line=1, col=1):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<num>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*(?:'\d+)?)
  | (?P<sym>->|~=|<=|:=|[\\.()\[\],;:=~!&|+*@{}<>-])
    """,
    re.VERBOSE,
)

UNTYPED_RESERVED = set(COMBINATORS) | {"S", "eps", "forall", "exists", "bot", "in", "Cond"}
TYPED_CONSTS = {"K": 2, "S": 3, "P": 2, "P0": 2, "P1": 2, "R": 1, "E": 1}
TYPED_RESERVED = set(TYPED_CONSTS) | {"Zero", "Succ", "pair", "forall", "exists", "bot"}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            toks.append(Token(kind, text, line, pos - line_start + 1))
        nl = text.count("\n")
        if nl:
            line += nl
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    toks.append(Token("eof", "", line, pos - line_start + 1))
    return toks


def _split_var(text):
    if "'" in text:
        name, idx = text.split("'")
        return name, int(idx)
    return text, 0


class Parser:
    """Recursive descent over a token list; ``typed`` selects the HAω term grammar."""

    def __init__(self, src: str, typed: bool = False):
        self.toks = tokenize(src)
        self.i = 0
        self.typed = typed
        self.scope: dict = {}

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def at(self, *texts) -> bool:
        return self.tok.kind in ("sym", "id") and self.tok.text in texts

    def accept(self, text) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        tok = self.tok
        self.i += 1
        return tok

    def expect_end(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")

    def _reserved(self):
        return TYPED_RESERVED if self.typed else UNTYPED_RESERVED

    def ident(self) -> str:
        tok = self.tok
        if tok.kind != "id" or tok.text in self._reserved():
            raise self.error(f"expected a variable, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok.text

    def is_var_start(self) -> bool:
        return self.tok.kind == "id" and self.tok.text not in self._reserved()

    # -- types
    def type_(self):
        left = self.type_prod()
        if self.accept("->"):
            return Arrow(left, self.type_())
        return left

    def type_prod(self):
        t = self.type_atom()
        while self.at("*"):
            self.i += 1
            t = Prod(t, self.type_atom())
        return t

    def type_atom(self):
        if self.tok.kind == "num" and self.tok.text == "0":
            self.i += 1
            return GROUND
        if self.accept("("):
            t = self.type_()
            self.expect(")")
            return t
        raise self.error("expected a type")

    # -- untyped terms
    def term(self):
        if self.typed:
            return self.tterm()
        if self.at("\\"):
            return self.lam()
        return self.sum_()

    def lam(self):
        self.expect("\\")
        vs = []
        while not self.at("."):
            vs.append(Var(*_split_var(self.ident())))
        if not vs:
            raise self.error("lambda without variables")
        self.expect(".")
        body = self.term()
        for v in reversed(vs):
            body = Lam(v, body)
        return body

    def sum_(self):
        t = self.prod()
        while self.at("+"):
            self.i += 1
            t = Plus(t, self.prod())
        return t

    def prod(self):
        t = self.app()
        while self.at("*"):
            self.i += 1
            t = Times(t, self.app())
        return t

    def starts_prim(self) -> bool:
        tok = self.tok
        if tok.kind == "num":
            return True
        if tok.kind == "id":
            return tok.text in COMBINATORS or tok.text in ("S", "eps") or tok.text not in UNTYPED_RESERVED
        return tok.text in ("(", "@")

    def app(self):
        t = self.prim()
        while True:
            if self.at("\\"):
                return App(t, self.lam())
            if not self.starts_prim():
                return t
            t = App(t, self.prim())

    def prim(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(int(tok.text))
        if tok.kind == "id":
            if tok.text in COMBINATORS:
                self.i += 1
                return Comb(tok.text)
            if tok.text == "S":
                self.i += 1
                return SuccOf(self.prim())
            if tok.text == "eps":
                return self.eps()
            return Var(*_split_var(self.ident()))
        if self.accept("@"):
            name = self.tok
            if name.kind != "id":
                raise self.error("expected an oracle name")
            self.i += 1
            return Oracle(name.text)
        if self.accept("("):
            t = self.term()
            self.expect(")")
            return t
        raise self.error(f"expected a term, found {tok.text or 'end of input'!r}")

    def eps(self):
        self.expect("eps")
        self.expect("[")
        w = Var(*_split_var(self.ident()))
        self.expect(";")
        params = []
        while not self.at("|"):
            params.append(Var(*_split_var(self.ident())))
            if not self.at("|"):
                self.expect(",")
        self.expect("|")
        phi = self.formula()
        self.expect("]")
        return eps_const(phi, w, tuple(params))

    # -- typed terms
    def tterm(self):
        if self.at("\\"):
            self.expect("\\")
            vs = []
            while not self.at("."):
                name = self.ident()
                self.expect(":")
                v = TVar(*_tvar_args(name, self.type_atom()))
                vs.append(v)
            self.expect(".")
            saved = dict(self.scope)
            for v in vs:
                self.scope[v.name, v.index] = v
            body = self.tterm()
            self.scope = saved
            for v in reversed(vs):
                body = TLam(v, body)
            return body
        t = self.tprim()
        while self.starts_tprim() or self.at("\\"):
            if self.at("\\"):
                return TApp(t, self.tterm())
            t = TApp(t, self.tprim())
        return t

    def starts_tprim(self):
        tok = self.tok
        if tok.kind == "num":
            return True
        if tok.kind == "id":
            return tok.text not in ("forall", "exists", "bot")
        return tok.text == "("

    def tprim(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return tnum(int(tok.text))
        if tok.kind == "id":
            if tok.text in ("Zero",):
                self.i += 1
                return TZERO
            if tok.text == "Succ":
                self.i += 1
                return TSUCC
            if tok.text == "pair":
                self.i += 1
                return TPAIR
            if tok.text in TYPED_CONSTS:
                self.i += 1
                self.expect("[")
                params = [self.type_()]
                while self.accept(","):
                    params.append(self.type_())
                self.expect("]")
                try:
                    return TConst(tok.text, tuple(params))
                except SyntaxError_ as exc:
                    raise self.error(str(exc), tok) from None
            name = self.ident()
            key = _split_var(name)
            if self.accept(":"):
                v = TVar(*_tvar_args(name, self.type_atom()))
                self.scope[key] = v
                return v
            if key not in self.scope:
                raise self.error(f"variable {name} needs a type annotation", tok)
            return self.scope[key]
        if self.accept("("):
            t = self.tterm()
            self.expect(")")
            return t
        raise self.error(f"expected a typed term, found {tok.text or 'end of input'!r}")

    # -- formulas
    def formula(self):
        if self.at("forall", "exists"):
            return self.quant()
        left = self.disj()
        if self.accept("->"):
            return Implies(left, self.formula())
        return left

    def quant(self):
        kind = self.tok.text
        self.i += 1
        binders = []
        while not self.at("."):
            name = self.ident()
            dom = None
            if self.typed:
                self.expect(":")
                v = TVar(*_tvar_args(name, self.type_()))
            else:
                v = Var(*_split_var(name))
            if self.accept("@"):
                dom = self.tok.text
                self.i += 1
            binders.append((v, dom))
        if not binders:
            raise self.error("quantifier without variables")
        self.expect(".")
        saved = dict(self.scope)
        if self.typed:
            for v, _ in binders:
                self.scope[v.name, v.index] = v
        body = self.formula()
        self.scope = saved
        node = Forall if kind == "forall" else Exists
        for v, dom in reversed(binders):
            body = node(v, body, dom)
        return body

    def disj(self):
        f = self.conj()
        while self.at("|"):
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.at("&"):
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self):
        if self.accept("~"):
            return Not(self.unary())
        if self.at("forall", "exists"):
            return self.quant()
        return self.atom()

    def _attempt(self, fn):
        saved_i, saved_scope = self.i, dict(self.scope)
        try:
            return fn()
        except ParseError:
            self.i, self.scope = saved_i, saved_scope
            return None

    def atom(self):
        if self.accept("bot"):
            return Bot()
        if self.accept("!"):
            return Defined(self.tprim() if self.typed else self.prim())
        if not self.typed:
            if self.at("F") and self.peek().text == "(":
                got = self._attempt(self._frel)
                if got is not None:
                    return got
            if self.at("Cond") and self.peek().text == "[":
                return self._cond()
            if self.at("("):
                got = self._attempt(self._member)
                if got is not None:
                    return got
        if self.at("("):
            got = self._attempt(self._paren_formula)
            if got is not None:
                return got
        lhs = self.term_in_formula()
        if self.accept("="):
            return Eq(lhs, self.term_in_formula())
        if self.accept("~="):
            return KleeneEq(lhs, self.term_in_formula())
        if not self.typed and self.accept("<="):
            return Leq(lhs, self.term_in_formula())
        raise self.error(f"expected '=' after term, found {self.tok.text or 'end of input'!r}")

    def term_in_formula(self):
        if self.typed:
            return self.tterm()
        return self.sum_()

    def _paren_formula(self):
        self.expect("(")
        f = self.formula()
        self.expect(")")
        if self.at("=", "~=", "<="):
            raise self.error("parenthesised term, not formula")
        return f

    def _frel(self):
        self.expect("F")
        self.expect("(")
        x = self.term()
        self.expect(",")
        y = self.term()
        self.expect(")")
        return FRel(x, y)

    def _member(self):
        self.expect("(")
        x = self.term()
        self.expect(",")
        y = self.term()
        self.expect(")")
        self.expect("in")
        return Member(x, y, self.prim())

    def _cond(self):
        self.expect("Cond")
        self.expect("[")
        x = Var(*_split_var(self.ident()))
        self.expect(",")
        y = Var(*_split_var(self.ident()))
        self.expect(":")
        psi = self.formula()
        self.expect("]")
        self.expect("(")
        t = self.term()
        self.expect(")")
        return IsCond(t, CondSpec(psi, x, y))


def _tvar_args(name, ty):
    n, idx = _split_var(name)
    return n, ty, idx


# ---------------------------------------------------------------------------
# Public parse entry points


def parse_type(src: str):
    p = Parser(src)
    t = p.type_()
    p.expect_end()
    return t


def parse_term(src: str):
    p = Parser(src)
    t = p.term()
    p.expect_end()
    return t


def parse_typed_term(src: str, scope: dict | None = None):
    p = Parser(src, typed=True)
    if scope:
        p.scope.update(scope)
    t = p.term()
    p.expect_end()
    return t


def parse_formula(src: str, typed: bool = False, scope: dict | None = None):
    p = Parser(src, typed=typed)
    if scope:
        p.scope.update(scope)
    f = p.formula()
    p.expect_end()
    return f


# ---------------------------------------------------------------------------
# Printing

_TERM_LEVEL = {Lam: 0, TLam: 0, Plus: 1, Times: 2, App: 3, TApp: 3, SuccOf: 3}


def _tlevel(t):
    return _TERM_LEVEL.get(type(t), 4)


def _wrap(s, cond):
    return f"({s})" if cond else s


def _type_atom(ty):
    return str(ty) if ty == GROUND else f"({ty})"


def show_term(t, level=0) -> str:
    match t:
        case Var():
            out = str(t)
        case Comb(tag):
            out = tag
        case Num(n):
            out = str(n)
        case Oracle(id=id_, eps=None):
            out = f"@{id_}"
        case Oracle(eps=spec):
            ps = ", ".join(str(v) for v in spec.params)
            out = f"eps[{spec.witness}; {ps} | {show_formula(spec.formula)}]".replace(";  |", "; |")
        case SuccOf(a):
            out = f"S {show_term(a, 4)}"
        case Plus(a, b):
            out = f"{show_term(a, 1)} + {show_term(b, 2)}"
        case Times(a, b):
            out = f"{show_term(a, 2)} * {show_term(b, 3)}"
        case App(f, a):
            out = f"{show_term(f, 3)} {show_term(a, 4)}"
        case Lam():
            vs = []
            while isinstance(t, Lam):
                vs.append(str(t.var))
                t = t.body
            out = f"\\{' '.join(vs)}. {show_term(t, 0)}"
            return _wrap(out, level > 0)
        case TVar(ty=ty):
            out = f"{t}:{_type_atom(ty)}"
        case TConst(tag="Zero"):
            out = "0"
        case TConst(tag=tag, params=()):
            out = tag
        case TConst(tag=tag, params=ps):
            out = f"{tag}[{', '.join(str(p) for p in ps)}]"
        case TApp(f, a):
            out = f"{show_term(f, 3)} {show_term(a, 4)}"
        case TLam():
            vs = []
            while isinstance(t, TLam):
                vs.append(f"{t.var}:{_type_atom(t.var.ty)}")
                t = t.body
            out = f"\\{' '.join(vs)}. {show_term(t, 0)}"
            return _wrap(out, level > 0)
        case _:
            raise SyntaxError_(f"not a term: {t!r}")
    if isinstance(t, SuccOf) and level >= 3:
        return f"({out})"
    return _wrap(out, _tlevel(t) < level)


_FORM_LEVEL = {Forall: 0, Exists: 0, Implies: 1, Or: 2, And: 3, Not: 4}


def _flevel(f):
    return _FORM_LEVEL.get(type(f), 5)


def show_formula(f, level=0) -> str:
    match f:
        case Bot():
            out = "bot"
        case Eq(a, b):
            out = f"{show_term(a, 1)} = {show_term(b, 1)}"
        case KleeneEq(a, b):
            out = f"{show_term(a, 1)} ~= {show_term(b, 1)}"
        case Defined(t):
            out = f"!{show_term(t, 4)}"
        case FRel(x, y):
            out = f"F({show_term(x)}, {show_term(y)})"
        case IsCond(t, psi):
            out = f"Cond[{psi.x}, {psi.y}: {show_formula(psi.formula)}]({show_term(t)})"
        case Leq(q, p):
            out = f"{show_term(q, 1)} <= {show_term(p, 1)}"
        case Member(x, y, r):
            out = f"({show_term(x)}, {show_term(y)}) in {show_term(r, 4)}"
        case Not(b):
            out = f"~{show_formula(b, 4)}"
        case And(a, b):
            out = f"{show_formula(a, 3)} & {show_formula(b, 4)}"
        case Or(a, b):
            out = f"{show_formula(a, 2)} | {show_formula(b, 3)}"
        case Implies(a, b):
            right = show_formula(b, 0) if isinstance(b, (Forall, Exists)) else show_formula(b, 1)
            out = f"{show_formula(a, 2)} -> {right}"
        case Forall() | Exists():
            kw = "forall" if isinstance(f, Forall) else "exists"
            out = f"{kw} {_binder(f)}. {show_formula(f.body, 0)}"
        case _:
            raise SyntaxError_(f"not a formula: {f!r}")
    return _wrap(out, _flevel(f) < level)


def _binder(q):
    v = q.var
    s = str(v)
    if isinstance(v, TVar):
        s += f":{v.ty}"
    if q.dom:
        s += f"@{q.dom}"
    return s


def show(x) -> str:
    """Print a type, term or formula in the concrete syntax."""
    if isinstance(x, (type(GROUND), Arrow, Prod)):
        return str(x)
    from .syntax import is_term

    if is_term(x):
        return show_term(x)
    return show_formula(x)


def eps_const(formula, witness: Var, params: tuple = ()) -> Oracle:
    """The choice constant for ``formula`` with the given witness and parameters;
    its id is the printed spec, so equal specs give equal constants."""
    ps = ", ".join(str(v) for v in params)
    ident = f"eps[{witness}; {ps} | {show_formula(formula)}]".replace(";  |", "; |")
    return Oracle(ident, EpsSpec(formula, witness, tuple(params)))
