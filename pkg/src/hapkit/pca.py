"""Fuel-bounded evaluation of untyped terms: an executable partial combinatory algebra.

Values are first-order: numerals, pairs and partial applications of a
combinator (or oracle) to fewer arguments than it needs.  Evaluation is
call-by-value, leftmost-innermost; a combinator fires as soon as it has all of
its arguments.

Pairing is surjective, so ``p (p0 x) (p1 x) = x`` holds for every value:

* two numerals pair to a numeral (Cantor coding),
* a partial application paired with 0 is the partial application itself,
* anything else is a :class:`PairV`.

Projections invert these three cases.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import Callable, Mapping, Optional, Union

from .syntax import (
    App, Comb, Lam, Num, Oracle, Plus, SuccOf, Times, Var, app, free_vars, lam,
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

DEFAULT_FUEL = 100_000


# ---------------------------------------------------------------------------
# Values


@dataclass(frozen=True)
class Numeral:
    n: int

    def __str__(self):
        return str(self.n)


class _CachedHash:
    # values nest deeply and serve as memo keys, so hash each one only once
    __slots__ = ()

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash(tuple(getattr(self, f) for f in self.__dataclass_fields__))
            object.__setattr__(self, "_hash", h)
            return h


@dataclass(frozen=True, eq=True, unsafe_hash=False)
class PairV(_CachedHash):
    left: "Value"
    right: "Value"

    __hash__ = _CachedHash.__hash__

    def __str__(self):
        return f"<{self.left}, {self.right}>"


@dataclass(frozen=True, eq=True, unsafe_hash=False)
class PartialApp(_CachedHash):
    head: Union[Comb, Oracle]
    args: tuple = ()

    __hash__ = _CachedHash.__hash__

    def __str__(self):
        from .text import show_term

        return show_term(quote(self))


Value = Union[Numeral, PairV, PartialApp]

ARITY = {"k": 2, "s": 3, "p": 2, "p0": 1, "p1": 1, "succ": 1, "r": 3}


def arity(head) -> int:
    return ARITY[head.tag] if isinstance(head, Comb) else 1


def cantor(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def uncantor(n: int) -> tuple:
    w = (isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def pair(a: Value, b: Value) -> Value:
    if isinstance(a, Numeral) and isinstance(b, Numeral):
        return Numeral(cantor(a.n, b.n))
    if isinstance(a, PartialApp) and b == Numeral(0):
        return a
    return PairV(a, b)


def proj0(v: Value) -> Value:
    match v:
        case Numeral(n):
            return Numeral(uncantor(n)[0])
        case PairV(a, _):
            return a
    return v


def proj1(v: Value) -> Value:
    match v:
        case Numeral(n):
            return Numeral(uncantor(n)[1])
        case PairV(_, b):
            return b
    return Numeral(0)


def quote(v: Value):
    """A closed term denoting ``v``."""
    match v:
        case Numeral(n):
            return Num(n)
        case PairV(a, b):
            return app(Comb("p"), quote(a), quote(b))
        case PartialApp(head, args):
            return app(head, *(quote(a) for a in args))
    raise TypeError(v)


def tuple_value(vs) -> Value:
    """Iterated-pair coding of a tuple: () -> 0, (a,) -> a, (a, b, ...) -> <a, <b, ...>>."""
    vs = list(vs)
    if not vs:
        return Numeral(0)
    out = vs[-1]
    for v in reversed(vs[:-1]):
        out = pair(v, out)
    return out


def untuple_value(v: Value, n: int) -> list:
    if n == 0:
        return []
    out = []
    for _ in range(n - 1):
        out.append(proj0(v))
        v = proj1(v)
    out.append(v)
    return out


# ---------------------------------------------------------------------------
# Outcomes


@dataclass(frozen=True)
class Defined:
    value: Value


@dataclass(frozen=True)
class Undefined:
    reason: str


@dataclass(frozen=True)
class OutOfFuel:
    steps: int


Outcome = Union[Defined, Undefined, OutOfFuel]

OracleFn = Callable[[Value], Optional[Value]]


class _Stuck(Exception):
    def __init__(self, reason):
        self.reason = reason


class _NoFuel(Exception):
    pass


class Machine:
    """One evaluation context: a fuel budget, an oracle table and an optional trace.

    Oracle answers are memoised per machine so repeated queries agree.
    """

    def __init__(self, fuel: int = DEFAULT_FUEL, oracles: Optional[Mapping[str, OracleFn]] = None,
                 trace: Optional[list] = None):
        self.fuel = fuel
        self.budget = fuel
        self.oracles = dict(oracles or {})
        self.trace = trace
        self._answers: dict = {}

    @property
    def used(self) -> int:
        return self.budget - self.fuel

    def tick(self, rule, redex=None):
        if self.fuel <= 0:
            raise _NoFuel
        self.fuel -= 1
        if self.trace is not None:
            from .text import show_term

            shown = show_term(redex) if redex is not None else ""
            self.trace.append(f"step {rule} {shown} fuel={self.fuel}")

    # -- terms
    def eval(self, t, env: Optional[Mapping] = None) -> Value:
        match t:
            case Num(n):
                return Numeral(n)
            case Var():
                if env is None or t not in env:
                    raise ValueError(f"free variable {t} during evaluation")
                return env[t]
            case Comb() | Oracle():
                return PartialApp(t)
            case App(f, a):
                fv = self.eval(f, env)
                av = self.eval(a, env)
                return self.apply(fv, av)
            case SuccOf(a):
                n = self._numeral(self.eval(a, env), "S")
                self.tick("S", t if self.trace is not None else None)
                return Numeral(n + 1)
            case Plus(a, b):
                x = self._numeral(self.eval(a, env), "+")
                y = self._numeral(self.eval(b, env), "+")
                self.tick("+", t if self.trace is not None else None)
                return Numeral(x + y)
            case Times(a, b):
                x = self._numeral(self.eval(a, env), "*")
                y = self._numeral(self.eval(b, env), "*")
                self.tick("*", t if self.trace is not None else None)
                return Numeral(x * y)
            case Lam():
                from .abstraction import compile_term

                return self.eval(compile_term(t), env)
        raise ValueError(f"not an untyped term: {t!r}")

    @staticmethod
    def _numeral(v, op) -> int:
        if not isinstance(v, Numeral):
            raise _Stuck(f"strictness: {op} applied to non-numeral {v}")
        return v.n

    # -- application
    def apply(self, f: Value, a: Value) -> Value:
        if not isinstance(f, PartialApp):
            raise _Stuck(f"application of non-function value {f}")
        args = f.args + (a,)
        if len(args) < arity(f.head):
            return PartialApp(f.head, args)
        return self.fire(f.head, args)

    def fire(self, head, args) -> Value:
        redex = quote(PartialApp(head, args)) if self.trace is not None else None
        if isinstance(head, Oracle):
            return self.query(head, args[0])
        tag = head.tag
        self.tick(tag, redex)
        match tag:
            case "k":
                return args[0]
            case "s":
                x, y, z = args
                xz = self.apply(x, z)
                yz = self.apply(y, z)
                return self.apply(xz, yz)
            case "p":
                return pair(*args)
            case "p0":
                return proj0(args[0])
            case "p1":
                return proj1(args[0])
            case "succ":
                return Numeral(self._numeral(args[0], "succ") + 1)
            case "r":
                x, y, z = args
                n = self._numeral(z, "r")
                acc = x
                for i in range(n):
                    if i:
                        self.tick("r", None)
                    acc = self.apply(self.apply(y, Numeral(i)), acc)
                return acc
        raise ValueError(tag)

    def query(self, oracle: Oracle, arg: Value) -> Value:
        if self.fuel <= 0:
            raise _NoFuel
        self.fuel -= 1
        key = (oracle.id, arg)
        if key in self._answers:
            ans = self._answers[key]
        else:
            fn = self.oracles.get(oracle.id)
            ans = fn(arg) if fn is not None else None
            self._answers[key] = ans
        if self.trace is not None:
            shown = "decline" if ans is None else str(ans)
            self.trace.append(f"oracle {oracle.id} {arg} -> {shown}")
        if ans is None:
            raise _Stuck(f"oracle {oracle.id} declined on {arg}")
        return ans

    # -- outcome wrappers
    def run(self, thunk) -> Outcome:
        try:
            return Defined(thunk())
        except _Stuck as exc:
            return Undefined(exc.reason)
        except _NoFuel:
            return OutOfFuel(self.used)


def eval_term(t, fuel: int = DEFAULT_FUEL, oracles: Optional[Mapping[str, OracleFn]] = None,
              env: Optional[Mapping] = None, trace: Optional[list] = None) -> Outcome:
    """Evaluate a term (closed, or closed under ``env``) within ``fuel`` steps."""
    missing = free_vars(t) - set(env or {})
    if missing:
        raise ValueError(f"term has free variables {sorted(str(v) for v in missing)}")
    m = Machine(fuel, oracles, trace)
    return m.run(lambda: m.eval(t, env))


def apply_values(f: Value, a: Value, fuel: int = DEFAULT_FUEL, oracles=None) -> Outcome:
    m = Machine(fuel, oracles)
    return m.run(lambda: m.apply(f, a))


# ---------------------------------------------------------------------------
# Standard library


def _v(name):
    return Var(name)


@lru_cache(maxsize=None)
def stdlib() -> dict:
    """Closed combinator terms for arithmetic, decidable equality and booleans.

    The arithmetic helpers nest one another, so they go through the compact
    realizer compiler; the literal one would re-abstract every inlined helper
    and make ``times`` and ``e`` tens of thousands of combinators long.  The
    dialogue tags ``top``/``bot`` and ``d`` keep the literal compilation, which
    is what ``\\x y. y`` evaluates to.

    ``plus`` and ``times`` guard their recursion base with ``k b (succ x)``, so
    like the ``+`` and ``*`` symbols they are strict on numerals in both
    arguments rather than returning a non-numeral base unchanged at 0.
    """
    from .abstraction import compile_realizer, compile_term

    x, y, z, u, v = (_v(n) for n in "xyzuv")
    k, r, succ = Comb("k"), Comb("r"), Comb("succ")
    plus = compile_realizer(lam([x, y], app(r, app(k, x, App(succ, x)), lam([u, v], App(succ, v)), y)))
    times = compile_realizer(lam([x, y], app(r, app(k, Num(0), App(succ, x)), lam([u, v], app(plus, v, x)), y)))
    pred = compile_realizer(lam([z], app(r, Num(0), lam([u, v], u), z)))
    monus = compile_realizer(lam([x, y], app(r, x, lam([u, v], App(pred, v)), y)))
    sg = compile_realizer(lam([z], app(r, Num(0), lam([u, v], Num(1)), z)))
    e = compile_realizer(lam([x, y], App(sg, app(plus, app(monus, x, y), app(monus, y, x)))))
    bot = compile_term(lam([x, y], y))
    d = compile_term(lam([x, y, z], app(x, y, z)))
    return {
        "plus": plus,
        "times": times,
        "pred": pred,
        "monus": monus,
        "sg": sg,
        "e": e,
        "top": k,
        "bot": bot,
        "d": d,
    }


def value_of(name: str) -> Value:
    out = eval_term(stdlib()[name])
    assert isinstance(out, Defined), name
    return out.value


# ---------------------------------------------------------------------------
# Sequences


MAX_SEQ_LEN = 1_000_000


def encode_seq(vs) -> Value:
    """``<u0, ..., u(n-1)>`` as ``pair(n, pair(u0, pair(u1, ... 0)))``."""
    vs = list(vs)
    body: Value = Numeral(0)
    for v in reversed(vs):
        body = pair(v, body)
    return pair(Numeral(len(vs)), body)


def decode_seq(v: Value) -> list:
    n = proj0(v)
    if not isinstance(n, Numeral):
        raise ValueError(f"{v} is not a sequence code")
    # a numeral code can claim an enormous length; no sequence is longer than its code
    if (isinstance(v, Numeral) and n.n > v.n) or n.n > MAX_SEQ_LEN:
        raise ValueError(f"{v} is not a sequence code")
    out = []
    rest = proj1(v)
    for _ in range(n.n):
        out.append(proj0(rest))
        rest = proj1(rest)
    if rest != Numeral(0) or encode_seq(out) != v:
        raise ValueError(f"{v} is not a sequence code")
    return out


def is_seq(v: Value) -> bool:
    try:
        decode_seq(v)
    except ValueError:
        return False
    return True


def seq_concat(u: Value, w: Value) -> Value:
    return encode_seq(decode_seq(u) + decode_seq(w))


def seq_prefix(u: Value, i: int) -> Value:
    return encode_seq(decode_seq(u)[:i])


# ---------------------------------------------------------------------------
# Dialogue application


@dataclass
class DialogueResult:
    outcome: Outcome
    transcript: list = field(default_factory=list)


def dialogue_apply(a: Value, b: Value, f: OracleFn, fuel: int = DEFAULT_FUEL,
                   oracles: Optional[Mapping[str, OracleFn]] = None) -> Outcome:
    """``a`` applied to ``b`` with ``f`` as an oracle, by building an f-dialogue.

    Stage i evaluates ``a <b, u0, ..., u(i-1)>``; a result ``p bot v`` asks
    the question v, answered by ``f(v)`` and appended; ``p top c`` returns c.
    """
    return dialogue_run(a, b, f, fuel, oracles).outcome


def dialogue_run(a: Value, b: Value, f: OracleFn, fuel: int = DEFAULT_FUEL,
                 oracles: Optional[Mapping[str, OracleFn]] = None) -> DialogueResult:
    top, bot = value_of("top"), value_of("bot")
    m = Machine(fuel, oracles)
    answers: list = []
    result = DialogueResult(Undefined("no stage run"), answers)

    def loop():
        while True:
            reply = m.apply(a, encode_seq([b] + answers))
            tag, payload = proj0(reply), proj1(reply)
            if tag == top:
                return payload
            if tag != bot:
                raise _Stuck(f"dialogue stage {len(answers)} returned untagged value {reply}")
            m.tick("query")
            ans = f(payload)
            if ans is None:
                raise _Stuck(f"oracle declined question {payload}")
            answers.append(ans)

    result.outcome = m.run(loop)
    return result
