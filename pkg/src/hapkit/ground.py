"""Bounded truth over the executable PCA.

Every quantifier ranges over numerals below a bound B, so verdicts are exact
only for the finite instance evaluated.  Each verdict says whether a bound
was hit (``bound_limited``); running out of fuel raises :class:`Inconclusive`
instead of producing a boolean.

Two extensions of the plain numeral domain are driven by quantifier labels:

* ``cond`` quantifiers (emitted by forcing) range over a finite universe of
  valid conditions: sequences of at most ``cond_len`` ψ-valid pairs below B.
* any other label ``L`` adds the values ``pool[L]`` to the numerals; the
  default pool is empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Mapping, Optional

from .defaults import DEFAULTS
from .pca import (
    Defined as DefinedOutcome, Machine, Numeral, OutOfFuel, PairV, PartialApp, Value,
    cantor, decode_seq, encode_seq, untuple_value,
)
from .syntax import (
    And, Bot, CondSpec, Defined, Eq, Exists, Forall, FRel, Implies, IsCond, KleeneEq, Leq,
    Member, Not, Num, Or, Oracle, Plus, SuccOf, TApp, TConst, Times, TVar, Var,
    all_vars, desugar, fresh, free_vars, is_arithmetical, oracles_in,
)
from .translations import COND, RealizerTerm, erealize_hap, realize_hap, realize_omega


class GroundError(ValueError):
    pass


@dataclass(frozen=True)
class BoundedVerdict:
    value: bool
    bound_limited: bool
    B: int
    fuel_used: int = 0

    def line(self) -> str:
        return verdict_line("true" if self.value else "false", self.B, self.bound_limited, self.fuel_used)


class Inconclusive(Exception):
    """Fuel ran out somewhere; no boolean verdict is available."""

    def __init__(self, reason: str, B: int, fuel_used: int = 0):
        super().__init__(reason)
        self.reason = reason
        self.B = B
        self.fuel_used = fuel_used

    def line(self) -> str:
        return verdict_line("inconclusive", self.B, True, self.fuel_used)


def verdict_line(value: str, B: int, limited: bool, fuel_used: int) -> str:
    return f"verdict={value} bound={B} bound_limited={int(limited)} fuel_used={fuel_used}"


# ---------------------------------------------------------------------------
# Connective bookkeeping shared by both evaluators.  A result is (value, limited).


def _conj(a, b_thunk):
    if not a[0] and not a[1]:
        return a
    b = b_thunk()
    if a[0] and b[0]:
        return True, a[1] or b[1]
    if not a[0] and not b[0]:
        return False, a[1] and b[1]
    return False, (a if not a[0] else b)[1]


def _disj(a, b_thunk):
    if a[0] and not a[1]:
        return a
    b = b_thunk()
    if not a[0] and not b[0]:
        return False, a[1] or b[1]
    if a[0] and b[0]:
        return True, a[1] and b[1]
    return True, (a if a[0] else b)[1]


def _imp(a, b_thunk):
    return _disj((not a[0], a[1]), b_thunk)


def _quant(universal: bool, results, truncated: bool):
    """Fold instance results; ``truncated`` says whether the domain was cut at a bound."""
    limited_all = False
    for v, l in results:
        if v != universal:
            return v, l
        limited_all = limited_all or l
    return universal, truncated or limited_all


# ---------------------------------------------------------------------------
# Arithmetic


def _arith_term(t, env):
    match t:
        case Num(n):
            return n
        case Var() | TVar():
            key = _key(t)
            if key not in env:
                raise GroundError(f"unbound variable {t}")
            return env[key]
        case SuccOf(a):
            return _arith_term(a, env) + 1
        case Plus(a, b):
            return _arith_term(a, env) + _arith_term(b, env)
        case Times(a, b):
            return _arith_term(a, env) * _arith_term(b, env)
        case TConst(tag="Zero"):
            return 0
        case TApp(TConst(tag="Succ"), a):
            return _arith_term(a, env) + 1
    raise GroundError(f"not an arithmetical term: {t!r}")


def _key(k):
    if isinstance(k, str):
        return Var(k)
    return Var(k.name, k.index) if isinstance(k, TVar) else k


def _norm_env(env) -> dict:
    return {_key(k): v for k, v in (env or {}).items()}


def eval_arith(phi, env: Optional[Mapping] = None, B: int = DEFAULTS.bound) -> BoundedVerdict:
    """Classical truth of an arithmetical formula with quantifiers cut at B."""
    if not is_arithmetical(phi):
        raise GroundError("eval_arith needs an arithmetical formula")
    env = {k: (v.n if isinstance(v, Numeral) else v) for k, v in _norm_env(env).items()}
    v, l = _arith(desugar(phi, or_elim=False), env, B)
    return BoundedVerdict(v, l, B)


def _arith(phi, env, B):
    match phi:
        case Bot():
            return False, False
        case Eq(a, b):
            return _arith_term(a, env) == _arith_term(b, env), False
        case And(a, b):
            return _conj(_arith(a, env, B), lambda: _arith(b, env, B))
        case Or(a, b):
            return _disj(_arith(a, env, B), lambda: _arith(b, env, B))
        case Implies(a, b):
            return _imp(_arith(a, env, B), lambda: _arith(b, env, B))
        case Forall(v, body) | Exists(v, body):
            key = _key(v)
            universal = isinstance(phi, Forall)

            def instances():
                for n in range(B):
                    yield _arith(body, {**env, key: n}, B)

            return _quant(universal, instances(), True)
    raise GroundError(f"not arithmetical: {phi!r}")


# ---------------------------------------------------------------------------
# Choice oracles


def epsilon_oracle(phi, witness: Var, params=(), B: int = DEFAULTS.bound, search: Optional[int] = None):
    """Bounded-search choice function: the least y below ``search`` (default B)
    with phi(params := a, witness := y); quantifiers inside phi are cut at B."""
    if not is_arithmetical(phi):
        raise GroundError("choice constants exist for arithmetical formulas only")
    params = tuple(params)
    phi = desugar(phi, or_elim=False)

    @lru_cache(maxsize=None)
    def oracle(arg: Value) -> Optional[Value]:
        if params:
            parts = untuple_value(arg, len(params))
            if not all(isinstance(p, Numeral) for p in parts):
                return None
            base = {_key(v): p.n for v, p in zip(params, parts)}
        else:
            base = {}
        for y in range(B if search is None else search):
            if _arith(phi, {**base, _key(witness): y}, B)[0]:
                return Numeral(y)
        return None

    return oracle


def _value_oracles(v, out):
    match v:
        case PartialApp(head, args):
            if isinstance(head, Oracle):
                out.add(head)
            for a in args:
                _value_oracles(a, out)
        case PairV(a, b):
            _value_oracles(a, out)
            _value_oracles(b, out)


def oracle_table(things, B: int, declared: Optional[Mapping] = None) -> dict:
    """Synthesize bounded-search oracles for every choice constant in ``things``
    (terms, formulas or values); ``declared`` entries take precedence."""
    found = set()
    for x in things:
        if isinstance(x, (Numeral, PairV, PartialApp)):
            _value_oracles(x, found)
        else:
            found |= oracles_in(x)
    table = {}
    for o in sorted(found, key=lambda o: o.id):
        if o.eps is not None:
            table[o.id] = epsilon_oracle(o.eps.formula, o.eps.witness, o.eps.params, B, eps_search(B))
    table.update(declared or {})
    return table


# ---------------------------------------------------------------------------
# Conditions


@lru_cache(maxsize=4096)
def _entries(v: Value):
    """Entries of a condition as (x, y) pairs of ints, or None."""
    try:
        items = decode_seq(v)
    except ValueError:
        return None
    out = []
    for e in items:
        if not isinstance(e, Numeral):
            return None
        from .pca import uncantor

        out.append(uncantor(e.n))
    return tuple(out)


@lru_cache(maxsize=256)
def _valid_pairs(psi: CondSpec, B: int):
    phi = desugar(psi.formula, or_elim=False)
    return tuple((x, y) for x in range(B) for y in range(B) if _arith(phi, {_key(psi.x): x, _key(psi.y): y}, B)[0])


def decide_condition(v: Value, psi: CondSpec, B: int = DEFAULTS.bound) -> bool:
    """v codes a finite sequence of psi-valid pairs with distinct first components."""
    ents = _entries(v)
    if ents is None:
        return False
    xs = [x for x, _ in ents]
    if len(set(xs)) != len(xs):
        return False
    phi = desugar(psi.formula, or_elim=False)
    return all(_arith(phi, {_key(psi.x): x, _key(psi.y): y}, B)[0] for x, y in ents)


def encode_condition(entries) -> Value:
    return encode_seq([Numeral(cantor(x, y)) for x, y in entries])


@lru_cache(maxsize=64)
def condition_universe(psi: CondSpec, B: int, max_len: int) -> tuple:
    """All valid conditions with at most ``max_len`` entries, as (entries, value)."""
    pairs = _valid_pairs(psi, B)
    out = []
    for n in range(max_len + 1):
        for seq in permutations(pairs, n):
            if len({x for x, _ in seq}) == n:
                out.append((seq, encode_condition(seq)))
    return tuple(out)


def _cond_guard(phi):
    """The (psi, base term) of a condition quantifier's guard."""
    q = phi.var
    match phi:
        case Forall(_, Implies(And(IsCond(a, psi), Leq(b, base)), _)) if a == q and b == q:
            return psi, base
        case Exists(_, And(And(IsCond(a, psi), Leq(b, base)), _)) if a == q and b == q:
            return psi, base
    raise GroundError("condition quantifier without a Cond/<= guard")


# ---------------------------------------------------------------------------
# HAP formulas


def _fv_order(x):
    return tuple(sorted(free_vars(x), key=lambda v: (v.name, v.index)))


class _Node:
    """A formula prepared for repeated evaluation: children built once, results
    memoised on the values of the node's free variables."""

    __slots__ = ("phi", "fv", "kids", "memo")

    def __init__(self, phi, kids=()):
        self.phi = phi
        self.fv = _fv_order(phi)
        self.kids = kids
        self.memo = {}


def _build(phi) -> _Node:
    match phi:
        case Not(a):
            return _Node(phi, (_build(a),))
        case And(a, b) | Or(a, b) | Implies(a, b):
            return _Node(phi, (_build(a), _build(b)))
        case Forall(v, body) | Exists(v, body):
            if isinstance(v, TVar):
                raise GroundError("eval_hap works on HAP formulas; translate HAω first")
            return _Node(phi, (_build(body),))
    return _Node(phi)


class _HapEval:
    def __init__(self, B, fuel, oracles, pool, cond_len):
        self.B = B
        self.fuel = fuel
        self.oracles = oracles
        self.pool = pool or {}
        self.cond_len = cond_len
        self.used = 0
        self._numerals = [Numeral(n) for n in range(B)]

    def term(self, t, env):
        m = Machine(self.fuel, self.oracles)
        out = m.run(lambda: m.eval(t, env))
        self.used += m.used
        if isinstance(out, OutOfFuel):
            raise Inconclusive(f"out of fuel evaluating {t}", self.B, self.used)
        return out.value if isinstance(out, DefinedOutcome) else None

    def go(self, node: _Node, env):
        key = tuple(env[v] for v in node.fv)
        hit = node.memo.get(key)
        if hit is None:
            hit = node.memo[key] = self._go(node, env)
        return hit

    def _go(self, node, env):
        phi = node.phi
        match phi:
            case Bot():
                return False, False
            case Eq(a, b):
                x = self.term(a, env)
                if x is None:
                    return False, False
                y = self.term(b, env)
                return (y is not None and x == y), False
            case Defined(t):
                return self.term(t, env) is not None, False
            case KleeneEq(a, b):
                x, y = self.term(a, env), self.term(b, env)
                return (x is None and y is None) or (x is not None and x == y), False
            case IsCond(t, psi):
                v = self.term(t, env)
                return v is not None and decide_condition(v, psi, self.B), False
            case Leq(q, p):
                qv, pv = self.term(q, env), self.term(p, env)
                if qv is None or pv is None:
                    return False, False
                qe, pe = _entries(qv), _entries(pv)
                return qe is not None and pe is not None and qe[: len(pe)] == pe, False
            case Member(x, y, r):
                xv, yv, rv = self.term(x, env), self.term(y, env), self.term(r, env)
                if None in (xv, yv, rv) or not isinstance(xv, Numeral) or not isinstance(yv, Numeral):
                    return False, False
                ents = _entries(rv)
                return ents is not None and (xv.n, yv.n) in ents, False
            case FRel():
                raise GroundError("F has no ground interpretation; force the formula first")
        kids = node.kids
        match phi:
            case Not():
                v, l = self.go(kids[0], env)
                return not v, l
            case And():
                return _conj(self.go(kids[0], env), lambda: self.go(kids[1], env))
            case Or():
                return _disj(self.go(kids[0], env), lambda: self.go(kids[1], env))
            case Implies():
                return _imp(self.go(kids[0], env), lambda: self.go(kids[1], env))
            case Forall(v) | Exists(v):
                universal = isinstance(phi, Forall)
                dom, truncated = self.domain(phi, env)
                return _quant(universal, (self.go(kids[0], {**env, v: d}) for d in dom), truncated)
        raise GroundError(f"cannot evaluate {phi!r}")

    def domain(self, phi, env):
        if phi.dom == COND:
            psi, base = _cond_guard(phi)
            bv = self.term(base, env)
            be = _entries(bv) if bv is not None else None
            if be is None:
                return [], False
            return [v for ents, v in condition_universe(psi, self.B, self.cond_len)
                    if ents[: len(be)] == be], True
        extra = self.pool.get(phi.dom, ()) if phi.dom is not None else ()
        return list(self._numerals) + list(extra), True


def eps_search(B: int) -> int:
    """Witness search bound of synthesized oracles: wider than the quantifier
    bound so that witnesses of bounded instances (such as 2n for n < B) are found."""
    return B * B


def eval_hap(phi, env: Optional[Mapping] = None, B: int = DEFAULTS.bound, fuel: int = DEFAULTS.fuel,
             oracles: Optional[Mapping] = None, pool: Optional[Mapping] = None,
             cond_len: int = DEFAULTS.cond_len) -> BoundedVerdict:
    """Bounded truth of a HAP formula; each atom's terms get ``fuel`` steps.

    Choice constants found in the formula or the environment get bounded-search
    oracles (search bound ``eps_search(B)``) unless declared in ``oracles``.
    """
    env = {k: (Numeral(v) if isinstance(v, int) else v) for k, v in _norm_env(env).items()}
    missing = free_vars(phi) - set(env)
    if missing:
        raise GroundError(f"unbound free variables {sorted(str(v) for v in missing)}")
    table = oracle_table([phi, *env.values()], B, oracles)
    ev = _HapEval(B, fuel, table, pool, cond_len)
    v, l = ev.go(_build(phi), env)
    return BoundedVerdict(v, l, B, ev.used)


# ---------------------------------------------------------------------------
# Realizers


MODES = ("r", "e", "omega-r", "omega-e")


def realizability_formula(x: Var, phi, mode: str):
    """``x r phi`` (or e, or the finite-type variants); disjunctions are
    desugared first, as no realizability clause treats them directly."""
    if mode in MODES:
        phi = desugar(phi, or_elim=True, typed=mode.startswith("omega"))
    if mode == "r":
        return realize_hap(x, phi)
    if mode == "e":
        return erealize_hap(x, phi)
    if mode == "omega-r":
        return realize_omega(x, phi, "r")
    if mode == "omega-e":
        return realize_omega(x, phi, "e")
    raise GroundError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")


def check_realizes(t, phi, mode: str = "r", B: int = DEFAULTS.bound, fuel: int = DEFAULTS.fuel,
                   pool: Optional[Mapping] = None, oracles: Optional[Mapping] = None,
                   cond_len: int = DEFAULTS.cond_len) -> BoundedVerdict:
    """Does the closed term t realize the closed formula phi, in the bounded model?

    An undefined t realizes nothing.  Choice constants in t are answered by
    bounded-search oracles at bound B.
    """
    term = t.term if isinstance(t, RealizerTerm) else t
    if free_vars(term):
        raise GroundError(f"realizer has free variables {sorted(str(v) for v in free_vars(term))}")
    if free_vars(phi):
        raise GroundError("check_realizes needs a closed formula; close it universally first")
    x = fresh(Var("x"), {Var(v.name, v.index) for v in all_vars(phi)})
    rf = realizability_formula(x, phi, mode)
    table = oracle_table([term, rf], B, oracles)
    m = Machine(fuel, table)
    out = m.run(lambda: m.eval(term))
    if isinstance(out, OutOfFuel):
        raise Inconclusive("out of fuel evaluating the realizer", B, m.used)
    if not isinstance(out, DefinedOutcome):
        return BoundedVerdict(False, False, B, m.used)
    res = eval_hap(rf, {x: out.value}, B, fuel, table, pool, cond_len)
    return BoundedVerdict(res.value, res.bound_limited, B, res.fuel_used + m.used)


def universal_closure(phi):
    """Close phi over its free variables in canonical (name, index) order."""
    vs = sorted(free_vars(phi), key=lambda v: (v.name, v.index))
    for v in reversed(vs):
        phi = Forall(v, phi)
    return phi


def standard_pool() -> dict:
    """A small declared family of function values for realizer and type-(0->0)
    quantifiers: identity, successor, constant zero, doubling, squaring and the
    successor-witness function of the AC example.  Realizer quantifiers also see
    a two-argument constant and an induction-shaped pair built from it."""
    from .pca import eval_term
    from .text import parse_term

    def v(src):
        out = eval_term(parse_term(src))
        assert isinstance(out, DefinedOutcome)
        return out.value

    funcs = [v(s) for s in (r"\x. x", r"\x. S x", r"\x. 0", r"\x. x + x", r"\x. x * x")]
    realizers = [v(s) for s in (r"\x. p (S x) 0", r"\x. p x 0", r"\x. p (x + x) 0", r"\x. 0",
                                 r"\x y. 0", r"p 0 (\x y. 0)")]
    return {"real": funcs + realizers, "0->0": funcs}


__all__ = [
    "BoundedVerdict", "GroundError", "Inconclusive", "MODES", "check_realizes", "condition_universe",
    "decide_condition", "encode_condition", "eps_search", "epsilon_oracle", "eval_arith", "eval_hap", "oracle_table",
    "realizability_formula", "standard_pool", "universal_closure", "verdict_line",
]
