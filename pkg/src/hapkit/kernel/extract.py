"""Realizer extraction: from a checked proof to a closed term realizing its conclusion.

Each axiom scheme has a template in a :class:`RealizerTable`; rule nodes
combine their premises' realizers in a fixed way.  Realizers are built as
open λ-sugar terms whose free variables are the free variables of the node's
conclusion, and compiled to combinators once at the end, closed over those
variables in canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..abstraction import compile_realizer
from ..syntax import (
    GROUND, And, App, Arrow, Bot, Comb, Eq, Exists, Forall, Implies, Lam, Num, Prod,
    SyntaxError_, TVar, Var, all_vars, app, desugar, free_vars, fresh, lam, substitute,
)
from ..translations import RealizerTerm, canonical_order, canonical_realizer, erase
from .proofs import Proof, conclusions, schemes_used
from .schemes import OMEGA_LANGS, eps_parts, is_typed_lang

MODES = ("r", "e")


class ExtractionError(SyntaxError_):
    pass


@dataclass(frozen=True)
class Instance:
    """What a template sees: the axiom node, its bindings and its conclusion."""

    scheme: str
    bindings: dict
    conclusion: object
    typed: bool

    def term(self, name):
        t = self.bindings[name]
        return erase(t) if self.typed else t

    def var(self, name):
        v = self.bindings[name]
        return Var(v.name, v.index)


Template = Callable[[Instance], object]


@dataclass
class RealizerTable:
    mode: str
    templates: dict = field(default_factory=dict)

    def covers(self, scheme: str) -> bool:
        return scheme in self.templates


# ---------------------------------------------------------------------------
# Template building blocks


def p0(t):
    return App(Comb("p0"), t)


def p1(t):
    return App(Comb("p1"), t)


def pr(a, b):
    return app(Comb("p"), a, b)


def _v(name):
    return Var(name)


def triv(phi, typed: bool = False):
    """The constant realizer of a formula without strictly positive existentials:
    0 at atoms, pairs at conjunctions, constant functions elsewhere."""
    phi = desugar(phi, or_elim=True, typed=typed)
    return _triv(phi)


def _triv(phi):
    match phi:
        case Bot() | Eq():
            return Num(0)
        case And(a, b):
            return pr(_triv(a), _triv(b))
        case Implies(_, b):
            return Lam(_v("z"), _triv(b))
        case Forall(_, b):
            return Lam(_v("z"), _triv(b))
        case Exists():
            raise ExtractionError("formula has a positive existential; no constant realizer")
    raise ExtractionError(f"no constant realizer for {phi!r}")


def _triv_t(inst: Instance):
    return triv(inst.conclusion, inst.typed)


def _id(inst):
    return Lam(_v("y"), _v("y"))


def _cel(inst):
    return Lam(_v("y"), p0(_v("y")))


def _cer(inst):
    return Lam(_v("y"), p1(_v("y")))


def _dil(inst):
    a, z = _v("a"), _v("z")
    return Lam(a, pr(Num(0), pr(Lam(z, a), Lam(z, Num(0)))))


def _dir(inst):
    b, z = _v("b"), _v("z")
    return Lam(b, pr(Num(1), pr(Lam(z, Num(0)), Lam(z, b))))


def _efq(inst):
    return Lam(_v("y"), Num(0))


def _fresh_for(name, *terms):
    avoid = set()
    for t in terms:
        avoid |= {Var(v.name, v.index) for v in all_vars(t)}
    return fresh(Var(name), avoid)


def _forall_elim(inst):
    t = inst.term("t")
    w = _fresh_for("w", t)
    return Lam(w, App(w if inst.typed else p0(w), t))


def _exists_intro(inst):
    t = inst.term("t")
    w = _fresh_for("w", t)
    return Lam(w, pr(t, w if inst.typed else p0(w)))


def _ind(inst):
    x = inst.var("x")
    w = _fresh_for("w", x, inst.conclusion)
    return Lam(w, Lam(x, app(Comb("r"), p0(w), p1(w), x)))


def _eps_spec(inst):
    phi, y = inst.bindings["phi"], inst.bindings["y"]
    _, ex, xs = eps_parts(phi, y)
    j = canonical_realizer(phi, xs + [y]).term
    w = _fresh_for("w", ex)
    return Lam(w, app(j, *xs, ex))


def _ac(inst):
    u, x = _v("u"), _v("x")
    return Lam(u, pr(Lam(x, p0(App(u, x))), Lam(x, p1(App(u, x)))))


def _ground_only(fn):
    def template(inst):
        sigma = inst.bindings.get("sigma", GROUND)
        if sigma != GROUND:
            raise ExtractionError(f"no realizer for {inst.scheme} at type {sigma}: "
                                  "the equality test is undefined on functions in this model")
        return fn(inst)

    return template


def _e_bound(inst):
    from ..pca import stdlib

    x, y, z = _v("x"), _v("y"), _v("z")
    e = stdlib()["e"]
    return lam([x, y], pr(app(e, x, y), pr(Lam(z, Num(0)), Lam(z, Num(0)))))


LOGIC = {
    "id": _id, "conj-elim-l": _cel, "conj-elim-r": _cer, "disj-intro-l": _dil, "disj-intro-r": _dir,
    "efq": _efq, "forall-elim": _forall_elim, "exists-intro": _exists_intro, "ind": _ind,
}

NEGATIVE = [
    # equality, strictness, arithmetic and combinator axioms: no positive existentials
    "eq-refl", "eq-sym", "eq-trans", "eq-app", "eq-succ", "eq-plus", "eq-times", "eq-rel",
    "strict-const", "strict-app", "strict-S", "strict-plus", "strict-times", "strict-eq",
    "S-total", "plus-total", "times-total", "S-inj", "zero-ne-S", "plus-0", "plus-S", "times-0", "times-S",
    "k", "s-def", "s", "p0-def", "p1-def", "p0", "p1", "p-surj", "succ", "r0", "rS",
    "cong-fun", "cong-arg", "S-ne-0", "K", "S", "P0", "P1", "P-surj", "R0", "RS",
]


def realizer_table_default(mode: str = "r") -> RealizerTable:
    """Templates for every scheme in the catalogue, minus those with no realizer
    in the given mode: extensionality in mode r, the equality test in mode e."""
    if mode not in MODES:
        raise ExtractionError(f"unknown mode {mode!r}")
    t: dict = dict(LOGIC)
    t.update({s: _triv_t for s in NEGATIVE})
    t["eps-def"] = _efq
    t["eps-spec"] = _eps_spec
    t["AC"] = t["QF-AC"] = _ac
    if mode == "r":
        t["E-bound"] = _ground_only(_e_bound)
        t["E-eq"] = _triv_t
        t["E-eq-rev"] = _ground_only(_triv_t)
    else:
        t["ext"] = _triv_t
    return RealizerTable(mode, t)


# ---------------------------------------------------------------------------
# Extraction


def inhabitant(sigma):
    """A closed term denoting an element of every HRO / HEO type."""
    match sigma:
        case Arrow(_, cod):
            return App(Comb("k"), inhabitant(cod))
        case Prod(a, b):
            return pr(inhabitant(a), inhabitant(b))
    return Num(0)


def _erased_fv(phi) -> set:
    return {Var(v.name, v.index) for v in free_vars(phi)}


def _var_types(*formulas) -> dict:
    out = {}
    for f in formulas:
        for v in all_vars(f):
            if isinstance(v, TVar):
                out[Var(v.name, v.index)] = v.ty
    return out


class _Extractor:
    def __init__(self, lang, table, concl):
        self.lang = lang
        self.typed = lang in OMEGA_LANGS
        self.table = table
        self.concl = concl
        self.memo: dict = {}

    def run(self, p: Proof):
        key = id(p)
        if key not in self.memo:
            self.memo[key] = self._node(p)
        return self.memo[key]

    def _node(self, p: Proof):
        phi = self.concl[id(p)]
        allowed = _erased_fv(phi)
        if p.kind == "axiom":
            fn = self.table.templates.get(p.scheme)
            if fn is None:
                raise ExtractionError(f"no realizer template for {p.scheme} in mode {self.table.mode}")
            r = fn(Instance(p.scheme, p.binding_map, phi, self.typed))
            extra = free_vars(r) - allowed
            if extra:
                raise ExtractionError(f"template for {p.scheme} has stray free variables "
                                      f"{sorted(str(v) for v in extra)}")
            return r
        prem = [self.run(q) for q in p.premises]
        r = self._rule(p, prem)
        leftover = free_vars(r) - allowed
        if leftover:
            types = _var_types(*(self.concl[id(q)] for q in p.premises))
            for v in sorted(leftover, key=lambda v: (v.name, v.index)):
                r = substitute(r, v, inhabitant(types.get(v, GROUND)))
        return r

    def _rule(self, p: Proof, prem: list):
        def fv(*names):
            avoid = set()
            for t in prem:
                avoid |= free_vars(t)
            out = []
            for n in names:
                v = fresh(Var(n), avoid)
                avoid.add(v)
                out.append(v)
            return out

        match p.scheme, prem:
            case "mp", [a, b]:
                return App(b, a)
            case "syll", [b, c]:
                (y,) = fv("y")
                return Lam(y, App(c, App(b, y)))
            case "conj-intro", [b, c]:
                (y,) = fv("y")
                return Lam(y, pr(App(b, y), App(c, y)))
            case "disj-elim", [b, c]:
                w, z, m, acc = fv("w", "z", "m", "acc")
                left = Lam(z, App(b, App(p0(p1(w)), z)))
                right = lam([m, acc, z], App(c, App(p1(p1(w)), App(Comb("k"), z))))
                return Lam(w, app(Comb("r"), left, right, p0(w), Num(0)))
            case ("curry" | "curry-iff"), [c]:
                a, b = fv("a", "b")
                return lam([a, b], App(c, pr(a, b)))
            case "uncurry-iff", [c]:
                (w,) = fv("w")
                return Lam(w, app(c, p0(w), p1(w)))
            case "forall-intro", [b]:
                x = Var(p.binding_map["x"].name, p.binding_map["x"].index)
                avoid = free_vars(b) | {x}
                y = fresh(Var("y"), avoid)
                return lam([y, x], App(b, y))
            case "exists-elim", [b]:
                x = Var(p.binding_map["x"].name, p.binding_map["x"].index)
                avoid = free_vars(b) | {x}
                w = fresh(Var("w"), avoid)
                return Lam(w, app(Lam(x, b), p0(w), p1(w)))
        raise ExtractionError(f"no realizer combination for rule {p.scheme}")


def extract_open(p: Proof, lang: str, table: RealizerTable):
    """The open realizer of the root and the root conclusion."""
    concl = conclusions(p, lang)
    missing = sorted(s for s in schemes_used(p) if _is_axiom(p, s) and not table.covers(s))
    if missing:
        raise ExtractionError(f"no realizer template for {', '.join(missing)} in mode {table.mode}")
    ex = _Extractor(lang, table, concl)
    return ex.run(p), concl[id(p)]


def _is_axiom(p: Proof, scheme: str) -> bool:
    stack = [p]
    while stack:
        q = stack.pop()
        if q.scheme == scheme:
            return q.kind == "axiom"
        stack.extend(q.premises)
    return False


def _close(r, phi, mode, source):
    ys = [Var(v.name, v.index) for v in canonical_order(phi)]
    return RealizerTerm(compile_realizer(lam(ys, r)), mode, source)


def extract_realizer(p: Proof, lang: str = "hap", table: Optional[RealizerTable] = None) -> RealizerTerm:
    """A closed term realizing the universal closure of a HAP proof's conclusion."""
    if is_typed_lang(lang):
        raise ExtractionError("use extract_realizer_omega for finite-type proofs")
    table = table or realizer_table_default("r")
    if table.mode != "r":
        raise ExtractionError("HAP-level extraction is for mode r")
    r, phi = extract_open(p, lang, table)
    return _close(r, phi, "r", "extracted")


def extract_realizer_omega(p: Proof, lang: str, mode: str = "r",
                           table: Optional[RealizerTable] = None) -> RealizerTerm:
    """A closed term that, applied to HRO (mode r) or HEO (mode e) arguments for
    the free variables, realizes the conclusion of a finite-type proof."""
    if not is_typed_lang(lang):
        raise ExtractionError("use extract_realizer for HAP proofs")
    table = table or realizer_table_default(mode)
    if table.mode != mode:
        raise ExtractionError(f"table is for mode {table.mode}, not {mode}")
    r, phi = extract_open(p, lang, table)
    return _close(r, phi, mode, "extracted")


__all__ = [
    "ExtractionError", "Instance", "RealizerTable", "extract_open", "extract_realizer",
    "extract_realizer_omega", "inhabitant", "realizer_table_default", "triv",
]
