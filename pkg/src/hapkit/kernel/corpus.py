"""A fixed corpus of small proofs, used by the tests, the CLI batch mode and the
extraction checks.  Each entry is ``(name, lang, proof)``."""

from __future__ import annotations

from functools import lru_cache

from ..syntax import GROUND, Defined, Eq, Forall, Num, Plus, SuccOf, TApp, TSUCC, TVar, TZERO, Var
from ..text import parse_formula
from .builder import Builder
from .proofs import axiom, rule

x, y, z = Var("x"), Var("y"), Var("z")


def _f(src):
    return parse_formula(src)


def _hap() -> list:
    b = Builder("hap")
    out = []

    out.append(("k-axiom", "hap", axiom("k")))
    out.append(("refl-zero", "hap", b.inst(axiom("eq-refl"), Num(0))))
    out.append(("plus-zero-three", "hap", b.inst(axiom("plus-0"), Num(3))))

    s0 = SuccOf(Num(0))
    refl_s0 = b.inst(axiom("eq-refl"), s0)
    out.append(("exists-succ-zero", "hap", b.exists_i(refl_s0, y, Eq(y, s0), s0)))

    # forall x. x = x by induction; the step gets x! from its own antecedent
    c = Eq(x, x)
    x_def = b.syll(axiom("strict-eq", s=x, t=x), axiom("conj-elim-l", phi=Defined(x), psi=Defined(x)))
    sx_def = b.syll(rule("conj-intro", b.weaken(axiom("S-total"), c), x_def),
                    axiom("forall-elim", x=x, phi=Defined(SuccOf(x)), t=x))
    refl = axiom("eq-refl")
    step_body = b.syll(rule("conj-intro", b.weaken(refl, c), sx_def),
                       axiom("forall-elim", x=x, phi=Eq(x, x), t=SuccOf(x)))
    base = b.inst(refl, Num(0))
    step = b.gen(step_body, x)
    out.append(("induction-refl", "hap", b.mp(b.and_i(base, step), axiom("ind", x=x, phi=Eq(x, x)))))

    a, bb = _f("x = 0"), _f("y = S x")
    swap = rule("conj-intro", axiom("conj-elim-r", phi=a, psi=bb), axiom("conj-elim-l", phi=a, psi=bb))
    out.append(("conj-swap", "hap", swap))

    a, bb = _f("x = 0"), _f("x = 1")
    orswap = rule("disj-elim", axiom("disj-intro-r", phi=bb, psi=a), axiom("disj-intro-l", phi=bb, psi=a))
    out.append(("disj-swap", "hap", orswap))

    # (exists y. x = y + y) -> exists z. x = z + z
    c = Eq(x, Plus(y, y))
    y_def = b.syll(b.syll(b.syll(axiom("strict-eq", s=x, t=Plus(y, y)),
                                 axiom("conj-elim-r", phi=Defined(x), psi=Defined(Plus(y, y)))),
                          axiom("strict-plus", s=y, t=y)),
                   axiom("conj-elim-l", phi=Defined(y), psi=Defined(y)))
    with_def = rule("conj-intro", axiom("id", phi=c), y_def)
    renamed = b.syll(with_def, axiom("exists-intro", x=z, phi=Eq(x, Plus(z, z)), t=y))
    out.append(("even-rename", "hap", rule("exists-elim", renamed, x=y)))

    kshape = rule("curry", axiom("conj-elim-l", phi=_f("x = 0"), psi=_f("y = 0")))
    out.append(("curry-k", "hap", kshape))
    out.append(("uncurry-k", "hap", rule("uncurry-iff", kshape)))
    out.append(("efq", "hap", axiom("efq", phi=_f("0 = 1"))))
    # y is not free in the antecedent x = 0
    out.append(("forall-intro", "hap", rule("forall-intro", kshape, x=y)))
    return out


def _hap_eps() -> list:
    b = Builder("hap-eps")
    phi = _f("y = S x")
    spec = axiom("eps-spec", phi=phi, y=y)
    out = [("eps-spec-succ", "hap-eps", b.gen(spec, x))]

    # forall x. x = x -> eps x !, through S x = S x and exists y. y = S x
    c = Eq(x, x)
    x_def = b.syll(axiom("strict-eq", s=x, t=x), axiom("conj-elim-l", phi=Defined(x), psi=Defined(x)))
    sx_def = b.syll(rule("conj-intro", b.weaken(axiom("S-total"), c), x_def),
                    axiom("forall-elim", x=x, phi=Defined(SuccOf(x)), t=x))
    refl_sx = b.syll(rule("conj-intro", b.weaken(axiom("eq-refl"), c), sx_def),
                     axiom("forall-elim", x=x, phi=Eq(x, x), t=SuccOf(x)))
    ex = b.syll(rule("conj-intro", refl_sx, sx_def), axiom("exists-intro", x=y, phi=phi, t=SuccOf(x)))
    total = b.syll(ex, axiom("eps-def", phi=phi, y=y))
    out.append(("eps-total", "hap-eps", b.gen(total, x)))
    return out


def _typed(lang: str) -> list:
    b = Builder(lang)
    n, m = TVar("n", GROUND), TVar("m", GROUND)
    sn = TApp(TSUCC, n)
    # forall n. exists m. m = S n
    refl = axiom("eq-refl", sigma=GROUND)
    ex = b.exists_i(b.inst(refl, sn), m, Eq(m, sn), sn)
    total = b.gen(ex, n)
    ac = axiom("AC", x=n, y=m, phi=Eq(m, sn))
    choice = b.mp(total, ac)  # exists f. forall n. f n = S n
    f = b.concl(choice).var
    fn_all = Forall(n, Eq(TApp(f, n), sn))
    s0 = TApp(TSUCC, TZERO)
    at0 = axiom("forall-elim", x=n, phi=fn_all.body, t=TZERO)  # forall n (f n = S n) -> f 0 = S 0
    to_ex = axiom("exists-intro", x=m, phi=Eq(m, s0), t=TApp(f, TZERO))
    goal = b.mp(choice, rule("exists-elim", b.syll(at0, to_ex), x=f))
    return [
        (f"{lang}-goodman", lang, goal),
        (f"{lang}-ac", lang, ac),
        (f"{lang}-r0", lang, axiom("R0", sigma=GROUND)),
    ]


@lru_cache(maxsize=None)
def corpus() -> tuple:
    """All corpus proofs, HAP first."""
    return tuple(_hap() + _hap_eps() + _typed("iha") + _typed("eha"))


def by_name(name: str) -> tuple:
    for entry in corpus():
        if entry[0] == name:
            return entry
    raise KeyError(name)


__all__ = ["by_name", "corpus"]
