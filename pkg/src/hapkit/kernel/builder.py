"""Derived rules for assembling Hilbert proofs by hand.

The primitive rules only combine implications, so a proved formula ``A`` is
first weakened to ``T -> A`` with ``T`` a closed theorem (reflexivity), and
conjunctions are built under that antecedent.  Every helper returns a plain
:class:`Proof` that the kernel rechecks from scratch.
"""

from __future__ import annotations

from ..syntax import GROUND, Comb, Num, Oracle, SuccOf, TVar
from .proofs import Proof, axiom, check_proof, rule


class Builder:
    def __init__(self, lang: str):
        self.lang = lang
        self._top = axiom("eq-refl", sigma=GROUND)

    def concl(self, p: Proof):
        return check_proof(p, self.lang)

    @property
    def top(self) -> Proof:
        """A closed theorem used as the dummy antecedent."""
        return self._top

    def mp(self, pa: Proof, pimp: Proof) -> Proof:
        return rule("mp", pa, pimp)

    def syll(self, pab: Proof, pbc: Proof) -> Proof:
        return rule("syll", pab, pbc)

    def weaken(self, pa: Proof, antecedent) -> Proof:
        """From ``A`` to ``C -> A``."""
        a = self.concl(pa)
        k = rule("curry", axiom("conj-elim-l", phi=a, psi=antecedent))
        return self.mp(pa, k)

    def and_i(self, pa: Proof, pb: Proof) -> Proof:
        """From ``A`` and ``B`` to ``A & B``."""
        t = self.concl(self.top)
        both = rule("conj-intro", self.weaken(pa, t), self.weaken(pb, t))
        return self.mp(self.top, both)

    def gen(self, pa: Proof, x) -> Proof:
        """From ``A`` to ``forall x. A``."""
        t = self.concl(self.top)
        return self.mp(self.top, rule("forall-intro", self.weaken(pa, t), x=x))

    def defined(self, t) -> Proof:
        """``t!`` for a numeral, combinator, choice constant or successor of one (HAP only)."""
        if isinstance(t, (Num, Comb, Oracle)):
            return axiom("strict-const", c=t)
        if isinstance(t, SuccOf):
            return self.inst(axiom("S-total"), t.arg)
        raise ValueError(f"no definedness proof for {t}")

    def inst(self, pall: Proof, t, pdef: Proof | None = None) -> Proof:
        """From ``forall x. phi`` to ``phi[t/x]``; HAP needs ``t!`` as well."""
        phi = self.concl(pall)
        fe = axiom("forall-elim", x=phi.var, phi=phi.body, t=t)
        if isinstance(phi.var, TVar):
            return self.mp(pall, fe)
        pdef = pdef or self.defined(t)
        return self.mp(self.and_i(pall, pdef), fe)

    def exists_i(self, pa: Proof, x, body, t, pdef: Proof | None = None) -> Proof:
        """From ``body[t/x]`` to ``exists x. body``."""
        ei = axiom("exists-intro", x=x, phi=body, t=t)
        if isinstance(x, TVar):
            return self.mp(pa, ei)
        pdef = pdef or self.defined(t)
        return self.mp(self.and_i(pa, pdef), ei)


__all__ = ["Builder"]
