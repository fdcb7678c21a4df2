"""Proof trees, the checker and the line-oriented proof file format.

A proof file::

    LANG hap
    # comments start with '#'
    1: AXIOM eq-refl
    2: AXIOM forall-elim {x := x; phi := x = x; t := 0}
    3: AXIOM strict-const {c := 0}
    ...
    7: RULE mp 6 2 |- 0 = 0
    QED 7

Bindings are ``name := value`` separated by ``;``.  A trailing ``|- formula``
states the node's conclusion; the checker rejects the proof if it differs
from the computed one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from ..syntax import Arrow, Ground, Prod, TVar, Var, alpha_eq, check_formula, oracles_in, SyntaxError_
from ..text import ParseError, parse_formula, parse_term, parse_type, parse_typed_term, show
from .schemes import SchemeError, apply_rule, get_scheme, instantiate, is_typed_lang


class ProofError(SyntaxError_):
    """A proof failed to check; names the node, its scheme and the reason."""

    def __init__(self, node: str, scheme: str, reason: str):
        super().__init__(f"node {node} ({scheme}): {reason}")
        self.node = node
        self.scheme = scheme
        self.reason = reason


@dataclass(frozen=True)
class Proof:
    kind: str  # "axiom" or "rule"
    scheme: str
    bindings: tuple = ()  # ((name, value), ...)
    premises: tuple = ()
    conclusion: Optional[object] = field(default=None, compare=False)
    label: str = field(default="", compare=False)

    @property
    def binding_map(self) -> dict:
        return dict(self.bindings)


def axiom(scheme: str, conclusion=None, label: str = "", **bindings) -> Proof:
    return Proof("axiom", scheme, tuple(bindings.items()), (), conclusion, label)


def rule(scheme: str, *premises: Proof, conclusion=None, label: str = "", **bindings) -> Proof:
    return Proof("rule", scheme, tuple(bindings.items()), tuple(premises), conclusion, label)


def _wellformed(phi, lang):
    check_formula(phi, "omega" if is_typed_lang(lang) else "hap")
    if lang == "hap" and oracles_in(phi):
        raise SchemeError("choice constants need language hap-eps")


def check_proof(p: Proof, lang: str):
    """Validate every node; return the root conclusion.  Shared subproofs are checked once."""
    memo: dict = {}
    return _check(p, lang, memo, "root")


def _node_name(p: Proof, path: str) -> str:
    return p.label or path


def _check(p: Proof, lang: str, memo: dict, path: str):
    key = id(p)
    if key in memo:
        return memo[key][1]
    name = _node_name(p, path)
    try:
        premises = [_check(q, lang, memo, f"{path}.{i + 1}") for i, q in enumerate(p.premises)]
        if p.kind == "axiom":
            if p.premises:
                raise SchemeError("axiom nodes take no premises")
            phi = instantiate(p.scheme, lang, p.binding_map)
        elif p.kind == "rule":
            phi = apply_rule(p.scheme, lang, p.binding_map, premises)
        else:
            raise SchemeError(f"unknown node kind {p.kind!r}")
        _wellformed(phi, lang)
    except ProofError:
        raise
    except (SchemeError, SyntaxError_) as exc:
        raise ProofError(name, p.scheme, str(exc)) from None
    if p.conclusion is not None and not alpha_eq(p.conclusion, phi):
        raise ProofError(name, p.scheme, f"stated conclusion {show(p.conclusion)} differs from {show(phi)}")
    memo[key] = (p, phi)
    return phi


def conclusions(p: Proof, lang: str) -> dict:
    """Map id(node) -> conclusion for every node of a proof (checked)."""
    memo: dict = {}
    _check(p, lang, memo, "root")
    return {k: v[1] for k, v in memo.items()}


def size(p: Proof) -> int:
    seen = set()

    def go(q):
        if id(q) in seen:
            return
        seen.add(id(q))
        for r in q.premises:
            go(r)

    go(p)
    return len(seen)


def schemes_used(p: Proof) -> set:
    out = set()

    def go(q):
        out.add(q.scheme)
        for r in q.premises:
            go(r)

    go(p)
    return out


# ---------------------------------------------------------------------------
# File format

_NODE = re.compile(r"^\s*([\w.\-]+)\s*:\s*(AXIOM|RULE)\s+([\w\-]+)(.*)$")


def _split_top(s: str, sep: str) -> list:
    """Split on ``sep`` outside brackets."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _parse_value(kind: str, src: str, typed: bool, scope: dict):
    src = src.strip()
    if kind == "formula":
        return parse_formula(src, typed=typed, scope=scope)
    if kind == "type":
        return parse_type(src)
    if kind in ("term", "var"):
        t = parse_typed_term(src, scope) if typed else parse_term(src)
        if kind == "var" and not isinstance(t, (Var, TVar)):
            raise SchemeError(f"{src!r} is not a variable")
        if isinstance(t, TVar):
            scope[t.name, t.index] = t
        return t
    raise SchemeError(f"unknown metavariable kind {kind}")


def _rest(line_no: int, rest: str):
    """Split the tail of a node line into (premise ids, bindings text, conclusion text)."""
    rest = rest.strip()
    concl = None
    parts = rest.split("|-", 1)
    if len(parts) == 2:
        rest, concl = parts[0].strip(), parts[1].strip()
    binds = None
    if "{" in rest:
        i = rest.index("{")
        if not rest.endswith("}"):
            raise ParseError("unterminated bindings", line_no, i + 1)
        binds = rest[i + 1: -1]
        rest = rest[:i].strip()
    return rest.split(), binds, concl


def parse_proof(text: str) -> tuple:
    """Parse a proof file into ``(lang, Proof)``."""
    lang = None
    nodes: dict = {}
    root = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip() if not raw.lstrip().startswith("#") else ""
        if not line.strip():
            continue
        s = line.strip()
        if s.startswith("LANG"):
            lang = s.split()[1] if len(s.split()) > 1 else ""
            try:
                is_typed_lang(lang)
            except SchemeError as exc:
                raise ParseError(str(exc), line_no, 1) from None
            continue
        if s.startswith("QED"):
            parts = s.split()
            if len(parts) != 2 or parts[1] not in nodes:
                raise ParseError("QED must name a defined node", line_no, 1)
            root = nodes[parts[1]]
            continue
        if lang is None:
            raise ParseError("the first line must be LANG <language>", line_no, 1)
        m = _NODE.match(line)
        if not m:
            raise ParseError("expected '<id>: AXIOM|RULE <scheme> ...'", line_no, 1)
        nid, kind, scheme_id, tail = m.groups()
        if nid in nodes:
            raise ParseError(f"node {nid} defined twice", line_no, 1)
        try:
            sc = get_scheme(scheme_id, lang)
        except SchemeError as exc:
            raise ParseError(str(exc), line_no, m.start(3) + 1) from None
        if sc.kind != kind.lower():
            raise ParseError(f"{scheme_id} is a{'n axiom' if sc.kind == 'axiom' else ' rule'}", line_no, m.start(2) + 1)
        prem_ids, binds, concl = _rest(line_no, tail)
        if kind == "AXIOM" and prem_ids:
            raise ParseError("axiom nodes take no premises", line_no, m.start(4) + 1)
        premises = []
        for pid in prem_ids:
            if pid not in nodes:
                raise ParseError(f"unknown premise {pid}", line_no, line.find(pid) + 1)
            premises.append(nodes[pid])
        typed = is_typed_lang(lang)
        scope: dict = {}
        bindings = []
        if binds is not None and binds.strip():
            for item in _split_top(binds, ";"):
                if not item.strip():
                    continue
                if ":=" not in item:
                    raise ParseError(f"binding {item.strip()!r} lacks ':='", line_no, line.find(item) + 1)
                name, value = item.split(":=", 1)
                name = name.strip()
                mk = sc.meta_kind(name)
                if mk is None:
                    raise ParseError(f"{scheme_id} has no metavariable {name}", line_no, line.find(item) + 1)
                try:
                    bindings.append((name, _parse_value(mk, value, typed, scope)))
                except ParseError as exc:
                    raise ParseError(f"in binding {name}: {exc.message}", line_no, line.find(value) + exc.col) from None
        conclusion = None
        if concl is not None:
            try:
                conclusion = parse_formula(concl, typed=typed, scope=scope)
            except ParseError as exc:
                raise ParseError(f"in conclusion: {exc.message}", line_no, line.find(concl) + exc.col) from None
        node = Proof(kind.lower(), scheme_id, tuple(bindings), tuple(premises), conclusion, nid)
        nodes[nid] = node
    if lang is None:
        raise ParseError("empty proof file", 1, 1)
    if root is None:
        raise ParseError("missing QED line", len(text.splitlines()) or 1, 1)
    return lang, root


def _show_value(v) -> str:
    if isinstance(v, (Ground, Arrow, Prod)):
        return str(v)
    return show(v)


def write_proof(lang: str, p: Proof, with_conclusions: bool = True) -> str:
    """Serialize a proof; shared subproofs are written once."""
    concl = conclusions(p, lang) if with_conclusions else {}
    ids: dict = {}
    lines = [f"LANG {lang}"]

    def go(q):
        if id(q) in ids:
            return ids[id(q)]
        prem = [go(r) for r in q.premises]
        nid = str(len(ids) + 1)
        ids[id(q)] = nid
        parts = [f"{nid}: {q.kind.upper()} {q.scheme}"]
        if prem:
            parts.append(" ".join(prem))
        if q.bindings:
            parts.append("{" + "; ".join(f"{k} := {_show_value(v)}" for k, v in q.bindings) + "}")
        if with_conclusions:
            parts.append("|- " + show(concl[id(q)]))
        lines.append(" ".join(parts))
        return nid

    root = go(p)
    lines.append(f"QED {root}")
    return "\n".join(lines) + "\n"
