"""Command-line front end.

Exit codes: 0 success or a true verdict, 1 a false verdict (or a proof that
does not check), 2 an inconclusive verdict, 3 any error.  With
``--output records`` every result is one JSON object on its own line, with
sorted keys, so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import translations as tr
from .abstraction import compile_term, compile_typed
from .defaults import DEFAULTS
from .ground import (
    GroundError, Inconclusive, check_realizes, epsilon_oracle, oracle_table, standard_pool,
    universal_closure,
)
from .kernel.corpus import corpus
from .kernel.extract import ExtractionError, extract_realizer, extract_realizer_omega
from .kernel.proofs import ProofError, check_proof, parse_proof
from .kernel.schemes import OMEGA_LANGS, SchemeError, catalogue
from .pca import Defined, OutOfFuel, eval_term, quote
from .syntax import CondSpec, SyntaxError_, Var, free_vars, is_arithmetical
from .text import ParseError, eps_const, parse_formula, parse_term, parse_type, parse_typed_term, show

EXIT_OK, EXIT_FALSE, EXIT_INCONCLUSIVE, EXIT_ERROR = 0, 1, 2, 3

PASSES = ("force", "r-hap", "e-hap", "hro", "heo", "r-omega", "e-omega", "erase", "jcanon", "ac",
          "multiplex", "prenex", "herbrand")
VERIFY_MODES = ("r", "e", "omega-r", "omega-e")


class Failed(Exception):
    """A user-facing error; reported on stderr with exit code 3."""


def _records(ctx) -> bool:
    return ctx.obj["output"] == "records"


def emit(ctx, record: dict, text: str) -> None:
    if _records(ctx):
        click.echo(json.dumps(record, sort_keys=True, ensure_ascii=False))
    else:
        click.echo(text)


def _verdict_record(v) -> dict:
    if isinstance(v, Inconclusive):
        return {"verdict": "inconclusive", "bound": v.B, "bound_limited": 1, "fuel_used": v.fuel_used,
                "reason": v.reason}
    return {"verdict": "true" if v.value else "false", "bound": v.B, "bound_limited": int(v.bound_limited),
            "fuel_used": v.fuel_used}


def _exit_for(v) -> int:
    if isinstance(v, Inconclusive):
        return EXIT_INCONCLUSIVE
    return EXIT_OK if v.value else EXIT_FALSE


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise Failed(f"cannot read {path}: {exc.strerror}") from None


def _pair(text: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise Failed(f"expected two comma-separated variable names, got {text!r}")
    return Var(parts[0]), Var(parts[1])


def _declared_oracles(specs, default_bound: int) -> dict:
    """``FILE[:B]`` declarations.  The file holds an arithmetical formula; its
    witness variable is ``y`` unless a line ``witness NAME`` says otherwise."""
    table = {}
    for spec in specs:
        path, _, bound = spec.rpartition(":") if spec.rpartition(":")[2].isdigit() else (spec, "", "")
        B = int(bound) if bound else default_bound
        lines = [ln for ln in _read(path).splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        witness = Var("y")
        body = []
        for ln in lines:
            if ln.strip().startswith("witness "):
                witness = Var(ln.split()[1])
            else:
                body.append(ln)
        phi = parse_formula("\n".join(body))
        if not is_arithmetical(phi):
            raise Failed(f"{path}: oracle formulas must be arithmetical")
        params = tuple(sorted((v for v in free_vars(phi) if v != witness), key=lambda v: (v.name, v.index)))
        o = eps_const(phi, witness, params)
        table[o.id] = epsilon_oracle(phi, witness, params, B)
    return table


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--output", type=click.Choice(["text", "records"]), default="text", show_default=True,
              help="records: one JSON object per result line.")
@click.pass_context
def cli(ctx, output):
    """Partial combinatory arithmetic: terms, translations, proofs and realizers."""
    ctx.ensure_object(dict)
    ctx.obj["output"] = output


@cli.command()
@click.argument("term")
@click.option("--typed", is_flag=True, help="Parse a finite-type term and abstract with typed S and K.")
@click.pass_context
def abstract(ctx, term, typed):
    """Compile the lambdas of TERM into combinators."""
    out = compile_typed(parse_typed_term(term)) if typed else compile_term(parse_term(term))
    emit(ctx, {"input": term, "output": show(out)}, show(out))


@cli.command()
@click.option("--pass", "pass_", type=click.Choice(PASSES), required=True)
@click.option("--formula", "formulas", multiple=True, help="Input formula (repeat for multiplex).")
@click.option("--term", help="Input term (erase).")
@click.option("--type", "type_", help="Finite type (hro, heo).")
@click.option("--sigma", default="0", show_default=True, help="Argument type (ac).")
@click.option("--tau", default="0", show_default=True, help="Value type (ac).")
@click.option("--vars", "vars_", default="x,y", show_default=True,
              help="Distinguished variables: psi's pair (force), x_i,y_i (multiplex), x,y (ac).")
@click.option("--psi", help="Condition formula psi(x, y) (force).")
@click.option("--cond", default="c", show_default=True, help="Condition variable (force).")
@click.option("--realizer-var", default="a", show_default=True, help="Realizer variable name.")
@click.option("--typed", is_flag=True, help="Parse formulas at finite types.")
@click.pass_context
def translate(ctx, pass_, formulas, term, type_, sigma, tau, vars_, psi, cond, realizer_var, typed):
    """Run one formula or term translation."""
    typed = typed or pass_ in ("r-omega", "e-omega") or (pass_ == "ac" and bool(formulas))
    x = Var(realizer_var)

    def one_formula():
        if len(formulas) != 1:
            raise Failed(f"--pass {pass_} takes exactly one --formula")
        return parse_formula(formulas[0], typed=typed)

    def need_type():
        if type_ is None:
            raise Failed(f"--pass {pass_} needs --type")
        return parse_type(type_)

    if pass_ == "force":
        if psi is None:
            raise Failed("--pass force needs --psi")
        a, b = _pair(vars_)
        out = tr.force(one_formula(), Var(cond), CondSpec(parse_formula(psi), a, b))
    elif pass_ == "r-hap":
        out = tr.realize_hap(x, one_formula())
    elif pass_ == "e-hap":
        out = tr.erealize_hap(x, one_formula())
    elif pass_ == "hro":
        out = tr.hro(need_type(), x)
    elif pass_ == "heo":
        out = tr.heo(need_type(), x)
    elif pass_ in ("r-omega", "e-omega"):
        out = tr.realize_omega(x, one_formula(), pass_[0])
    elif pass_ == "erase":
        if term is None:
            raise Failed("--pass erase needs --term")
        out = tr.erase(parse_typed_term(term))
    elif pass_ == "jcanon":
        out = tr.canonical_realizer(one_formula()).term
    elif pass_ == "ac":
        s, t = parse_type(sigma), parse_type(tau)
        if formulas:
            xv, yv = (parse_typed_term(f"{n}:{ty}") for n, ty in zip(vars_.split(","), (sigma, tau)))
            phi = parse_formula(formulas[0], typed=True, scope={(xv.name, xv.index): xv, (yv.name, yv.index): yv})
            out = tr.ac_instance(s, t, phi, xv, yv)
        else:
            out = tr.ac_realizer(s, t).term
    elif pass_ == "multiplex":
        if not formulas:
            raise Failed("--pass multiplex needs at least one --formula")
        a, b = _pair(vars_)
        out, _, _ = tr.epsilon_multiplex([(parse_formula(f), a, b) for f in formulas])
    elif pass_ == "prenex":
        out = tr.prenex(one_formula())
    else:
        out = tr.herbrand_nf(one_formula())
    text = show(out)
    emit(ctx, {"pass": pass_, "output": text}, text)


@cli.command("eval")
@click.argument("term")
@click.option("--fuel", default=DEFAULTS.fuel, show_default=True, type=click.IntRange(0))
@click.option("--trace", is_flag=True, help="Print each reduction step before the result.")
@click.option("--bound", default=DEFAULTS.bound, show_default=True, type=click.IntRange(1),
              help="Bound for synthesized choice-constant oracles.")
@click.option("--oracle", "oracles", multiple=True, metavar="FILE[:B]",
              help="Declare a choice-constant oracle from a formula file.")
@click.pass_context
def eval_cmd(ctx, term, fuel, trace, bound, oracles):
    """Evaluate a closed TERM."""
    t = compile_term(parse_term(term))
    table = oracle_table([t], bound, _declared_oracles(oracles, DEFAULTS.eps_bound))
    steps: list | None = [] if trace else None
    out = eval_term(t, fuel, table, trace=steps)
    for line in steps or ():
        if not _records(ctx):
            click.echo(line)
    if isinstance(out, Defined):
        text, status, code = show(quote(out.value)), "defined", EXIT_OK
    elif isinstance(out, OutOfFuel):
        text, status, code = f"out of fuel after {out.steps} steps", "out-of-fuel", EXIT_INCONCLUSIVE
    else:
        text, status, code = f"undefined: {out.reason}", "undefined", EXIT_FALSE
    rec = {"input": term, "status": status, "value": show(quote(out.value)) if status == "defined" else None}
    if trace:
        rec["trace"] = steps
    emit(ctx, rec, text)
    ctx.exit(code)


@cli.command()
@click.option("--proof", "path", required=True, type=click.Path(dir_okay=False))
@click.pass_context
def check(ctx, path):
    """Check a proof file; exit 0 iff it validates."""
    lang, p = parse_proof(_read(path))
    try:
        phi = check_proof(p, lang)
    except ProofError as exc:
        click.echo(f"{path}: {exc}", err=True)
        emit(ctx, {"proof": path, "lang": lang, "valid": False, "error": str(exc)}, f"invalid: {exc}")
        ctx.exit(EXIT_FALSE)
    emit(ctx, {"proof": path, "lang": lang, "valid": True, "conclusion": show(phi)}, f"valid: {show(phi)}")


def _extract(lang, p, mode):
    if lang in OMEGA_LANGS:
        return extract_realizer_omega(p, lang, mode)
    if mode != "r":
        raise Failed("extensional extraction is for finite-type proofs (iha, eha) only")
    return extract_realizer(p, lang)


@cli.command()
@click.option("--proof", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--mode", type=click.Choice(["r", "e"]), default="r", show_default=True)
@click.pass_context
def extract(ctx, path, mode):
    """Extract a realizer from a proof file."""
    lang, p = parse_proof(_read(path))
    phi = check_proof(p, lang)
    t = _extract(lang, p, mode)
    emit(ctx, {"proof": path, "lang": lang, "mode": mode, "conclusion": show(phi), "realizer": show(t.term)},
         show(t.term))


def _pool(name):
    return standard_pool() if name == "standard" else None


@cli.command()
@click.option("--realizer", required=True,
              help="A term, or 'ac' for the choice realizer, or 'jcanon' for the formula's canonical realizer.")
@click.option("--formula", required=True)
@click.option("--mode", type=click.Choice(VERIFY_MODES), default="r", show_default=True)
@click.option("--bound", default=DEFAULTS.bound, show_default=True, type=click.IntRange(1))
@click.option("--fuel", default=DEFAULTS.fuel, show_default=True, type=click.IntRange(0))
@click.option("--pool", type=click.Choice(["standard", "none"]), default="standard", show_default=True,
              help="Extra function values that realizer and higher-type quantifiers range over.")
@click.option("--oracle", "oracles", multiple=True, metavar="FILE[:B]")
@click.pass_context
def verify(ctx, realizer, formula, mode, bound, fuel, pool, oracles):
    """Decide in the bounded model whether a realizer realizes a formula."""
    typed = mode.startswith("omega")
    phi = universal_closure(parse_formula(formula, typed=typed))
    if realizer == "ac":
        t = tr.ac_realizer().term
    elif realizer == "jcanon":
        if typed:
            raise Failed("canonical realizers are for HAP formulas")
        t = tr.canonical_realizer(phi).term
    else:
        t = compile_term(parse_term(realizer))
    try:
        v = check_realizes(t, phi, mode, bound, fuel, _pool(pool), _declared_oracles(oracles, bound) or None)
    except Inconclusive as exc:
        v = exc
    emit(ctx, {"formula": show(phi), "mode": mode, "realizer": show(t), **_verdict_record(v)}, v.line())
    ctx.exit(_exit_for(v))


@cli.command()
@click.option("--proof", "path", required=True, type=click.Path(dir_okay=False))
@click.option("--bound", default=DEFAULTS.bound, show_default=True, type=click.IntRange(1))
@click.option("--fuel", default=DEFAULTS.fuel, show_default=True, type=click.IntRange(0))
@click.option("--mode", type=click.Choice(["r", "e"]), default=None,
              help="Realizability mode; defaults to r for iha and e for eha.")
@click.pass_context
def goodman(ctx, path, bound, fuel, mode):
    """Check a finite-type proof of an arithmetical sentence, extract its realizer
    and verify it in the bounded model."""
    lang, p = parse_proof(_read(path))
    if lang not in OMEGA_LANGS:
        raise Failed("goodman takes a finite-type proof (LANG iha or eha)")
    try:
        phi = check_proof(p, lang)
    except ProofError as exc:
        click.echo(f"{path}: {exc}", err=True)
        ctx.exit(EXIT_FALSE)
    if free_vars(phi) or not is_arithmetical(phi):
        raise Failed(f"conclusion is not an arithmetical sentence: {show(phi)}")
    mode = mode or ("r" if lang == "iha" else "e")
    t = extract_realizer_omega(p, lang, mode)
    try:
        v = check_realizes(t, phi, "omega-" + mode, bound, fuel, standard_pool())
    except Inconclusive as exc:
        v = exc
    rec = {"proof": path, "lang": lang, "mode": mode, "conclusion": show(phi), "realizer": show(t.term),
           **_verdict_record(v)}
    emit(ctx, rec, f"conclusion: {show(phi)}\nrealizer: {show(t.term)}\n{v.line()}")
    ctx.exit(_exit_for(v))


@cli.command()
@click.option("--bound", default=DEFAULTS.bound, show_default=True, type=click.IntRange(1))
@click.option("--fuel", default=DEFAULTS.fuel, show_default=True, type=click.IntRange(0))
@click.option("--only", multiple=True, help="Run just the named corpus entries.")
@click.pass_context
def batch(ctx, bound, fuel, only):
    """Check, extract and verify every proof of the built-in corpus."""
    worst = EXIT_OK
    entries = [e for e in corpus() if not only or e[0] in only]
    if only and len(entries) != len(set(only)):
        raise Failed(f"unknown corpus entries: {sorted(set(only) - {e[0] for e in entries})}")
    for name, lang, p in entries:
        phi = check_proof(p, lang)
        modes = ("r", "e") if lang in OMEGA_LANGS else ("r",)
        for mode in modes:
            t = _extract(lang, p, mode)
            check_mode = f"omega-{mode}" if lang in OMEGA_LANGS else mode
            try:
                v = check_realizes(t, universal_closure(phi), check_mode, bound, fuel, standard_pool())
            except Inconclusive as exc:
                v = exc
            worst = max(worst, _exit_for(v))
            rec = {"name": name, "lang": lang, "mode": mode, "conclusion": show(phi), "realizer": show(t.term),
                   **_verdict_record(v)}
            emit(ctx, rec, f"{name} [{lang}, {mode}] {v.line()}")
    ctx.exit(worst)


@cli.command()
@click.option("--lang", type=click.Choice(["hap", "hap-eps", "iha", "eha"]), default=None)
@click.pass_context
def schemes(ctx, lang):
    """List axiom and rule ids with their metavariables."""
    for sc in catalogue(lang):
        metas = ", ".join(f"{n}:{k}" for n, k in sc.metas)
        emit(ctx, {"id": sc.id, "kind": sc.kind, "group": sc.group, "langs": sorted(sc.langs), "metas": metas,
                   "doc": sc.doc},
             f"{sc.id:14} {sc.kind:5} {sc.group:20} [{metas}]  {sc.doc}")


_ERRORS = (Failed, ParseError, SyntaxError_, SchemeError, GroundError, ExtractionError, tr.TranslationError,
           ValueError)


def main(argv=None) -> int:
    """Console entry point; maps every error to exit code 3."""
    try:
        rv = cli.main(args=argv, prog_name="hapkit", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_ERROR
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        return EXIT_ERROR
    except _ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
