import json
from pathlib import Path

import pytest

from hapkit.cli import main

PROOFS = Path(__file__).resolve().parent.parent / "proofs"
AC_SENTENCE = "(forall x:0. exists y:0. y = Succ x) -> exists f:0->0. forall x:0. f x = Succ x"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_projection(capsys):
    assert run(capsys, "eval", "p0 (p 2 9)") == (0, "2\n", "")


def test_eval_out_of_fuel(capsys):
    code, out, _ = run(capsys, "eval", "--fuel", "50", r"(\x. x x) (\x. x x)")
    assert code == 2 and out.startswith("out of fuel")


def test_eval_undefined(capsys):
    code, out, _ = run(capsys, "eval", "S k")
    assert code == 1 and out.startswith("undefined")


def test_eval_trace_is_stable(capsys):
    _, first, _ = run(capsys, "eval", "--trace", "k 3 7")
    _, second, _ = run(capsys, "eval", "--trace", "k 3 7")
    assert first == second and first.splitlines()[-1] == "3" and len(first.splitlines()) > 1


def test_eval_with_declared_oracle(tmp_path, capsys):
    spec = tmp_path / "succ.phi"
    spec.write_text("# successor\ny = S x\n")
    code, out, _ = run(capsys, "eval", "--oracle", f"{spec}:32", "eps[y; x | y = S x] 5")
    assert (code, out) == (0, "6\n")


def test_abstract_identity(capsys):
    assert run(capsys, "abstract", r"\x. x") == (0, "s k k\n", "")


def test_translate_hro_arrow(capsys):
    code, out, _ = run(capsys, "translate", "--pass", "hro", "--type", "0->0")
    assert code == 0
    assert out == "forall y. y = y -> !(a y) & a y = a y\n"


def test_translate_needs_its_inputs(capsys):
    code, _, err = run(capsys, "translate", "--pass", "hro")
    assert code == 3 and "--type" in err


def test_translate_force(capsys):
    code, out, _ = run(capsys, "translate", "--pass", "force", "--formula", "F(x, y)", "--psi", "y = S x")
    assert code == 0 and "Cond[x, y: y = S x](q)" in out and "<= c" in out


@pytest.mark.parametrize("mode", ["omega-r", "omega-e"])
def test_verify_ac_instance(capsys, mode):
    code, out, _ = run(capsys, "verify", "--realizer", "ac", "--formula", AC_SENTENCE, "--mode", mode,
                       "--bound", "16")
    assert code == 0 and out.startswith("verdict=true bound=16 ")


def test_verify_false(capsys):
    code, out, _ = run(capsys, "verify", "--realizer", r"\x. 0", "--formula", "forall n. exists m. m = S n")
    assert code == 1 and out.startswith("verdict=false")


def test_verify_canonical(capsys):
    code, _, _ = run(capsys, "verify", "--realizer", "jcanon", "--formula", "forall n. exists m. m = n + n",
                     "--mode", "e")
    assert code == 0


def test_parse_error_exit(capsys):
    code, out, err = run(capsys, "eval", "k k (")
    assert code == 3 and out == "" and err.startswith("parse error: 1:6:")


def test_check_valid_and_invalid(tmp_path, capsys):
    code, out, _ = run(capsys, "check", "--proof", str(PROOFS / "k-axiom.proof"))
    assert code == 0 and out.startswith("valid: ")
    bad = tmp_path / "bad.proof"
    bad.write_text("LANG hap\n1: AXIOM k |- forall x. forall y. k x y = y\nQED 1\n")
    code, out, err = run(capsys, "check", "--proof", str(bad))
    assert code == 1 and out.startswith("invalid") and err


def test_check_missing_file(capsys):
    code, _, err = run(capsys, "check", "--proof", "/nonexistent/x.proof")
    assert code == 3 and "cannot read" in err


def test_extract_prints_a_term(capsys):
    code, out, _ = run(capsys, "--output", "records", "extract", "--proof", str(PROOFS / "refl-zero.proof"))
    rec = json.loads(out)
    assert code == 0 and rec["lang"] == "hap" and rec["realizer"]


def test_extract_e_mode_needs_finite_types(capsys):
    code, _, _ = run(capsys, "extract", "--proof", str(PROOFS / "refl-zero.proof"), "--mode", "e")
    assert code == 3


@pytest.mark.parametrize("name", ["iha-goodman", "eha-goodman"])
def test_goodman_pipeline(capsys, name):
    code, out, _ = run(capsys, "goodman", "--proof", str(PROOFS / f"{name}.proof"), "--bound", "16")
    assert code == 0
    assert out.splitlines()[-1].startswith("verdict=true")


def test_goodman_rejects_hap_proofs(capsys):
    code, _, _ = run(capsys, "goodman", "--proof", str(PROOFS / "k-axiom.proof"))
    assert code == 3


def test_batch_records_are_deterministic(capsys):
    code, first, _ = run(capsys, "--output", "records", "batch")
    _, second, _ = run(capsys, "--output", "records", "batch")
    assert code == 0 and first == second
    recs = [json.loads(line) for line in first.splitlines()]
    assert all(r["verdict"] == "true" for r in recs)
    assert {r["name"] for r in recs} >= {"induction-refl", "eps-spec-succ", "iha-ac", "eha-ac"}


def test_batch_unknown_entry(capsys):
    code, _, err = run(capsys, "batch", "--only", "nope")
    assert code == 3 and "nope" in err


def test_schemes_listing(capsys):
    code, out, _ = run(capsys, "schemes", "--lang", "eha")
    ids = {line.split()[0] for line in out.splitlines()}
    assert code == 0 and {"ext", "AC", "K", "ind"} <= ids and "E-bound" not in ids
