import json

from lquadri.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_holds(capsys):
    code, out, _ = run(capsys, "verify", "corpus:zero-lquadri-2")
    assert code == 0 and "holds: true" in out


def test_verify_false_prints_witness(capsys):
    code, out, _ = run(capsys, "verify", "corpus:quadri-ut", "--as", "l-quadri")
    assert code == 0
    code, out, _ = run(capsys, "verify", "corpus:cocycle-lquadri-2", "--as", "quadri")
    assert code == 1
    assert "lq-1 fails at (e1,e1,e1) [8 violating tuple(s)]: lhs=[1, 1] rhs=[0, 0]" in out


def test_verify_false_exit_code(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus", "show", "aff1", "--raw")
    d = json.loads(out)
    d["ops"]["bracket"][0][0][0] = "1"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    code, out, _ = run(capsys, "verify", str(p))
    assert code == 1 and "holds: false" in out and "fails at" in out
    code, out, _ = run(capsys, "verify", str(p), "--json")
    assert code == 1 and json.loads(out)["failures"]


def test_usage_and_format_errors(capsys, tmp_path):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "corpus:aff1", "--as", "prelie")[0] == 2
    p = tmp_path / "broken.json"
    p.write_text('{"format": 1, "kind": "lie", "dim": 1, "ops": {"bracket": [[["a"]]]}}')
    code, _, err = run(capsys, "verify", str(p))
    assert code == 2 and "ops.bracket[0][0][0]" in err


def test_search_rb_includes_e2_to_e1(capsys):
    code, out, _ = run(capsys, "search-rb", "corpus:aff1", "--entries", "-1,0,1", "--json")
    mats = json.loads(out)
    assert code == 0 and [["0", "1"], ["0", "0"]] in mats and mats[0] == [["0", "0"], ["0", "0"]]
    code, out2, _ = run(capsys, "search-rb", "corpus:aff1")
    assert out2.startswith(f"{len(mats)} Rota-Baxter")


def test_search_rb_cap(capsys):
    code, _, err = run(capsys, "search-rb", "corpus:heisenberg", "--cap", "10")
    assert code == 2 and "cap" in err


def test_canonical_r_then_check_r(capsys, tmp_path):
    out = tmp_path / "can.json"
    assert run(capsys, "construct", "canonical-r", "corpus:cocycle-lquadri-2", "-o", str(out))[0] == 0
    code, text, _ = run(capsys, "check-r", str(out), "--tensor", "r", "--equation", "ld")
    assert code == 0 and "holds: true" in text
    code, text, _ = run(capsys, "check-form", str(out), "--form", "B", "--condition", "cocycle")
    assert code == 0
    code, _, err = run(capsys, "check-r", str(out), "--tensor", "r", "--equation", "lq")
    assert code == 2 and "needs kind l-quadri" in err


def test_check_r_symmetric(capsys):
    code, out, _ = run(capsys, "check-r", "corpus:symmetric-lquadri-2", "--tensor", "r", "--equation", "lq")
    assert code == 0 and "lq" in out.lower()
    code, _, err = run(capsys, "check-r", "corpus:symmetric-lquadri-2", "--tensor", "missing", "--equation", "lq")
    assert code == 2 and "no tensor named" in err


def test_check_form_conditions(capsys):
    assert run(capsys, "check-form", "corpus:cocycle-lquadri-2", "--form", "B", "--condition", "invariant")[0] == 0
    assert run(capsys, "check-form", "corpus:cocycle-ldend-2", "--form", "B", "--condition", "cocycle")[0] == 0
    assert run(capsys, "check-form", "corpus:symmetric-lquadri-2", "--form", "B", "--condition", "cocycle")[0] == 0
    assert run(capsys, "check-form", "corpus:cocycle-ldend-2", "--form", "B", "--condition", "invariant")[0] == 2


def test_rb_tower_and_derive(capsys, tmp_path):
    out = tmp_path / "lq.json"
    assert run(capsys, "construct", "rb-tower", "corpus:heisenberg", "--maps", "R,R,R", "-o", str(out))[0] == 0
    assert run(capsys, "verify", str(out))[0] == 0
    code, text, _ = run(capsys, "derive", str(out), "--functor", "subadjacent_lie")
    assert code == 0 and json.loads(text)["kind"] == "lie"
    code, text, _ = run(capsys, "derive", str(out), "--functor", "lquadri_to_ldend")
    assert json.loads(text)["kind"] == "l-dendriform"
    assert run(capsys, "derive", str(out), "--functor", "bogus")[0] == 2


def test_rb_tower_precondition_failure(capsys, tmp_path):
    code, text, _ = run(capsys, "corpus", "show", "heisenberg", "--raw")
    d = json.loads(text)
    d["maps"]["R"] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
    p = tmp_path / "h.json"
    p.write_text(json.dumps(d))
    code, out, _ = run(capsys, "construct", "rb-tower", str(p), "--maps", "R")
    assert code == 1 and "not a Rota-Baxter operator" in out


def test_induce_with_bimodule_file(capsys, tmp_path):
    b = tmp_path / "bim.json"
    b.write_text(json.dumps({"multiplications": ["L:se", "-L:nw", "L:ne", "-L:sw"], "base": "horizontal",
                             "maps": {"T": [[1, 0], [0, 1]]}}))
    code, out, _ = run(capsys, "construct", "induce", "corpus:cocycle-lquadri-2", "--bimodule", str(b), "--map", "T")
    assert code == 0 and json.loads(out)["kind"] == "l-quadri"
    code, out, _ = run(capsys, "construct", "induce", "corpus:heisenberg", "--bimodule", "regular", "--map", "R",
                       "--on-image")
    assert code == 0 and json.loads(out)["dim"] == 1
    b.write_text(json.dumps({"multiplications": ["L:se"], "actions": {}}))
    assert run(capsys, "construct", "induce", "corpus:cocycle-lquadri-2", "--bimodule", str(b), "--map", "T")[0] == 2


def test_cocycle_lift_and_central_extension(capsys, tmp_path):
    out = tmp_path / "lift.json"
    assert run(capsys, "construct", "cocycle-lift", "corpus:cocycle-ldend-2", "--form", "B", "-o", str(out))[0] == 0
    assert run(capsys, "verify", str(out))[0] == 0
    code, text, _ = run(capsys, "construct", "central-ext", str(out), "--form", "B")
    assert code in (0, 1) and "central-extension conditions" in text


def test_corpus_commands(capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0 and "heisenberg-lquadri" in out
    code, out, _ = run(capsys, "corpus", "show", "heisenberg")
    assert code == 0 and "provenance:" in out
    assert run(capsys, "corpus", "show")[0] == 2
    assert run(capsys, "corpus", "show", "nope")[0] == 2
