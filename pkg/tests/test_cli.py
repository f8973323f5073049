import json
import subprocess
import sys
from pathlib import Path

import pytest

from symplex import jsonio
from symplex.cli import dispatch
from symplex.rings import GF, ZZ, scalars
from symplex.symplectic import random_word, se, word_eval

GOLDEN = Path(__file__).parent / "golden"


def write(tmp_path, doc, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(argv, capsys):
    code = dispatch(argv)
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


ID4 = {"ring": "Z", "entries": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}


def test_sp_check_identity(tmp_path, capsys):
    code, doc, _ = run(["sp-check", write(tmp_path, ID4)], capsys)
    assert code == 0 and doc == {"symplectic": True}


def test_sp_check_false_is_domain_failure(tmp_path, capsys):
    bad = {"ring": "Q", "entries": [[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}
    code, doc, _ = run(["sp-check", write(tmp_path, bad)], capsys)
    assert code == 1 and doc == {"symplectic": False}


def test_factor_roundtrip(tmp_path, capsys):
    alpha = word_eval(random_word(2, 7, scalars(ZZ), 3))
    code, doc, _ = run(["factor", write(tmp_path, jsonio.matrix_to_json(alpha))], capsys)
    assert code == 0
    res = jsonio.factorization_from_json(doc)
    assert res.ok and word_eval(res.word) == alpha


def test_factor_local(tmp_path, capsys):
    mat = {"ring": "Q", "entries": [[2, 3], [1, 2]]}
    code, doc, _ = run(["factor", "--local-prime", "3", write(tmp_path, mat)], capsys)
    assert code == 0 and doc["residual"]["entries"][0][1]["terms"] == []


def test_verify_table_alias(capsys):
    code, doc, _ = run(["verify", "--lemma", "l2-table", "--seed", "7"], capsys)
    assert code == 0 and doc["pass"]
    assert doc["results"]["l2-table"]["failures"] == []


def test_verify_unknown_lemma(capsys):
    code, doc, err = run(["verify", "--lemma", "bogus"], capsys)
    assert code == 2 and doc is None and "bogus" in err


def test_mult_elements(tmp_path, capsys):
    R = {"base": "Q", "monoid": {"kind": "free_mixed", "polynomial_vars": 1}}
    factors = [dict(R, terms=[[[0], 1], [[1], 1]]), dict(R, terms=[[[0], 1], [[1], -1]])]
    code, doc, _ = run(["mult", write(tmp_path, factors)], capsys)
    assert code == 0
    x = jsonio.element_from_json(doc).ring.var(0)
    assert jsonio.element_from_json(doc) == 1 - x**2


def test_mult_matrices(tmp_path, capsys):
    F = scalars(GF(5))
    a, b = se(2, 1, 3, F.constant(2)), se(2, 1, 3, F.constant(4))
    docs = [jsonio.matrix_to_json(a), jsonio.matrix_to_json(b)]
    code, doc, _ = run(["mult", write(tmp_path, docs)], capsys)
    assert code == 0 and jsonio.matrix_from_json(doc) == a @ b


def test_conj_delta(tmp_path, capsys):
    mat = {"ring": {"base": "Q", "monoid": {"kind": "free_mixed", "polynomial_vars": 1}},
           "entries": [[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, -1, 0, 1]]}
    t = [[[1], 1]]
    code, doc, _ = run(["conj-delta", write(tmp_path, {"matrix": mat, "I": [1, 4], "t": t})], capsys)
    assert code == 0
    M = jsonio.matrix_from_json(doc)
    assert M.rows[0][2].terms == (((1,), 1),)


def test_monoid_info(tmp_path, capsys):
    M = {"kind": "affine", "rank": 2, "generators": [[1, 0], [0, 1]]}
    code, doc, _ = run(["monoid-info", "--bound", "3", "--c", "2", write(tmp_path, M)], capsys)
    assert code == 0 and doc["pointed"] and doc["positive"]
    assert not doc["c_divisible"]["holds_on_sample"]


def test_polarized_example(capsys):
    code, doc, _ = run(["polarized-check", "--example"], capsys)
    assert code == 0 and doc["pass"]


def test_pyramid_split(tmp_path, capsys):
    code, doc, _ = run(["pyramid-split", write(tmp_path, {"rank": 2, "rays": [[1, 0], [1, 1], [1, 2]]})], capsys)
    assert code == 0
    assert sorted(doc["delta"]["rays"]) == [[1, 0], [1, 1]] and doc["face"]["rays"] == [[1, 1]]


def test_pyramid_split_simplicial(tmp_path, capsys):
    cone = {"rank": 3, "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}
    code, doc, _ = run(["pyramid-split", write(tmp_path, cone)], capsys)
    assert code == 1 and doc["simplicial"] and doc["apex"] == [1, 0, 0]


def test_random_word_golden(capsys):
    code, _, _ = run(["random-word", "--seed", "1", "--n", "2", "--length", "6", "--ring", "Fp:7"], capsys)
    assert code == 0
    dispatch(["random-word", "--seed", "1", "--n", "2", "--length", "6", "--ring", "Fp:7"])
    text = capsys.readouterr().out
    assert text == (GOLDEN / "random_word_seed1_n2_len6_fp7.json").read_text()


def test_random_word_empty(capsys):
    code, doc, _ = run(["random-word", "--length", "0", "--n", "2"], capsys)
    assert code == 0 and doc["tokens"] == []


def test_out_file(tmp_path, capsys):
    out = tmp_path / "out.json"
    assert dispatch(["random-word", "--length", "2", "--n", "1", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["n"] == 1


@pytest.mark.parametrize(
    "argv",
    [["no-such-command"], ["random-word", "--n", "2"], ["sp-check", "/nonexistent/file.json"]],
)
def test_usage_errors(argv, capsys):
    assert dispatch(argv) == 2


def test_malformed_input_is_usage_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{oops")
    assert dispatch(["sp-check", str(path)]) == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "symplex", "sp-check"], input=json.dumps(ID4), capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"symplectic": True}
