import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from witten_gci import cli, jobs
from witten_gci.genus import DualPathMismatch

ROOT = Path(__file__).resolve().parents[1]
MANIFOLDS = ROOT / "manifolds"
CORPUS = ROOT / "corpus"


def run(*argv):
    out = io.StringIO()
    code = cli.main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    return code, [json.loads(line) for line in text.splitlines()]


def test_genus_vanishes_on_three_quadrics():
    code, (payload,) = run_json("genus", "--manifold", MANIFOLDS / "cp11.json",
                                "--bundle", 2, 2, 2, "--q-order", 5)
    assert code == 0
    assert payload["verdict"] == "vanishes"
    assert payload["coefficients"] == ["0"] * 6
    assert payload["dual_path"] == "agree"
    assert payload["reason"] == "theorem"


def test_genus_of_quartic():
    code, (payload,) = run_json("genus", "--manifold", MANIFOLDS / "cp3.json", "--bundle", 4)
    assert code == 0
    assert payload["coefficients"][0] == "2"
    assert payload["verdict"] == "nonzero"
    assert payload["q_order"] == 5


def test_check_require_string_fails_with_witness():
    code, (payload,) = run_json("check", "--manifold", MANIFOLDS / "cp3.json",
                                "--bundle", 4, "--require-string")
    assert code == 1
    w = payload["witnesses"]
    assert (w["p1_V"], w["p1_M"]) == ("16*u^2", "4*u^2")
    code, text = run("check", "--manifold", MANIFOLDS / "cp3.json", "--bundle", 4)
    assert code == 0
    assert "M=4*u^2  V=16*u^2  [FAIL]" in text


def test_text_output():
    code, text = run("genus", "--manifold", MANIFOLDS / "cp3.json", "--bundle", 4, "--q-order", 2)
    assert code == 0
    assert "coefficients: 2, -48, -144" in text
    assert "verdict: nonzero" in text


def test_json_is_canonical():
    argv = ("phi-c", "--manifold", MANIFOLDS / "cp3.json", "--w-bundle", 1, 1, "--c1c", 2,
            "--q-order", 3, "--format", "json")
    _, first = run(*argv)
    _, second = run(*argv)
    assert first == second
    line = first.strip()
    assert line == json.dumps(json.loads(line), sort_keys=True, separators=(",", ":"))
    assert "." not in "".join(json.loads(line)["coefficients"])


@pytest.mark.parametrize("argv, fragment", [
    (("genus", "--manifold", MANIFOLDS / "cp3.json", "--bundle", 4, "--q-order", -1), ">= 0"),
    (("genus", "--manifold", MANIFOLDS / "cp3xcp3.json", "--bundle", 2, 0, 2), "multiple"),
    (("genus", "--manifold", MANIFOLDS / "cp2.json", "--bundle", 2), "X not spin"),
    (("elliptic", "--manifold", MANIFOLDS / "cp2.json"), "not spin"),
    (("genus", "--manifold", MANIFOLDS / "missing.json", "--bundle", 2), None),
    (("genus", "--manifold", MANIFOLDS / "cp3.json", "--bundle", 4, "--c1c", 2), "phi-c"),
    (("search", "--manifold", MANIFOLDS / "cp3xcp3.json", "--max-degree", 40,
      "--max-bundles", 6), "exceeds"),
])
def test_input_errors_exit_2(argv, fragment):
    code, lines = run_json(*argv)
    assert code == 2
    assert "error" in lines[-1]
    if fragment:
        assert fragment in lines[-1]["error"]


def test_dual_path_mismatch_exits_3(monkeypatch):
    def broken(M, V, Q):
        raise DualPathMismatch("lemma [1] != direct [0]")

    monkeypatch.setattr(jobs, "witten_of_gci_checked", broken)
    code, (payload,) = run_json("genus", "--manifold", MANIFOLDS / "cp3.json", "--bundle", 2)
    assert code == 3
    assert payload["kind"] == "internal"


def test_q_order_environment(monkeypatch):
    monkeypatch.setenv("WITTEN_Q_ORDER", "2")
    _, (payload,) = run_json("genus", "--manifold", MANIFOLDS / "cp3.json", "--bundle", 4)
    assert payload["coefficients"] == ["2", "-48", "-144"]
    _, (payload,) = run_json("genus", "--manifold", MANIFOLDS / "cp3.json", "--bundle", 4,
                             "--q-order", 1)
    assert payload["q_order"] == 1
    monkeypatch.setenv("WITTEN_Q_ORDER", "many")
    code, _ = run_json("genus", "--manifold", MANIFOLDS / "cp3.json", "--bundle", 4)
    assert code == 2


def test_search_streams_lines():
    code, lines = run_json("search", "--manifold", MANIFOLDS / "cp1xcp1.json",
                           "--max-degree", 2, "--max-bundles", 2)
    assert code == 0
    assert lines[-1]["done"] and lines[-1]["count"] == len(lines) - 1
    assert {"bundle": [[0, 2], [2, 0]], "command": "search", "manifold": "CP1xCP1"} in lines


def test_fano_command():
    code, (payload,) = run_json("fano", "--n", 11, "--bundle", 2, 2, 2)
    assert (code, payload["c1_coefficient"], payload["fano"]) == (0, 6, True)
    code, (payload,) = run_json("fano", "--manifold", MANIFOLDS / "cp3.json", "--bundle", 1, 1, 1, 1)
    assert payload["exceptional"]
    code, _ = run_json("fano", "--n", 3, "--bundle", 0)
    assert code == 2


def test_model_command(tmp_path):
    path = tmp_path / "m.json"
    code, _ = run("model", "--bott", "[[1, []], [1, [[1]]]]", "--name", "F1", "-o", path)
    assert code == 0
    code, (payload,) = run_json("genus", "--manifold", path, "--bundle", 1, 2)
    assert code == 0
    code, text = run("model", "--bott", "[[0, []]]")
    assert code == 2 and "error" in text


def test_corpus_verify_passes():
    code, text = run("corpus", "verify", "--corpus", CORPUS)
    assert code == 0, text
    assert "passed" in text


def test_corrupted_corpus_names_the_failure(tmp_path):
    copy = tmp_path / "corpus"
    shutil.copytree(CORPUS, copy)
    target = copy / "cp3" / "expected.json"
    target.write_text(target.read_text().replace('"-48"', '"-47"', 1))
    code, (payload,) = run_json("corpus", "verify", "--corpus", copy)
    assert code == 1
    failed = [e["name"] for e in payload["entries"] if e["status"] != "pass"]
    assert failed == ["cp3"]


def test_empty_or_missing_corpus_exits_2(tmp_path):
    assert run("corpus", "verify", "--corpus", tmp_path)[0] == 2
    assert run("corpus", "verify", "--corpus", tmp_path / "nope")[0] == 2


def test_corpus_regen_round_trip(tmp_path):
    copy = tmp_path / "corpus"
    shutil.copytree(CORPUS, copy)
    before = {p.name: (p / "expected.json").read_bytes() for p in copy.iterdir()}
    assert run("corpus", "regen", "--corpus", copy)[0] == 0
    after = {p.name: (p / "expected.json").read_bytes() for p in copy.iterdir()}
    assert before == after


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "witten_gci", "fano", "--n", "12", "--bundle", "3", "2"],
        capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "c1 = 8u" in proc.stdout
