import io
import json
import subprocess
import sys
from importlib import resources

import pytest

from tkmodels.cli import SCHEMA, run
from tkmodels.corpus import hopf_model
from tkmodels.dsl import dump_spec

DATA = resources.files("tkmodels") / "data"


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def path(name):
    return str(DATA / name)


def test_cohomology_json_document():
    code, text = call("cohomology", path("hopf_n3.tk"), "--json")
    assert code == 0
    doc = json.loads(text)
    assert doc["schema"] == SCHEMA and doc["command"] == "cohomology"
    assert doc["tables"]["betti"] == {"0": 1, "1": 1, "2": 0, "3": 0, "4": 0, "5": 1, "6": 1, "7": 0}
    assert len(doc["input_digest"]) == 64


def test_json_output_is_deterministic():
    a = call("dolbeault", path("s3s3.tk"), "--json")[1]
    b = call("dolbeault", path("s3s3.tk"), "--json")[1]
    assert a == b


def test_shipped_hopf_file_is_the_corpus_model():
    assert (DATA / "hopf_n3.tk").read_text(encoding="utf-8") == dump_spec(hopf_model(3))


def test_export_round_trip(tmp_path):
    code, text = call("export", path("kodaira_thurston.tk"))
    assert code == 0
    f = tmp_path / "again.tk"
    f.write_text(text, encoding="utf-8")
    assert call("export", str(f))[1] == text


def test_ddbar_failure_has_witness():
    code, text = call("ddbar-check", path("kodaira_thurston_ce_bigraded.tk"), "--json")
    doc = json.loads(text)
    assert code == 1
    assert doc["verdicts"]["ddbar"] == "FAIL"
    assert doc["tables"]["first_failure"] == {"degree": 2}
    assert doc["witnesses"]["class"]


def test_ddbar_pass_on_formal_model():
    code, text = call("ddbar-check", path("hopf_n2.tk"), "--json")
    verdicts = json.loads(text)["verdicts"]
    assert code == 0 and verdicts["ddbar"] == "PASS"
    # b_1 = 1 is odd, so the full model cannot satisfy the lemma
    assert verdicts["ddbar (Dolbeault model)"] == "FAIL"


@pytest.mark.parametrize("name,command,code", [
    ("split_mhs.tk", "bigrading", 0),
    ("hopf_surface_hirsch.tk", "hirsch", 0),
    ("torus_minimal.tk", "minimal-model", 0),
    ("heisenberg3_ce.tk", "one-minimal", 0),
    ("heisenberg_typed.tk", "dual-lie", 0),
    ("kodaira_thurston.tk", "fundamental-check", 0),
    ("kodaira_thurston.tk", "weight-count", 0),
    ("filiform4_ce.tk", "weight-count", 1),
])
def test_commands_on_shipped_files(name, command, code):
    assert call(command, path(name))[0] == code


def test_kunneth_of_two_files():
    code, text = call("kunneth", path("heisenberg3_ce.tk"), path("abelian2_ce.tk"), "--json")
    assert code == 0 and json.loads(text)["verdicts"]["kunneth"] == "PASS"


def test_input_errors_exit_two(tmp_path):
    bad = tmp_path / "bad.tk"
    bad.write_text("kind algebra\ngen x y : 1\n", encoding="utf-8")
    assert call("cohomology", str(bad))[0] == 2
    assert call("cohomology", str(tmp_path / "missing.tk"))[0] == 2
    assert call("bigrading", path("hopf_n2.tk"))[0] == 2


def test_cutoff_error_exits_three():
    assert call("minimal-model", path("torus_minimal.tk"), "--up-to", "9")[0] == 3


def test_corpus_command():
    code, text = call("corpus", "--json")
    assert code == 0
    assert set(json.loads(text)["verdicts"].values()) == {"PASS"}


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "tkmodels", "cohomology", path("torus2.tk")],
                       capture_output=True, text=True, check=False)
    assert p.returncode == 0 and p.stdout.startswith("# cohomology")
