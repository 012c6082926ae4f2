import json
import os

import pytest

from entsec import cli
from entsec.jsonfmt import dumps
from entsec.states import write_state
from entsec.slocc import SloccClass, representative

SUBCOMMANDS = ["classify", "entropy", "symflow", "chern", "optimize", "borromean"]


class Buf:
    def __init__(self):
        self.parts = []

    def write(self, s):
        self.parts.append(s)

    def text(self):
        return "".join(self.parts)


def run(argv):
    out = Buf()
    code = cli.run(argv, out)
    return code, out.text()


@pytest.fixture
def ghz_file(tmp_path):
    p = tmp_path / "ghz.json"
    write_state(representative(SloccClass.GHZ), str(p))
    return str(p)


def test_classify_ghz(ghz_file):
    code, text = run(["classify", "--state", ghz_file])
    assert code == 0
    assert json.loads(text) == {"class": "GHZ", "discriminant": 1, "ranks": [2, 2, 2]}
    assert text.endswith("\n")


def test_entropy_bell(tmp_path):
    import numpy as np
    from entsec.states import PureState

    p = tmp_path / "bell.json"
    write_state(PureState((2, 2), np.array([1, 0, 0, 1]) / np.sqrt(2)), str(p))
    code, text = run(["entropy", "--state", str(p)])
    assert code == 0
    assert json.loads(text)["entropy"] == pytest.approx(np.log(2), abs=1e-12)


def test_symflow_csv():
    code, text = run(["symflow", "--a", "1.2", "--b", "0", "--c", "0.7483", "--steps", "5"])
    lines = text.strip().split("\n")
    assert code == 0 and len(lines) == 6
    assert lines[0].startswith("s,a_re,a_im")
    assert float(lines[1].split(",")[0]) == 0.0
    code, text = run(["symflow", "--a", "1.2", "--b", "0", "--c", "0.7483", "--flow", "product", "--steps", "3"])
    assert code == 0 and float(text.strip().split("\n")[-1].split(",")[7]) < 1e-6
    # the identity is a maximally entangled fixed point; large s is undefined there
    assert run(["symflow", "--a", "1", "--b", "0", "--c", "1", "--flow", "product"])[0] == 2


def test_chern_hopf():
    code, text = run(["chern", "--map", "hopf", "--resolution", "24"])
    out = json.loads(text)
    assert code == 0 and out["degree"] == 1 and set(out) == {"degree", "residual"}


def test_chern_resolution_error():
    code, _ = run(["chern", "--map", "square", "--resolution", "3"])
    assert code in (0, 4)
    code, _ = run(["chern", "--map", "square", "--resolution", "1"])
    assert code == 2


def test_borromean_preset():
    code, text = run(["borromean", "--preset", "semion"])
    out = json.loads(text)
    assert code == 0 and out["class"] == "GHZ"
    assert out["discriminant"] == pytest.approx(3.5)
    assert '"discriminant":3.5000000000000009' in text


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--state", "/nonexistent/state.json"],
        ["nonsense"],
        ["borromean", "--delta", "2"],
        ["borromean", "--delta", "0.5", "--preset", "semion"],
        ["symflow", "--a", "x", "--b", "0", "--c", "1"],
        ["symflow", "--a", "0", "--b", "0", "--c", "0"],
        ["entropy", "--state", "/nonexistent", "--keep", "a"],
        [],
    ],
)
def test_input_errors_exit_2(argv):
    assert run(argv)[0] == 2


def test_bad_state_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dims":[2,2,2],"re":[1,0],"im":[0,0]}')
    assert run(["classify", "--state", str(p)])[0] == 2


@pytest.mark.parametrize("cmd", SUBCOMMANDS)
def test_help_texts(cmd, capsys):
    assert cli.run([cmd, "--help"]) == 0
    text = capsys.readouterr().out
    assert "usage:" in text and len(text) > 300


def test_help_mentions_examples(capsys):
    cli.run(["classify", "--help"])
    assert "GHZ" in capsys.readouterr().out
    cli.run(["chern", "--help"])
    assert "q^2" in capsys.readouterr().out
    cli.run(["borromean", "--help"])
    assert "Borromean" in capsys.readouterr().out


def test_byte_identical_repeat(ghz_file):
    for argv in (
        ["classify", "--state", ghz_file],
        ["borromean", "--delta", "0.3"],
        ["symflow", "--a", "1", "--b", "0.2j", "--c", "0.5"],
        ["optimize", "--experiment", "example2p_singlet", "--resolution", "4", "--seed", "7"],
    ):
        assert run(argv)[1] == run(argv)[1]


def test_optimize_small_run_deterministic(tmp_path):
    argv = ["optimize", "--experiment", "trivial_control", "--resolution", "4", "--restarts", "2",
            "--iterations", "30", "--seed", "3"]
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert cli.run(argv + ["--out", str(a)]) == 0
    assert cli.run(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert len(rep["restarts"]) == 2 and isinstance(rep["restarts"][0]["trace"], list)


def test_out_is_atomic(tmp_path, ghz_file):
    target = tmp_path / "res.json"
    target.write_text("old")
    assert cli.run(["classify", "--state", ghz_file, "--out", str(target)]) == 0
    assert json.loads(target.read_text())["class"] == "GHZ"
    assert [p.name for p in tmp_path.iterdir() if p.name.startswith(".tmp-")] == []
    # a failing command leaves the previous file untouched
    assert cli.run(["classify", "--state", "/nonexistent", "--out", str(target)]) == 2
    assert json.loads(target.read_text())["class"] == "GHZ"


def test_out_unwritable_dir(ghz_file):
    assert cli.run(["classify", "--state", ghz_file, "--out", "/nonexistent/dir/x.json"]) == 2


def test_dumps_format():
    assert dumps({"b": 1.0, "a": [1, 2.5, float("nan")], "c": 1j}) == '{"a":[1,2.5,null],"b":1,"c":{"im":1,"re":0}}\n'
    assert dumps(0.1) == "0.10000000000000001\n"


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "entsec", "borromean", "--delta", "0.5"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["class"] == "GHZ"
    r = subprocess.run([sys.executable, "-m", "entsec", "chern", "--map", "bogus"], capture_output=True, text=True)
    assert r.returncode == 2 and "error" in r.stderr
