import json

import pytest

from conftest import ABBB, GEBHARDT16, Z018
from tilecert.cli import main


@pytest.fixture
def srs(tmp_path):
    def make(text, name="p.srs"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return make


def test_prove_text(srs, capsys):
    code = main(["prove", "--input", srs(Z018), "--strategy", "trfcu:2; mirror; trfcu:2; trfcu:2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "STEP TRFCU:2 (3/0,3) -> (2/0,3)" in out
    assert out.strip().endswith("VERDICT YES")


def test_prove_json_and_replay(srs, tmp_path, capsys):
    trace = tmp_path / "t.json"
    code = main(["prove", "--input", srs(ABBB), "--strategy", "trfc:3; weights", "--format", "json",
                 "--trace", str(trace)])
    obj = json.loads(capsys.readouterr().out)
    assert code == 0 and obj["verdict"] == "YES"
    assert [s["name"] for s in obj["steps"]] == ["TRFC", "WEIGHTS"]
    assert obj["steps"][0]["sizes"] == {"before": [1, 0, 2], "after": [12, 0, 7]}
    assert main(["replay", str(trace)]) == 0
    obj["steps"][1]["certificate"]["weights"] = {"a_b_b": 1}
    trace.write_text(json.dumps(obj))
    assert main(["replay", str(trace)]) == 1
    assert "MISMATCH at step 1" in capsys.readouterr().out


def test_maybe_exit_code(srs):
    assert main(["prove", "--input", srs("(RULES a -> a a)"), "--strategy", "trfc:2; weights"]) == 1


def test_input_errors(srs, tmp_path, capsys):
    assert main(["prove", "--input", str(tmp_path / "missing.srs")]) == 2
    assert main(["prove", "--input", srs("(RULES a ->")]) == 2
    assert main(["prove", "--input", srs("(RULES a -> b)"), "--strategy", "troc:1"]) == 2
    assert main(["prove"]) == 2
    assert main(["replay", str(tmp_path / "none.json")]) == 2


def test_emit_tpdb_and_plot(srs, tmp_path):
    out_dir = tmp_path / "export"
    png = tmp_path / "chain.png"
    code = main(["prove", "--input", srs(GEBHARDT16), "--strategy", "trfc:3; weights",
                 "--emit-tpdb", str(out_dir), "--plot", str(png)])
    assert code == 1
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == ["00-input.srs", "01-trfc3.srs", "02-weights.srs"]
    from tilecert.srs import parse_tpdb, size_triple

    assert size_triple(parse_tpdb((out_dir / "02-weights.srs").read_text())) == (24, 0, 11)
    assert png.stat().st_size > 0


def test_auto_flag(srs, capsys):
    code = main(["prove", "--input", srs(Z018), "--auto", "--timeout", "30"])
    assert code == 0
    assert "VERDICT YES" in capsys.readouterr().out


def test_hidden_oracle(srs, capsys):
    assert main(["oracle", "--input", srs("(RULES a -> b a b)"), "--kind", "rfc",
                 "--max-length", "5"]) == 0
    assert capsys.readouterr().out.split() == ["bab", "bbabb"]
