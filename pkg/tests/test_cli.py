import json
import subprocess
import sys
from fractions import Fraction as Q

import pytest

from ordalg import cli, descriptors, jsonio
from ordalg.descriptors import Descriptor
from ordalg.exact import GaussianRational as G
from ordalg.oracles import BreakpointsOracle
from ordalg.stepcalc import DensityPiece, Measure, NiceSet, StepFunction


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else jsonio.dumps(obj))
        return str(path)
    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kernel_of_a_finite_chain(files, capsys):
    code, out, _ = run(capsys, "kernel", files("space.json", {"kind": "chain", "n": 5}))
    assert code == 0 and json.loads(out) == {"components": []}


def test_kernel_of_a_set_with_an_isolated_point(files, capsys):
    S = {"components": [
        {"type": "interval", "a": {"x": "0", "side": "+"}, "b": {"x": "1/2", "side": "-"}},
        {"type": "point", "p": {"x": "3/4", "side": "-"}}]}
    code, out, _ = run(capsys, "kernel", files("set.json", {"space": {"kind": "double-arrow"}, "set": S}))
    assert code == 0 and len(json.loads(out)["components"]) == 1


def test_cantor(files, capsys):
    solid = {"components": [{"type": "solid", "l": "1/4", "r": "1/2"}]}
    code, out, _ = run(capsys, "cantor", files("s.json", solid))
    assert code == 0 and json.loads(out) == {"containsCantor": True}


def test_jmp_and_match(files, capsys):
    f = files("f.json", jsonio.step_to_json(StepFunction.jump(Q(1, 3), -1, 1)))
    code, out, _ = run(capsys, "jmp", "--f", f, "--eps", "1/3")
    assert code == 0 and json.loads(out) == {"coords": ["1/3"]}
    d = files("d.json", jsonio.descriptor_to_json(Descriptor((G(-1), G(1)), (Q(5, 16), Q(3, 8)))))
    tau = files("t.json", jsonio.step_to_json(StepFunction.jump(Q(11, 32), -1, 1)))
    code, out, _ = run(capsys, "match", "--delta", d, "--tau", tau)
    assert code == 0 and json.loads(out) == {"matches": True}


def test_pipeline_and_replay(files, capsys):
    o = files("o.json", jsonio.oracle_to_json(BreakpointsOracle(NiceSet.dyadics(64, [Q(1, 3)]))))
    s = files("s.json", jsonio.nice_to_json(NiceSet.dyadics(64)))
    code, out, _ = run(capsys, "ntip-run", "--oracle", o, "--nice", s, "--q", "1/3")
    assert code == 0
    trace = json.loads(out)
    assert trace["result"]["H"]["components"][0]["a"] == {"x": "21/64", "side": "+"}
    assert trace["eps"] == "1/6" and trace["b"] == "-1"
    t = files("trace.json", out)
    code, out, _ = run(capsys, "verify", "--trace", t, "--oracle", o)
    assert code == 0 and json.loads(out)["ok"]
    trace["b"] = "-3"
    code, _, err = run(capsys, "verify", "--trace", files("bad.json", trace))
    assert code == 1 and "b hits/escapes gap" in err


def test_extract_domain_error(files, capsys):
    h = files("h.json", jsonio.step_to_json(StepFunction.jump(Q(1, 3), 0, 1)))
    code, _, err = run(capsys, "extract", "--h", h, "--b", "0/1")
    assert code == 1 and err.splitlines()[0] == "b hits the range"
    code, out, _ = run(capsys, "extract", "--h", h, "--b", "1/2", "--witness")
    assert code == 0 and json.loads(out)["nontrivial"] and "polyWitness" in json.loads(out)


def test_malformed_inputs(files, capsys):
    code, _, err = run(capsys, "jmp", "--f", files("f.json", '{"breaks": [0.5], "values": ["0", "1"]}'),
                       "--eps", "1/3")
    assert code == 2 and "float" in err
    code, _, err = run(capsys, "jmp", "--f", files("g.json", '{"breaks": ["1/2"], "values": ["0", 1]}'),
                       "--eps", "1/3")
    assert code == 2 and "$.values[1]" in err
    code, _, _ = run(capsys, "jmp", "--f", "/nonexistent.json", "--eps", "1/3")
    assert code == 2
    f = files("ok.json", jsonio.step_to_json(StepFunction.constant(1)))
    code, _, err = run(capsys, "jmp", "--f", f, "--eps", "0.3")
    assert code == 2 and "--eps" in err


def test_psi_and_integrate(files, capsys):
    f = files("f.json", jsonio.step_to_json(StepFunction.jump(Q(1, 3), 0, 4)))
    code, out, _ = run(capsys, "psi", "--f", f)
    g = json.loads(out)
    assert code == 0 and g["pointValues"][1] == {"re": "2", "im": "0"}
    code, out, _ = run(capsys, "psi", "--inverse", "--g", files("g.json", out))
    assert code == 0 and json.loads(out) == jsonio.step_to_json(StepFunction.jump(Q(1, 3), 0, 4))
    mu = files("mu.json", jsonio.measure_to_json(Measure(density=(DensityPiece(0, 1, 1),))))
    code, out, _ = run(capsys, "integrate", "--f", f, "--mu", mu)
    assert code == 0 and json.loads(out) == {"re": "8/3", "im": "0"}


def test_nice_chain(files, capsys):
    o = files("o.json", jsonio.oracle_to_json(BreakpointsOracle(NiceSet.dyadics(64, [Q(1, 3)]))))
    code, out, _ = run(capsys, "nice-chain", "--oracle", o, "--stages", "0")
    assert code == 0 and json.loads(out) == jsonio.nice_to_json(NiceSet.dyadics(8))


def test_outputs_are_deterministic(files, capsys):
    o = files("o.json", jsonio.oracle_to_json(BreakpointsOracle(NiceSet.dyadics(64, [Q(1, 3)]))))
    s = files("s.json", jsonio.nice_to_json(NiceSet.dyadics(64)))
    first = run(capsys, "ntip-run", "--oracle", o, "--nice", s, "--q", "1/3")
    assert run(capsys, "ntip-run", "--oracle", o, "--nice", s, "--q", "1/3") == first


def test_selftest_quick(capsys):
    code, out, _ = run(capsys, "selftest", "quick")
    assert code == 0
    passed = sum(line.startswith("[PASS]") for line in out.splitlines())
    assert passed >= 40


def test_selftest_full_catches_a_halved_cover_radius(capsys, monkeypatch):
    monkeypatch.setattr(descriptors, "COVER_RADIUS_FACTOR", 1)
    code, out, _ = run(capsys, "selftest", "full")
    assert code != 0
    failed = next(line for line in out.splitlines() if line.startswith("failed: "))
    assert "difference cover soundness" in failed
    assert "[FAIL] difference cover soundness" in out


def test_module_entry_point(tmp_path):
    (tmp_path / "space.json").write_text('{"kind": "chain", "n": 5}')
    res = subprocess.run([sys.executable, "-m", "ordalg", "kernel", str(tmp_path / "space.json")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout) == {"components": []}
