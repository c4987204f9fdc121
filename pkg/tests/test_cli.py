import json
import shutil
import subprocess

import pytest

from flopcat.cli import (
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_UNDETERMINED,
    ConfigError,
    SuiteConfig,
    exit_code,
    main,
    parse_points,
)


def _run(tmp_path, *args, name="out.json"):
    path = tmp_path / name
    code = main(["verify", *args, "--report", str(path)])
    return code, path


def test_node_suite_passes(tmp_path):
    code, path = _run(tmp_path, "--suite", "node", "--cutoff", "12")
    report = json.loads(path.read_text())
    assert code == EXIT_OK
    assert report["summary"]["fail"] == 0 and report["summary"]["undetermined"] == 0
    for c in report["checks"]:
        assert set(c) >= {"name", "status", "window", "tables"}
        assert set(c["window"]) == {"internal", "homological"}
    assert (tmp_path / "out.json.timing.json").exists()


def test_report_is_deterministic(tmp_path):
    _, a = _run(tmp_path, "--suite", "node", name="a.json")
    _, b = _run(tmp_path, "--suite", "node", name="b.json")
    assert a.read_bytes() == b.read_bytes()


def test_timing_embedded_on_request(tmp_path):
    code, path = _run(tmp_path, "--suite", "kronecker", "--timing")
    report = json.loads(path.read_text())
    assert code == EXIT_OK
    assert all("ms" in c for c in report["checks"])


def test_kronecker_d2_expected_fail(tmp_path):
    code, path = _run(tmp_path, "--suite", "kronecker", "--kronecker-d", "2")
    report = json.loads(path.read_text())
    assert code == EXIT_OK
    assert report["summary"]["expected_fail"] >= 1
    crep = [c for c in report["checks"] if c["name"].startswith("kronecker.crepancy")][0]
    assert "index 0" in crep["detail"]
    strong = [c for c in crep["checks"] if c["name"] == "crepancy[kronecker] strong"][0]
    assert strong["status"] == "fail" and strong["expected"] == "fail"


def test_general_nodal_suite(tmp_path):
    code, _ = _run(tmp_path, "--suite", "general-nodal", "--points", "1,-1")
    assert code == EXIT_OK


def test_markdown_format(tmp_path):
    code, path = _run(tmp_path, "--suite", "kronecker", "--format", "markdown", name="r.md")
    text = path.read_text()
    assert code == EXIT_OK
    assert text.startswith("# flopcat report: kronecker") and "| check | status | expected |" in text


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"suite": "kronecker", "kronecker_d": 1}))
    code, path = _run(tmp_path, "--config", str(cfg), "--kronecker-d", "3")
    report = json.loads(path.read_text())
    assert code == EXIT_OK
    assert report["config"]["kronecker_d"] == 3


@pytest.mark.parametrize(
    "args",
    [
        ["--suite", "node", "--cutoff", "3"],
        ["--suite", "node", "--hwindow", "2"],
        ["--suite", "general-nodal", "--points", "1,1"],
        ["--suite", "general-nodal", "--points", "1"],
        ["--suite", "bogus"],
    ],
)
def test_invalid_config_exit_2(tmp_path, args):
    assert main(["verify", *args, "--report", str(tmp_path / "x.json")]) == EXIT_CONFIG


def test_unknown_config_field(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"suite": "node", "depth": 3}))
    assert main(["verify", "--config", str(cfg)]) == EXIT_CONFIG


@pytest.mark.parametrize(
    "src,dst,lines",
    [
        ("E_x", "E_y", ["k=2 j=-1 dim=1"]),
        ("E_x", "E_x", ["k=0 j=0 dim=1"]),
    ],
)
def test_ext_command(capsys, src, dst, lines):
    assert main(["ext", "--from", src, "--to", dst]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == lines


def test_ext_spherical(capsys):
    assert main(["ext", "--from", "F_x", "--to", "F_x"]) == EXIT_OK
    ks = [line.split()[0] for line in capsys.readouterr().out.splitlines()]
    assert ks == ["k=0", "k=3"]


def test_ext_unknown_object():
    assert main(["ext", "--from", "E_z", "--to", "E_x"]) == EXIT_CONFIG


def test_ext_uncertified(capsys):
    assert main(["ext", "--from", "P_X", "--to", "P_X"]) == EXIT_UNDETERMINED
    assert "not certified" in capsys.readouterr().out


def test_exit_code_contract():
    base = {"summary": {"pass": 3, "fail": 0, "undetermined": 1, "expected_fail": 0}}
    assert exit_code(base) == EXIT_UNDETERMINED
    assert exit_code(base, allow_undetermined=True) == EXIT_OK
    base["summary"]["fail"] = 1
    assert exit_code(base, allow_undetermined=True) == 1


def test_parse_points_and_validate():
    assert parse_points("1/2, -3") == (parse_points("1/2,-3"))
    with pytest.raises(ConfigError):
        parse_points("a,b")
    cfg = SuiteConfig(nodal_points=("2", "3")).validate()
    assert cfg.nodal_points[1] == 3


@pytest.mark.skipif(shutil.which("flopcat") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["flopcat", "ext", "--from", "E_y", "--to", "E_x"], capture_output=True, text=True, check=True)
    assert out.stdout.startswith("k=2 ")


def test_check_report_invariants():
    from flopcat.reports import FAIL, PASS, UNDETERMINED, CheckReport, bundle

    failing = CheckReport("x", FAIL, window={"internal": 12})
    assert failing.witness is not None
    with pytest.raises(ValueError):
        CheckReport("y", UNDETERMINED)
    with pytest.raises(ValueError):
        CheckReport("z", "maybe")
    expected = CheckReport("w", FAIL, window={"internal": 12}, witness="by design", expected=FAIL)
    b = bundle("b", [CheckReport("ok", PASS), expected], {"internal": 12})
    assert b.status == PASS and expected.ok
    assert "ms" not in b.as_json() and "ms" in b.as_json(timing=True)
