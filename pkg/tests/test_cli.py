import io
import json
from contextlib import redirect_stderr, redirect_stdout

import numpy as np
import pytest

import qcap.cli as cli
from qcap.channels import KrausChannel, horodecki_channel_4
from qcap.selftest import run_selftest


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        rc = cli.main(argv)
    return rc, out.getvalue(), err.getvalue()


def test_superactivation_json_reports():
    rc, out, _ = run_cli(["superactivation", "--json"])
    assert rc == 0
    reports = json.loads(out)
    assert all(r["passed"] for r in reports)
    by_name = {r["quantity_name"]: r for r in reports}
    priv = by_name["private_information_value vs reference"]
    assert priv["computed_value"] == pytest.approx(cli.PRIVATE_INFO_H4, abs=1e-9)
    joint = by_name["joint coherent information vs reference"]
    assert joint["computed_value"] == pytest.approx(cli.SUPERACTIVATION_IC, abs=1e-9)


def test_superactivation_text_output_has_pass_lines():
    rc, out, _ = run_cli(["superactivation"])
    assert rc == 0
    lines = [ln for ln in out.splitlines() if ln.strip()]
    assert lines
    assert all(ln.startswith("[PASS]") for ln in lines)


def test_nonconvexity_with_explicit_samples():
    rc, out, _ = run_cli(["nonconvexity", "--json", "--p", "0.002"])
    assert rc == 0
    reports = json.loads(out)
    assert all(r["passed"] for r in reports)
    names = [r["quantity_name"] for r in reports]
    assert "positivity threshold p_star" in names
    assert any("p=0.002" in n for n in names)


def test_nonconvexity_rejects_out_of_range_p():
    rc, _, err = run_cli(["nonconvexity", "--p", "1.5"])
    assert rc == 2
    assert "error" in err


def test_maximize_builtin_erasure():
    rc, out, _ = run_cli(["maximize", "--channel", "builtin:erasure:2:0.25",
                          "--json", "--restarts", "4", "--seed", "1"])
    assert rc == 0
    (report,) = json.loads(out)
    assert report["computed_value"] == pytest.approx(0.5, abs=1e-6)
    assert len(report["best_state_eigenvalues"]) == 2


def test_maximize_same_seed_is_reproducible():
    argv = ["maximize", "--channel", "builtin:erasure:2:0.25",
            "--json", "--restarts", "3", "--seed", "11"]
    _, out1, _ = run_cli(argv)
    _, out2, _ = run_cli(argv)
    v1 = json.loads(out1)[0]["computed_value"]
    v2 = json.loads(out2)[0]["computed_value"]
    assert v1 == v2


def test_maximize_unknown_builtin_exits_2():
    rc, _, err = run_cli(["maximize", "--channel", "builtin:nope"])
    assert rc == 2
    assert "unknown builtin" in err


def test_maximize_missing_file_exits_2(tmp_path):
    rc, _, err = run_cli(["maximize", "--channel", str(tmp_path / "absent.json")])
    assert rc == 2
    assert "cannot read channel file" in err


def test_maximize_malformed_file_exits_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"din": 2, "dout": 2, "kraus": [[[1.0]]]}')
    rc, _, err = run_cli(["maximize", "--channel", str(path)])
    assert rc == 2
    assert "kraus" in err


def test_selftest_passes():
    rc, out, _ = run_cli(["selftest"])
    assert rc == 0
    assert "checks passed" in out


def test_selftest_fails_on_corrupted_channel(monkeypatch):
    def corrupted():
        c = horodecki_channel_4()
        # flip a sign inside the last Kraus operator; trace preservation
        # survives but the Choi matrix loses its positive partial transpose
        k = list(c.kraus)
        z = np.diag([1.0, -1.0]).astype(complex)
        k[-1] = k[-1] @ np.kron(np.eye(2), z)
        return KrausChannel(tuple(k))

    monkeypatch.setattr(cli, "run_selftest",
                        lambda: run_selftest(horodecki_factory=corrupted))
    rc, _, err = run_cli(["selftest"])
    assert rc == 1
    assert "FAILED invariant" in err


def test_main_requires_subcommand():
    with pytest.raises(SystemExit):
        run_cli([])
