import json
import subprocess
import sys

import pytest

from qball.report import report_from_json
from qball.verify.cli import main
from qball.verify.suites import ConfigError, SuiteConfig, max_modulus_check, run_suite


def test_vacuum_suite_n2():
    rep = run_suite(SuiteConfig(suites=("vacuum",), n=2))
    assert rep.passed and len(rep.checks) == 4
    assert all(c.residual == 0 for c in rep.checks)


def test_fock_oracle_n2():
    rep = run_suite(SuiteConfig(suites=("fock-oracle",), n=2, N=6))
    assert rep.passed
    assert any(c.name.startswith("fock-oracle:dense") for c in rep.checks)


def test_confluence_n3():
    assert run_suite(SuiteConfig(suites=("confluence",), n=3, degree=3)).passed


@pytest.mark.parametrize("suite", ["dimensions", "basis", "coherent", "boundary-ideal", "dilation", "hopf",
                                   "series", "relations"])
def test_cheap_suites_pass_n2(suite):
    assert run_suite(SuiteConfig(suites=(suite,), n=2)).passed


def test_coaction_domination_n2():
    rep = run_suite(SuiteConfig(suites=("coaction",), n=2, samples=4))
    assert rep.passed and rep.checks[0].name == "coaction:domination"


def test_coaction_image_of_one_is_identity():
    import numpy as np
    from qball.algebra.poly import MATQ, NCPolynomial
    from qball.rep.operators import TruncationConfig
    from qball.verify.suites import coaction_image
    tc = TruncationConfig(0.5, 3)
    img = coaction_image(NCPolynomial.one(MATQ, 2), 0.4, tc)
    assert img.slots == 5
    x = np.random.default_rng(0).normal(size=(3,) * 5)
    assert abs(img.apply(x, tc) - x).max() < 1e-14


def test_max_modulus_n1_small():
    rep = max_modulus_check(SuiteConfig(n=1, N=64), samples=3)
    assert rep.passed
    names = [c.name for c in rep.checks]
    assert "one-sided" in names and "relative-gap:N=64" in names


@pytest.mark.parametrize("kw", [dict(n=4), dict(q=1.0), dict(N=1), dict(N=4, safe_degree=4),
                                dict(suites=("nope",)), dict(suites=()), dict(tolerances={"bogus": 1.0}),
                                dict(n=3, suites=("max-modulus",)), dict(samples=0)])
def test_configuration_errors(kw):
    with pytest.raises(ConfigError):
        SuiteConfig(**kw).validate()


def test_report_written_and_reloaded(tmp_path):
    out = tmp_path / "r.json"
    code = main(["vacuum", "coherent", "--n", "2", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["pass"] is True
    assert data["config"]["n"] == 2
    rep = report_from_json(data)
    assert rep.passed and len(rep.checks) == len(data["checks"])


def test_failing_check_gives_exit_one(capsys):
    assert main(["relations", "--n", "2", "--tol", "relation=0"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_bad_config_gives_exit_two(capsys):
    assert main(["vacuum", "--q", "3"]) == 2
    assert "configuration error" in capsys.readouterr().err


def test_bad_tolerance_syntax():
    with pytest.raises(SystemExit):
        main(["vacuum", "--tol", "relation"])


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qball.verify.cli", "vacuum", "--n", "1", "--json"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0, res.stderr
    assert json.loads(res.stdout)["pass"] is True


def test_threaded_run_matches_serial(monkeypatch):
    cfg = dict(suites=("vacuum", "dimensions", "coherent"), n=2)
    serial = run_suite(SuiteConfig(**cfg))
    monkeypatch.setenv("QBALL_THREADS", "3")
    threaded = run_suite(SuiteConfig(**cfg))
    assert [(c.name, c.residual) for c in serial.checks] == [(c.name, c.residual) for c in threaded.checks]


def test_bad_thread_setting(monkeypatch):
    monkeypatch.setenv("QBALL_THREADS", "zero")
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig(suites=("vacuum",), n=1))
