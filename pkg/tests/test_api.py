"""Test the RunConfig / run entry point."""

import pytest

from rectvar.api import Command, RunConfig, run, selftest
from rectvar.errors import CapExceededError, ConfigError, GridFormatError
from rectvar.schemas import get_all_schema_hashes


@pytest.fixture
def st_csv(tmp_path):
    """f(s, t) = st on {0, 1}^2."""
    path = tmp_path / "st.csv"
    path.write_text(",0,1\n0,0,0\n1,0,1\n")
    return path


@pytest.fixture
def two_by_two_csv(tmp_path):
    """A 2x2-cell grid with nonzero mixed increments."""
    path = tmp_path / "grid.csv"
    path.write_text(",0,1,2\n0,0,0,0\n1,0,1,-1\n2,0,2,3\n")
    return path


def test_unknown_command():
    with pytest.raises(ConfigError):
        RunConfig(command="integrate")


def test_missing_parameter(st_csv):
    with pytest.raises(ConfigError, match="--p"):
        run(RunConfig(command="vp", input_path=st_csv), quiet=True)


@pytest.mark.parametrize("field,value", [("p", 0.5), ("H", 0.7), ("eps", 0.0), ("tolerance", 2.0)])
def test_out_of_range_parameters(st_csv, field, value):
    cfg = RunConfig(command="sandwich", input_path=st_csv, p=2.0, eps=1.0, H=0.25)
    setattr(cfg, field, value)
    with pytest.raises(ConfigError):
        cfg.validate()


def test_vp_of_product(st_csv):
    """V_1(st; [0,1]^2) = 1, exactly."""
    report = run(RunConfig(command="vp", input_path=st_csv, p=1.0), quiet=True)
    assert report.command == "vp"
    assert report.results["vp"]["value"] == 1.0
    assert report.results["vp"]["method"] == "exact"
    assert report.consistent


def test_report_carries_schema_hashes(st_csv):
    """Every report echoes the hash of each table schema."""
    report = run(RunConfig(command="vp", input_path=st_csv, p=1.0), quiet=True)
    assert report.schema_hashes == get_all_schema_hashes()
    assert set(report.to_dict()["schema_hashes"]) == {"check_records", "scan"}


def test_vp_above_cap_falls_back(tmp_path):
    """Past the exact cap V_p comes from coordinate ascent and is only a lower bound."""
    path = tmp_path / "grid.csv"
    path.write_text(",0,1,2,3\n0,0,0,0,0\n1,0,1,-1,2\n2,0,2,3,-1\n3,0,-2,1,1\n")
    report = run(RunConfig(command="vp", input_path=path, p=2.0, exact_cap=1), quiet=True)
    assert report.results["vp"]["method"] == "heuristic"
    assert report.results["vp"]["bound"] == "lower"
    assert report.consistent


def test_cvp_cap_exceeded(two_by_two_csv):
    """Four cells against a cap of one raise instead of searching."""
    with pytest.raises(CapExceededError):
        run(RunConfig(command="cvp", input_path=two_by_two_csv, p=2.0, partition_cap=1), quiet=True)


def test_caps_restored_after_run(two_by_two_csv, monkeypatch):
    from rectvar import config

    monkeypatch.delenv(config.PARTITION_CAP_ENV_VAR, raising=False)
    run(RunConfig(command="cvp", input_path=two_by_two_csv, p=2.0, partition_cap=9), quiet=True)
    assert config.get_partition_cap() == config.DEFAULT_PARTITION_CAP


def test_bad_input_file(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(",0,1\n0,0,x\n1,0,1\n")
    with pytest.raises(GridFormatError):
        run(RunConfig(command="vp", input_path=path, p=2.0), quiet=True)


@pytest.mark.parametrize("command", ["sandwich", "check-control", "almost-subadd", "crucial-lemma"])
def test_grid_commands_consistent(two_by_two_csv, command):
    cfg = RunConfig(command=command, input_path=two_by_two_csv, p=2.0, eps=1.0)
    assert run(cfg, quiet=True).consistent


def test_enumerate_partitions_2x2():
    report = run(RunConfig(command="enumerate-partitions", nx=2, ny=2), quiet=True)
    assert report.results["count"] == 8
    assert len(report.results["partitions"]) == 8
    assert report.consistent


def test_enumerate_partitions_count_only_when_large():
    report = run(RunConfig(command="enumerate-partitions", nx=4, ny=4), quiet=True)
    assert report.results["count"] == 70878
    assert report.results["partitions"] is None


@pytest.mark.parametrize("H", [0.25, 0.5])
def test_fbm_commands(H):
    for command in (Command.FBM_COV, Command.FBM_COUNTEREXAMPLE):
        assert run(RunConfig(command=command, H=H, t=2.0), quiet=True).consistent


def test_fbm_scan_reports_constant():
    report = run(RunConfig(command="fbm-scan", H=0.25, sizes=(4, 6)), quiet=True)
    assert len(report.results["scan"]) == 2
    assert report.results["c_H"] > 0


def test_young_commands_random_inputs():
    assert run(RunConfig(command="young1d", p=1.5, seed=3), quiet=True).consistent
    report = run(RunConfig(command="young2d", p=1.5, seed=3, nx=2, ny=2), quiet=True)
    assert report.consistent
    assert 1 < report.results["alpha"] < report.results["theta"]


def test_young_needs_theta_above_one():
    """p = q = 2 gives θ = 1."""
    with pytest.raises(ConfigError):
        run(RunConfig(command="young1d", p=2.0), quiet=True)


def test_config_echo_leaves_out_output(st_csv, tmp_path):
    a = run(RunConfig(command="vp", input_path=st_csv, p=1.0, output=tmp_path / "a.json"), quiet=True)
    b = run(RunConfig(command="vp", input_path=st_csv, p=1.0, output=tmp_path / "b.json"), quiet=True)
    assert "output" not in a.config
    assert a.digest() == b.digest()


def test_selftest_is_deterministic():
    """Same seed, same report (timing aside)."""
    first = selftest(seed=42, quick=True, quiet=True)
    second = selftest(seed=42, quick=True, quiet=True)
    assert first.consistent
    assert first.digest() == second.digest()
    assert set(first.timing) >= {"equality", "oracles", "total_seconds"}
