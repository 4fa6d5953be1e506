import numpy as np
import pytest

from fracstab.cli import main
from fracstab.config import parse_config
from fracstab.errors import ConfigError
from fracstab.reporting import read_trajectory_csv

EX1_BLOCK = """\
preset = example1
order = 0.9
dim = 2
x0 = [-10, 10]
rhs1 = "-x1 - x2/(1+t)"
rhs2 = "x1 - x2"
t_end = 50
h = 0.01
"""

SMALL_SYSTEM = """\
dim = 1
order = 0.5
x0 = [1]
rhs1 = "-x1"
t_end = 1
h = 0.01
"""


# --- config parsing --------------------------------------------------------------


def test_parse_example1_block():
    cfg = parse_config(EX1_BLOCK)
    assert cfg.system.dim == 2
    assert cfg.system.order.alpha == 0.9
    assert cfg.grid.n_steps == 5000
    assert list(cfg.system.x0) == [-10.0, 10.0]
    assert cfg.preset == "example1"


def test_parse_preset_defaults_fill_in():
    cfg = parse_config("preset = example2\n")
    assert cfg.system.dim == 1
    assert cfg.system.order.alpha == 0.8
    assert cfg.grid.t_end == 20.0


def test_missing_order_names_the_key():
    with pytest.raises(ConfigError) as exc:
        parse_config("dim = 1\nx0 = [1]\nrhs1 = \"-x1\"\nt_end = 1\nh = 0.1\n")
    assert "order" in str(exc.value)


def test_dimension_mismatches():
    with pytest.raises(ConfigError) as exc:
        parse_config(EX1_BLOCK + 'rhs3 = "t"\n')
    assert "rhs3" in str(exc.value)
    with pytest.raises(ConfigError):
        parse_config(SMALL_SYSTEM.replace("x0 = [1]", "x0 = [1, 2]"))


def test_unknown_key_rejected_with_line():
    with pytest.raises(ConfigError) as exc:
        parse_config("preset = example1\nwibble = 3\n")
    assert "line 2" in str(exc.value)


def test_comments_and_quoted_hash():
    cfg = parse_config(SMALL_SYSTEM + '# full-line comment\nlabel = "a#b"  # trailing\n')
    assert cfg.system.label == "a#b"


def test_checks_parsing():
    cfg = parse_config(SMALL_SYSTEM + "checks = [nr1:5, nr4_identity:3]\nseed = 9\n")
    assert cfg.checks == (("nr1", 5), ("nr4_identity", 3))
    assert cfg.seed == 9
    single = parse_config(SMALL_SYSTEM + "checks = nr1:7\n")
    assert single.checks == (("nr1", 7),)
    default_count = parse_config(SMALL_SYSTEM + "checks = nr1\n")
    assert default_count.checks[0][1] == 100


def test_grid_must_divide():
    with pytest.raises(ConfigError):
        parse_config(SMALL_SYSTEM.replace("h = 0.01", "h = 0.3"))


def test_seed_must_be_integer():
    with pytest.raises(ConfigError):
        parse_config(SMALL_SYSTEM + "seed = 1.5\n")


# --- CLI end-to-end ------------------------------------------------------------------


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_simulate_roundtrip(tmp_path):
    cfg = _write(tmp_path, "run.cfg", SMALL_SYSTEM)
    out = tmp_path / "out"
    assert main(["simulate", cfg, "--out", str(out)]) == 0
    ts, states = read_trajectory_csv(out / "trajectory.csv")
    assert ts.shape == (101,)
    assert states[0, 0] == 1.0
    # bit-exact round trip against an in-process solve
    from fracstab.config import load_config
    from fracstab.solver import solve

    config = load_config(cfg)
    traj = solve(config.system, config.grid)
    assert np.array_equal(states, traj.matrix())
    assert np.array_equal(ts, traj.grid.nodes())


def test_simulate_divergence_exit_code(tmp_path):
    cfg = _write(
        tmp_path,
        "div.cfg",
        'dim = 1\norder = 0.8\nx0 = [3]\nrhs1 = "x1^3"\nt_end = 20\nh = 0.05\n',
    )
    assert main(["simulate", cfg, "--out", str(tmp_path / "o")]) == 2


def test_simulate_io_error_exit_code(tmp_path):
    cfg = _write(tmp_path, "run.cfg", SMALL_SYSTEM)
    assert main(["simulate", cfg, "--out", "/dev/null/impossible"]) == 3


def test_config_error_exit_code(tmp_path):
    cfg = _write(tmp_path, "bad.cfg", "nonsense\n")
    assert main(["simulate", cfg]) == 1
    assert main(["simulate", str(tmp_path / "missing.cfg")]) == 1


def test_check_command(tmp_path):
    cfg = _write(tmp_path, "chk.cfg", SMALL_SYSTEM + "checks = [nr1:4, nr4_identity:2]\nseed = 3\n")
    out = tmp_path / "chk"
    assert main(["check", cfg, "--out", str(out)]) == 0
    summary = (out / "check_summary.csv").read_text().splitlines()
    assert summary[0] == "name,instances,passes,max_violation"
    assert summary[1].startswith("nr1,4,4,")
    assert (out / "nr1" / "instance_0000.csv").exists()


def test_check_unknown_name_exit_code(tmp_path):
    cfg = _write(tmp_path, "chk.cfg", SMALL_SYSTEM + "checks = bogus:3\n")
    assert main(["check", cfg, "--out", str(tmp_path / "o")]) == 4


def test_reproduce_example2(tmp_path):
    out = tmp_path / "rep2"
    assert main(["reproduce", "2", "--out", str(out)]) == 0
    first_rows = (out / "trajectory.csv").read_text().splitlines()[:2]
    assert first_rows[0] == "t,x1"
    assert first_rows[1].startswith("0,0.1")
    summary = (out / "stability_summary.txt").read_text()
    assert "all_checks: pass" in summary
    assert (out / "dissipation.csv").exists()


def test_reproduce_byte_identical(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["reproduce", "2", "--out", str(out1)]) == 0
    assert main(["reproduce", "2", "--out", str(out2)]) == 0
    for name in ("trajectory.csv", "stability_summary.txt", "dissipation.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_reproduce_env_var_default(tmp_path, monkeypatch):
    target = tmp_path / "envout"
    monkeypatch.setenv("FRACSTAB_OUT", str(target))
    assert main(["reproduce", "2"]) == 0
    assert (target / "trajectory.csv").exists()


def test_convergence_command(tmp_path):
    cfg = _write(tmp_path, "conv.cfg", SMALL_SYSTEM + "h_list = [0.01, 0.005, 0.0025]\n")
    out = tmp_path / "conv"
    assert main(["convergence", cfg, "--out", str(out)]) == 0
    lines = (out / "convergence.csv").read_text().splitlines()
    assert lines[0] == "h,max_error"
    assert lines[-1].startswith("fitted_order,")
    order = float(lines[-1].split(",")[1])
    assert 1.2 <= order <= 2.1


def test_convergence_requires_h_list(tmp_path):
    cfg = _write(tmp_path, "conv.cfg", SMALL_SYSTEM)
    assert main(["convergence", cfg, "--out", str(tmp_path / "o")]) == 1


def test_plotscript(tmp_path):
    cfg = _write(tmp_path, "run.cfg", SMALL_SYSTEM)
    out = tmp_path / "sim"
    main(["simulate", cfg, "--out", str(out)])
    assert main(["plotscript", str(out / "trajectory.csv")]) == 0
    script = (out / "trajectory.gp").read_text()
    assert "trajectory.csv" in script and "x1" in script


def test_usage_error_exit_code():
    assert main(["simulate"]) == 1
    assert main(["notacommand"]) == 1


def test_check_outputs_byte_identical(tmp_path):
    cfg = _write(tmp_path, "chk.cfg", SMALL_SYSTEM + "checks = [lemma4:6]\nseed = 11\n")
    out1, out2 = tmp_path / "c1", tmp_path / "c2"
    assert main(["check", cfg, "--out", str(out1)]) == 0
    assert main(["check", cfg, "--out", str(out2)]) == 0
    assert (out1 / "check_summary.csv").read_bytes() == (out2 / "check_summary.csv").read_bytes()
    for p in sorted((out1 / "lemma4").iterdir()):
        assert p.read_bytes() == (out2 / "lemma4" / p.name).read_bytes()


def test_cli_subprocess_end_to_end(tmp_path):
    import subprocess
    import sys

    out = tmp_path / "sub"
    proc = subprocess.run(
        [sys.executable, "-m", "fracstab.cli", "reproduce", "2", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "all_checks: pass" in proc.stdout
    assert (out / "trajectory.csv").exists()
