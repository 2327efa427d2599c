import contextlib
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

import klrbench.klr as klr_pkg
import klrbench.polyrep as polyrep_pkg
import klrbench.rootdata as rootdata_pkg
import klrbench.ucat as ucat_pkg
import klrbench.uqrep as uqrep_pkg
from klrbench import cli
from klrbench.cli import COMMANDS, ConfigError, main, parse_config, run_command

GOLDEN = Path(__file__).parent / "golden"
CONFIGS = sorted(GOLDEN.glob("*.cfg"))


def run_main(argv) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def json_blocks(text: str) -> list[dict]:
    """The structured block of every report in a run."""
    out = []
    for chunk in text.split("--- json ---\n")[1:]:
        body, _, _ = chunk.partition("\n\n==")
        out.append(json.loads(body))
    return out


# --- config parsing --------------------------------------------------------

A2 = "[graph]\nvertices = 1 2\nedge 1 2\n"


def test_minimal_a2_config():
    cfg = parse_config(A2)
    assert cfg.datum.epsilon(1, 2) == 1
    assert cfg.datum.epsilon(2, 1) == 0


def test_undeclared_vertex_names_line():
    with pytest.raises(ConfigError, match=r"line 3: .*undeclared vertex 3"):
        parse_config("[graph]\nvertices = 1 2\nedge 1 3\n")


def test_loop_rejected():
    with pytest.raises(ConfigError, match="line 3: .*loop"):
        parse_config("[graph]\nvertices = 1 2\nedge 2 2\n")


def test_non_dominant_weight_rejected():
    text = A2 + "[weight bad]\ncoroot 1 = -1\n[task t]\ncommand = uq-build\nweight = bad\ndepth = 2\n"
    with pytest.raises(ConfigError, match="line 8: .*not dominant"):
        parse_config(text)


@pytest.mark.parametrize("text,fragment", [
    ("vertices = 1\n", "line 1: content before"),
    ("[graph]\nvertices = 1\n[task t]\ncommand = nope\n", "line 4: unknown command"),
    ("[graph]\nvertices = 1\n[task t]\ncommand = klr-mul\nexpr = e(1)\ncolor = red\n", "line 6: unknown key"),
    ("[graph]\nvertices = 1\n[weight w]\ncoroot 2 = 1\n", "line 4: coroot of undeclared vertex"),
    ("[graph]\nvertices = 1\n[task t]\ncommand = quiver-dims\nweight = 1\n", "missing 'v'"),
    ("[graph\n", "line 1: unterminated"),
])
def test_config_errors(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(text)


# --- commands --------------------------------------------------------------

def test_double_crossing_reports_zero():
    code, out = run_main(["klr-mul", "psi(1)*psi(1)*e(1 1)"])
    assert code == 0
    (block,) = json_blocks(out)
    assert block["payload"]["result"] == "0"


def test_quiver_dims_example():
    code, out = run_main(["quiver-dims", "weight=2", "v=1"])
    assert code == 0
    payload = json_blocks(out)[0]["payload"]
    assert payload["expected_dim"] == 2
    assert (payload["dim_E"], payload["dim_G"]) == (2, 1)


def test_unknown_command_is_usage_error():
    assert main(["frobnicate"]) == 2
    with pytest.raises(cli.UsageError):
        run_command(parse_config("[graph]\nvertices = 1\n"), "frobnicate", {})


def test_parse_error_reports_position():
    code, out = run_main(["klr-mul", "psi(1)*+e(1 1)"])
    assert code == 2
    (block,) = json_blocks(out)
    assert "position 7" in block["witnesses"][0]


def test_failed_check_exits_one():
    code, out = run_main(["run", str(GOLDEN / "certify_fail.cfg")])
    assert code == 1
    assert json_blocks(out)[0]["payload"]["conditions"]["3"] == "fail"


def test_task_selection_and_missing_task():
    code, out = run_main(["run", str(GOLDEN / "quiver_a2.cfg"), "--task", "twist_bad"])
    assert code == 0
    blocks = json_blocks(out)
    assert [b["task"] for b in blocks] == ["twist_bad"]
    assert blocks[0]["payload"]["integral"] is False
    assert run_main(["run", str(GOLDEN / "quiver_a2.cfg"), "--task", "ghost"])[0] == 2


def test_parallel_run_preserves_order():
    serial = run_main(["run", str(GOLDEN / "klr_mul.cfg")])
    parallel = run_main(["run", str(GOLDEN / "klr_mul.cfg"), "--jobs", "3"])
    assert serial == parallel


def test_degree_cutoff_from_environment(monkeypatch):
    cfg = parse_config("[graph]\nvertices = 1\n")
    monkeypatch.setenv("KLRBENCH_DEG_CUTOFF", "2")
    low = run_command(cfg, "klr-dim", {"from": "1 1", "to": "1 1"})
    monkeypatch.setenv("KLRBENCH_DEG_CUTOFF", "6")
    high = run_command(cfg, "klr-dim", {"from": "1 1", "to": "1 1"})
    assert low.payload["max_degree"] == 2 and high.payload["max_degree"] == 6
    assert len(high.payload["graded_dim"]) > len(low.payload["graded_dim"])


# --- coverage --------------------------------------------------------------

LIBRARY_OPERATIONS = {
    rootdata_pkg: ["build_root_datum", "q_polynomial", "t_scalar", "quantum_integer", "cartan_pairing",
                   "mu_from_dimvec"],
    polyrep_pkg: ["divided_difference", "act_element"],
    klr_pkg: ["multiply", "degree", "graded_dim_hom", "check_relations", "cyclotomic_quotient"],
    ucat_pkg: ["one_mor_weight", "diagram_degree", "solve_fake_bubbles", "certify"],
    uqrep_pkg: ["freudenthal_multiplicity", "build_module", "verify_uq_relations", "nakajima_nonempty",
                "quiver_space_dims", "period_class", "twist_integrality"],
    cli: ["parse_config", "run_command"],
}


def test_every_operation_is_reached_from_the_cli():
    codes = {getattr(mod, name).__code__: name for mod, names in LIBRARY_OPERATIONS.items() for name in names}
    reached = set()

    def profile(frame, event, arg):
        if event == "call" and frame.f_code in codes:
            reached.add(codes[frame.f_code])

    sys.setprofile(profile)
    try:
        for path in CONFIGS:
            run_main(["run", str(path)])
    finally:
        sys.setprofile(None)
    assert set(codes.values()) - reached == set()


def test_declared_operations_exist():
    modules = [rootdata_pkg, polyrep_pkg, klr_pkg, ucat_pkg, uqrep_pkg]
    for name, spec in COMMANDS.items():
        for op in spec.operations:
            assert any(hasattr(m, op) for m in modules), f"{name} declares unknown operation {op}"
    assert set(COMMANDS) == {
        "klr-mul", "klr-dim", "klr-check", "cyclotomic", "bubble-solve", "certify", "uq-build", "uq-verify",
        "quiver-dims", "period", "twist-check", "nakajima-nonempty", "degree"}


# --- golden files ----------------------------------------------------------

def run_subprocess(path: Path, hash_seed: str) -> subprocess.CompletedProcess:
    env = dict(os.environ, PYTHONHASHSEED=hash_seed)
    env.pop("KLRBENCH_DEG_CUTOFF", None)
    env.pop("KLRBENCH_JOBS", None)
    return subprocess.run([sys.executable, "-m", "klrbench", "run", str(path)],
                          capture_output=True, env=env, check=False)


def test_golden_suite_is_large_enough():
    assert len(CONFIGS) >= 10
    for path in CONFIGS:
        assert path.with_suffix(".out").exists(), path.name


@pytest.mark.parametrize("path", CONFIGS, ids=lambda p: p.stem)
def test_golden_output(path):
    expected = path.with_suffix(".out").read_bytes()
    first = run_subprocess(path, "1")
    second = run_subprocess(path, "2")
    assert first.stdout == second.stdout
    assert first.stdout == expected
