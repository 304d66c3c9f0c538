import json

import pytest

from hochhom import cli
from hochhom.algebra import SizeBudgetExceeded


def run_config(tmp_path, cfg, capsys=None):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(cfg))
    return cli.main([str(path)])


def test_parse_valid_homology():
    job = cli.parse_config('{"command":"homology","algebra":"truncated_poly(2)","space":"sphere(1)","N":4}')
    assert job.command == "homology" and job.N == 4


def test_parse_missing_space():
    with pytest.raises(cli.ConfigError) as exc:
        cli.parse_config('{"command":"homology","algebra":"truncated_poly(2)","N":4}')
    assert ("space", "required field missing") in exc.value.errors


def test_parse_graded():
    job = cli.parse_config(
        '{"command":"graded-homology","algebra":{"type":"graded_poly","vars":[1]},"space":"sphere(2)","N":5,"weight":2}'
    )
    assert job.weight == 2


@pytest.mark.parametrize(
    "doc,path",
    [
        ("{not json", "$"),
        ('{"command":"frobnicate"}', "command"),
        ('{"command":"homology","algebra":"nope(2)","space":"sphere(1)","N":2}', "algebra"),
        ('{"command":"homology","algebra":"split_pair","space":"sphere(1)","N":0}', "N"),
        ('{"command":"homology","algebra":"split_pair","space":"torus(1)","N":2}', "space"),
        ('{"command":"homology","algebra":"split_pair","space":"sphere(1)","N":2,"budget":-1}', "budget"),
        ('{"command":"verify","suite":"nope"}', "suite"),
    ],
)
def test_parse_errors_name_paths(doc, path):
    with pytest.raises(cli.ConfigError) as exc:
        cli.parse_config(doc)
    assert any(p == path for p, _ in exc.value.errors)


def test_parse_time_budget():
    with pytest.raises(SizeBudgetExceeded):
        cli.parse_config('{"command":"homology","algebra":"truncated_poly(4)","space":"sphere(3)","N":7}')


def test_space_expressions():
    k = cli.parse_space("wedge(sphere(1), skeleton(simplex(2), 1))", 3)
    assert k.trunc_level == 3
    assert cli.parse_space("disjoint(point, point)", 1).size(0) == 2
    with pytest.raises(ValueError):
        cli.parse_space("sphere(1", 2)
    with pytest.raises(ValueError):
        cli.parse_space("sphere(point)", 2)


def test_structure_constants_algebra():
    spec = {"type": "structure_constants", "dim": 2, "mult": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], "augmentation": [1, 0]}
    a = cli.parse_algebra(spec)
    assert a.dim == 2
    bad = {"type": "structure_constants", "dim": 2, "mult": [[[1, 0], [0, 1]], [[1, 0], [0, 0]]]}
    with pytest.raises(cli.ConfigError):
        cli.parse_algebra(bad)


def test_run_homology_report(tmp_path):
    out = tmp_path / "r.json"
    cfg = {"command": "homology", "algebra": "truncated_poly(2)", "space": "sphere(1)", "N": 4, "output": str(out)}
    assert run_config(tmp_path, cfg) == 0
    rep = json.loads(out.read_text())
    assert rep["dims"][:4] == [2, 1, 1, 1]
    assert rep["uncertified_degrees"] == [4]


def test_report_stable_modulo_timing(tmp_path):
    reps = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        cfg = {"command": "graded-homology", "algebra": "poly(1)", "space": "sphere(2)", "N": 4, "weight": 2, "output": str(out)}
        assert run_config(tmp_path, cfg) == 0
        rep = json.loads(out.read_text())
        rep.pop("timing")
        reps.append(rep)
    assert reps[0] == reps[1]


def test_run_cohomology_and_ext(tmp_path):
    out = tmp_path / "c.json"
    cfg = {"command": "cohomology", "algebra": "truncated_poly(2)", "space": "sphere(1)", "N": 3, "module": "residue", "output": str(out)}
    assert run_config(tmp_path, cfg) == 0
    assert json.loads(out.read_text())["dims"][:3] == [1, 1, 1]
    cfg = {"command": "ext", "algebra": "truncated_poly(2)", "module": "residue", "target": "residue", "N": 3, "output": str(out)}
    assert run_config(tmp_path, cfg) == 0
    assert json.loads(out.read_text())["dims"] == [1, 1, 1, 1]


def test_verify_low_degree_exit_zero(tmp_path):
    out = tmp_path / "v.json"
    assert cli.main(["verify", "low_degree", "--corpus", "default", "--output", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["verdict"] == "pass" and len(rep["cases"]) == 12


def test_verify_failing_suite_exit_one(tmp_path):
    out = tmp_path / "v.json"
    cfg = {
        "command": "verify",
        "suite": "homotopy_invariance",
        "corpus": "custom",
        "params": {"pairs": [["sphere(1)", "point"]], "algebras": ["truncated_poly(2)"], "N": 3},
        "output": str(out),
    }
    assert run_config(tmp_path, cfg) == 1
    assert json.loads(out.read_text())["verdict"] == "fail"


def test_localization_disconnected_exit_two(tmp_path, capsys):
    cfg = {
        "command": "verify",
        "suite": "localization",
        "corpus": "custom",
        "params": {"space": "disjoint(point,point)", "algebra": "split_pair", "s": [0, 1], "N": 2},
    }
    assert run_config(tmp_path, cfg) == 2
    assert "connected" in capsys.readouterr().err


def test_budget_exit_three(tmp_path):
    cfg = {"command": "homology", "algebra": "truncated_poly(4)", "space": "sphere(3)", "N": 7}
    assert run_config(tmp_path, cfg) == 3


def test_budget_exit_three_at_run_time(tmp_path):
    # a custom suite cannot be sized at parse time; the guard fires while running
    cfg = {
        "command": "verify",
        "suite": "homotopy_invariance",
        "corpus": "custom",
        "params": {"pairs": [["point", "simplex(3)"]], "algebras": ["truncated_poly(2)"], "N": 4},
    }
    assert run_config(tmp_path, cfg) == 3


def test_budget_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("HOCHHOM_BUDGET", "5")
    cfg = {"command": "homology", "algebra": "truncated_poly(2)", "space": "sphere(1)", "N": 3}
    assert run_config(tmp_path, cfg) == 3
    cfg["budget"] = 1000
    assert run_config(tmp_path, cfg) == 0


def test_text_format(tmp_path):
    out = tmp_path / "r.txt"
    cfg = {"command": "homology", "algebra": "split_pair", "space": "sphere(2)", "N": 3, "format": "text", "output": str(out)}
    assert run_config(tmp_path, cfg) == 0
    assert "dims: [2, 0, 0" in out.read_text()
