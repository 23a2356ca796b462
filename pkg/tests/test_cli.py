import json
from pathlib import Path

import pytest

from uniqcover.cli import main
from uniqcover.generate import random_instance
from uniqcover.geometry import evaluate, instance_from_json, instance_to_json

GOLDEN = Path(__file__).parent / "golden"


def run(argv):
    return main([str(a) for a in argv])


def test_solve_oracle_golden(tmp_path, capsys):
    out = tmp_path / "sol.json"
    code = run(["solve", GOLDEN / "opening_figure_disks.json",
                "--algo", "oracle", "--output", out])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["unique_count"] == 11
    assert data["selected"] == [0, 2, 4, 6]
    assert data["feasible"] is True


def test_solve_dp_matches_oracle(tmp_path):
    inst = random_instance(8, 6, width=2, seed=5, denominator=8)
    path = tmp_path / "i.json"
    path.write_text(instance_to_json(inst))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["solve", path, "--algo", "oracle", "--output", a]) == 0
    assert run(["solve", path, "--algo", "dp", "--k", "2", "--output", b]) == 0
    assert (json.loads(a.read_text())["unique_count"]
            == json.loads(b.read_text())["unique_count"])


def test_solve_infeasible_exit_2(tmp_path):
    path = tmp_path / "i.json"
    path.write_text('{"version":1,"shape":"square","denominator":4,'
                    '"points":[[0,0],[40,40]],"objects":[[0,0]]}')
    assert run(["solve", path, "--algo", "oracle"]) == 2


def test_solve_limit_exit_3(tmp_path):
    inst = random_instance(4, 6, width=2, seed=1, denominator=8)
    path = tmp_path / "i.json"
    path.write_text(instance_to_json(inst))
    assert run(["solve", path, "--algo", "oracle", "--limit-m", "3"]) == 3
    assert run(["solve", path, "--algo", "dp", "--state-cap", "2"]) == 3


def test_solve_malformed_exit_1(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"version":1,"shape":"square"}')
    assert run(["solve", path]) == 1
    path.write_text("not json")
    assert run(["solve", path]) == 1


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["gen", "--n", "12", "--m", "8", "--seed", "42", "--output", a]) == 0
    assert run(["gen", "--n", "12", "--m", "8", "--seed", "42", "--output", b]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_feasible_across_seeds(tmp_path):
    # self-check: all points covered when every object is selected
    for seed in range(200):
        inst = random_instance(8, 6, width=3, seed=seed, denominator=16)
        sol = evaluate(inst, range(inst.m))
        assert sol.feasible


def test_gen_empty_instance(tmp_path):
    out = tmp_path / "e.json"
    assert run(["gen", "--n", "0", "--m", "0", "--output", out]) == 0
    inst = instance_from_json(out.read_text())
    assert inst.n == 0 and inst.m == 0


def test_reduce_and_verify(tmp_path):
    formula = tmp_path / "f.txt"
    formula.write_text("p vr3sat 3 1\nc L 0 1 2 3\n")
    out = tmp_path / "red.json"
    assert run(["reduce", formula, "--shape", "disk", "--output", out]) == 0
    cert = json.loads(Path(str(out) + ".cert.json").read_text())
    inst = instance_from_json(out.read_text())
    assert inst.n == cert["c"] * 2 + 1  # n = c*(K+1) + K with K = 1
    assert run(["verify-reduction", formula, "--shape", "both"]) == 0


def test_reduce_malformed_formula(tmp_path):
    formula = tmp_path / "f.txt"
    formula.write_text("p vr3sat 3 1\nc L 0 1 2\n")
    out = tmp_path / "red.json"
    assert run(["reduce", formula, "--output", out]) == 1


def test_render_snapshot(tmp_path):
    sol = tmp_path / "sol.json"
    assert run(["solve", GOLDEN / "opening_figure_disks.json",
                "--algo", "oracle", "--output", sol]) == 0
    svg = tmp_path / "out.svg"
    assert run(["render", GOLDEN / "opening_figure_disks.json",
                "--solution", sol, "--output", svg]) == 0
    golden = GOLDEN / "solution.svg.golden"
    if not golden.exists():  # first run records the snapshot
        golden.write_bytes(svg.read_bytes())
    assert svg.read_bytes() == golden.read_bytes()


def test_render_mismatched_solution_exit_1(tmp_path):
    sol = tmp_path / "sol.json"
    sol.write_text('{"selected":[0],"unique_count":11,"feasible":true}')
    svg = tmp_path / "out.svg"
    assert run(["render", GOLDEN / "opening_figure_disks.json",
                "--solution", sol, "--output", svg]) == 1


def test_render_empty_instance(tmp_path):
    inst = tmp_path / "i.json"
    inst.write_text('{"version":1,"shape":"square","denominator":4,'
                    '"points":[],"objects":[]}')
    svg = tmp_path / "e.svg"
    assert run(["render", inst, "--output", svg]) == 0
    assert svg.read_text().startswith("<?xml")


def test_bench_rows_and_ratios(tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for seed in range(4):
        inst = random_instance(8, 6, width=2, seed=seed, denominator=8)
        (corpus / f"i{seed}.json").write_text(instance_to_json(inst))
    table = tmp_path / "bench.csv"
    assert run(["bench", corpus, "--output", table]) == 0
    lines = table.read_text().strip().splitlines()
    assert len(lines) == 1 + 4 * 4  # header + 4 instances x 4 algorithms
    header = lines[0].split(",")
    ratio_col = header.index("ratio")
    algo_col = header.index("algorithm")
    for line in lines[1:]:
        cells = line.split(",")
        if cells[algo_col] == "oracle":
            assert cells[ratio_col] == "1.0000"


def test_config_file_defaults_flags_win(tmp_path):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("seed=9\nn=5\nm=4\n")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["--config", cfg, "gen", "--output", a]) == 0
    assert run(["gen", "--n", "5", "--m", "4", "--seed", "9", "--output", b]) == 0
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.json"
    assert run(["--config", cfg, "gen", "--seed", "1", "--output", c]) == 0
    assert c.read_bytes() != a.read_bytes()
