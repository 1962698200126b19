"""Tests for the sweep harness and the command-line interface."""
import pytest

from congestsim.cli import main, parse_pattern_arg, parse_seeds, parse_sizes
from congestsim.errors import InvalidParams
from congestsim.experiment import ExperimentConfig, build_host, run_experiment
from congestsim.graph import dump_graph, load_graph, parse_graph, save_graph, star_graph
from congestsim.patterns import HPattern, RootedPattern, c4_hpattern, path_pattern
from congestsim.oracle import contains_subgraph


def test_run_experiment_rows_and_sorting():
    cfg = ExperimentConfig(
        algo="det-tree",
        pattern=path_pattern(3),
        pattern_name="path:3",
        sizes=(32, 16),
        seeds=(1, 0),
    )
    report = run_experiment(cfg)
    assert len(report.rows) == 4
    csv = report.to_csv()
    lines = csv.splitlines()
    assert lines[0] == "# congestsim-sweep v1"
    assert lines[1] == "algo,pattern,n,seed,decision,rounds,max_edge_bits,bits_ratio"
    # rows are sorted by (algo, pattern, n, seed) regardless of sweep order
    keys = [tuple(l.split(",")[:4]) for l in lines[2:]]
    assert keys == sorted(keys)
    assert all(l.split(",")[4] == "accept" for l in lines[2:])


def test_reports_are_byte_identical():
    cfg = ExperimentConfig(
        algo="detect-c4",
        sizes=(16, 24),
        seeds=(0, 1, 2),
        host="gnm:avg_deg=3",
    )
    assert run_experiment(cfg).to_csv() == run_experiment(cfg).to_csv()


def test_timing_column_is_opt_in():
    cfg = ExperimentConfig(algo="detect-c4", sizes=(8,), seeds=(0,), host="gnm:avg_deg=2")
    assert "wall_ms" not in run_experiment(cfg).to_csv()
    cfg.timing = True
    out = run_experiment(cfg).to_csv()
    assert out.splitlines()[1].endswith(",wall_ms")


def test_validation_failures():
    with pytest.raises(InvalidParams):
        run_experiment(ExperimentConfig(algo="nope"))
    with pytest.raises(InvalidParams):
        run_experiment(ExperimentConfig(algo="det-tree", pattern=None))
    with pytest.raises(InvalidParams):
        run_experiment(ExperimentConfig(algo="test-h", pattern=c4_hpattern(), eps=1.5))
    with pytest.raises(InvalidParams):
        run_experiment(
            ExperimentConfig(algo="det-tree", pattern=path_pattern(2), budget_multiplier=0)
        )


def test_build_host_variants(tmp_path):
    base = ExperimentConfig(algo="detect-c4")
    gnm = build_host(
        ExperimentConfig(algo="detect-c4", host="gnm:avg_deg=3"), n=20, seed=0
    )
    assert gnm.n == 20 and gnm.m == 30
    far = build_host(
        ExperimentConfig(algo="test-h", pattern=c4_hpattern(), eps=0.2, host="far:copies=2"),
        n=99,
        seed=0,
    )
    assert far.n == 8 and far.m == 8
    p = tmp_path / "g.txt"
    save_graph(star_graph(4), p)
    filed = build_host(
        ExperimentConfig(algo="detect-c4", host=f"file:{p}"), n=0, seed=0
    )
    assert filed == star_graph(4)
    with pytest.raises(InvalidParams):
        build_host(ExperimentConfig(algo="detect-c4", host="mesh"), n=8, seed=0)
    assert base.host == "tfree"


def test_fixed_graph_overrides_sizes():
    cfg = ExperimentConfig(algo="detect-c4", graph=star_graph(6), sizes=(16, 32))
    report = run_experiment(cfg)
    assert len(report.rows) == 1
    assert report.rows[0].n == 7


def test_parse_seeds_and_sizes():
    assert parse_seeds("7") == (7,)
    assert parse_seeds("0,3,9") == (0, 3, 9)
    assert parse_seeds("0-4") == (0, 1, 2, 3, 4)
    assert parse_sizes("16,32") == (16, 32)


def test_parse_pattern_arg_builtins():
    assert isinstance(parse_pattern_arg("path:4"), RootedPattern)
    assert parse_pattern_arg("path:4:2").root == 2
    assert parse_pattern_arg("star:3").k == 4
    assert isinstance(parse_pattern_arg("c4"), HPattern)
    assert isinstance(parse_pattern_arg("k4"), HPattern)
    assert parse_pattern_arg("k2k:3").node_count == 5


def _write_graph(tmp_path, g, name="g.txt"):
    p = tmp_path / name
    p.write_text(dump_graph(g))
    return str(p)


def test_cli_detect_tree_and_c4(tmp_path, capsys):
    gpath = _write_graph(tmp_path, star_graph(4))
    assert main(["detect-tree", "--graph", gpath, "--pattern", "star:3"]) == 0
    assert "reject" in capsys.readouterr().out
    assert main(["detect-c4", "--graph", gpath]) == 0
    assert "accept" in capsys.readouterr().out


def test_cli_rand_mode_and_report(tmp_path, capsys):
    gpath = _write_graph(tmp_path, star_graph(3))
    rpath = tmp_path / "runs.csv"
    code = main(
        [
            "detect-tree",
            "--graph",
            gpath,
            "--pattern",
            "path:2",
            "--mode",
            "rand",
            "--trials",
            "3",
            "--format",
            "csv",
            "--report",
            str(rpath),
        ]
    )
    assert code == 0
    body = rpath.read_text()
    assert body.startswith("algo,n,decision,rounds,max_edge_bits\n")
    assert body.count("rand-tree") == 3
    capsys.readouterr()


def test_cli_test_h(tmp_path, capsys):
    gpath = _write_graph(tmp_path, star_graph(5))
    assert main(["test-h", "--graph", gpath, "--pattern", "c4", "--eps", "0.9"]) == 0
    out = capsys.readouterr().out
    assert "accept" in out and "73/73" in out


def test_cli_oracle(tmp_path, capsys):
    gpath = _write_graph(tmp_path, star_graph(4))
    assert main(["oracle", "contains", "--graph", gpath, "--pattern", "star:3"]) == 0
    assert capsys.readouterr().out.strip() == "True"
    assert main(["oracle", "mindel", "--graph", gpath, "--pattern", "c4"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["oracle", "packing", "--graph", gpath, "--pattern", "c4"]) == 0
    assert capsys.readouterr().out.strip() == "0 exact"


def test_cli_gen_graph_round_trip(tmp_path, capsys):
    out = tmp_path / "gen.txt"
    code = main(
        ["gen-graph", "--kind", "gnm", "--n", "12", "--m", "18", "--seed", "5", "--out", str(out)]
    )
    assert code == 0
    g = load_graph(out)
    assert g.n == 12 and g.m == 18
    capsys.readouterr()


def test_cli_gen_planted_contains_pattern(tmp_path, capsys):
    out = tmp_path / "planted.txt"
    code = main(
        [
            "gen-graph", "--kind", "planted", "--n", "10", "--m", "14",
            "--pattern", "path:3", "--seed", "2", "--out", str(out),
        ]
    )
    assert code == 0
    assert contains_subgraph(load_graph(out), parse_pattern_arg("path:3"))
    capsys.readouterr()


def test_cli_bench_writes_versioned_csv(tmp_path, capsys):
    rpath = tmp_path / "sweep.csv"
    code = main(
        [
            "bench", "--algo", "det-tree", "--pattern", "path:3",
            "--sizes", "16,32", "--seeds", "0-1", "--report", str(rpath),
        ]
    )
    assert code == 0
    lines = rpath.read_text().splitlines()
    assert lines[0] == "# congestsim-sweep v1"
    assert len(lines) == 2 + 4
    capsys.readouterr()


def test_cli_usage_errors_exit_1(tmp_path, capsys):
    gpath = _write_graph(tmp_path, star_graph(3))
    # unknown flag
    assert main(["detect-c4", "--graph", gpath, "--nope"]) == 1
    # missing file
    assert main(["detect-c4", "--graph", str(tmp_path / "missing.txt")]) == 1
    # wrong pattern kind for the subcommand
    assert main(["test-h", "--graph", gpath, "--pattern", "path:3", "--eps", "0.5"]) == 1
    capsys.readouterr()


def test_cli_runtime_errors_exit_2(tmp_path, capsys):
    gpath = _write_graph(tmp_path, star_graph(3))
    # eps outside (0,1) is a domain error raised by the tester
    assert main(["test-h", "--graph", gpath, "--pattern", "c4", "--eps", "0"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("1 1\n")  # self-loop
    assert main(["detect-c4", "--graph", str(bad)]) == 2
    capsys.readouterr()


def test_cli_graph_parse_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("a b c\n")
    assert main(["detect-c4", "--graph", str(bad)]) == 2
    capsys.readouterr()


def test_round_trip_through_parse_graph():
    g = star_graph(4)
    assert parse_graph(dump_graph(g)) == g
