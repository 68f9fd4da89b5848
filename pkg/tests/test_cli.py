"""End-to-end tests for the command-line interface.

These drive balcut.cli.main with argv lists and captured output, plus one
real pipe through subprocesses for the stdin path.
"""

import subprocess
import sys

import pytest

from balcut import cli, formats
from balcut.graph import Graph

C6 = "p tw 6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n1 6\n"
K3 = "p tw 3 3\n1 2\n1 3\n2 3\n"
K4 = "p tw 4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n"
P3 = "p tw 3 2\n1 2\n2 3\n"


@pytest.fixture
def c6(tmp_path):
    p = tmp_path / "c6.gr"
    p.write_text(C6)
    return str(p)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --------------------------------------------------------------------------
# solvers
# --------------------------------------------------------------------------


def test_vbisect_finds_the_cycle_separator(c6, capsys):
    code, out, _ = run_cli(capsys, "vbisect", "--graph", c6, "--k", "2", "--c", "2")
    assert code == 0
    assert out.splitlines()[0] == "sep 2"
    sol = formats.parse_solution(out)
    assert sorted(sol.parts.values()).count(2) == 2


def test_vbisect_reports_infeasible(c6, capsys):
    code, out, err = run_cli(capsys, "vbisect", "--graph", c6, "--k", "1", "--c", "2")
    assert code == 1
    assert out == ""
    assert "infeasible" in err


def test_bisect_with_automatic_deletion_set(c6, capsys):
    code, out, _ = run_cli(capsys, "bisect", "--graph", c6)
    assert code == 0
    assert out.splitlines()[0] == "cut 2"


def test_bisect_with_explicit_deletion_and_expression(c6, tmp_path, capsys):
    g = formats.parse_graph(C6)
    expr = cli._forest_expr(g, {1})
    ef = tmp_path / "c6.qe"
    ef.write_text(formats.emit_qexpr(expr) + "\n")
    code, out, _ = run_cli(
        capsys, "bisect", "--graph", c6, "--deletion", "1", "--expr", str(ef)
    )
    assert code == 0
    assert out.splitlines()[0] == "cut 2"


def test_bisect_rejects_mismatched_expression(c6, tmp_path, capsys):
    ef = tmp_path / "bad.qe"
    ef.write_text("join(1,2,union(v(1),v(2)))\n")
    code, _, err = run_cli(capsys, "bisect", "--graph", c6, "--expr", str(ef))
    assert code == 2
    assert err.startswith("error:")


def test_bisect_rejects_weighted_graphs(tmp_path, capsys):
    p = tmp_path / "w.gr"
    p.write_text("p tw 2 1\ne 1 2 2\n")
    code, _, err = run_cli(capsys, "bisect", "--graph", str(p))
    assert code == 2
    assert "unweighted" in err


def test_bpart_solution_verifies(tmp_path, capsys):
    p = tmp_path / "p3.gr"
    p.write_text(P3)
    code, out, _ = run_cli(capsys, "bpart", "--graph", str(p), "--d", "3")
    assert code == 0
    assert out.splitlines()[0] == "cut 2"
    sol = tmp_path / "p3.sol"
    sol.write_text(out)
    code, out2, _ = run_cli(capsys, "verify", "--graph", str(p), "--solution", str(sol))
    assert code == 0
    assert out2.startswith("valid: cut 2")


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------


def test_verify_rejects_wrong_cut_value(tmp_path, capsys):
    g = tmp_path / "p3.gr"
    g.write_text(P3)
    sol = tmp_path / "bad.sol"
    sol.write_text("cut 0\n1 0\n2 0\n3 1\n")
    code, out, _ = run_cli(capsys, "verify", "--graph", str(g), "--solution", str(sol))
    assert code == 1
    assert "partition cuts 1" in out


def test_verify_rejects_oversized_parts(tmp_path, capsys):
    g4 = tmp_path / "p4.gr"
    g4.write_text("p tw 4 3\n1 2\n2 3\n3 4\n")
    sol = tmp_path / "bad.sol"
    sol.write_text("cut 1\n1 0\n2 0\n3 0\n4 1\n")  # part 0 holds 3 > ceil(4/2)
    code, out, _ = run_cli(capsys, "verify", "--graph", str(g4), "--solution", str(sol))
    assert code == 1
    assert "size cap" in out


def test_verify_rejects_incomplete_assignments(tmp_path, capsys):
    g = tmp_path / "p3.gr"
    g.write_text(P3)
    sol = tmp_path / "bad.sol"
    sol.write_text("cut 2\n1 0\n2 1\n")
    code, out, _ = run_cli(capsys, "verify", "--graph", str(g), "--solution", str(sol))
    assert code == 1
    assert "every vertex" in out


def test_verify_accepts_separator_solutions(c6, tmp_path, capsys):
    code, out, _ = run_cli(capsys, "vbisect", "--graph", c6, "--k", "2", "--c", "2")
    sol = tmp_path / "c6.sol"
    sol.write_text(out)
    code, out2, _ = run_cli(capsys, "verify", "--graph", c6, "--solution", str(sol))
    assert code == 0
    assert out2.startswith("valid: sep 2")


def test_verify_catches_crossing_edges_in_separator_files(c6, tmp_path, capsys):
    sol = tmp_path / "c6.sol"
    sol.write_text("sep 2\n1 0\n2 1\n3 0\n4 2\n5 1\n6 2\n")
    code, out, _ = run_cli(capsys, "verify", "--graph", c6, "--solution", str(sol))
    assert code == 1
    assert "between the two sides" in out


# --------------------------------------------------------------------------
# torso tools
# --------------------------------------------------------------------------


def test_trim_writes_graph_and_mapping(c6, tmp_path, capsys):
    out_gr = tmp_path / "trimmed.gr"
    out_map = tmp_path / "trimmed.map"
    code, _, _ = run_cli(
        capsys,
        "trim", "--graph", c6, "--k", "1", "--terminals", "1,4",
        "--out", str(out_gr), "--map", str(out_map),
    )
    assert code == 0
    trimmed = formats.parse_graph(out_gr.read_text())
    assert trimmed.n == 4
    phi_lines = out_map.read_text().splitlines()
    assert len(phi_lines) == 6  # one per original vertex
    assert all(line.startswith("phi ") for line in phi_lines)


def test_atorso_writes_graph_and_mapping(c6, capsys):
    code, out, _ = run_cli(capsys, "atorso", "--graph", c6, "--w", "1,2,3")
    assert code == 0
    assert "c augmented torso: n=6 m=6 w=1,2,3" in out
    assert out.count("phi ") == 6


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------


def test_gen_clique_emits_provenance_and_params(tmp_path, capsys):
    g = tmp_path / "k3.gr"
    g.write_text(K3)
    code, out, _ = run_cli(capsys, "gen", "clique", "--graph", str(g), "--k", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("c provenance: clique-to-vertex-bisection")
    assert "c param c=3" in lines and "c param k=2" in lines
    produced = formats.parse_graph(out)
    assert produced.n == 8


def test_gen_output_parses_back(tmp_path, capsys):
    g = tmp_path / "k2.gr"
    g.write_text("p tw 2 1\n1 2\n")
    code, out, _ = run_cli(
        capsys, "gen", "maxcut", "--graphs", str(g), str(g), str(g), "--k", "1"
    )
    assert code == 0
    produced = formats.parse_graph(out)
    assert produced.n == 12 and produced.m == 18
    assert not produced.is_unit_edge_weighted()
    assert "c param k=15" in out


def test_gen_unweight_reads_weighted_input(tmp_path, capsys):
    g = tmp_path / "w.gr"
    g.write_text("p tw 2 1\ne 1 2 2\n")
    code, out, _ = run_cli(capsys, "gen", "unweight", "--graph", str(g), "--k", "1", "--w", "4")
    assert code == 0
    assert formats.parse_graph(out).n == 14


def test_gen_binpack_trivial_no(capsys):
    code, out, _ = run_cli(capsys, "gen", "binpack", "--weights", "3,3", "--bins", "2", "--cap", "2")
    assert code == 0
    assert "c param trivial=no" in out
    assert formats.parse_graph(out).n == 2


def test_gen_mcclique_checks_color_count(tmp_path, capsys):
    g = tmp_path / "k2.gr"
    g.write_text("p tw 2 1\n1 2\n")
    code, _, err = run_cli(capsys, "gen", "mcclique", "--graph", str(g), "--colors", "1")
    assert code == 2
    assert "lists 1 values for 2 vertices" in err
    code, out, _ = run_cli(capsys, "gen", "mcclique", "--graph", str(g), "--colors", "1,2")
    assert code == 0
    assert "p tw 3368 " in out


def test_gen_random_is_deterministic(capsys):
    code, out1, _ = run_cli(capsys, "gen", "random", "--n", "8", "--p", "0.4", "--seed", "9")
    code2, out2, _ = run_cli(capsys, "gen", "random", "--n", "8", "--p", "0.4", "--seed", "9")
    assert code == code2 == 0
    assert out1 == out2
    _, out3, _ = run_cli(capsys, "gen", "random", "--n", "8", "--p", "0.4", "--seed", "10")
    assert out3 != out1


def test_dot_export(tmp_path, capsys):
    dot = tmp_path / "g.dot"
    code, _, _ = run_cli(
        capsys, "gen", "random", "--n", "3", "--p", "1", "--seed", "0", "--dot", str(dot)
    )
    assert code == 0
    text = dot.read_text()
    assert text.startswith("graph G {")
    assert "1 -- 2;" in text


def test_dot_export_refuses_large_graphs(tmp_path, capsys):
    dot = tmp_path / "g.dot"
    code, _, err = run_cli(
        capsys, "gen", "random", "--n", "65", "--p", "0", "--seed", "0", "--dot", str(dot)
    )
    assert code == 2
    assert "at most 64" in err


# --------------------------------------------------------------------------
# oracle subcommand
# --------------------------------------------------------------------------


def test_oracle_maxcut(tmp_path, capsys):
    g = tmp_path / "k3.gr"
    g.write_text(K3)
    code, out, _ = run_cli(capsys, "oracle", "maxcut", "--graph", str(g))
    assert code == 0
    assert out.splitlines()[0] == "cut 2"


def test_oracle_vbisect_infeasible_on_k4(tmp_path, capsys):
    g = tmp_path / "k4.gr"
    g.write_text(K4)
    code, _, err = run_cli(capsys, "oracle", "vbisect", "--graph", str(g), "--k", "1")
    assert code == 1
    assert "infeasible" in err


def test_oracle_size_guard_maps_to_input_error(capsys, tmp_path):
    g = tmp_path / "big.gr"
    g.write_text("p tw 30 0\n")
    code, _, err = run_cli(capsys, "oracle", "bisect", "--graph", str(g))
    assert code == 2
    assert "n <= 24" in err


def test_oracle_missing_flag(tmp_path, capsys):
    g = tmp_path / "k3.gr"
    g.write_text(K3)
    code, _, err = run_cli(capsys, "oracle", "bpart", "--graph", str(g))
    assert code == 2
    assert "--d" in err


# --------------------------------------------------------------------------
# plumbing
# --------------------------------------------------------------------------


def test_missing_file_is_an_input_error(capsys):
    code, _, err = run_cli(capsys, "vbisect", "--graph", "/nonexistent.gr", "--k", "1")
    assert code == 2
    assert "cannot read" in err


def test_malformed_graph_reports_position(tmp_path, capsys):
    g = tmp_path / "bad.gr"
    g.write_text("p tw 2 1\n1 9\n")
    code, _, err = run_cli(capsys, "bisect", "--graph", str(g))
    assert code == 2
    assert "line 2" in err


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


def test_bk_threads_validation(monkeypatch, tmp_path, capsys):
    g = tmp_path / "k3.gr"
    g.write_text(K3)
    monkeypatch.setenv("BK_THREADS", "zebra")
    code, _, err = run_cli(capsys, "oracle", "maxcut", "--graph", str(g))
    assert code == 0
    assert "ignoring BK_THREADS" in err
    monkeypatch.setenv("BK_THREADS", "4")
    code, _, err = run_cli(capsys, "oracle", "maxcut", "--graph", str(g))
    assert code == 0
    assert err == ""
    assert cli.worker_cap == 4


def test_stdin_pipe_between_subcommands():
    gen = subprocess.run(
        [sys.executable, "-m", "balcut.cli", "gen", "binpack",
         "--weights", "2,2,2", "--bins", "3", "--cap", "2"],
        capture_output=True, text=True, check=True,
    )
    solve = subprocess.run(
        [sys.executable, "-m", "balcut.cli", "bpart", "--d", "3"],
        input=gen.stdout, capture_output=True, text=True,
    )
    assert solve.returncode == 0
    assert solve.stdout.splitlines()[0] == "cut 0"
