import csv
import io
import json

import pytest
from click.testing import CliRunner

from starforest.cli import ROW_FIELDS, agreement, cli, parse_grid, parse_range
from starforest.hypercore import is_linear, parse_hypergraph


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args, input=None):
        return runner.invoke(cli, list(args), input=input, standalone_mode=False)

    return go


def code(result):
    assert result.exception is None, result.exception
    return result.return_value


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_helpers():
    assert parse_range("7") == [7]
    assert parse_range("3..6") == [3, 4, 5, 6]
    assert parse_range("2,4, 8") == [2, 4, 8]
    assert parse_grid("n=7..9 k=2") == {"n": [7, 8, 9], "k": [2]}


def test_formula_text_and_json(run):
    res = run("formula", "--name", "matching", "--n", "6", "--k", "2", "--r", "3", "--format", "text")
    assert code(res) == 0 and res.output == "10\n"
    res = run("formula", "--name", "berge_forest_small_r", "--n", "10", "--k", "2", "--l", "3", "--r", "3")
    body = json.loads(res.output)
    assert (body["value"], body["kind"]) == ("12", "exact")
    assert body["params"] == {"n": 10, "k": 2, "l": 3, "r": 3}


def test_formula_regime_error_is_usage(run):
    res = run("formula", "--name", "berge_forest_large_r", "--n", "9", "--k", "2", "--l", "3", "--r", "3")
    assert code(res) == 64


def test_unknown_command_is_usage(run):
    assert code(run("frobnicate")) == 64
    assert code(run("formula", "--name", "nope")) == 64


def test_construct_then_check_lattice(run, tmp_path):
    out = tmp_path / "lat.txt"
    assert code(run("construct", "--name", "lattice", "--r", "4", "--d", "3", "--out", str(out))) == 0
    h = parse_hypergraph(out.read_text())
    assert (h.n, len(h.edges)) == (64, 48) and is_linear(h)
    res = run("check", "--pattern", "expansion-star", "--l", "4", "--in", str(out))
    assert code(res) == 0 and res.output == "none exhaustive\n"


def test_check_reads_stdin_and_reports_witness(run):
    res = run("construct", "--name", "complete", "--m", "5", "--r", "3")
    hit = run("check", "--pattern", "berge-star", "--l", "3", input=res.output)
    assert code(hit) == 1
    body = json.loads(hit.output)
    assert body["pattern"] == "berge-star" and len(body["stars"]) == 1


def test_check_inconclusive(run):
    fano = "7 3\n0 1 2\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n"
    res = run("check", "--pattern", "matching", "--k", "2", "--node-cap", "2", input=fano)
    assert code(res) == 2


def test_check_rejects_bad_input(run):
    assert code(run("check", "--pattern", "matching", "--k", "2", input="4 3\n0 1\n")) == 64


def test_construct_writes_labels(run, tmp_path):
    out = tmp_path / "h.txt"
    args = ("construct", "--name", "berge_forest_small_r", "--n", "10", "--k", "2", "--l", "3", "--r", "3")
    assert code(run(*args, "--out", str(out))) == 0
    labels = (tmp_path / "h.txt.labels").read_text()
    assert labels.splitlines()[0] == "A=0"
    assert len(parse_hypergraph(out.read_text()).edges) == 12
    assert code(run("construct", "--name", "berge_star", "--n", "8")) == 64


def test_table_csv(run):
    res = run("table", "--name", "berge_forest_large_r", "--n", "7..9", "--k", "2", "--l", "2", "--r", "2,3")
    assert code(res) == 0
    assert "\r" not in res.output
    rows = rows_of(res.output)
    assert len(rows) == 6
    bad = [row for row in rows if row["r"] == "2"]
    assert all(row["status"] == "regime-violation" for row in bad)
    assert [row["value"] for row in rows if row["r"] == "3"] == ["3", "7/2", "4"]


def test_search_report(run, tmp_path):
    out = tmp_path / "rep.json"
    args = ("search", "--n", "6", "--r", "3", "--pattern", "berge-star", "--l", "2", "--out", str(out))
    assert code(run(*args)) == 0
    rep = json.loads(out.read_text())
    assert rep["optimum"] == 2 and rep["status"] == "exact"
    assert set(rep) >= {"n", "r", "family", "optimum", "extremal", "nodes", "status"}
    first = out.read_text()
    assert code(run(*args)) == 0 and out.read_text() == first


def test_search_node_cap_is_inconclusive(run):
    res = run("search", "--n", "7", "--r", "2", "--pattern", "graph-star-forest", "--k", "2", "--l", "2",
              "--node-cap", "10")
    assert code(res) == 2


def test_verify_small_r_row(run):
    res = run("verify-theorem", "--id", "small_r", "--n", "10", "--k", "2", "--l", "3", "--r", "3",
              "--with-oracle=false")
    assert code(res) == 0
    assert res.output.splitlines() == [",".join(ROW_FIELDS), "small_r,10,2,3,3,12,12,exact,-,yes,ok"]


def test_verify_grid_keeps_invalid_points(run):
    res = run("verify-theorem", "--id", "large_r", "--grid", "n=7..9 k=2 l=2 r=2..3")
    assert code(res) == 0
    rows = rows_of(res.output)
    assert len(rows) == 6
    assert sum(row["status"].startswith("regime-violation") for row in rows) == 4
    keys = [(int(row["n"]), int(row["r"])) for row in rows]
    assert keys == sorted(keys)


def test_verify_reports_small_n_disagreement(run):
    res = run("verify-theorem", "--id", "matching", "--n", "7", "--k", "2", "--r", "3", "--with-oracle=true")
    assert code(res) == 1
    (row,) = rows_of(res.output)
    assert (row["oracle"], row["agree"]) == ("7", "no") and "disagreement" in row["status"]


def test_agreement_flags_recompute_from_cells(run):
    res = run("verify-theorem", "--id", "gmp", "--grid", "n=6..12 l=2..5 r=3", "--with-oracle=false")
    for row in rows_of(res.output):
        if row["status"].startswith("regime"):
            continue
        flag = agreement(row["kind"], row["construction"], row["formula"], row["oracle"])
        assert row["agree"] == ("yes" if flag else "no")


def test_verify_is_deterministic(run):
    args = ("verify-theorem", "--id", "thm1", "--grid", "n=6..9 k=1..2 l=1..3", "--with-oracle=true")
    assert run(*args).output == run(*args).output
    one = run(*args, "--workers", "1").output
    four = run(*args, "--workers", "4").output
    assert one == four


def test_verify_needs_points(run):
    assert code(run("verify-theorem", "--id", "thm1")) == 64


def test_console_exit_codes():
    import subprocess
    import sys

    def status(*args):
        return subprocess.run([sys.executable, "-m", "starforest.cli", *args], capture_output=True).returncode

    assert status("formula", "--name", "matching", "--n", "6", "--k", "2", "--r", "3") == 0
    assert status("bogus") == 64
