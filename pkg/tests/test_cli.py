import csv
import io
import json

import pytest

from srsets.cli import BENCH_HEADER, main
from srsets.graphio import parse_graph


@pytest.fixture
def graphs(tmp_path):
    files = {
        "k2": "p tw 2 1\n1 2\n",
        "k3": "p tw 3 3\n1 2\n2 3\n1 3\n",
        "p3": "p tw 3 2\n1 2\n2 3\n",
        "bad": "p tw 2 1\n1 5\n",
    }
    out = {}
    for name, text in files.items():
        path = tmp_path / f"{name}.gr"
        path.write_text(text)
        out[name] = str(path)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_count_perfect_codes_of_edge(graphs, capsys):
    assert run(capsys, "solve", "-g", graphs["k2"], "--sigma", "{0}", "--rho", "{1}", "--mode", "count") == (0, "2\n")


def test_min_dominating_set_of_triangle(graphs, capsys):
    assert run(capsys, "solve", "-g", graphs["k3"], "--sigma", "all", "--rho", ">=1", "--mode", "min") == (0, "1\n")


def test_count_of_given_size(graphs, capsys):
    code, out = run(capsys, "solve", "-g", graphs["p3"], "--sigma", "{0}", "--rho", "all",
                    "--mode", "count", "--size", "2")
    assert (code, out) == (0, "1\n")


@pytest.mark.parametrize("algo", ["naive", "structured", "brute", "auto"])
def test_algorithms_agree(graphs, capsys, algo):
    code, out = run(capsys, "solve", "-g", graphs["p3"], "--sigma", "{0}", "--rho", "{1}",
                    "--mode", "count", "--algo", algo)
    assert (code, out) == (0, "1\n")


def test_json_output(graphs, capsys):
    code, out = run(capsys, "solve", "-g", graphs["k3"], "--sigma", "all", "--rho", ">=1",
                    "--mode", "decide", "--output", "json")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"schemaVersion", "answer", "algorithm", "width", "nodeCount", "elapsedMs"}
    assert doc["answer"] is True and doc["width"] == 2


def test_decomposition_file(graphs, capsys, tmp_path):
    td = tmp_path / "p3.td"
    td.write_text("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n")
    code, out = run(capsys, "solve", "-g", graphs["p3"], "-t", str(td), "--sigma", "{0}", "--rho", "all",
                    "--mode", "max")
    assert (code, out) == (0, "2\n")


def test_bad_graph_exits_with_two(graphs, capsys):
    assert main(["solve", "-g", graphs["bad"], "--sigma", "{0}", "--rho", "{1}"]) == 2


def test_bad_degree_set_exits_with_two(graphs, capsys):
    code, out = run(capsys, "solve", "-g", graphs["k2"], "--sigma", "{0", "--rho", "{1}", "--output", "json")
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "parse"


def test_unsupported_algorithm_exits_with_two(graphs):
    assert main(["solve", "-g", graphs["k2"], "--sigma", ">=1", "--rho", "{1}", "--algo", "structured"]) == 2
    assert main(["solve", "-g", graphs["k2"], "--sigma", ">=1", "--rho", "{1}", "--mode", "count",
                 "--algo", "repset"]) == 2


def test_gen_is_reproducible(capsys):
    _, first = run(capsys, "gen", "8", "gnp", "7")
    _, second = run(capsys, "gen", "8", "gnp", "7")
    assert first == second
    assert parse_graph(first).n == 8


def test_gen_grid(capsys):
    _, out = run(capsys, "gen", "3", "grid")
    g = parse_graph(out)
    assert (g.n, g.m) == (9, 12)


def test_gen_writes_files(tmp_path, capsys):
    prefix = str(tmp_path / "c5")
    assert main(["gen", "5", "cycle", "-o", prefix]) == 0
    assert parse_graph(open(prefix + ".gr").read()).m == 5


def test_bench_header(capsys):
    code, out = run(capsys, "bench", "--rows", "2", "--min-len", "2", "--max-len", "3")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == BENCH_HEADER
    assert len(rows) == 1 + 2 * 2
    assert rows[1][5] == rows[2][5]


def test_verify_passes(capsys):
    code, out = run(capsys, "verify", "--trials", "4", "--max-n", "7")
    assert code == 0 and out.startswith("ok:")
    assert main(["verify", "--family", "cofinite", "--trials", "3", "--max-n", "7"]) == 0
