import json
import subprocess
import sys

import numpy as np
import pytest

from dtntree import dtn_matrix, equal_up_to_degree_two
from dtntree.cli import main
from dtntree.fixtures import double_star, path, single_edge, star
from dtntree.formats import format_graph, format_matrix, parse_graph, parse_matrix


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_forward(capsys, files):
    code, out, _ = run(capsys, "forward", files("g.txt", format_graph(double_star())))
    assert code == 0
    M = parse_matrix(out)
    np.testing.assert_allclose(M.entries, dtn_matrix(double_star()).entries, rtol=0, atol=0)
    code, out, _ = run(capsys, "forward", files("g.txt", format_graph(star(3))), "--format", "json")
    assert json.loads(out)["labels"] == ["x1", "x2", "x3"]


def test_forward_order_and_partial(capsys, files):
    path = files("g.txt", format_graph(star(3)))
    code, out, _ = run(capsys, "forward", path, "--order", "x3,x1,x2")
    assert parse_matrix(out).labels == ("x3", "x1", "x2")
    code, out, _ = run(capsys, "partial-forward", path, "--keep", "x1,x2")
    assert code == 0
    np.testing.assert_allclose(parse_matrix(out).entries, [[0.5, -0.5], [-0.5, 0.5]], atol=1e-15)


def test_invert_quarter_matrix(capsys, files):
    path = files("m.txt", "labels: x y z\n0.5 -0.25 -0.25\n-0.25 0.5 -0.25\n-0.25 -0.25 0.5\n")
    code, out, _ = run(capsys, "invert", path)
    assert code == 0
    g = parse_graph(out)
    expected = star(3, 4 / 3)
    assert equal_up_to_degree_two(g, expected)
    assert sorted(g.boundary) == ["x", "y", "z"]


def test_distances(capsys, files):
    path = files("m.txt", format_matrix(dtn_matrix(star(4))))
    code, out, _ = run(capsys, "distances", path)
    assert code == 0
    np.testing.assert_allclose(parse_matrix(out, "distance").entries, 2 * (1 - np.eye(4)), rtol=1e-13)


def test_canonicalize(capsys, files):
    path = files("g.txt", "edge a m 1\nedge m b 2\n")
    code, out, _ = run(capsys, "canonicalize", path)
    assert code == 0
    assert out == "vertex a\nvertex b\nedge a b 3\n"


def test_compare(capsys, files):
    a = files("a.txt", format_graph(star(4)))
    b = files("b.txt", format_graph(double_star()))
    code, out, _ = run(capsys, "compare", a, a)
    assert code == 0 and out.startswith("equal")
    code, out, _ = run(capsys, "compare", a, b)
    assert code == 1
    assert out.startswith("different")
    assert "vertices after suppression: 5 vs 6" in out


def test_compare_respect_labels(capsys, files):
    a = files("a.txt", "edge p c 1\nedge q c 2\nedge r c 3\n")
    b = files("b.txt", "edge p c 2\nedge q c 1\nedge r c 3\n")
    assert run(capsys, "compare", a, b)[0] == 0
    code, out, _ = run(capsys, "compare", a, b, "--respect-labels")
    assert code == 1
    assert "largest boundary distance gap" in out


def test_roundtrip(capsys, files):
    code, out, _ = run(capsys, "roundtrip", files("g.txt", format_graph(star(4))))
    assert code == 0
    assert out.startswith("roundtrip ok")


def test_examples(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert all(line.startswith("PASS ") for line in lines)


def test_errors(capsys, files):
    code, _, err = run(capsys, "forward", files("bad.txt", "edge a b -1\n"))
    assert code == 1
    assert "line 1" in err
    code, _, err = run(capsys, "forward", "/nonexistent/graph.txt")
    assert code == 1
    # two disconnected edges: pinning one boundary vertex leaves a singular matrix
    split = "1 -1 0 0\n-1 1 0 0\n0 0 1 -1\n0 0 -1 1\n"
    code, _, err = run(capsys, "invert", files("m.txt", split))
    assert code == 1
    assert "singular" in err
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "forward", "x", "--tol", "abc")[0] == 2


def test_output_is_deterministic(capsys, files):
    path = files("m.txt", format_matrix(dtn_matrix(double_star())))
    first = run(capsys, "invert", path)[1]
    assert run(capsys, "invert", path)[1] == first


def test_entry_point_reads_stdin():
    text = format_graph(star(3, 4 / 3))
    proc = subprocess.run(
        [sys.executable, "-m", "dtntree.cli", "forward", "-", "--precision", "6"],
        input=text, capture_output=True, text=True, check=True,
    )
    assert proc.stdout.splitlines()[1] == "0.5 -0.25 -0.25"


FIXTURE_TREES = {
    "edge": single_edge(2.0),
    "path": path(1.0, 0.5, 2.0),
    "star3": star(3, 4 / 3),
    "star4": star(4, 1.0),
    "double_star": double_star(),
    "uneven_double_star": double_star(0.3, 7.0),
}


@pytest.mark.parametrize("name", sorted(FIXTURE_TREES))
def test_forward_invert_compare_chain(capsys, files, name):
    g = FIXTURE_TREES[name]
    graph_path = files("g.txt", format_graph(g))
    code, matrix_text, _ = run(capsys, "forward", graph_path)
    assert code == 0
    code, tree_text, _ = run(capsys, "invert", files("m.txt", matrix_text))
    assert code == 0
    code, canonical, _ = run(capsys, "canonicalize", graph_path)
    assert code == 0
    code, out, _ = run(capsys, "compare", files("t.txt", tree_text), files("c.txt", canonical), "--respect-labels")
    assert code == 0, out
