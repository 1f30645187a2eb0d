import json

from knitweave.cli import cli_main
from knitweave.formats import write_edge_list, write_graph6
from knitweave.graphs import Graph


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io, sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli_main(argv)
    out = capsys.readouterr().out
    return code, out


def graph_file(tmp_path, g, name="g.g6"):
    path = tmp_path / name
    path.write_text(write_graph6(g) + "\n")
    return str(path)


def test_knit_k9(capsys, tmp_path):
    path = graph_file(tmp_path, Graph.complete(9))
    code, out = run(
        capsys,
        ["--input", path, "knit", "--terminals", "0,1,2,3,4,5,6,7,8", "--profile", "2,2,2,2,1"],
    )
    assert code == 0
    data = json.loads(out)
    assert data["exists"] is True
    assert len(data["subgraphs"]) == 5


def test_critical_c5(capsys, tmp_path):
    path = graph_file(tmp_path, Graph.cycle(5))
    code, out = run(capsys, ["--input", path, "critical", "--k", "3"])
    assert code == 0
    data = json.loads(out)
    assert data["contraction_critical"] is False
    assert len(data["witness_minor"]["branch_sets"]) == 3


def test_convert_identity(capsys, tmp_path, monkeypatch):
    g = Graph.from_edges(5, [(0, 1), (2, 3)])
    text = write_edge_list(g)
    code, g6 = run(capsys, ["convert", "--to", "graph6"], stdin=text, monkeypatch=monkeypatch)
    assert code == 0
    code, back = run(capsys, ["convert", "--to", "edges"], stdin=g6, monkeypatch=monkeypatch)
    assert code == 0
    assert back == text


def test_linkage_and_exit_codes(capsys, tmp_path):
    path = graph_file(tmp_path, Graph.cycle(6))
    code, out = run(capsys, ["--input", path, "linkage", "--pairs", "0-3,1-4"])
    assert code == 0
    assert json.loads(out)["exists"] is False
    code, _ = run(capsys, ["--input", path, "linkage", "--pairs", "0-0"])
    assert code == 2  # malformed pair: input error


def test_usage_error_exit_2(capsys):
    assert cli_main(["frobnicate"]) == 2
    capsys.readouterr()


def test_chromatic_one_based_palette(capsys, tmp_path):
    path = graph_file(tmp_path, Graph.cycle(5))
    code, out = run(capsys, ["--input", path, "chromatic"])
    data = json.loads(out)
    assert code == 0 and data["chromatic_number"] == 3
    assert min(data["coloring"]) >= 1  # display colors are one-based


def test_separations_cli(capsys, tmp_path):
    path = graph_file(tmp_path, Graph.path(5))
    code, out = run(capsys, ["--input", path, "separations", "--set", "0", "--max-order", "1"])
    data = json.loads(out)
    assert code == 0 and data["count"] == 3
    assert {"a": [0, 1], "b": [1, 2, 3, 4], "order": 1} in data["separations"]
    path = graph_file(tmp_path, Graph.complete(6))
    code, out = run(capsys, ["--input", path, "separations", "--set", "0,1,2", "--max-order", "4"])
    assert json.loads(out)["count"] == 0


def test_massed_cli(capsys, tmp_path):
    path = graph_file(tmp_path, Graph.complete(6))
    code, out = run(capsys, ["--input", path, "massed", "--set", "0,1,2", "--p", "4"])
    data = json.loads(out)
    assert code == 0 and data["massed"] is True and data["rho"] == 12


def test_gen_deterministic(capsys):
    code, out1 = run(capsys, ["--seed", "5", "gen", "--n", "12", "--delta", "6"])
    code2, out2 = run(capsys, ["--seed", "5", "gen", "--n", "12", "--delta", "6"])
    assert code == code2 == 0
    assert out1 == out2


def test_campaign_cli_deterministic(capsys):
    argv = ["--samples", "8", "--seed", "3", "--no-timestamps", "campaign-si"]
    code1, out1 = run(capsys, argv)
    code2, out2 = run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_thresholds_cli(capsys):
    code, out = run(capsys, ["thresholds", "--t", "8", "--k", "41"])
    data = json.loads(out)
    assert code == 0
    assert data["easy_connectivity"] == 18 and data["connectivity"] == 10


def test_profile_knitted_cli(capsys, tmp_path):
    path = graph_file(tmp_path, Graph.cycle(6))
    code, out = run(
        capsys,
        ["--input", path, "profile-knitted", "--terminals", "0,1,2,3,4,5", "--profile", "2,2,2"],
    )
    data = json.loads(out)
    assert code == 0 and data["knitted"] is False
    assert data["violating_partition"] == [[0, 1], [2, 4], [3, 5]]


def test_dense_cli(capsys, tmp_path):
    path = graph_file(tmp_path, Graph.complete(18))
    code, out = run(capsys, ["--input", path, "dense", "--p", "18"])
    data = json.loads(out)
    assert code == 0 and data["found"] and data["case"] == "i"


def test_certify_greedy_cli(capsys, tmp_path):
    from knitweave.generators import complete_minus_matching

    path = graph_file(tmp_path, complete_minus_matching(11, 5))
    code, out = run(capsys, ["--input", path, "certify-greedy", "--pairs", "0-1,2-3,4-5"])
    data = json.loads(out)
    assert code == 0 and data["linked"] is True
