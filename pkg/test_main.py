"""
Tests for the command-line front end.
"""

import json

import pytest

from exceptions import InputError, WalkOverflowError
from hypergraph import UniformHypergraph, fano_plane, loose_star
from hypergraph_io import read_hypergraph, write_hypergraph
from main import COMMANDS, dispatch, main, parse_params
from reports import validate_report


@pytest.fixture
def fano_file(tmp_path):
    path = tmp_path / "fano.hg"
    write_hypergraph(fano_plane(), str(path))
    return str(path)


@pytest.fixture
def star_file(tmp_path):
    path = tmp_path / "star.json"
    write_hypergraph(loose_star(3, 3), str(path))
    return str(path)


def test_parse_params():
    assert parse_params("n=7,r=3,s=2,t=2") == {"n": 7, "r": 3, "s": 2, "t": 2}
    assert parse_params("p=2.5, q=1e3") == {"p": 2.5, "q": 1000.0}
    assert parse_params("xs=3:3:3,x0=3") == {"xs": [3, 3, 3], "x0": 3}
    assert parse_params("") == {}
    with pytest.raises(InputError):
        parse_params("n7")
    with pytest.raises(InputError):
        parse_params("n=seven")


def test_spectral(fano_file, capsys):
    assert main(["spectral", fano_file]) == 0
    out = capsys.readouterr().out
    rho_line = next(line for line in out.splitlines() if line.strip().startswith("rho ="))
    assert float(rho_line.split("=")[1]) == pytest.approx(3.0, abs=1e-8)


def test_spectral_non_convergence(star_file, capsys):
    assert main(["spectral", star_file, "--max-iter", "2"]) == 1


def test_spectral_json_report(fano_file, capsys):
    status, _ = dispatch(["spectral", fano_file, "--json", "--vector"])
    assert status == 0
    document = json.loads(capsys.readouterr().out)
    validate_report(document)
    assert document["exit_status"] == 0
    assert document["input_digests"][fano_file].startswith("sha256:")
    item = document["items"][0]
    assert item["kind"] == "spectral" and item["rho"] == pytest.approx(3.0, abs=1e-8)
    assert len(item["eigenvector"]) == 7


def test_shadow(fano_file, capsys):
    assert main(["shadow", fano_file]) == 0
    assert "2-SHADOW" in capsys.readouterr().out


def test_berge_check(star_file, fano_file, capsys):
    assert main(["berge-check", "--pattern", "c3", star_file]) == 0
    assert "not found" in capsys.readouterr().out
    assert main(["berge-check", "--pattern", "c3", fano_file]) == 1
    assert main(["berge-check", "--pattern", "c3", "--naive", fano_file]) == 1


@pytest.fixture
def head_file(tmp_path):
    path = tmp_path / "hm.hg"
    edges = ((0, 2, 3), (0, 4, 5), (1, 2, 4), (1, 3, 5))
    write_hypergraph(UniformHypergraph(r=3, n=6, edges=edges), str(path))
    return str(path)


def test_berge_check_exact_head(head_file, capsys):
    assert main(["berge-check", "--pattern", "kst:2,2", "--exact-head", "0,1", head_file]) == 1
    assert main(["berge-check", "--pattern", "k2:2", "--exact-head", "0,1", "--no-fast-paths", head_file]) == 1
    assert main(["berge-check", "--pattern", "kst:2,3", "--exact-head", "0,1", head_file]) == 0
    capsys.readouterr()

    status, _ = dispatch(["berge-check", "--pattern", "kst:2,2", "--exact-head", "0,1", "--json", "--witness", head_file])
    assert status == 1
    document = json.loads(capsys.readouterr().out)
    validate_report(document)
    item = document["items"][0]
    assert item["exact_head"] == [0, 1] and item["found"]
    assert set(item["witness"]["vertex_map"][:2]) == {0, 1}
    assert set(item["witness"]["vertex_map"][2:]) <= {2, 3, 4, 5}


def test_berge_check_exact_head_rejects(head_file, capsys):
    assert main(["berge-check", "--pattern", "c3", "--exact-head", "0,1", head_file]) == 2
    assert "K_(s,t)" in capsys.readouterr().err
    # (0, 4, 5) misses the head {2, 3}
    assert main(["berge-check", "--pattern", "kst:2,2", "--exact-head", "2,3", head_file]) == 2
    assert main(["berge-check", "--pattern", "kst:2,2", "--exact-head", "0,9", head_file]) == 2
    assert main(["berge-check", "--pattern", "kst:2,2", "--exact-head", "0,1", "--naive", head_file]) == 2


def test_berge_check_witness_only_on_request(fano_file, capsys):
    assert main(["berge-check", "--pattern", "c3", fano_file]) == 1
    out = capsys.readouterr().out
    assert "Witness edges" not in out and "(0, 1, 2)" not in out
    status, _ = dispatch(["berge-check", "--pattern", "c3", "--json", fano_file])
    assert status == 1
    assert "witness" not in json.loads(capsys.readouterr().out)["items"][0]

    assert main(["berge-check", "--pattern", "c3", "--witness", fano_file]) == 1
    out = capsys.readouterr().out
    assert "Vertex map" in out and "Witness edges" in out
    status, _ = dispatch(["berge-check", "--pattern", "c3", "--json", "--witness", fano_file])
    item = json.loads(capsys.readouterr().out)["items"][0]
    assert len(item["witness"]["vertex_map"]) == 3 and len(item["witness"]["edge_map"]) == 3


def test_bound_eval(capsys):
    assert main(["bound", "eval", "--name", "spex_kst_c3", "--params", "n=7,r=3,s=2,t=2"]) == 0
    assert capsys.readouterr().out.strip() == "1.5"
    assert main(["bound", "eval", "--name", "comb_ineq", "--params", "xs=3:3:3,x0=3,c=3,k=2"]) == 0
    assert capsys.readouterr().out.strip() == "12"
    assert main(["bound", "eval", "--name", "spex_kst_c3", "--params", "n=7,r=3"]) == 2


def test_bound_verify(star_file, fano_file, capsys):
    assert main(["bound", "verify", "--name", "spex_kst_c3", "--input", star_file, "--strict"]) == 0
    assert main(["bound", "verify", "--name", "degree_quadratic", "--input", fano_file, "--P", "6", "--Q", "0"]) == 0
    status, _ = dispatch(["bound", "verify", "--name", "hm_edge", "--input", star_file, "--head", "0", "--json"])
    assert status == 0
    item = json.loads(capsys.readouterr().out)["items"][0]
    assert item["name"] == "hm_edge" and item["satisfied"]
    assert main(["bound", "verify", "--name", "hm_edge", "--input", star_file]) == 2


def test_bad_input_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.hg"
    bad.write_text("3 4 1\n0 1 x\n")
    assert main(["spectral", str(bad)]) == 2
    assert "bad.hg:2:" in capsys.readouterr().err
    assert main(["spectral", str(tmp_path / "missing.hg")]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["spectral", str(bad), "--threads", "0"]) == 2


def test_gen(tmp_path, capsys):
    output = tmp_path / "random.json"
    assert main(["gen", "--n", "9", "--r", "3", "--seed", "4", "--output", str(output)]) == 0
    first = read_hypergraph(str(output))
    assert main(["gen", "--n", "9", "--r", "3", "--seed", "4", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["edges"] == [list(e) for e in first.edges]
    assert main(["gen", "--n", "6", "--r", "3", "--seed", "1", "--uniform", "--edges", "25"]) == 2


def test_extremal(capsys):
    status, _ = dispatch(["extremal", "--n", "5", "--r", "2", "--forbid", "c3", "--json"])
    assert status == 0
    item = json.loads(capsys.readouterr().out)["items"][0]
    assert item["kind"] == "search" and item["value"] == 6 and item["exhaustive"]
    assert main(["extremal", "--n", "13", "--r", "3"]) == 2


def test_verify(capsys):
    argv = ["verify", "--corpus", "exhaustive", "--n", "6", "--r", "3", "--forbid", "c3,k2:2"]
    assert main(argv + ["--checks", "spex_kst_c3,ex_kst_c3,shadow", "--strict"]) == 0
    assert "hypergraphs checked" in capsys.readouterr().out
    assert main(argv + ["--checks", "nonsense"]) == 2


def test_library_errors_exit_2(fano_file, monkeypatch, capsys):
    def overflow(args, report):
        raise WalkOverflowError("walk count from 0 exceeds 64 bits at length 40")

    monkeypatch.setitem(COMMANDS, "spectral", overflow)
    status, report = dispatch(["spectral", fano_file])
    assert status == 2 and report.exit_status == 2
    assert "exceeds 64 bits" in capsys.readouterr().err
