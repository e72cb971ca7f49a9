import json

import pytest

import rigidlab.verify as verify
from rigidlab.cli import main
from rigidlab.rigidity import Graph, double_banana

STANDARD_POINTS = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]]


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def _graph_file(tmp_path, name, g: Graph):
    return _write(tmp_path, name, {
        "vertices": g.vertex_count,
        "edges": [list(e) for e in g.sorted_edges()],
    })


def _config_file(tmp_path, name, points):
    return _write(tmp_path, name, {"dim": 3, "points": points})


def test_analyze_rigid_graph(tmp_path, capsys):
    graph = _graph_file(tmp_path, "k4.json", Graph.complete(4))
    config = _config_file(tmp_path, "p.json",
                          [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert main(["analyze", graph, config]) == 0
    out = capsys.readouterr().out
    assert "rigid: true" in out
    assert "isostatic: true" in out
    assert "flex_dim: 6" in out


def test_analyze_flexible_graph(tmp_path, capsys):
    graph = _graph_file(tmp_path, "banana.json", double_banana())
    assert main(["analyze", graph]) == 1
    out = capsys.readouterr().out
    assert "rigid: false" in out
    assert "flex_dim: 7" in out


def test_missing_file(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "absent.json")]) == 3
    assert "parse error" in capsys.readouterr().err


def test_malformed_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["analyze", str(path)]) == 3
    assert "line 1" in capsys.readouterr().err


def test_edge_out_of_range(tmp_path, capsys):
    graph = _write(tmp_path, "bad.json", {"vertices": 3, "edges": [[1, 9]]})
    assert main(["analyze", graph]) == 3
    assert "parse error" in capsys.readouterr().err


def test_non_integer_vertices(tmp_path):
    graph = _write(tmp_path, "bad.json", {"vertices": True, "edges": []})
    assert main(["analyze", graph]) == 3


def test_henneberg_cone_extension(tmp_path, capsys):
    graph = _graph_file(tmp_path, "k4.json", Graph.complete(4))
    out_file = tmp_path / "extended.json"
    code = main(["henneberg", graph, "-x", "1", "2", "3", "4",
                 "-f", "1,2", "-o", str(out_file)])
    assert code == 0
    assert "rigid: true" in capsys.readouterr().out
    written = json.loads(out_file.read_text(encoding="utf-8"))
    assert written["vertices"] == 5
    assert len(written["edges"]) == 9
    assert [1, 2] not in written["edges"]


def test_henneberg_bad_support(tmp_path, capsys):
    graph = _graph_file(tmp_path, "k4.json", Graph.complete(4))
    assert main(["henneberg", graph, "-x", "1", "2"]) == 2
    assert "usage error" in capsys.readouterr().err


def test_henneberg_bad_edge_token(tmp_path, capsys):
    graph = _graph_file(tmp_path, "k4.json", Graph.complete(4))
    assert main(["henneberg", graph, "-x", "1", "2", "3", "4",
                 "-f", "1-2"]) == 2
    assert "usage error" in capsys.readouterr().err


def test_admissible_builtin_example(tmp_path, capsys):
    config = _config_file(tmp_path, "p.json", STANDARD_POINTS)
    assert main(["admissible", config, "--builtin", "example1"]) == 0
    out = capsys.readouterr().out
    assert "admissible: true" in out
    assert "classification: rank-one-form" in out
    assert "weights: 1 0 0 0 0" in out


def test_admissible_rejects_trivial_overlap(tmp_path, capsys):
    # the subspace contains a translation, so it meets the trivial motions
    config = _config_file(tmp_path, "p.json", STANDARD_POINTS)
    subspace = _write(tmp_path, "s.json", {"basis": [
        [[1, 1, 1, 1, 1], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0]],
        [[0, 0, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, 0, 0]],
    ]})
    assert main(["admissible", config, "--subspace", subspace]) == 1
    out = capsys.readouterr().out
    assert "intersects_trivial: true" in out
    assert "admissible: false" in out


def test_admissible_degenerate_config(tmp_path, capsys):
    # point 1 at the origin makes both pin blocks singular
    config = _config_file(tmp_path, "p.json",
                          [[0, 0, 0], [1, 0, 0], [0, 1, 0],
                           [1, 1, 1], [1, 2, 3]])
    assert main(["admissible", config, "--builtin", "example1"]) == 4
    assert "degenerate input" in capsys.readouterr().err


def test_admissible_bad_builtin_token(tmp_path, capsys):
    config = _config_file(tmp_path, "p.json", STANDARD_POINTS)
    assert main(["admissible", config, "--builtin", "example2:x"]) == 3
    assert main(["admissible", config, "--builtin", "nope"]) == 3
    capsys.readouterr()


def test_admissible_jsonl_reports_sample_ranks(tmp_path, capsys):
    config = _config_file(tmp_path, "p.json", STANDARD_POINTS)
    code = main(["admissible", config, "--builtin", "example2:3/2",
                 "--format", "jsonl", "--samples", "6"])
    assert code == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert lines[0]["record"] == "manifest"
    assert lines[0]["command"] == "admissible"
    report = next(l for l in lines if l["record"] == "admissibility")
    assert report["samples_tested"] == 6
    assert len(report["sample_ranks"]) == 6
    assert all(r == 1 for r in report["sample_ranks"])
    cls = next(l for l in lines if l["record"] == "classification")
    assert cls["kind"] == "rank-one-form"
    assert cls["weights"] == ["1", "3/2", "0", "0", "0"]


def test_implied_single_pair(tmp_path, capsys):
    graph = _graph_file(tmp_path, "k5e.json",
                        Graph.complete(5).without_edges([(4, 5)]))
    assert main(["implied", graph, "--pair", "4", "5"]) == 0
    assert "implied: true" in capsys.readouterr().out
    banana = _graph_file(tmp_path, "banana.json", double_banana())
    assert main(["implied", banana, "--pair", "3", "6"]) == 1
    assert "implied: false" in capsys.readouterr().out


def test_implied_listing(tmp_path, capsys):
    banana = _graph_file(tmp_path, "banana.json", double_banana())
    assert main(["implied", banana]) == 0
    out = capsys.readouterr().out
    assert "implied_nonedges: 1" in out
    assert "1,2" in out


def test_conic_probe(tmp_path, capsys):
    code = main(["conic", "--probe", "triangle-and-path", "--seed", "2"])
    assert code == 0
    out = capsys.readouterr().out
    assert "dim: 3" in out
    assert "skew_space: true" in out


def test_conic_sparse_graph(tmp_path, capsys):
    graph = _write(tmp_path, "sparse.json",
                   {"vertices": 5, "edges": [[1, 2], [3, 4]]})
    config = _config_file(tmp_path, "p.json", STANDARD_POINTS)
    assert main(["conic", config, "--graph", graph]) == 1
    out = capsys.readouterr().out
    assert "dim: 7" in out
    assert "skew_space: false" in out


def test_verify_jsonl_is_deterministic(capsys):
    argv = ["verify", "--checks", "trivial-motion-dim", "--samples", "2",
            "--format", "jsonl", "--seed", "7"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    lines = [json.loads(l) for l in first.splitlines()]
    assert lines[0]["record"] == "manifest"
    assert lines[-1] == {"record": "summary", "total": 1, "failed": 0,
                         "passed": 1}


def test_verify_reports_failures(monkeypatch, capsys):
    # a corrupted build must surface as a nonzero exit, never silently
    def broken(seed, samples):
        return False, "stubbed failure"

    patched = tuple((name, broken if name == "trivial-motion-dim" else fn)
                    for name, fn in verify._CHECKS)
    monkeypatch.setattr(verify, "_CHECKS", patched)
    assert main(["verify", "--checks", "trivial-motion-dim"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "stubbed failure" in out


def test_samples_must_be_positive(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "--samples", "0"])
    assert excinfo.value.code == 2
    capsys.readouterr()
