import json

from hyperdep.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def simulate(tmp_path, capsys, kind="w_of_xy", n=300, seed=0):
    code, out, _ = run(capsys, "simulate", "--kind", kind, "--n", str(n),
                       "--seed", str(seed), "--out-dir", str(tmp_path))
    assert code == 0
    return out.strip().splitlines()[-1]


def test_simulate_writes_csv_and_provenance(tmp_path, capsys):
    path = simulate(tmp_path, capsys, kind="w_of_xyz", n=50, seed=7)
    assert path.endswith(".csv")
    lines = (tmp_path / "w_of_xyz_50_7.csv").read_text().strip().splitlines()
    assert lines[0] == "X,Y,Z,W,U,V"
    assert len(lines) == 51
    prov = json.loads((tmp_path / "w_of_xyz_50_7.provenance.json").read_text())
    assert prov["tool"]["seed"] == 7
    assert prov["tool"]["version"]
    assert prov["rng"] == "numpy-pcg64"


def test_simulate_usage_error(tmp_path, capsys):
    code, _, err = run(capsys, "simulate", "--out-dir", str(tmp_path))
    assert code == 1
    assert "usage error" in err


def test_simulate_env_output_dir(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HYPERDEP_OUT", str(tmp_path))
    code, out, _ = run(capsys, "simulate", "--kind", "independent", "--n", "10")
    assert code == 0
    assert (tmp_path / "independent_10_0.csv").exists()


def test_measures_output(tmp_path, capsys):
    csv = simulate(tmp_path, capsys, n=200)
    code, out, _ = run(capsys, "measures", "--input", csv, "--sigma", "3",
                       "--tsv", str(tmp_path / "m.tsv"),
                       "--jsonl", str(tmp_path / "m.jsonl"))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("members\t")
    assert len(lines) == 1 + 15 + 20
    assert (tmp_path / "m.tsv").exists()
    assert len((tmp_path / "m.jsonl").read_text().strip().splitlines()) == 35


def test_measures_fixed_target(tmp_path, capsys):
    csv = simulate(tmp_path, capsys, n=200)
    code, out, _ = run(capsys, "measures", "--input", csv, "--sigma", "3",
                       "--target", "W")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert all("W" in r.split("\t")[0] for r in rows)
    assert len(rows) == 5 + 10


def test_measures_dependent_triplet_ranks_first(tmp_path, capsys):
    # the symmetric score is maximal in magnitude for the one triplet
    # whose members are genuinely interdependent
    csv = simulate(tmp_path, capsys, kind="w_of_xy", n=1000, seed=3)
    code, out, _ = run(capsys, "measures", "--input", csv, "--sigma", "3")
    assert code == 0
    best_label, best_score = None, 0.0
    for line in out.strip().splitlines()[1:]:
        cells = line.split("\t")
        if len(cells[0].split(",")) != 3:
            continue
        score = float(cells[2])
        if abs(score) > abs(best_score):
            best_label, best_score = cells[0], score
    assert best_label == "X,Y,W"


def test_experiment_byte_identical_rerun(tmp_path, capsys):
    dirs = []
    for sub in ("e1", "e2"):
        d = tmp_path / sub
        d.mkdir()
        code, _, _ = run(capsys, "experiment", "--kind", "noise",
                         "--n", "150", "--levels", "2", "--replicates", "2",
                         "--flips-per-level", "30", "--seed", "6",
                         "--out-dir", str(d))
        assert code == 0
        dirs.append(d)
    a = (dirs[0] / "experiment_noise_6.json").read_bytes()
    b = (dirs[1] / "experiment_noise_6.json").read_bytes()
    assert a == b


def test_measures_sigma_too_big(tmp_path, capsys):
    csv = simulate(tmp_path, capsys, n=50)
    code, _, err = run(capsys, "measures", "--input", csv, "--sigma", "7")
    assert code == 2
    assert "data error" in err


def test_measures_missing_input(tmp_path, capsys):
    code, _, err = run(capsys, "measures", "--input",
                       str(tmp_path / "nope.csv"))
    assert code == 2


def test_infer_outputs(tmp_path, capsys):
    csv = simulate(tmp_path, capsys, kind="w_of_xyz", n=400, seed=0)
    code, out, err = run(capsys, "infer", "--input", csv, "--sigma", "4",
                         "--seed", "5", "--n-perm", "30",
                         "--out-dir", str(tmp_path))
    assert code == 0
    hg = json.loads((tmp_path / "hypergraph.json").read_text())
    assert hg["version"] == 1
    assert hg["meta"]["seed"] == 5
    assert hg["meta"]["tool"]["version"]
    members = [tuple(e["members"]) for e in hg["edges"]]
    assert (0, 1, 2, 3) in members
    dot = (tmp_path / "hypergraph.dot").read_text()
    assert "shape=point" in dot


def test_infer_absolute_threshold_and_dot_only(tmp_path, capsys):
    csv = simulate(tmp_path, capsys, kind="w_of_xyz", n=400, seed=0)
    code, out, _ = run(capsys, "infer", "--input", csv, "--sigma", "4",
                       "--threshold", "0.001", "--formats", "dot",
                       "--out-dir", str(tmp_path), "--name", "abs")
    assert code == 0
    assert (tmp_path / "abs.dot").exists()
    assert not (tmp_path / "abs.json").exists()


def test_complexity_output(tmp_path, capsys):
    csv = simulate(tmp_path, capsys, n=300)
    code, out, _ = run(capsys, "complexity", "--input", csv, "--sigma", "3",
                       "--json", str(tmp_path / "c.json"))
    assert code == 0
    assert out.startswith("psi ")
    assert "phi " in out
    payload = json.loads((tmp_path / "c.json").read_text())
    assert "psi" in payload and "components" in payload


def test_experiment_partition(tmp_path, capsys):
    code, out, _ = run(capsys, "experiment", "--kind", "partition",
                       "--n", "1000", "--n-subsets", "2", "--seed", "1",
                       "--out-dir", str(tmp_path))
    assert code == 0
    stem = tmp_path / "experiment_partition_1"
    payload = json.loads((stem.with_suffix(".json")).read_text())
    assert payload["kind"] == "partition"
    assert payload["config"]["seed"] == 1
    assert (stem.with_suffix(".tsv")).read_text().startswith("subset_size\t")


def test_experiment_noise(tmp_path, capsys):
    code, out, _ = run(capsys, "experiment", "--kind", "noise",
                       "--n", "200", "--levels", "2", "--replicates", "2",
                       "--flips-per-level", "50", "--seed", "1",
                       "--out-dir", str(tmp_path))
    assert code == 0
    payload = json.loads((tmp_path / "experiment_noise_1.json").read_text())
    assert payload["mode"] == "redraw"
    assert len(payload["ratio"]) == 2


def test_baseline_table(tmp_path, capsys):
    csv = simulate(tmp_path, capsys, kind="w_of_xyz", n=300)
    code, out, _ = run(capsys, "baseline", "--input", csv,
                       "--json", str(tmp_path / "b.json"))
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "pair\tpearson\tspearman\tdegenerate"
    assert len(rows) == 16
    payload = json.loads((tmp_path / "b.json").read_text())
    assert len(payload["pairs"]) == 15


def test_unknown_command(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 1


def test_internal_error_exit_code(tmp_path, capsys):
    # out-dir collides with an existing file: an I/O failure, exit 3
    blocker = tmp_path / "blocked"
    blocker.write_text("")
    code, _, err = run(capsys, "simulate", "--kind", "independent",
                       "--n", "5", "--out-dir", str(blocker))
    assert code == 3
    assert "error" in err


def test_infer_byte_identical_runs(tmp_path, capsys):
    csv = simulate(tmp_path, capsys, kind="w_of_xyz", n=300, seed=2)
    for sub, threads in (("a", "1"), ("b", "1"), ("c", "3")):
        d = tmp_path / sub
        d.mkdir()
        code, _, _ = run(capsys, "infer", "--input", csv, "--sigma", "3",
                         "--seed", "9", "--n-perm", "25",
                         "--threads", threads, "--out-dir", str(d))
        assert code == 0
    a = (tmp_path / "a/hypergraph.json").read_bytes()
    assert a == (tmp_path / "b/hypergraph.json").read_bytes()
    assert a == (tmp_path / "c/hypergraph.json").read_bytes()
