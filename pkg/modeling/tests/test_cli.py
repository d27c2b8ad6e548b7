"""CLI behavior: subcommands, outputs, exit codes."""

import numpy as np
import pytest

from methodeval.cli import run
from methodeval.data import CSV_HEADER, FEATURE_COLUMNS, load_dataset


@pytest.fixture(scope="module")
def small_dataset(tmp_path_factory):
    """Two small projects with an e1-driven label, written as canonical CSV."""
    rng = np.random.RandomState(0)
    path = tmp_path_factory.mktemp("cli") / "d.csv"
    lines = [CSV_HEADER]
    for project, n in (("alpha", 60), ("beta", 60)):
        X = rng.normal(size=(n, 15))
        y = (X[:, 13] > 0).astype(int)
        for i in range(n):
            features = ",".join(f"{v:.6f}" for v in X[i])
            lines.append(f"{project},f.c,m{i},1,2,{features},{y[i]}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestBasics:
    def test_version(self, capsys):
        assert run(["version"]) == 0
        assert capsys.readouterr().out.strip() == "0.1.0"

    def test_unknown_flag_is_usage_error(self, capsys):
        assert run(["evaluate", "--bogus"]) == 2
        capsys.readouterr()

    def test_missing_dataset_is_runtime_error(self, tmp_path, capsys):
        code = run(
            ["evaluate", "--dataset", str(tmp_path / "nope.csv"), "--metric-set", "Type1"]
        )
        assert code == 1
        capsys.readouterr()

    def test_bad_header_is_runtime_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n", encoding="utf-8")
        assert run(["evaluate", "--dataset", str(bad), "--metric-set", "Type2"]) == 1
        assert "error" in capsys.readouterr().err


class TestEvaluate:
    def test_single_metric_set(self, small_dataset, capsys):
        code = run(
            ["evaluate", "--dataset", str(small_dataset), "--metric-set", "Type2",
             "--project", "alpha", "--folds", "5", "--seed", "3"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "pr_auc" in out and "f1" in out and "mcc" in out
        value = float(next(l for l in out.splitlines() if l.startswith("pr_auc")).split()[1])
        assert 0.0 <= value <= 1.0

    def test_unknown_project(self, small_dataset, capsys):
        code = run(
            ["evaluate", "--dataset", str(small_dataset), "--metric-set", "Type1",
             "--project", "missing"]
        )
        assert code == 1
        capsys.readouterr()


class TestSynth:
    def test_synth_writes_loadable_csv(self, tmp_path, capsys):
        out = tmp_path / "synth.csv"
        assert run(["synth", "--rows", "80", "--seed", "4", "--out", str(out)]) == 0
        capsys.readouterr()
        ds = load_dataset(out)
        assert ds.X.shape == (80, 15)
        assert set(ds.y.tolist()) == {0, 1}


class TestReport:
    def test_full_report_end_to_end(self, small_dataset, tmp_path, capsys):
        out_dir = tmp_path / "reports"
        code = run(
            ["report", "--dataset", str(small_dataset), "--out-dir", str(out_dir),
             "--folds", "5", "--seed", "1"]
        )
        assert code == 0
        text = capsys.readouterr().out
        assert "PR-AUC by metric set" in text
        assert "Overall Average" in text
        for name in ("eval.csv", "ranks.csv", "rank_distribution.csv", "report.txt"):
            assert (out_dir / name).exists(), name

        eval_lines = (out_dir / "eval.csv").read_text().splitlines()
        assert eval_lines[0] == "project,metric_set,fold,pr_auc,f1,mcc,degenerate"
        # 2 projects x 3 metric sets x (1 mean + 5 folds)
        assert len(eval_lines) == 1 + 2 * 3 * 6

        rank_lines = (out_dir / "ranks.csv").read_text().splitlines()
        assert rank_lines[0] == "project,metric_set,feature,importance,rank"
        assert len(rank_lines) == 1 + 2 * 15
        for project in ("alpha", "beta"):
            ranks = sorted(
                int(l.split(",")[4]) for l in rank_lines[1:] if l.startswith(project + ",")
            )
            assert ranks == list(range(1, 16))

        dist_lines = (out_dir / "rank_distribution.csv").read_text().splitlines()
        assert dist_lines[0] == "feature,min,q1,median,q3,max"
        assert len(dist_lines) == 1 + 15
        assert set(l.split(",")[0] for l in dist_lines[1:]) == set(FEATURE_COLUMNS)

        report_text = (out_dir / "report.txt").read_text()
        assert "model config:" in report_text
        assert "Average rank range by metric family" in report_text
