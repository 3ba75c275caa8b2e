"""Experiment harness: sweeps, aggregation, report files, CLI."""

import csv
import json
from pathlib import Path

import numpy as np
import pytest

from gpmix import ExperimentConfig, emit_reports, run_experiment
from gpmix.cli import main
from gpmix.experiments import corpus_checksum
from gpmix import preprocess


DOCS = [
    "striker scored a late goal in the cup final",
    "goalkeeper saved the penalty during extra time",
    "midfield pressing won the match for the visitors",
    "the defender cleared a dangerous cross",
    "markets rallied after the central bank decision",
    "investors weighed inflation data and bond yields",
    "the quarterly earnings beat analyst forecasts",
    "shares of the retailer slid on weak guidance",
    "the telescope captured a distant spiral galaxy",
    "astronomers measured the orbit of the new comet",
    "the probe returned images of the icy moon",
    "a meteor shower peaks this weekend after midnight",
]


@pytest.fixture
def dataset(tmp_path):
    path = tmp_path / "docs.txt"
    path.write_text("\n".join(DOCS) + "\n")
    return path


def quick_config(dataset, **kwargs):
    defaults = dict(
        model="gpm",
        input_path=str(dataset),
        k_init=(4,),
        iterations=3,
        runs=1,
        base_seed=0,
        top_words=3,
    )
    defaults.update(kwargs)
    return ExperimentConfig(**defaults)


class TestRunExperiment:
    def test_single_cell_single_run(self, dataset):
        result = run_experiment(quick_config(dataset))
        assert len(result.records) == 1
        record = result.records[0]
        assert record.seed == 0
        assert record.nonempty_topics <= 4
        assert len(record.trace) == 3
        assert np.isfinite(record.avg_coherence)
        assert result.failures == ()

    def test_sweep_produces_one_record_per_cell_and_run(self, dataset):
        config = quick_config(dataset, k_init=(2, 4), runs=3)
        result = run_experiment(config)
        assert len(result.records) == 6
        assert [r.seed for r in result.records] == [0, 1, 2, 0, 1, 2]
        assert len(result.summaries) == 2

    def test_grid_shape(self, dataset):
        alphas = (0.01, 0.05, 0.25, 0.5, 0.75, 1.0, 2.0)
        betas = (5.0, 2.0, 1.0, 0.5, 0.2)
        config = quick_config(dataset, k_init=(3,), alpha=alphas, beta=betas, iterations=2)
        result = run_experiment(config)
        assert len(result.summaries) == 35
        assert len(result.records) == 35

    def test_aggregates_match_records(self, dataset):
        config = quick_config(dataset, runs=4)
        result = run_experiment(config)
        topics = np.array([r.nonempty_topics for r in result.records], dtype=float)
        cell = result.summaries[0]
        assert cell.topics_mean == pytest.approx(topics.mean(), abs=1e-12)
        assert cell.topics_sd == pytest.approx(topics.std(), abs=1e-12)

    def test_model_defaults_differ(self, dataset):
        gpm_config = quick_config(dataset)
        gsdmm_config = quick_config(dataset, model="gsdmm")
        assert gpm_config.alpha == (0.001,)
        assert gsdmm_config.alpha == (0.1,)

    def test_failed_cell_recorded_and_others_proceed(self, dataset, monkeypatch):
        import gpmix.experiments as experiments

        real_fit = experiments.fit
        calls = []

        def flaky_fit(corpus, hyper, **kwargs):
            calls.append(hyper.k_init)
            if hyper.k_init == 3:
                raise RuntimeError("boom")
            return real_fit(corpus, hyper, **kwargs)

        monkeypatch.setattr(experiments, "fit", flaky_fit)
        result = run_experiment(quick_config(dataset, k_init=(3, 4)))
        assert len(result.failures) == 1
        assert result.failures[0].k_init == 3
        assert "boom" in result.failures[0].error
        assert [r.k_init for r in result.records] == [4]

    def test_gpm_and_gsdmm_share_preprocessing(self, dataset):
        gpm_result = run_experiment(quick_config(dataset))
        gsdmm_result = run_experiment(quick_config(dataset, model="gsdmm"))
        assert gpm_result.corpus_checksum == gsdmm_result.corpus_checksum

    def test_checksum_tracks_content(self):
        a = preprocess(["alpha beta", "gamma delta"])
        b = preprocess(["alpha beta", "gamma delta"])
        c = preprocess(["alpha beta", "gamma epsilon"])
        assert corpus_checksum(a) == corpus_checksum(b)
        assert corpus_checksum(a) != corpus_checksum(c)

    def test_invalid_config_rejected(self, dataset):
        with pytest.raises(ValueError):
            quick_config(dataset, model="lda")
        with pytest.raises(ValueError):
            quick_config(dataset, runs=0)
        with pytest.raises(ValueError):
            quick_config(dataset, k_init=())


class TestEmitReports:
    def test_file_inventory(self, dataset, tmp_path):
        config = quick_config(dataset, k_init=(2, 4), runs=3)
        result = run_experiment(config)
        out = tmp_path / "reports"
        emit_reports(result, out)
        assert (out / "summary.csv").exists()
        assert (out / "manifest.json").exists()
        assert len(list(out.glob("trace_*.csv"))) == 6
        assert len(list(out.glob("topics_*.tsv"))) == 6

    def test_summary_roundtrip_matches_aggregates(self, dataset, tmp_path):
        config = quick_config(dataset, runs=3)
        result = run_experiment(config)
        emit_reports(result, tmp_path / "out")
        with (tmp_path / "out" / "summary.csv").open() as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 1
        cell = result.summaries[0]
        assert abs(float(rows[0]["topics_mean"]) - cell.topics_mean) < 1e-9
        assert abs(float(rows[0]["topics_sd"]) - cell.topics_sd) < 1e-9
        assert abs(float(rows[0]["coherence_mean"]) - cell.coherence_mean) < 1e-9

    def test_reruns_are_byte_identical(self, dataset, tmp_path):
        config = quick_config(dataset, k_init=(2, 3), runs=2)
        first = tmp_path / "first"
        second = tmp_path / "second"
        emit_reports(run_experiment(config), first)
        emit_reports(run_experiment(config), second)
        files = sorted(p.name for p in first.iterdir())
        assert files == sorted(p.name for p in second.iterdir())
        for name in files:
            assert (first / name).read_bytes() == (second / name).read_bytes(), name

    def test_manifest_contents(self, dataset, tmp_path):
        config = quick_config(dataset, runs=2)
        result = run_experiment(config)
        emit_reports(result, tmp_path / "out")
        manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
        assert manifest["artifact"]["name"] == "gpmix"
        assert manifest["corpus_checksum"] == result.corpus_checksum
        assert manifest["run_seeds"] == [0, 1]
        assert manifest["config"]["model"] == "gpm"
        assert manifest["corpus_stats"]["num_docs"] == len(DOCS)

    def test_trace_coherence_column(self, dataset, tmp_path):
        config = quick_config(dataset, trace_coherence=True)
        result = run_experiment(config)
        emit_reports(result, tmp_path / "out")
        trace_file = next((tmp_path / "out").glob("trace_*.csv"))
        with trace_file.open() as fh:
            rows = list(csv.DictReader(fh))
        assert all(row["avg_coherence"] for row in rows)


class TestCli:
    def test_end_to_end(self, dataset, tmp_path, capsys):
        out = tmp_path / "cli_out"
        code = main(
            [
                "--input", str(dataset),
                "--model", "gpm",
                "--k-init", "2", "4",
                "--iters", "3",
                "--runs", "2",
                "--seed", "7",
                "--top-words", "3",
                "--out", str(out),
            ]
        )
        assert code == 0
        assert (out / "summary.csv").exists()
        printed = capsys.readouterr().out
        assert "k_init=2" in printed and "k_init=4" in printed

    def test_missing_dataset_fails(self, tmp_path, capsys):
        code = main(
            ["--input", str(tmp_path / "absent.txt"), "--model", "gpm", "--out", str(tmp_path)]
        )
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_gsdmm_path(self, dataset, tmp_path):
        out = tmp_path / "gsdmm_out"
        code = main(
            ["--input", str(dataset), "--model", "gsdmm", "--k-init", "3",
             "--iters", "2", "--runs", "1", "--out", str(out)]
        )
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["model"] == "gsdmm"
        assert manifest["config"]["alpha"] == [0.1]
