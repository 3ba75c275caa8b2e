"""Seeded multi-run experiment harness.

A configuration names one dataset, one model, and sweep lists for the
starting topic count and the two prior parameters. Every (cell, run)
pair is fitted with a seed derived as ``base_seed + run_index``, scored
for coherence, and aggregated per cell, so results are reproducible end
to end from the configuration alone.
"""

from __future__ import annotations

import hashlib
import json
import logging
import traceback
from dataclasses import asdict, dataclass, field
from itertools import product
from pathlib import Path

import numba
import numpy as np
import scipy

from . import __version__
from .corpus import Corpus, CorpusStats, corpus_stats, load_corpus, normalize_lengths, preprocess
from .engine import FitResult, TraceEntry
from .evaluation import CoherenceScorer, TopicSummary, top_word_ids, umass_coherence
from .gpm import Hyperparams, fit
from .gsdmm import GsdmmHyperparams, fit_gsdmm
from .reports import write_topic_table, write_trace_csv
from .stopwords import STOPWORDS_VERSION, load_stopwords

logger = logging.getLogger(__name__)

_MODEL_DEFAULTS = {"gpm": (0.001, 0.001), "gsdmm": (0.1, 0.1)}


@dataclass(frozen=True)
class ExperimentConfig:
    """One dataset, one model, and the sweep axes to explore."""

    model: str
    input_path: str
    label_path: str | None = None
    k_init: tuple[int, ...] = (400,)
    alpha: tuple[float, ...] | None = None  # None: model default
    beta: tuple[float, ...] | None = None
    gamma: float = 0.1
    iterations: int = 15
    norm_length: int = 20
    runs: int = 3
    base_seed: int = 0
    top_words: int = 10
    trace_coherence: bool = False
    stopword_path: str | None = None
    min_token_length: int = 2
    out_dir: str | None = None

    def __post_init__(self):
        if self.model not in _MODEL_DEFAULTS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if not self.k_init:
            raise ValueError("k_init sweep list is empty")
        default_alpha, default_beta = _MODEL_DEFAULTS[self.model]
        if self.alpha is None:
            object.__setattr__(self, "alpha", (default_alpha,))
        if self.beta is None:
            object.__setattr__(self, "beta", (default_beta,))
        object.__setattr__(self, "k_init", tuple(self.k_init))
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "beta", tuple(self.beta))
        if not self.alpha or not self.beta:
            raise ValueError("alpha and beta sweep lists must be nonempty")

    def cells(self) -> list[tuple[int, float, float]]:
        return list(product(self.k_init, self.alpha, self.beta))

    def run_seeds(self) -> list[int]:
        return [self.base_seed + r for r in range(self.runs)]


@dataclass(frozen=True)
class RunRecord:
    """One fitted run of one sweep cell."""

    model: str
    k_init: int
    alpha: float
    beta: float
    gamma: float | None
    norm_length: int | None
    iterations: int
    run_index: int
    seed: int
    nonempty_topics: int
    avg_coherence: float
    trace: tuple[TraceEntry, ...]
    topics: tuple[TopicSummary, ...]
    wall_time: float


@dataclass(frozen=True)
class CellSummary:
    """Mean and population standard deviation over a cell's runs."""

    model: str
    k_init: int
    alpha: float
    beta: float
    runs: int
    topics_mean: float
    topics_sd: float
    coherence_mean: float
    coherence_sd: float


@dataclass(frozen=True)
class CellFailure:
    k_init: int
    alpha: float
    beta: float
    error: str


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    stats: CorpusStats
    corpus_checksum: str
    records: tuple[RunRecord, ...]
    summaries: tuple[CellSummary, ...]
    failures: tuple[CellFailure, ...] = field(default_factory=tuple)


def corpus_checksum(corpus: Corpus) -> str:
    """Stable digest of the preprocessed corpus contents."""
    digest = hashlib.sha256()
    digest.update("\x1f".join(corpus.vocab.terms).encode())
    for doc in corpus.docs:
        entries = ",".join(f"{w}:{c}" for w, c in sorted(doc.counts.items()))
        digest.update(f"\x1e{entries}\x1d{doc.label or ''}".encode())
    return digest.hexdigest()


def config_hash(config: ExperimentConfig) -> str:
    return hashlib.sha256(
        json.dumps(asdict(config), sort_keys=True).encode()
    ).hexdigest()


def _run_cell(
    config: ExperimentConfig,
    corpus: Corpus,
    fit_corpus: Corpus,
    scorer: CoherenceScorer,
    cell: tuple[int, float, float],
) -> list[RunRecord]:
    k, alpha, beta = cell
    records = []
    for run_index, seed in enumerate(config.run_seeds()):
        if config.model == "gpm":
            hyper = Hyperparams(
                alpha=alpha,
                beta=beta,
                gamma=config.gamma,
                k_init=k,
                iterations=config.iterations,
                norm_length=config.norm_length,
                seed=seed,
            )
            result = fit(fit_corpus, hyper, coherence_scorer=scorer if config.trace_coherence else None)
        else:
            hyper = GsdmmHyperparams(
                alpha=alpha, beta=beta, k_init=k, iterations=config.iterations, seed=seed
            )
            result = fit_gsdmm(
                fit_corpus, hyper, coherence_scorer=scorer if config.trace_coherence else None
            )
        doc_counts = np.bincount(result.assignments, minlength=result.rates.shape[0])
        coherence = scorer.average(result.rates, doc_counts)
        topics = _summaries_from(result, corpus, scorer, config.top_words)
        records.append(
            RunRecord(
                model=config.model,
                k_init=k,
                alpha=alpha,
                beta=beta,
                gamma=config.gamma if config.model == "gpm" else None,
                norm_length=config.norm_length if config.model == "gpm" else None,
                iterations=config.iterations,
                run_index=run_index,
                seed=seed,
                nonempty_topics=result.nonempty_topics,
                avg_coherence=coherence,
                trace=result.trace,
                topics=tuple(topics),
                wall_time=result.wall_time,
            )
        )
    return records


def _summaries_from(
    result: FitResult, corpus: Corpus, scorer: CoherenceScorer, top_n: int
) -> list[TopicSummary]:
    doc_counts = np.bincount(result.assignments, minlength=result.rates.shape[0])
    summaries = []
    for topic in np.flatnonzero(doc_counts):
        ids = top_word_ids(result.rates[topic], min(top_n, result.rates.shape[1]))
        words = tuple(
            (corpus.vocab[int(i)], float(result.rates[topic, i])) for i in ids
        )
        coherence = umass_coherence([int(i) for i in ids], scorer.index)
        summaries.append(TopicSummary(int(topic), int(doc_counts[topic]), words, coherence))
    return summaries


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Fit every (cell, run) pair and aggregate per-cell statistics.

    A failing cell is recorded and skipped; the remaining cells still run.
    """
    raw_docs, labels = load_corpus(config.input_path, config.label_path)
    stop_words = load_stopwords(config.stopword_path)
    corpus = preprocess(
        raw_docs, labels, stop_words=stop_words, min_token_length=config.min_token_length
    )
    stats = corpus_stats(corpus)
    checksum = corpus_checksum(corpus)
    fit_corpus = normalize_lengths(corpus, config.norm_length) if config.model == "gpm" else corpus
    scorer = CoherenceScorer(corpus, top_n=config.top_words)

    records: list[RunRecord] = []
    summaries: list[CellSummary] = []
    failures: list[CellFailure] = []
    for cell in config.cells():
        try:
            cell_records = _run_cell(config, corpus, fit_corpus, scorer, cell)
        except Exception as exc:  # a bad cell must not sink the others
            logger.error("cell %s failed: %s", cell, traceback.format_exc())
            failures.append(CellFailure(cell[0], cell[1], cell[2], f"{type(exc).__name__}: {exc}"))
            continue
        records.extend(cell_records)
        topics = np.array([r.nonempty_topics for r in cell_records], dtype=np.float64)
        coherences = np.array([r.avg_coherence for r in cell_records], dtype=np.float64)
        summaries.append(
            CellSummary(
                model=config.model,
                k_init=cell[0],
                alpha=cell[1],
                beta=cell[2],
                runs=len(cell_records),
                topics_mean=float(topics.mean()),
                topics_sd=float(topics.std()),
                coherence_mean=float(coherences.mean()),
                coherence_sd=float(coherences.std()),
            )
        )
    return ExperimentResult(
        config=config,
        stats=stats,
        corpus_checksum=checksum,
        records=tuple(records),
        summaries=tuple(summaries),
        failures=tuple(failures),
    )


def _cell_tag(record: RunRecord) -> str:
    return f"{record.model}_k{record.k_init}_a{record.alpha:g}_b{record.beta:g}"


def emit_reports(result: ExperimentResult, out_dir) -> list[Path]:
    """Write the summary CSV, per-run traces and topic tables, and the manifest.

    Everything written here is byte-for-byte reproducible for the same
    configuration; run wall times are deliberately left out.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    summary_path = out / "summary.csv"
    with summary_path.open("w", newline="") as fh:
        fh.write("model,k_init,alpha,beta,runs,topics_mean,topics_sd,coherence_mean,coherence_sd\n")
        for cell in result.summaries:
            fh.write(
                f"{cell.model},{cell.k_init},{cell.alpha!r},{cell.beta!r},{cell.runs},"
                f"{cell.topics_mean!r},{cell.topics_sd!r},"
                f"{cell.coherence_mean!r},{cell.coherence_sd!r}\n"
            )
    written.append(summary_path)

    for record in result.records:
        tag = f"{_cell_tag(record)}_run{record.run_index}"
        written.append(write_trace_csv(record.trace, out / f"trace_{tag}.csv"))
        written.append(write_topic_table(record.topics, out / f"topics_{tag}.tsv"))

    manifest = {
        "artifact": {"name": "gpmix", "version": __version__},
        "libraries": {
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "numba": numba.__version__,
        },
        "stopwords": STOPWORDS_VERSION if result.config.stopword_path is None else "custom",
        "config": asdict(result.config),
        "config_hash": config_hash(result.config),
        "corpus_checksum": result.corpus_checksum,
        "corpus_stats": asdict(result.stats),
        "run_seeds": result.config.run_seeds(),
        "cells": [list(cell) for cell in result.config.cells()],
        "failures": [asdict(f) for f in result.failures],
    }
    manifest_path = out / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    written.append(manifest_path)
    return written
