"""File output for fit results, diagnostics, and experiment reports.

All report files are plain CSV/TSV/JSON and are byte-for-byte
reproducible for a fixed configuration and seed, except the single fit
manifest, which records wall time.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict
from pathlib import Path
from typing import Iterable, Sequence

from .engine import FitResult, TraceEntry
from .evaluation import PoissonFit, TopicSummary


def fit_manifest(fit: FitResult) -> dict:
    """JSON-ready summary of one fit (includes wall time)."""
    return {
        "model": fit.model,
        "hyperparams": asdict(fit.hyperparams),
        "seed": fit.seed,
        "nonempty_topics": fit.nonempty_topics,
        "wall_time_s": fit.wall_time,
    }


def write_fit_manifest(fit: FitResult, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(fit_manifest(fit), indent=2, sort_keys=True) + "\n")
    return path


def write_trace_csv(trace: Sequence[TraceEntry], path) -> Path:
    """Per-iteration trace: iteration, nonempty topic count, optional coherence."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iteration", "nonempty_topics", "avg_coherence"])
        for entry in trace:
            coherence = "" if entry.avg_coherence is None else repr(entry.avg_coherence)
            writer.writerow([entry.iteration, entry.nonempty_topics, coherence])
    return path


def write_topic_table(summaries: Iterable[TopicSummary], path) -> Path:
    """Tab-separated topic table: id, document count, coherence, ranked words."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t")
        writer.writerow(["topic_id", "doc_count", "coherence", "top_words"])
        for topic in summaries:
            words = " ".join(f"{word}:{value:.6g}" for word, value in topic.top_words)
            writer.writerow([topic.topic_id, topic.doc_count, repr(topic.coherence), words])
    return path


def write_poisson_fit_csv(diag: PoissonFit, path) -> Path:
    """Observed and predicted document counts per word frequency."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["frequency", "observed", "predicted"])
        for f, obs, pred in zip(diag.frequencies, diag.observed, diag.predicted):
            writer.writerow([int(f), int(obs), repr(float(pred))])
    return path
