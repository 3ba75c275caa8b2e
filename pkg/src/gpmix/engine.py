"""Shared collapsed Gibbs sampling machinery.

Both mixture models assign one topic per document and track the same
sufficient statistics: documents per topic, total words per topic, and a
topics-by-words count matrix. The models differ only in the conditional
weight formula used inside a sweep and in how topic representations are
estimated afterwards, so initialization, bookkeeping, tracing, and the
fit loop live here.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .corpus import Corpus


@dataclass
class SamplerState:
    """Topic assignments plus the sufficient statistics they induce.

    Invariants (checked by :meth:`validate`): ``doc_counts`` sums to the
    number of documents, ``word_totals[k]`` equals ``word_counts[k].sum()``,
    and recomputing all three from ``assignments`` reproduces them exactly.
    """

    assignments: np.ndarray  # (M,) topic label per document
    doc_counts: np.ndarray  # (K,) documents assigned to each topic
    word_totals: np.ndarray  # (K,) total word occurrences in each topic
    word_counts: np.ndarray  # (K, V) occurrences of each word in each topic
    rng: np.random.Generator

    @property
    def n_topics(self) -> int:
        return self.doc_counts.shape[0]

    @property
    def n_docs(self) -> int:
        return self.assignments.shape[0]

    def nonempty_topics(self) -> int:
        return int(np.count_nonzero(self.doc_counts))

    def validate(self, corpus: Corpus) -> None:
        """Raise if the stored statistics disagree with the assignments."""
        docs, totals, counts = recompute_counts(corpus, self.assignments, self.n_topics)
        if not (
            np.array_equal(docs, self.doc_counts)
            and np.array_equal(totals, self.word_totals)
            and np.array_equal(counts, self.word_counts)
        ):
            raise ValueError("sampler statistics are inconsistent with the assignments")


def recompute_counts(
    corpus: Corpus, assignments: np.ndarray, n_topics: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rebuild (doc_counts, word_totals, word_counts) from scratch."""
    n_words = len(corpus.vocab)
    doc_counts = np.bincount(assignments, minlength=n_topics).astype(np.int64)
    word_totals = np.zeros(n_topics, dtype=np.int64)
    word_counts = np.zeros((n_topics, n_words), dtype=np.int64)
    for doc, topic in zip(corpus.docs, assignments):
        word_totals[topic] += doc.length
        for word_id, count in doc.counts.items():
            word_counts[topic, word_id] += count
    return doc_counts, word_totals, word_counts


def init_state(corpus: Corpus, n_topics: int, seed: int) -> SamplerState:
    """Assign every document a uniform random topic and tally the counts."""
    if n_topics < 1:
        raise ValueError("need at least one topic")
    rng = np.random.default_rng(seed)
    assignments = rng.integers(0, n_topics, size=len(corpus), dtype=np.int64)
    doc_counts, word_totals, word_counts = recompute_counts(corpus, assignments, n_topics)
    return SamplerState(assignments, doc_counts, word_totals, word_counts, rng)


@dataclass(frozen=True)
class TraceEntry:
    """Per-iteration snapshot recorded during a fit."""

    iteration: int
    nonempty_topics: int
    avg_coherence: float | None = None


@dataclass(frozen=True)
class FitResult:
    """Final sampler output.

    ``rates`` holds the topics-by-words representation: expected word
    frequencies for the Poisson mixture, word probabilities for the
    multinomial baseline (``model`` distinguishes the two).
    """

    model: str
    assignments: np.ndarray
    rates: np.ndarray
    nonempty_topics: int
    trace: tuple[TraceEntry, ...]
    hyperparams: object
    seed: int
    wall_time: float


def run_fit(
    model: str,
    state: SamplerState,
    iterations: int,
    sweep: Callable[[SamplerState, np.ndarray], None],
    estimate: Callable[[SamplerState], np.ndarray],
    hyperparams: object,
    seed: int,
    coherence_scorer=None,
) -> FitResult:
    """Run ``iterations`` sweeps and collect the trace and final estimates.

    ``sweep(state, uniforms)`` performs one full pass over the corpus,
    consuming one uniform per document; ``estimate(state)`` produces the
    topics-by-words matrix. When a coherence scorer is given, the average
    topic coherence is recorded at every iteration (slow but useful for
    convergence studies).
    """
    start = time.perf_counter()
    trace = []
    for iteration in range(1, iterations + 1):
        uniforms = state.rng.random(state.n_docs)
        sweep(state, uniforms)
        coherence = None
        if coherence_scorer is not None:
            coherence = coherence_scorer.average(estimate(state), state.doc_counts)
        trace.append(TraceEntry(iteration, state.nonempty_topics(), coherence))
    rates = estimate(state)
    wall = time.perf_counter() - start
    return FitResult(
        model=model,
        assignments=state.assignments.copy(),
        rates=rates,
        nonempty_topics=state.nonempty_topics(),
        trace=tuple(trace),
        hyperparams=hyperparams,
        seed=seed,
        wall_time=wall,
    )
