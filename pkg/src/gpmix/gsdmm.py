"""Dirichlet-multinomial mixture baseline (collapsed Gibbs sampler).

The comparison baseline: one topic per document, multinomial word counts
with a symmetric Dirichlet prior ``beta``, and a symmetric Dirichlet
prior ``alpha`` on the mixing weights. It shares the sweep engine,
bookkeeping, tracing, and serialization with the gamma-Poisson model;
only the conditional weight formula and the topic-word estimator differ.
Unlike the Poisson model it consumes raw counts, so do not length
normalize the corpus first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.special import gammaln

from . import engine
from .corpus import Corpus
from .engine import FitResult, SamplerState
from .numerics import categorical_from_logs, gammaln_table


@dataclass(frozen=True)
class GsdmmHyperparams:
    """Sampler configuration for the Dirichlet-multinomial mixture."""

    alpha: float = 0.1  # Dirichlet on the topic mixing weights
    beta: float = 0.1  # Dirichlet on the per-topic word distributions
    k_init: int = 400
    iterations: int = 15
    seed: int = 0

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("prior parameters must be positive")
        if self.k_init < 1 or self.iterations < 1:
            raise ValueError("k_init and iterations must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


def init_state(corpus: Corpus, hyper: GsdmmHyperparams) -> SamplerState:
    """Random uniform topic assignment over ``k_init`` topics."""
    if corpus.normalized:
        raise ValueError("the multinomial baseline runs on raw, unnormalized counts")
    return engine.init_state(corpus, hyper.k_init, hyper.seed)


def conditional_log_weights(
    state: SamplerState, corpus: Corpus, doc_index: int, hyper: GsdmmHyperparams
) -> np.ndarray:
    """Unnormalized log probability of each topic for one held-out document.

    Word-frequency form of the Dirichlet-multinomial conditional:
    occupancy term (m + alpha), a rising factorial in (n_word + beta) per
    word occurrence, divided by a rising factorial in (n_topic + V*beta)
    over the document length. The mixing normalizer, constant in the
    topic, is dropped.
    """
    if int(state.doc_counts.sum()) != len(corpus) - 1:
        raise ValueError("document must be excluded from the counts first")
    doc = corpus.docs[doc_index]
    v_beta = len(corpus.vocab) * hyper.beta
    occupancy = state.doc_counts.astype(np.float64)
    totals = state.word_totals.astype(np.float64)

    weights = np.log(occupancy + hyper.alpha)
    for word_id, count in doc.counts.items():
        column = state.word_counts[:, word_id].astype(np.float64)
        for j in range(count):
            weights += np.log(column + (hyper.beta + j))
    for i in range(doc.length):
        weights -= np.log(totals + (v_beta + i))
    return weights


@njit(cache=True)
def _sweep_kernel(
    assignments,
    doc_counts,
    word_totals,
    word_counts,
    doc_ptr,
    word_ids,
    counts,
    lengths,
    uniforms,
    log_occupancy,
    lgamma_word,
    lgamma_total,
    weights,
):
    # log_occupancy[i] = log(i + alpha)
    # lgamma_word[i] = lgamma(i + beta)
    # lgamma_total[i] = lgamma(i + V * beta)
    n_docs = assignments.shape[0]
    n_topics = doc_counts.shape[0]
    for m in range(n_docs):
        old = assignments[m]
        length = lengths[m]
        doc_counts[old] -= 1
        word_totals[old] -= length
        if doc_counts[old] < 0 or word_totals[old] < 0:
            raise ValueError("topic counts went negative")
        for i in range(doc_ptr[m], doc_ptr[m + 1]):
            word_counts[old, word_ids[i]] -= counts[i]
            if word_counts[old, word_ids[i]] < 0:
                raise ValueError("topic counts went negative")

        for k in range(n_topics):
            total = word_totals[k]
            w = (
                log_occupancy[doc_counts[k]]
                - lgamma_total[total + length]
                + lgamma_total[total]
            )
            for i in range(doc_ptr[m], doc_ptr[m + 1]):
                n0 = word_counts[k, word_ids[i]]
                w += lgamma_word[n0 + counts[i]] - lgamma_word[n0]
            weights[k] = w

        new = categorical_from_logs(weights, uniforms[m])
        assignments[m] = new
        doc_counts[new] += 1
        word_totals[new] += length
        for i in range(doc_ptr[m], doc_ptr[m + 1]):
            word_counts[new, word_ids[i]] += counts[i]


def _make_sweep(corpus: Corpus, hyper: GsdmmHyperparams):
    """Bind the corpus arrays and lookup tables into a one-sweep closure."""
    doc_ptr, word_ids, counts, lengths = corpus.arrays
    n_docs = len(corpus)
    total_words = int(lengths.sum())
    max_len = int(lengths.max())
    log_occupancy = np.log(np.arange(n_docs + 1, dtype=np.float64) + hyper.alpha)
    lgamma_word = gammaln_table(total_words + int(counts.max()) + 1, hyper.beta)
    lgamma_total = gammaln_table(total_words + max_len + 1, len(corpus.vocab) * hyper.beta)
    weights = np.empty(hyper.k_init, dtype=np.float64)

    def sweep(state: SamplerState, uniforms: np.ndarray) -> None:
        _sweep_kernel(
            state.assignments,
            state.doc_counts,
            state.word_totals,
            state.word_counts,
            doc_ptr,
            word_ids,
            counts,
            lengths,
            uniforms,
            log_occupancy,
            lgamma_word,
            lgamma_total,
            weights,
        )

    return sweep


def gibbs_sweep(state: SamplerState, corpus: Corpus, hyper: GsdmmHyperparams) -> SamplerState:
    """One full pass over the corpus, resampling each document's topic in order."""
    sweep = _make_sweep(corpus, hyper)
    sweep(state, state.rng.random(state.n_docs))
    return state


def estimate_word_probs(state: SamplerState, hyper: GsdmmHyperparams) -> np.ndarray:
    """Smoothed per-topic word distributions: (n_word + beta) / (n_topic + V*beta).

    Every row sums to one, including rows for empty topics (which reduce
    to the uniform distribution).
    """
    n_words = state.word_counts.shape[1]
    numer = state.word_counts + hyper.beta
    denom = state.word_totals + n_words * hyper.beta
    return numer / denom[:, None]


def fit_gsdmm(corpus: Corpus, hyper: GsdmmHyperparams, *, coherence_scorer=None) -> FitResult:
    """Fit the baseline by collapsed Gibbs sampling with a fixed iteration budget."""
    state = init_state(corpus, hyper)
    sweep = _make_sweep(corpus, hyper)
    return engine.run_fit(
        "gsdmm",
        state,
        hyper.iterations,
        sweep,
        lambda s: estimate_word_probs(s, hyper),
        hyper,
        hyper.seed,
        coherence_scorer=coherence_scorer,
    )


def joint_log_prob(corpus, assignments, n_topics: int, alpha: float, beta: float) -> float:
    """Log joint probability of the counts and a complete topic assignment.

    Dirichlet-multinomial closed form, used as the enumeration oracle for
    the baseline sampler. Accepts a :class:`Corpus` or a dense ``(M, V)``
    count matrix. Includes the per-document multinomial coefficients,
    which are constant in the assignment.
    """
    dense = corpus.to_dense() if isinstance(corpus, Corpus) else np.asarray(corpus)
    if dense.ndim != 2:
        raise ValueError("counts must be a documents-by-words matrix")
    n_docs, n_words = dense.shape
    z = np.asarray(assignments)
    if z.shape != (n_docs,) or z.min() < 0 or z.max() >= n_topics:
        raise ValueError("assignments must give each document a topic in [0, n_topics)")
    if alpha <= 0 or beta <= 0:
        raise ValueError("prior parameters must be positive")

    doc_counts = np.bincount(z, minlength=n_topics).astype(np.float64)
    word_counts = np.zeros((n_topics, n_words), dtype=np.float64)
    np.add.at(word_counts, z, dense.astype(np.float64))

    # Mixing term.
    log_prob = (
        gammaln(doc_counts + alpha).sum()
        - gammaln(n_docs + n_topics * alpha)
        - n_topics * gammaln(alpha)
        + gammaln(n_topics * alpha)
    )
    # Per-topic Dirichlet-multinomial word terms.
    log_prob += (
        gammaln(word_counts + beta).sum()
        - gammaln(word_counts.sum(axis=1) + n_words * beta).sum()
        - n_topics * (n_words * gammaln(beta) - gammaln(n_words * beta))
    )
    # Multinomial coefficients, constant in the assignment.
    lengths = dense.sum(axis=1)
    log_prob += gammaln(lengths + 1.0).sum() - gammaln(dense + 1.0).sum()
    return float(log_prob)
