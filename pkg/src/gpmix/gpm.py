"""Gamma-Poisson mixture topic model with a collapsed Gibbs sampler.

Each document belongs to exactly one topic. Given its topic, the counts
of the individual words are independent Poisson variables whose rates
carry a shared gamma prior (shape ``alpha``, scale ``beta``); the topic
mixing weights carry a symmetric Dirichlet prior (``gamma``). Both the
rates and the mixing weights are integrated out analytically, so the
sampler only resamples the per-document topic labels. Started with a
deliberately large number of topics, the occupancy term starves surplus
topics and the number of nonempty topics at the end is the model's
estimate of the topic count.

The corpus must be length normalized first (see
:func:`gpmix.corpus.normalize_lengths`): a Poisson count is only
meaningful over a fixed exposure, so every document is rescaled to a
common length before fitting.
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
class Hyperparams:
    """Sampler configuration for the gamma-Poisson mixture.

    ``alpha`` and ``beta`` are the shape and scale of the gamma prior on
    word rates, shared across words; ``gamma`` is the Dirichlet
    concentration on the topic weights, shared across topics. ``k_init``
    is the starting number of topics, which only needs to exceed the
    number of topics actually present.
    """

    alpha: float = 0.001
    beta: float = 0.001
    gamma: float = 0.1
    k_init: int = 400
    iterations: int = 15
    norm_length: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0 or self.gamma <= 0:
            raise ValueError("prior parameters must be positive")
        if self.k_init < 1 or self.iterations < 1 or self.norm_length < 1:
            raise ValueError("k_init, iterations, and norm_length must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


def init_state(corpus: Corpus, hyper: Hyperparams) -> SamplerState:
    """Random uniform topic assignment over ``k_init`` topics."""
    if not corpus.normalized:
        raise ValueError("corpus must be length normalized before sampling")
    return engine.init_state(corpus, hyper.k_init, hyper.seed)


def conditional_log_weights(
    state: SamplerState, corpus: Corpus, doc_index: int, hyper: Hyperparams
) -> np.ndarray:
    """Unnormalized log probability of each topic for one held-out document.

    The caller must already have removed the document's contribution from
    the state's counts. Terms that do not depend on the candidate topic
    (the scale factor raised to the document length, the count
    factorials, and the mixing normalizer) are dropped.
    """
    if int(state.doc_counts.sum()) != len(corpus) - 1:
        raise ValueError("document must be excluded from the counts first")
    doc = corpus.docs[doc_index]
    n_words = len(corpus.vocab)
    occupancy = state.doc_counts.astype(np.float64)
    totals = state.word_totals.astype(np.float64)
    v_alpha = n_words * hyper.alpha

    weights = (
        np.log(occupancy + hyper.gamma)
        + (totals + v_alpha) * np.log(occupancy * hyper.beta + 1.0)
        - (totals + doc.length + v_alpha)
        * np.log(occupancy * hyper.beta + hyper.beta + 1.0)
    )
    # Rising factorial Gamma(n + alpha + c) / Gamma(n + alpha) per word,
    # accumulated as a sum of logs (same evaluation as log_gamma_ratio).
    for word_id, count in doc.counts.items():
        column = state.word_counts[:, word_id].astype(np.float64)
        for j in range(count):
            weights += np.log(column + (hyper.alpha + j))
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
    log_scale,
    lgamma_word,
    v_alpha,
    weights,
):
    # log_occupancy[i] = log(i + gamma)
    # log_scale[i] = log(i * beta + 1); note log(m*beta + beta + 1) = log_scale[m + 1]
    # lgamma_word[i] = lgamma(i + alpha)
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
            occ = doc_counts[k]
            w = (
                log_occupancy[occ]
                + (word_totals[k] + v_alpha) * log_scale[occ]
                - (word_totals[k] + length + v_alpha) * log_scale[occ + 1]
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


def _make_sweep(corpus: Corpus, hyper: Hyperparams):
    """Bind the corpus arrays and lookup tables into a one-sweep closure."""
    doc_ptr, word_ids, counts, lengths = corpus.arrays
    n_docs = len(corpus)
    total_words = int(lengths.sum())
    max_count = int(counts.max())
    log_occupancy = np.log(np.arange(n_docs + 1, dtype=np.float64) + hyper.gamma)
    log_scale = np.log(np.arange(n_docs + 2, dtype=np.float64) * hyper.beta + 1.0)
    lgamma_word = gammaln_table(total_words + max_count + 1, hyper.alpha)
    v_alpha = len(corpus.vocab) * hyper.alpha
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
            log_scale,
            lgamma_word,
            v_alpha,
            weights,
        )

    return sweep


def gibbs_sweep(state: SamplerState, corpus: Corpus, hyper: Hyperparams) -> SamplerState:
    """One full pass over the corpus, resampling each document's topic in order."""
    sweep = _make_sweep(corpus, hyper)
    sweep(state, state.rng.random(state.n_docs))
    return state


def estimate_rates(state: SamplerState, hyper: Hyperparams) -> np.ndarray:
    """Posterior mean word rate per topic: (n + alpha) / (m + 1/beta).

    Defined for empty topics too, where it falls back to the prior mean
    ``alpha * beta``.
    """
    numer = state.word_counts + hyper.alpha
    denom = state.doc_counts + 1.0 / hyper.beta
    return numer / denom[:, None]


def fit(corpus: Corpus, hyper: Hyperparams, *, coherence_scorer=None) -> FitResult:
    """Fit the mixture by collapsed Gibbs sampling with a fixed iteration budget."""
    state = init_state(corpus, hyper)
    sweep = _make_sweep(corpus, hyper)
    return engine.run_fit(
        "gpm",
        state,
        hyper.iterations,
        sweep,
        lambda s: estimate_rates(s, hyper),
        hyper,
        hyper.seed,
        coherence_scorer=coherence_scorer,
    )


def joint_log_prob(corpus, assignments, n_topics: int, alpha, beta, gamma) -> float:
    """Log joint probability of the counts and a complete topic assignment.

    Accepts a :class:`Corpus` or a dense ``(M, V)`` count matrix (the
    latter permits degenerate all-zero documents, useful in closed-form
    checks). ``alpha`` and ``beta`` may be scalars or per-word vectors;
    ``gamma`` may be a scalar or a per-topic vector. This is the exact,
    fully collapsed objective and serves as the reference against which
    the per-document conditional weights are validated; it recomputes
    everything from scratch and is not used inside the sampler.
    """
    dense = corpus.to_dense() if isinstance(corpus, Corpus) else np.asarray(corpus)
    if dense.ndim != 2:
        raise ValueError("counts must be a documents-by-words matrix")
    n_docs, n_words = dense.shape
    z = np.asarray(assignments)
    if z.shape != (n_docs,) or z.min() < 0 or z.max() >= n_topics:
        raise ValueError("assignments must give each document a topic in [0, n_topics)")

    alpha = np.broadcast_to(np.asarray(alpha, dtype=np.float64), (n_words,))
    beta = np.broadcast_to(np.asarray(beta, dtype=np.float64), (n_words,))
    gamma = np.broadcast_to(np.asarray(gamma, dtype=np.float64), (n_topics,))
    if alpha.min() <= 0 or beta.min() <= 0 or gamma.min() <= 0:
        raise ValueError("prior parameters must be positive")

    doc_counts = np.bincount(z, minlength=n_topics).astype(np.float64)
    word_counts = np.zeros((n_topics, n_words), dtype=np.float64)
    np.add.at(word_counts, z, dense.astype(np.float64))

    # Dirichlet-multinomial mixing term over topic occupancies.
    log_prob = (
        gammaln(doc_counts + gamma).sum()
        - gammaln((doc_counts + gamma).sum())
        - gammaln(gamma).sum()
        + gammaln(gamma.sum())
    )
    # Gamma-Poisson word terms; empty topics contribute exactly zero.
    log_prob += (
        gammaln(word_counts + alpha)
        - gammaln(alpha)
        + word_counts * np.log(beta)
        - (word_counts + alpha) * np.log(doc_counts[:, None] * beta + 1.0)
    ).sum()
    # Count factorials, constant in the assignment.
    log_prob -= gammaln(dense + 1.0).sum()
    return float(log_prob)
