"""Shared builders for small, exactly-specified test corpora."""

from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from gpmix import Corpus, Document, Vocabulary


def corpus_from_counts(count_dicts, n_words, normalized=False, labels=None):
    """Build a corpus directly from word-id count dicts, skipping preprocessing."""
    vocab = Vocabulary([f"w{i}" for i in range(n_words)])
    if labels is None:
        labels = [None] * len(count_dicts)
    docs = tuple(
        Document(dict(counts), sum(counts.values()), label)
        for counts, label in zip(count_dicts, labels)
    )
    return Corpus(docs, vocab, normalized=normalized)


def random_corpus(rng, n_docs, n_words, max_count=3, normalized=False):
    """Random sparse counts with every document nonempty."""
    count_dicts = []
    for _ in range(n_docs):
        counts = {}
        for w in range(n_words):
            c = int(rng.integers(0, max_count + 1))
            if c:
                counts[w] = c
        if not counts:
            counts[int(rng.integers(n_words))] = 1
        count_dicts.append(counts)
    return corpus_from_counts(count_dicts, n_words, normalized=normalized)


def all_assignments(n_docs, n_topics):
    """Every complete topic assignment, in lexicographic order."""
    return [np.array(z, dtype=np.int64) for z in product(range(n_topics), repeat=n_docs)]


def exact_posterior(corpus, n_topics, joint_fn):
    """Normalized posterior over complete assignments via enumeration of a joint."""
    zs = all_assignments(len(corpus), n_topics)
    logs = np.array([joint_fn(corpus, z) for z in zs])
    probs = np.exp(logs - logs.max())
    probs /= probs.sum()
    return zs, probs


def state_with_doc_removed(corpus, assignments, n_topics, doc_index, seed=0):
    """Sampler state for a full assignment, with one document's counts removed."""
    from gpmix.engine import SamplerState, recompute_counts

    assignments = np.asarray(assignments, dtype=np.int64)
    doc_counts, word_totals, word_counts = recompute_counts(corpus, assignments, n_topics)
    state = SamplerState(
        assignments.copy(), doc_counts, word_totals, word_counts, np.random.default_rng(seed)
    )
    doc = corpus.docs[doc_index]
    topic = int(assignments[doc_index])
    state.doc_counts[topic] -= 1
    state.word_totals[topic] -= doc.length
    for word_id, count in doc.counts.items():
        state.word_counts[topic, word_id] -= count
    return state


def conditional_from_joint(corpus, assignments, n_topics, doc_index, joint_fn):
    """Exact conditional topic distribution for one document via the joint."""
    probs = np.empty(n_topics)
    logs = np.empty(n_topics)
    for topic in range(n_topics):
        z = np.asarray(assignments, dtype=np.int64).copy()
        z[doc_index] = topic
        logs[topic] = joint_fn(corpus, z)
    probs = np.exp(logs - logs.max())
    return probs / probs.sum()


def normalize_log_weights(log_weights):
    probs = np.exp(log_weights - np.max(log_weights))
    return probs / probs.sum()


def reference_sweep(module, state, corpus, hyper):
    """One Gibbs sweep built from the public per-document operations.

    Uses conditional_log_weights and sample_topic directly, consuming one
    uniform per document exactly like the compiled sweep.
    """
    from gpmix import sample_topic

    for m, doc in enumerate(corpus.docs):
        old = int(state.assignments[m])
        state.doc_counts[old] -= 1
        state.word_totals[old] -= doc.length
        for word_id, count in doc.counts.items():
            state.word_counts[old, word_id] -= count
        weights = module.conditional_log_weights(state, corpus, m, hyper)
        new = sample_topic(weights, state.rng)
        state.assignments[m] = new
        state.doc_counts[new] += 1
        state.word_totals[new] += doc.length
        for word_id, count in doc.counts.items():
            state.word_counts[new, word_id] += count


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
