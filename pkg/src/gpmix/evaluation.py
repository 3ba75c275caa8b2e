"""Topic extraction, UMass coherence, and word-frequency diagnostics.

Coherence is computed over document co-occurrence counts taken from the
preprocessed, unnormalized corpus: length normalization rescales counts
but coherence is about which documents actually contain which words.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log
from typing import Sequence

import numpy as np
from scipy import stats

from .corpus import Corpus, Vocabulary
from .engine import FitResult


class DocFrequencyIndex:
    """Document frequency D(w) and co-document frequency D(w, w') lookups.

    ``single`` maps each indexed word id to the number of documents that
    contain it. Pair counts are computed from per-word document-id sets on
    first use and cached in ``pair`` under the sorted id pair.
    """

    def __init__(self, doc_sets: dict[int, frozenset[int]]):
        self._doc_sets = doc_sets
        self.single: dict[int, int] = {w: len(s) for w, s in doc_sets.items()}
        self.pair: dict[tuple[int, int], int] = {}

    @classmethod
    def from_corpus(cls, corpus: Corpus, words: Sequence[int] | None = None) -> "DocFrequencyIndex":
        """Index the given word ids (default: the whole vocabulary)."""
        n_words = len(corpus.vocab)
        if words is None:
            wanted = None
        else:
            wanted = set(words)
            for word_id in wanted:
                if not 0 <= word_id < n_words:
                    raise ValueError(f"unknown word id {word_id}")
        doc_sets: dict[int, set[int]] = {}
        for m, doc in enumerate(corpus.docs):
            for word_id in doc.counts:
                if wanted is None or word_id in wanted:
                    doc_sets.setdefault(word_id, set()).add(m)
        for word_id in range(n_words) if wanted is None else wanted:
            doc_sets.setdefault(word_id, set())
        return cls({w: frozenset(s) for w, s in doc_sets.items()})

    def doc_count(self, word_id: int) -> int:
        """Number of documents containing the word."""
        try:
            return self.single[word_id]
        except KeyError:
            raise ValueError(f"word id {word_id} is not in the index") from None

    def co_doc_count(self, first: int, second: int) -> int:
        """Number of documents containing both words; D(w, w) equals D(w)."""
        if first == second:
            return self.doc_count(first)
        key = (first, second) if first < second else (second, first)
        count = self.pair.get(key)
        if count is None:
            if first not in self._doc_sets or second not in self._doc_sets:
                missing = first if first not in self._doc_sets else second
                raise ValueError(f"word id {missing} is not in the index")
            count = len(self._doc_sets[key[0]] & self._doc_sets[key[1]])
            self.pair[key] = count
        return count


def build_doc_frequency_index(corpus: Corpus, words: Sequence[int]) -> DocFrequencyIndex:
    """Exact document and co-document counts for the given word ids."""
    return DocFrequencyIndex.from_corpus(corpus, words)


def top_word_ids(rates: np.ndarray, n: int) -> np.ndarray:
    """Ids of the ``n`` largest entries, ties broken by lowest id."""
    rates = np.asarray(rates)
    if not 2 <= n <= rates.shape[0]:
        raise ValueError(f"n must be between 2 and {rates.shape[0]}")
    return np.argsort(-rates, kind="stable")[:n]


def top_words(rates: np.ndarray, vocab: Vocabulary, n: int) -> list[str]:
    """The ``n`` words with the largest rates, in descending order."""
    return [vocab[int(i)] for i in top_word_ids(rates, n)]


def umass_coherence(word_ids: Sequence[int], index: DocFrequencyIndex, epsilon: float = 1.0) -> float:
    """UMass coherence of an ordered top-word list.

    Sum over ordered pairs (j earlier than i) of
    ``log((D(w_i, w_j) + epsilon) / D(w_j))``. Higher (closer to zero)
    means the topic's words co-occur more.
    """
    if len(word_ids) < 2:
        raise ValueError("need at least two words to score coherence")
    score = 0.0
    for i in range(1, len(word_ids)):
        for j in range(i):
            denom = index.doc_count(word_ids[j])
            if denom < 1:
                raise ValueError(f"word id {word_ids[j]} occurs in no document")
            score += log((index.co_doc_count(word_ids[i], word_ids[j]) + epsilon) / denom)
    return score


@dataclass(frozen=True)
class TopicSummary:
    """One nonempty topic: its size, ranked top words, and coherence."""

    topic_id: int
    doc_count: int
    top_words: tuple[tuple[str, float], ...]
    coherence: float


class CoherenceScorer:
    """Reusable coherence evaluator bound to an unnormalized corpus.

    Builds the document-frequency index once; suitable for scoring every
    iteration of a fit as well as final results.
    """

    def __init__(self, corpus: Corpus, top_n: int = 10, epsilon: float = 1.0):
        if corpus.normalized:
            raise ValueError("coherence must be scored on the unnormalized corpus")
        self.corpus = corpus
        self.top_n = top_n
        self.epsilon = epsilon
        self.index = DocFrequencyIndex.from_corpus(corpus)

    def topic_coherence(self, rates: np.ndarray) -> float:
        n = min(self.top_n, rates.shape[0])
        ids = [int(i) for i in top_word_ids(rates, n)]
        return umass_coherence(ids, self.index, self.epsilon)

    def average(self, rates: np.ndarray, doc_counts: np.ndarray) -> float:
        """Unweighted mean coherence over nonempty topics."""
        nonempty = np.flatnonzero(doc_counts)
        if nonempty.size == 0:
            raise ValueError("no nonempty topics to score")
        return float(np.mean([self.topic_coherence(rates[k]) for k in nonempty]))


def summarize_topics(fit: FitResult, corpus: Corpus, top_n: int = 10) -> list[TopicSummary]:
    """Rank and score the nonempty topics of a fit against an unnormalized corpus."""
    scorer = CoherenceScorer(corpus, top_n)
    doc_counts = np.bincount(fit.assignments, minlength=fit.rates.shape[0])
    summaries = []
    for k in np.flatnonzero(doc_counts):
        ids = top_word_ids(fit.rates[k], min(top_n, fit.rates.shape[1]))
        words = tuple((corpus.vocab[int(i)], float(fit.rates[k, i])) for i in ids)
        coherence = umass_coherence([int(i) for i in ids], scorer.index)
        summaries.append(TopicSummary(int(k), int(doc_counts[k]), words, coherence))
    return summaries


def average_coherence(fit: FitResult, corpus: Corpus, top_n: int = 10) -> float:
    """Mean UMass coherence over the topics the model actually found."""
    scorer = CoherenceScorer(corpus, top_n)
    doc_counts = np.bincount(fit.assignments, minlength=fit.rates.shape[0])
    return scorer.average(fit.rates, doc_counts)


def _resolve_word(corpus: Corpus, word) -> int:
    if isinstance(word, str):
        if word not in corpus.vocab:
            raise ValueError(f"unknown word {word!r}")
        return corpus.vocab.index[word]
    word_id = int(word)
    if not 0 <= word_id < len(corpus.vocab):
        raise ValueError(f"unknown word id {word_id}")
    return word_id


@dataclass(frozen=True)
class PoissonFit:
    """Observed versus Poisson-predicted document counts per word frequency.

    ``observed[f]`` is the number of documents containing the word exactly
    ``f`` times (f = 0 .. max observed); ``predicted[f]`` is the matching
    expectation ``M * Poisson(f; rate)`` under the maximum likelihood rate.
    The predicted values sum to M over all f >= 0; the stored arrays stop
    at the largest observed frequency.
    """

    word: str
    rate: float
    frequencies: np.ndarray
    observed: np.ndarray
    predicted: np.ndarray


def poisson_fit_diagnostic(corpus: Corpus, word) -> PoissonFit:
    """How well a single Poisson fits one word's per-document counts."""
    word_id = _resolve_word(corpus, word)
    n_docs = len(corpus)
    counts = np.array([doc.counts.get(word_id, 0) for doc in corpus.docs], dtype=np.int64)
    rate = float(counts.mean())
    max_f = int(counts.max())
    frequencies = np.arange(max_f + 1)
    observed = np.bincount(counts, minlength=max_f + 1)
    predicted = n_docs * stats.poisson.pmf(frequencies, rate)
    return PoissonFit(corpus.vocab[word_id], rate, frequencies, observed, predicted)


@dataclass(frozen=True)
class DispersionStat:
    """Per-document count mean, population variance, and their ratio."""

    word: str
    mean: float
    variance: float
    ratio: float


def dispersion_diagnostic(corpus: Corpus, words: Sequence) -> list[DispersionStat]:
    """Check each word's counts for overdispersion relative to a Poisson.

    A variance-to-mean ratio near one is consistent with a Poisson; well
    above one suggests a heavier-tailed count model would be needed.
    Counts include the zeros from documents that lack the word.
    """
    results = []
    for word in words:
        word_id = _resolve_word(corpus, word)
        counts = np.array([doc.counts.get(word_id, 0) for doc in corpus.docs], dtype=np.float64)
        mean = float(counts.mean())
        variance = float(counts.var())
        ratio = variance / mean if mean > 0 else float("nan")
        results.append(DispersionStat(corpus.vocab[word_id], mean, variance, ratio))
    return results
