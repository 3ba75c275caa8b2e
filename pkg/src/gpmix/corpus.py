"""Corpus loading, preprocessing, and document length normalization.

Documents are stored as sparse bags of words: a mapping from integer word
id to a positive count. The expected input format is one document per
line of UTF-8 text, optionally accompanied by a parallel label file with
one label per line.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .stopwords import STOPWORDS

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"[a-z]+")


class Vocabulary:
    """Bijection between word strings and integer ids in ``[0, V)``."""

    __slots__ = ("terms", "index")

    def __init__(self, terms: Iterable[str]):
        self.terms: tuple[str, ...] = tuple(terms)
        if any(not t for t in self.terms):
            raise ValueError("vocabulary contains an empty term")
        self.index: dict[str, int] = {t: i for i, t in enumerate(self.terms)}
        if len(self.index) != len(self.terms):
            raise ValueError("vocabulary contains duplicate terms")

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, word: str) -> bool:
        return word in self.index

    def __getitem__(self, word_id: int) -> str:
        return self.terms[word_id]

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"Vocabulary({len(self.terms)} terms)"


@dataclass(frozen=True)
class Document:
    """One document as a sparse count vector over the vocabulary."""

    counts: Mapping[int, int]  # word id -> count; zero counts are implicit
    length: int  # total number of word occurrences
    label: str | None = None

    def __post_init__(self):
        if not self.counts:
            raise ValueError("document has no words")
        if any(c < 1 for c in self.counts.values()):
            raise ValueError("document counts must be positive")
        if self.length != sum(self.counts.values()):
            raise ValueError("document length does not equal the sum of its counts")

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], label: str | None = None) -> "Document":
        return cls(dict(counts), sum(counts.values()), label)


@dataclass(frozen=True)
class Corpus:
    """An immutable collection of documents over a shared vocabulary."""

    docs: tuple[Document, ...]
    vocab: Vocabulary
    normalized: bool = False

    def __post_init__(self):
        if not self.docs:
            raise ValueError("corpus has no documents")
        n_words = len(self.vocab)
        for doc in self.docs:
            for word_id in doc.counts:
                if not 0 <= word_id < n_words:
                    raise ValueError(f"word id {word_id} outside vocabulary of size {n_words}")

    def __len__(self) -> int:
        return len(self.docs)

    @property
    def labels(self) -> tuple[str | None, ...]:
        return tuple(doc.label for doc in self.docs)

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Flat sparse representation ``(doc_ptr, word_ids, word_counts, doc_lengths)``.

        Document ``m`` occupies slots ``doc_ptr[m]:doc_ptr[m + 1]`` of
        ``word_ids`` / ``word_counts``. Word ids appear in ascending order
        within each document.
        """
        ptr = np.zeros(len(self.docs) + 1, dtype=np.int64)
        lengths = np.zeros(len(self.docs), dtype=np.int64)
        ids: list[int] = []
        cnts: list[int] = []
        for m, doc in enumerate(self.docs):
            for word_id in sorted(doc.counts):
                ids.append(word_id)
                cnts.append(doc.counts[word_id])
            ptr[m + 1] = len(ids)
            lengths[m] = doc.length
        return (
            ptr,
            np.asarray(ids, dtype=np.int64),
            np.asarray(cnts, dtype=np.int64),
            lengths,
        )

    def to_dense(self) -> np.ndarray:
        """Dense ``(M, V)`` count matrix. Intended for small corpora."""
        dense = np.zeros((len(self.docs), len(self.vocab)), dtype=np.int64)
        for m, doc in enumerate(self.docs):
            for word_id, count in doc.counts.items():
                dense[m, word_id] = count
        return dense


@dataclass(frozen=True)
class CorpusStats:
    """Summary statistics of a corpus, computed on unnormalized counts."""

    num_docs: int
    vocab_size: int
    num_classes: int | None
    avg_len: float
    sd_len: float
    min_len: int
    max_len: int


def load_corpus(path, label_path=None) -> tuple[list[str], list[str] | None]:
    """Read raw documents (one per line) and optional parallel labels.

    Blank document lines are skipped; when a label file is given it must
    have exactly one line per document line, and labels paired with blank
    document lines are dropped to preserve alignment.
    """
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if label_path is not None:
        label_lines = Path(label_path).read_text(encoding="utf-8").splitlines()
        if len(label_lines) != len(lines):
            raise ValueError(
                f"label/document count mismatch: {len(label_lines)} labels "
                f"for {len(lines)} document lines"
            )
        pairs = [(d, l) for d, l in zip(lines, label_lines) if d.strip()]
        docs = [d for d, _ in pairs]
        labels = [l.strip() for _, l in pairs]
    else:
        docs = [d for d in lines if d.strip()]
        labels = None
    if not docs:
        raise ValueError(f"no documents in {path}")
    return docs, labels


def tokenize(text: str, stop_words=STOPWORDS, min_token_length: int = 2) -> list[str]:
    """Lowercase, split on non-alphabetic characters, drop short tokens and stop words."""
    return [
        tok
        for tok in _TOKEN_RE.findall(text.lower())
        if len(tok) >= min_token_length and tok not in stop_words
    ]


def preprocess(
    raw_docs: Sequence[str],
    labels: Sequence[str] | None = None,
    *,
    stop_words=STOPWORDS,
    min_token_length: int = 2,
) -> Corpus:
    """Tokenize raw documents and build a corpus of count vectors.

    Documents left with no tokens are dropped (with their labels). The
    vocabulary assigns ids in order of first appearance, so the result is
    fully determined by the input.
    """
    if not raw_docs:
        raise ValueError("no documents to preprocess")
    if labels is not None and len(labels) != len(raw_docs):
        raise ValueError("labels do not align with documents")

    index: dict[str, int] = {}
    docs: list[Document] = []
    dropped = 0
    for i, text in enumerate(raw_docs):
        tokens = tokenize(text, stop_words, min_token_length)
        if not tokens:
            dropped += 1
            continue
        counts: Counter[int] = Counter()
        for tok in tokens:
            word_id = index.setdefault(tok, len(index))
            counts[word_id] += 1
        docs.append(
            Document(dict(counts), sum(counts.values()), labels[i] if labels else None)
        )
    if not docs:
        raise ValueError("all documents empty after preprocessing")
    if dropped:
        logger.info("dropped %d empty documents during preprocessing", dropped)
    return Corpus(tuple(docs), Vocabulary(index))


def normalize_lengths(corpus: Corpus, target_length: int = 20) -> Corpus:
    """Rescale every document so its total count is approximately ``target_length``.

    Each count ``c`` in a document of length ``L`` becomes
    ``round(target_length * c / L)`` with halves rounded away from zero
    (computed in exact integer arithmetic). Entries that round to zero are
    removed; if that would empty a document, its most frequent original
    word (ties broken by lowest word id) is kept with count 1.
    """
    if corpus.normalized:
        raise ValueError("corpus is already length normalized")
    if target_length < 1:
        raise ValueError("target length must be at least 1")

    docs = []
    for doc in corpus.docs:
        new_counts = {}
        for word_id, count in doc.counts.items():
            scaled = (2 * target_length * count + doc.length) // (2 * doc.length)
            if scaled > 0:
                new_counts[word_id] = scaled
        if not new_counts:
            keep = min(doc.counts, key=lambda w: (-doc.counts[w], w))
            new_counts[keep] = 1
        docs.append(Document(new_counts, sum(new_counts.values()), doc.label))
    return Corpus(tuple(docs), corpus.vocab, normalized=True)


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Document count, vocabulary size, and document length moments.

    Call this before :func:`normalize_lengths`; the reported lengths are
    those of the corpus as given.
    """
    lengths = np.array([doc.length for doc in corpus.docs], dtype=np.int64)
    labels = [doc.label for doc in corpus.docs if doc.label is not None]
    return CorpusStats(
        num_docs=len(corpus.docs),
        vocab_size=len(corpus.vocab),
        num_classes=len(set(labels)) if labels else None,
        avg_len=float(lengths.mean()),
        sd_len=float(lengths.std()),
        min_len=int(lengths.min()),
        max_len=int(lengths.max()),
    )
