"""Gamma-Poisson mixture topic modelling for short text.

A one-topic-per-document mixture model for word counts with a collapsed
Gibbs sampler that selects the number of topics automatically, plus the
Dirichlet-multinomial mixture baseline, UMass coherence evaluation, and
a seeded experiment harness.
"""

__version__ = "0.1.0"

from .corpus import (
    Corpus,
    CorpusStats,
    Document,
    Vocabulary,
    corpus_stats,
    load_corpus,
    normalize_lengths,
    preprocess,
    tokenize,
)
from .engine import FitResult, SamplerState, TraceEntry
from .evaluation import (
    CoherenceScorer,
    DispersionStat,
    DocFrequencyIndex,
    PoissonFit,
    TopicSummary,
    average_coherence,
    build_doc_frequency_index,
    dispersion_diagnostic,
    poisson_fit_diagnostic,
    summarize_topics,
    top_word_ids,
    top_words,
    umass_coherence,
)
from .experiments import (
    CellSummary,
    ExperimentConfig,
    ExperimentResult,
    RunRecord,
    emit_reports,
    run_experiment,
)
from .gpm import Hyperparams, estimate_rates, fit, joint_log_prob
from .gsdmm import GsdmmHyperparams, estimate_word_probs, fit_gsdmm
from .numerics import log_gamma_ratio, sample_topic
from .stopwords import STOPWORDS, STOPWORDS_VERSION

__all__ = [
    "Corpus",
    "CorpusStats",
    "Document",
    "Vocabulary",
    "corpus_stats",
    "load_corpus",
    "normalize_lengths",
    "preprocess",
    "tokenize",
    "FitResult",
    "SamplerState",
    "TraceEntry",
    "CoherenceScorer",
    "DispersionStat",
    "DocFrequencyIndex",
    "PoissonFit",
    "TopicSummary",
    "average_coherence",
    "build_doc_frequency_index",
    "dispersion_diagnostic",
    "poisson_fit_diagnostic",
    "summarize_topics",
    "top_word_ids",
    "top_words",
    "umass_coherence",
    "CellSummary",
    "ExperimentConfig",
    "ExperimentResult",
    "RunRecord",
    "emit_reports",
    "run_experiment",
    "Hyperparams",
    "estimate_rates",
    "fit",
    "joint_log_prob",
    "GsdmmHyperparams",
    "estimate_word_probs",
    "fit_gsdmm",
    "log_gamma_ratio",
    "sample_topic",
    "STOPWORDS",
    "STOPWORDS_VERSION",
    "__version__",
]
