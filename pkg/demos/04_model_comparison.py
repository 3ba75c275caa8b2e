"""Gamma-Poisson mixture versus the Dirichlet-multinomial baseline.

Both samplers share the same sweep machinery and both select their
topic count automatically; they differ in the count model. This demo
repeats each fit over several seeds and compares the number of topics
found and the average UMass coherence of the topics.

Run: python demos/04_model_comparison.py
"""

import numpy as np

from gpmix import (
    GsdmmHyperparams,
    Hyperparams,
    average_coherence,
    fit,
    fit_gsdmm,
    normalize_lengths,
    preprocess,
)

from synthetic import generate_corpus

lines, labels = generate_corpus(n_docs=1500, seed=19)
corpus = preprocess(lines, labels)
normalized = normalize_lengths(corpus, 20)
true_k = len(set(labels))
seeds = range(5)

gpm_topics, gpm_coherence = [], []
gsdmm_topics, gsdmm_coherence = [], []
for seed in seeds:
    g = fit(normalized, Hyperparams(k_init=100, iterations=15, seed=seed))
    d = fit_gsdmm(corpus, GsdmmHyperparams(k_init=100, iterations=15, seed=seed))
    gpm_topics.append(g.nonempty_topics)
    gsdmm_topics.append(d.nonempty_topics)
    gpm_coherence.append(average_coherence(g, corpus))
    gsdmm_coherence.append(average_coherence(d, corpus))

print(f"true number of themes: {true_k}, fits repeated over {len(list(seeds))} seeds\n")
print(f"{'model':8s} {'topics mean (sd)':>18s} {'coherence mean (sd)':>22s}")
for name, topics, coherence in (
    ("gpm", gpm_topics, gpm_coherence),
    ("gsdmm", gsdmm_topics, gsdmm_coherence),
):
    print(
        f"{name:8s} {np.mean(topics):10.1f} ({np.std(topics):.1f}) "
        f"{np.mean(coherence):14.2f} ({np.std(coherence):.2f})"
    )

print("\nper-seed topic counts")
print("  gpm  :", gpm_topics)
print("  gsdmm:", gsdmm_topics)
