"""Automatic selection of the number of topics.

Start the sampler with far more topics than the data plausibly
contains. Because a document prefers topics that already hold
documents, surplus topics starve within a few sweeps and the count of
nonempty topics settles near the true number of themes, regardless of
the (sufficiently large) starting value.

Run: python demos/03_automatic_topic_count.py
"""

from gpmix import Hyperparams, fit, normalize_lengths, preprocess

from synthetic import generate_corpus

lines, labels = generate_corpus(n_docs=1500, seed=11)
corpus = preprocess(lines, labels)
normalized = normalize_lengths(corpus, 20)
true_k = len(set(labels))
print(f"{len(corpus)} documents drawn from {true_k} themes\n")

print("starting K -> nonempty topics per iteration")
for k_init in (5, 20, 50, 100, 200, 400):
    result = fit(normalized, Hyperparams(k_init=k_init, iterations=15, seed=1))
    path = " ".join(f"{t.nonempty_topics:3d}" for t in result.trace)
    print(f"  {k_init:4d} -> {path}")

print(
    "\nwith a small starting K the model cannot exceed it; once K is large\n"
    "enough, the final count stabilizes near the underlying theme count"
)
