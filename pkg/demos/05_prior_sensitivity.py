"""How the gamma prior steers the number of topics.

Small shape values make the topic weights sensitive to word overlap, so
many fine topics survive; large shape values hand the decision to topic
occupancy and documents pile into a few topics. The scale parameter
matters far less. The sweep runs through the experiment harness, which
also writes the plot-ready summary CSV.

Run: python demos/05_prior_sensitivity.py
"""

import tempfile
from pathlib import Path

from gpmix import ExperimentConfig, emit_reports, run_experiment

from synthetic import generate_corpus

lines, _ = generate_corpus(n_docs=1200, seed=23)
workdir = Path(tempfile.mkdtemp(prefix="prior_sweep_"))
dataset = workdir / "corpus.txt"
dataset.write_text("\n".join(lines) + "\n")

config = ExperimentConfig(
    model="gpm",
    input_path=str(dataset),
    k_init=(40,),
    alpha=(0.01, 0.05, 0.25, 0.5, 0.75, 1.0, 2.0),
    beta=(5.0, 2.0, 1.0, 0.5, 0.2),
    iterations=15,
    runs=1,
    base_seed=0,
)
result = run_experiment(config)
emit_reports(result, workdir / "reports")

alphas = sorted({c.alpha for c in result.summaries})
betas = sorted({c.beta for c in result.summaries}, reverse=True)
table = {(c.alpha, c.beta): c.topics_mean for c in result.summaries}

print("final topic count for each shape (alpha) / scale (beta) pair\n")
print("alpha:   " + "".join(f"{a:>8g}" for a in alphas))
for b in betas:
    row = "".join(f"{table[(a, b)]:8.0f}" for a in alphas)
    print(f"beta {b:>4g}{row}")

print(f"\nfull reports under {workdir / 'reports'}")
