"""Shared generator for a small synthetic short-text corpus.

The demos need a corpus that behaves like real short text (a few words
per document, one underlying theme each, plenty of shared filler) but
ships with the repository. Documents are emitted as raw text lines so
the demos exercise the full preprocessing pipeline.
"""

import numpy as np

THEMES = {
    "football": """goal striker keeper penalty midfield defender referee corner
        tackle offside league fixture derby squad winger cross header pitch""",
    "markets": """stocks shares bond yield inflation earnings forecast rally
        trader index portfolio dividend hedge selloff futures ipo margin""",
    "astronomy": """telescope galaxy comet orbit nebula asteroid lunar eclipse
        observatory spectrum quasar supernova parallax crater meteor probe""",
    "cooking": """recipe oven garlic simmer dough whisk saute broth seasoning
        skillet marinade roast chop glaze crust butter knead zest""",
    "cycling": """peloton sprint climb descent breakaway saddle cadence gear
        puncture stage podium domestique crankset helmet drafting tempo""",
    "gardening": """soil compost seedling prune mulch perennial bloom trellis
        weed fertilizer shade cutting rootstock pollinator bed hedge""",
    "aviation": """runway cockpit altitude turbulence fuselage pilot taxi takeoff
        descent airspace hangar throttle flaps radar beacon crosswind""",
    "chess": """gambit endgame knight bishop rook castling zugzwang blunder
        opening variation sacrifice checkmate tempo pawn file rank""",
    "coffee": """espresso roast grinder crema barista filter bloom pourover
        arabica tamp portafilter acidity decaf brew dose extraction""",
    "hiking": """trail ridge summit scramble switchback cairn basecamp valley
        moraine traverse scree bivouac compass gaiters saddle creek""",
    "sailing": """mainsail jib tack gybe keel rudder halyard winch spinnaker
        leeward windward mooring regatta knot helm bowline""",
    "photography": """aperture shutter exposure bokeh tripod lens focal iso
        viewfinder histogram raw flash composition contrast frame print""",
}

FILLER = """today really great new time good day week year back little still
    people thing lot bit look going getting right best again""".split()


def theme_words():
    return {name: words.split() for name, words in THEMES.items()}


def generate_corpus(n_docs=1500, themes=None, seed=0, noise=0.15, mean_extra_words=5):
    """Return (raw text lines, labels) drawn from a one-theme-per-document mixture."""
    rng = np.random.default_rng(seed)
    vocabularies = theme_words()
    names = sorted(vocabularies) if themes is None else list(themes)
    lines, labels = [], []
    for _ in range(n_docs):
        name = names[int(rng.integers(len(names)))]
        words = []
        for _ in range(2 + int(rng.poisson(mean_extra_words))):
            if rng.random() < noise:
                words.append(FILLER[int(rng.integers(len(FILLER)))])
            else:
                theme = vocabularies[name]
                words.append(theme[int(rng.integers(len(theme)))])
        lines.append(" ".join(words))
        labels.append(name)
    return lines, labels
