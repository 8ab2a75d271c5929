"""Bundled synthetic labeled text corpus.

Real newsgroup-style datasets need a download, so the experiment harness and
the test suite fall back to this generator: five topics with mostly disjoint
vocabularies mixed with shared filler words. Documents from the same topic
end up lexically similar, which is all the drift experiments need, and the
combined vocabulary is large enough to fill a 300-term TF-IDF space.
"""

from __future__ import annotations

from .rng import make_rng

TOPIC_VOCAB = {
    "science": [
        "experiment", "laboratory", "physics", "quantum", "particle", "theory",
        "hypothesis", "measurement", "telescope", "orbit", "chemistry",
        "molecule", "neuron", "genome", "fossil", "climate", "energy",
        "reactor", "spectrum", "gravity", "cell", "bacteria", "vaccine",
        "asteroid", "galaxy", "electron", "proton", "isotope", "enzyme",
        "protein", "crystal", "magnet", "laser", "plasma", "velocity",
        "momentum", "wavelength", "frequency", "microscope", "specimen",
        "mutation", "evolution", "species", "habitat", "ecosystem", "neutron",
        "radiation", "fusion", "catalyst", "polymer", "synthesis", "organism",
        "chromosome", "antibody", "pathogen", "satellite", "observatory",
        "comet", "nebula", "supernova",
    ],
    "sports": [
        "match", "season", "league", "goal", "coach", "tournament", "player",
        "score", "stadium", "transfer", "injury", "defense", "striker",
        "title", "champion", "referee", "penalty", "overtime", "ranking",
        "medal", "sprint", "marathon", "workout", "roster", "playoff",
        "quarterback", "pitcher", "dribble", "tackle", "serve", "volley",
        "racket", "helmet", "jersey", "locker", "scrimmage", "halftime",
        "umpire", "batting", "fielder", "goalkeeper", "midfielder", "forward",
        "relay", "hurdle", "javelin", "podium", "qualifier", "standings",
        "captain", "substitute", "offside", "rebound", "dunk", "homerun",
        "inning", "lap", "regatta", "fixture", "derby",
    ],
    "finance": [
        "market", "stock", "dividend", "portfolio", "interest", "inflation",
        "earnings", "revenue", "investor", "bond", "currency", "loan",
        "mortgage", "hedge", "equity", "broker", "futures", "margin",
        "valuation", "merger", "audit", "budget", "deficit", "liquidity",
        "yield", "asset", "liability", "capital", "credit", "debit",
        "depreciation", "amortization", "arbitrage", "collateral", "default",
        "derivative", "escrow", "fiduciary", "insolvency", "leverage",
        "underwriting", "volatility", "treasury", "recession", "stimulus",
        "tariff", "subsidy", "pension", "annuity", "premium", "actuary",
        "commodity", "exchange", "index", "quarterly", "shareholder",
        "acquisition", "bankruptcy", "refinance", "solvency",
    ],
    "cooking": [
        "recipe", "oven", "butter", "garlic", "flour", "sauce", "grill",
        "simmer", "dough", "pasta", "roast", "spice", "onion", "vinegar",
        "dessert", "bake", "knife", "skillet", "broth", "marinade", "pepper",
        "salmon", "cinnamon", "yeast", "whisk", "saute", "braise", "caramel",
        "chutney", "compote", "custard", "fillet", "frosting", "ganache",
        "glaze", "gratin", "julienne", "knead", "meringue", "mince",
        "poach", "puree", "reduction", "risotto", "scald", "sear", "souffle",
        "sourdough", "tenderize", "truffle", "zest", "basil", "oregano",
        "paprika", "rosemary", "saffron", "thyme", "turmeric", "nutmeg",
        "ginger",
    ],
    "travel": [
        "flight", "hotel", "passport", "itinerary", "beach", "museum",
        "hostel", "luggage", "visa", "airport", "cruise", "backpack", "tour",
        "island", "temple", "souvenir", "border", "train", "landmark",
        "resort", "hiking", "excursion", "jetlag", "embassy", "campsite",
        "boarding", "layover", "customs", "terminal", "cabin", "voyage",
        "expedition", "safari", "trek", "pilgrimage", "lodging", "motel",
        "roadtrip", "ferry", "gondola", "lighthouse", "waterfall", "canyon",
        "glacier", "lagoon", "peninsula", "archipelago", "monument",
        "cathedral", "bazaar", "harbor", "vineyard", "castle", "fjord",
        "oasis", "dune", "summit", "trailhead", "passenger", "transit",
    ],
}

FILLER_VOCAB = [
    "the", "a", "of", "and", "to", "in", "is", "was", "for", "with", "on",
    "that", "this", "it", "as", "are", "be", "at", "by", "an", "from", "or",
    "we", "you", "they", "have", "had", "but", "not", "new", "more", "about",
    "after", "just", "one", "two", "very", "really", "today", "week",
    "people", "thing", "still", "every", "never", "quite", "while", "again",
    "other", "some", "then", "going", "because", "between", "around",
    "always", "almost", "often", "maybe", "rather",
]


def synthetic_text_corpus(
    n: int = 2000,
    seed: int = 0,
    topic_share: float = 0.7,
    min_len: int = 30,
    max_len: int = 80,
) -> list[dict]:
    """Generate n labeled documents, cycling through the five topics evenly.

    Each document draws roughly topic_share of its tokens from its topic
    vocabulary and the rest from the shared filler words.
    """
    rng = make_rng(seed)
    topics = sorted(TOPIC_VOCAB)
    rows = []
    for i in range(n):
        topic = topics[i % len(topics)]
        vocab = TOPIC_VOCAB[topic]
        length = int(rng.integers(min_len, max_len + 1))
        tokens = []
        for _ in range(length):
            if rng.random() < topic_share:
                tokens.append(vocab[int(rng.integers(len(vocab)))])
            else:
                tokens.append(FILLER_VOCAB[int(rng.integers(len(FILLER_VOCAB)))])
        rows.append({"id": f"doc-{i:05d}", "text": " ".join(tokens), "label": topic})
    return rows
