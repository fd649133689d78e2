"""Max-margin boundary learning for general L/U automata."""

from .loop import (
    Classifier,
    LabeledSample,
    LearnConfig,
    LearnResult,
    cover_with_prefixes,
    learn_boundary,
    pair_points,
    prune_segments,
    refine,
    sample_round,
    sequential_cover,
)
from .lp import best_separation, simplex_min, strictly_separable
from .svm import Hyperplane, max_margin_separator

__all__ = [
    "Classifier", "Hyperplane", "LabeledSample", "LearnConfig", "LearnResult",
    "best_separation", "cover_with_prefixes", "learn_boundary",
    "max_margin_separator", "pair_points", "prune_segments", "refine", "sample_round",
    "sequential_cover", "simplex_min", "strictly_separable",
]
