"""Oracle-labeled boundary learning for L/U automata.

Round 0 samples parameter points uniformly from the box [0, B]^m and labels
them with the model checker.  Each round pairs good with bad points by
greedy nearest matching, separates the longest separable prefix with a
maximum-margin plane, and repeats on the remainder (sequential covering).
Later rounds sample integer points within a margin of the current boundary
segments.  A query point is classified by the side it takes relative to its
nearest segment.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .. import mc
from ..core import (
    Property,
    Pta,
    Quantifier,
    classify_params,
    ParamClass,
)
from .svm import Hyperplane, max_margin_separator

Point = tuple[int, ...]


@dataclass(frozen=True)
class LabeledSample:
    point: Point
    label: str  # "good" | "bad"
    round_index: int


@dataclass(frozen=True)
class LearnConfig:
    samples_per_round: int = 40
    box_bound: int = 10
    margin: int = 1
    max_rounds: int = 5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.samples_per_round < 2:
            raise ValueError("need at least two samples per round")
        if self.box_bound < 1 or self.margin < 1 or self.max_rounds < 1:
            raise ValueError("box bound, margin, and rounds must be >= 1")


@dataclass
class Classifier:
    segments: list[Hyperplane] = field(default_factory=list)
    archive: list[LabeledSample] = field(default_factory=list)

    def classify(self, point: Sequence[int]) -> str:
        """Side of the nearest segment; archive majority when empty."""
        if not self.segments:
            goods = sum(1 for s in self.archive if s.label == "good")
            return "good" if goods * 2 >= len(self.archive) else "bad"
        best = None
        best_dist = None
        for seg in self.segments:
            d = seg.distance_squared(point)
            if best_dist is None or d < best_dist:
                best, best_dist = seg, d
        return "good" if best.classifies_good(point) else "bad"


@dataclass
class LearnResult:
    classifier: Classifier
    config: LearnConfig
    rounds_run: int
    notes: list[str] = field(default_factory=list)

    @property
    def archive(self) -> list[LabeledSample]:
        return self.classifier.archive


def _require_lu_reachability(pta: Pta, prop: Property) -> None:
    if prop.quantifier is not Quantifier.EXISTS_EVENTUALLY:
        raise ValueError("boundary learning needs an E<> property")
    classes = classify_params(pta, prop)
    mixed = sorted(p for p, c in classes.items() if c is ParamClass.MIXED)
    if mixed:
        raise ValueError("mixed parameter(s) %s: not an L/U automaton" % mixed)
    if not pta.params:
        raise ValueError("the automaton has no parameters to learn over")


def _label(pta: Pta, prop: Property, point: Point) -> str:
    valuation = dict(zip(pta.params, point))
    return "good" if mc.check(pta, valuation, prop) else "bad"


def sample_round(pta: Pta, prop: Property, cfg: LearnConfig,
                 rng: random.Random, round_index: int) -> tuple[list[Point], list[Point]]:
    """Uniform lattice samples over [0, B]^m, labeled by the checker."""
    _require_lu_reachability(pta, prop)
    m = len(pta.params)
    good: list[Point] = []
    bad: list[Point] = []
    for _ in range(cfg.samples_per_round):
        point = tuple(rng.randint(0, cfg.box_bound) for _ in range(m))
        (good if _label(pta, prop, point) == "good" else bad).append(point)
    return good, bad


def pair_points(good: Sequence[Point], bad: Sequence[Point]) -> list[tuple[Point, Point]]:
    """Greedy nearest matching into |G| = |B| pairs, near pairs first.

    The shorter side is padded by repeating its last element (after
    sorting), then pairs are picked by ascending squared distance with
    lexicographic tie-breaks, consuming each slot once.
    """
    g = sorted(good)
    b = sorted(bad)
    if not g or not b:
        raise ValueError("both classes must be nonempty")
    while len(g) < len(b):
        g.append(g[-1])
    while len(b) < len(g):
        b.append(b[-1])

    def dist2(u: Point, v: Point) -> int:
        return sum((a - c) ** 2 for a, c in zip(u, v))

    candidates = sorted(
        (dist2(g[i], b[j]), g[i], b[j], i, j)
        for i in range(len(g)) for j in range(len(b)))
    used_g: set[int] = set()
    used_b: set[int] = set()
    pairs: list[tuple[Point, Point]] = []
    for _d, gp, bp, i, j in candidates:
        if i in used_g or j in used_b:
            continue
        used_g.add(i)
        used_b.add(j)
        pairs.append((gp, bp))
        if len(pairs) == len(g):
            break
    return pairs


def cover_with_prefixes(good: Sequence[Point], bad: Sequence[Point],
                        ) -> list[tuple[Hyperplane, int]]:
    """Sequential covering: (segment, pairs covered) per emitted plane."""
    pairs = pair_points(good, bad)
    out: list[tuple[Hyperplane, int]] = []
    start = 0
    n = len(pairs)
    while start < n:
        window = pairs[start:]

        def separable(h: int) -> Hyperplane | None:
            gs = [p[0] for p in window[:h]]
            bs = [p[1] for p in window[:h]]
            return max_margin_separator(gs, bs)

        lo, hi = 1, len(window)
        if separable(hi) is not None:
            lo = hi
        else:
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if separable(mid) is not None:
                    lo = mid
                else:
                    hi = mid - 1
        plane = separable(lo)
        assert plane is not None, "a single good/bad pair is always separable"
        out.append((plane, lo))
        start += lo
    return out


def sequential_cover(good: Sequence[Point], bad: Sequence[Point]) -> list[Hyperplane]:
    return [plane for plane, _covered in cover_with_prefixes(good, bad)]


def refine(classifier: Classifier, pta: Pta, prop: Property, cfg: LearnConfig,
           rng: random.Random, round_index: int,
           ) -> tuple[list[Point], list[Point], list[str]]:
    """Boundary-proximal integer samples within the margin of some segment."""
    if not classifier.segments:
        raise ValueError("refinement needs at least one boundary segment")
    m = len(pta.params)
    good: list[Point] = []
    bad: list[Point] = []
    notes: list[str] = []
    margin_sq = Fraction(cfg.margin) ** 2
    produced = 0
    for k in range(cfg.samples_per_round):
        seg = classifier.segments[k % len(classifier.segments)]
        point = _near_segment_point(seg, m, cfg, rng, margin_sq)
        if point is None:
            continue
        produced += 1
        (good if _label(pta, prop, point) == "good" else bad).append(point)
    if produced == 0:
        notes.append("round %d: no integer point within margin %d of any segment"
                     % (round_index, cfg.margin))
    return good, bad, notes


def _near_segment_point(seg: Hyperplane, m: int, cfg: LearnConfig,
                        rng: random.Random, margin_sq: Fraction,
                        attempts: int = 24) -> Point | None:
    pin = max(range(m), key=lambda k: abs(seg.weights[k]))
    norm_sq = sum(w * w for w in seg.weights)
    for _ in range(attempts):
        free = [rng.randint(0, cfg.box_bound) for _ in range(m)]
        # solve the plane for the pinned axis, then snap to nearby integers
        rest = sum((seg.weights[k] * free[k] for k in range(m) if k != pin),
                   start=Fraction(0))
        t = -(seg.bias + rest) / seg.weights[pin]
        base = int(t) if t >= 0 else -int(-t) - 1
        candidates = []
        for off in (-1, 0, 1, 2):
            v = base + off
            if not 0 <= v <= cfg.box_bound:
                continue
            point = tuple(v if k == pin else free[k] for k in range(m))
            value = seg.value(point)
            if value * value <= margin_sq * norm_sq:
                candidates.append(point)
        if candidates:
            return candidates[rng.randrange(len(candidates))]
    return None


def _archive_accuracy(segments: Sequence[Hyperplane], archive: list[LabeledSample]) -> int:
    cl = Classifier(list(segments), archive)
    return sum(cl.classify(s.point) == s.label for s in archive)


def prune_segments(segments: Sequence[Hyperplane],
                   archive: list[LabeledSample]) -> list[Hyperplane]:
    """Backward elimination of segments that do not help archive accuracy.

    Covering the padded pair tail can emit planes deep inside one region;
    under nearest-segment classification those mislabel whole bands, and
    dropping them never hurts the training points they were fit to.  Later
    segments are tried first since covering emits the artifact planes last.
    """
    segs = list(segments)
    improved = True
    while improved and len(segs) > 1:
        improved = False
        base = _archive_accuracy(segs, archive)
        for k in range(len(segs) - 1, -1, -1):
            trial = segs[:k] + segs[k + 1:]
            if _archive_accuracy(trial, archive) >= base:
                segs = trial
                improved = True
                break
    return segs


def learn_boundary(pta: Pta, prop: Property, cfg: LearnConfig) -> LearnResult:
    """sample -> cover (+ prune) -> refine rounds with the L4 stopping rule."""
    _require_lu_reachability(pta, prop)
    rng = random.Random(cfg.seed)
    classifier = Classifier()
    notes: list[str] = []
    rounds_run = 0
    for round_index in range(cfg.max_rounds):
        rounds_run += 1
        if classifier.segments:
            good, bad, refine_notes = refine(classifier, pta, prop, cfg, rng, round_index)
            notes.extend(refine_notes)
        else:
            good, bad = sample_round(pta, prop, cfg, rng, round_index)
        new_samples = [LabeledSample(p, "good", round_index) for p in good]
        new_samples += [LabeledSample(p, "bad", round_index) for p in bad]
        if classifier.segments and new_samples and all(
                classifier.classify(s.point) == s.label for s in new_samples):
            classifier.archive.extend(new_samples)
            notes.append("round %d: all new samples already classified correctly"
                         % round_index)
            break
        classifier.archive.extend(new_samples)
        all_good = sorted({s.point for s in classifier.archive if s.label == "good"})
        all_bad = sorted({s.point for s in classifier.archive if s.label == "bad"})
        if not all_good or not all_bad:
            side = "bad" if not all_bad else "good"
            notes.append("round %d: no %s samples; nothing to separate"
                         % (round_index, side))
            continue
        classifier.segments = prune_segments(
            sequential_cover(all_good, all_bad), classifier.archive)
    return LearnResult(classifier, cfg, rounds_run, notes)
