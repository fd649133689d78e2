"""Finite unions of axis-aligned integer boxes over N^m.

Boxes are per-dimension closed intervals [lo, hi] with lo a natural and hi a
natural or math.inf.  The canonical form cuts dimension 0 at every point
where the (m-1)-dimensional slice changes and merges runs of equal slices,
recursively; equal sets therefore normalize to structurally equal box lists,
sorted lexicographically by lower corners.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

Interval = tuple[int, int | float]  # [lo, hi], hi possibly math.inf
Box = tuple[Interval, ...]


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Region:
    dims: int
    boxes: tuple[Box, ...]

    def __post_init__(self) -> None:
        for box in self.boxes:
            if len(box) != self.dims:
                raise DimensionMismatch(
                    "box of rank %d in %d-dimensional region" % (len(box), self.dims))
            for lo, hi in box:
                if lo < 0 or (not isinstance(lo, int)):
                    raise ValueError("box lower bound must be a natural: %r" % (lo,))
                if isinstance(hi, float) and hi != math.inf:
                    raise ValueError("box upper bound must be a natural or inf: %r" % (hi,))
                if hi < lo:
                    raise ValueError("empty interval [%s, %s]" % (lo, hi))

    @staticmethod
    def empty(dims: int) -> "Region":
        return Region(dims, ())

    @staticmethod
    def universe(dims: int) -> "Region":
        return Region(dims, (tuple((0, math.inf) for _ in range(dims)),))

    @staticmethod
    def of_boxes(dims: int, boxes: Iterable[Sequence[Sequence[int | float]]]) -> "Region":
        packed = tuple(tuple((int(lo), hi if hi == math.inf else int(hi)) for lo, hi in box)
                       for box in boxes)
        return Region(dims, packed)

    @staticmethod
    def single_interval(lo: int, hi: int | float) -> "Region":
        return Region(1, (((lo, hi),),))

    @property
    def is_empty(self) -> bool:
        return not self.boxes

    def member(self, point: Sequence[int]) -> bool:
        if len(point) != self.dims:
            raise DimensionMismatch(
                "point of rank %d in %d-dimensional region" % (len(point), self.dims))
        return any(all(lo <= v <= hi for v, (lo, hi) in zip(point, box))
                   for box in self.boxes)

    def union(self, other: "Region") -> "Region":
        self._check_dims(other)
        return Region(self.dims, self.boxes + other.boxes).normalize()

    def intersect(self, other: "Region") -> "Region":
        self._check_dims(other)
        out = []
        for a in self.boxes:
            for b in other.boxes:
                c = _box_intersect(a, b)
                if c is not None:
                    out.append(c)
        return Region(self.dims, tuple(out)).normalize()

    def complement(self) -> "Region":
        """Complement relative to N^dims."""
        pieces: list[Box] = [tuple((0, math.inf) for _ in range(self.dims))]
        for box in self.boxes:
            pieces = [p for piece in pieces for p in _box_subtract(piece, box)]
        return Region(self.dims, tuple(pieces)).normalize()

    def normalize(self) -> "Region":
        return Region(self.dims, _canonical(self.dims, list(self.boxes)))

    def equal(self, other: "Region") -> bool:
        self._check_dims(other)
        return self.normalize().boxes == other.normalize().boxes

    def embed(self, axis: int, value: int) -> "Region":
        """Lift into one more dimension, pinning the new axis to a point."""
        if not 0 <= axis <= self.dims:
            raise DimensionMismatch("axis %d out of range" % axis)
        boxes = tuple(box[:axis] + (((value, value)),) + box[axis:] for box in self.boxes)
        return Region(self.dims + 1, boxes)

    def _check_dims(self, other: "Region") -> None:
        if self.dims != other.dims:
            raise DimensionMismatch(
                "operands of dimension %d and %d" % (self.dims, other.dims))

    def __str__(self) -> str:
        if not self.boxes:
            return "{}"
        def iv(lo: int, hi: int | float) -> str:
            return "[%s,%s]" % (lo, "inf" if hi == math.inf else hi)
        return " u ".join("x".join(iv(lo, hi) for lo, hi in box) for box in self.boxes)


def _box_intersect(a: Box, b: Box) -> Box | None:
    out = []
    for (alo, ahi), (blo, bhi) in zip(a, b):
        lo, hi = max(alo, blo), min(ahi, bhi)
        if hi < lo:
            return None
        out.append((lo, hi))
    return tuple(out)


def _box_subtract(box: Box, cut: Box) -> list[Box]:
    """box minus cut as disjoint boxes (possibly the whole box back)."""
    if _box_intersect(box, cut) is None:
        return [box]
    out = []
    current = list(box)
    for d, ((lo, hi), (clo, chi)) in enumerate(zip(box, cut)):
        if clo > lo:
            piece = current.copy()
            piece[d] = (lo, clo - 1)
            out.append(tuple(piece))
        if chi < hi:
            piece = current.copy()
            piece[d] = (chi + 1 if isinstance(chi, int) else chi, hi)
            out.append(tuple(piece))
        current[d] = (max(lo, clo), min(hi, chi))
    return out


def _canonical(dims: int, boxes: list[Box]) -> tuple[Box, ...]:
    """Slicing normal form: canonical, disjoint, lexicographically sorted."""
    if dims == 0:
        return ((),) if boxes else ()
    if not boxes:
        return ()
    cuts: set[int | float] = set()
    for box in boxes:
        lo, hi = box[0]
        cuts.add(lo)
        cuts.add(hi + 1 if isinstance(hi, int) else math.inf)
    edges = sorted(cuts)
    runs: list[tuple[int, int | float, tuple[Box, ...]]] = []
    for start, nxt in zip(edges, edges[1:] + [math.inf]):
        if start == math.inf:
            continue
        end = nxt - 1 if isinstance(nxt, int) else math.inf
        slice_boxes = [box[1:] for box in boxes if box[0][0] <= start and start <= box[0][1]]
        canon = _canonical(dims - 1, slice_boxes)
        if not canon:
            continue
        if runs and runs[-1][2] == canon and isinstance(runs[-1][1], int) \
                and runs[-1][1] + 1 == start:
            prev = runs.pop()
            runs.append((prev[0], end, canon))
        else:
            runs.append((start, end, canon))
    out: list[Box] = []
    for lo, hi, slices in runs:
        for rest in slices:
            out.append(((lo, hi),) + rest)
    return tuple(out)
