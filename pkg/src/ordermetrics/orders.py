"""Total orders on metric spaces: tour lengths, cyclic shifts, pullbacks."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .metric import MetricSpace


@dataclass(frozen=True)
class TotalOrder:
    """Bijection point index -> rank in 0..n-1."""

    rank: tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(x) for x in self.rank)
        if sorted(r) != list(range(len(r))):
            raise ValueError("rank must be a bijection onto 0..n-1")
        object.__setattr__(self, "rank", r)

    @property
    def n(self) -> int:
        return len(self.rank)

    @property
    def points_by_rank(self) -> tuple[int, ...]:
        out = [0] * self.n
        for p, r in enumerate(self.rank):
            out[r] = p
        return tuple(out)

    def sort(self, points):
        return sorted(points, key=lambda p: self.rank[p])

    def sequence_labels(self, space: MetricSpace) -> list[str]:
        return [space.labels[p] for p in self.points_by_rank]

    @staticmethod
    def from_sequence(points) -> "TotalOrder":
        """Order in which `points` lists every point index in increasing
        T-order."""
        rank = [0] * len(points)
        for r, p in enumerate(points):
            rank[p] = r
        return TotalOrder(tuple(rank))

    @staticmethod
    def identity(n: int) -> "TotalOrder":
        return TotalOrder(tuple(range(n)))

    @staticmethod
    def from_labels(space: MetricSpace, labels) -> "TotalOrder":
        if sorted(labels) != sorted(space.labels):
            raise ValueError("order file labels do not match the space")
        return TotalOrder.from_sequence([space.index(l) for l in labels])


def load_order(path, space: MetricSpace) -> TotalOrder:
    with open(path) as f:
        labels = json.load(f)
    return TotalOrder.from_labels(space, labels)


def ranked_matrix(space: MetricSpace, order: TotalOrder) -> np.ndarray:
    """Distance matrix permuted so that index equals rank."""
    perm = np.asarray(order.points_by_rank)
    return np.ascontiguousarray(space.dist[np.ix_(perm, perm)])


def tour_length(space: MetricSpace, order: TotalOrder, points) -> float:
    """Length of the path visiting `points` in increasing order."""
    seq = order.sort(points)
    d = space.dist
    return float(sum(d[seq[i], seq[i + 1]] for i in range(len(seq) - 1)))


def cyclic_tour_length(space: MetricSpace, order: TotalOrder, points) -> float:
    """Open tour length plus the closing distance from the last point back
    to the first."""
    seq = order.sort(points)
    if len(seq) < 2:
        return 0.0
    d = space.dist
    return tour_length(space, order, points) + float(d[seq[-1], seq[0]])


def cyclic_shift(order: TotalOrder, x: int) -> TotalOrder:
    """The unique cyclic shift with `x` minimal: points with rank >= rank(x)
    first, then the rest, relative order preserved in both blocks."""
    rx = order.rank[x]
    pts = order.points_by_rank
    return TotalOrder.from_sequence(list(pts[rx:]) + list(pts[:rx]))


def pullback_order(phi, order_m: TotalOrder, tiebreak: TotalOrder) -> TotalOrder:
    """Order on the domain induced by an order on the codomain of `phi`
    (a list mapping domain index -> codomain index); fibers are ordered by
    `tiebreak`."""
    n = len(phi)
    if tiebreak.n != n:
        raise ValueError("tiebreak order must live on the domain")
    idx = sorted(range(n), key=lambda i: (order_m.rank[phi[i]], tiebreak.rank[i]))
    return TotalOrder.from_sequence(idx)
