"""Finite metric spaces: construction, validation and JSON I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

ABS_TOL = 1e-9


class FormatError(ValueError):
    """Malformed matrix / file input."""


class DisconnectedGraphError(ValueError):
    def __init__(self, components):
        self.components = components
        super().__init__(
            f"graph is disconnected; components: {[sorted(c) for c in components]}"
        )


@dataclass(frozen=True)
class MetricSpace:
    """Finite point set with a symmetric nonnegative distance matrix.

    Immutable after construction; safe to share between workers.
    """

    labels: tuple[str, ...]
    dist: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise FormatError(f"distance matrix must be square, got shape {d.shape}")
        if len(self.labels) != d.shape[0]:
            raise FormatError("label count does not match matrix size")
        if np.any(d < 0):
            i, j = np.argwhere(d < 0)[0]
            raise FormatError(f"negative distance at ({i},{j})")
        d = d.copy()
        d.flags.writeable = False
        object.__setattr__(self, "dist", d)
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def diameter(self, points=None) -> float:
        if points is None:
            return float(self.dist.max())
        idx = np.asarray(points)
        return float(self.dist[np.ix_(idx, idx)].max())

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "matrix": self.dist.tolist()}


def space(matrix, labels=None) -> MetricSpace:
    m = np.asarray(matrix, dtype=float)
    if labels is None:
        labels = [str(i) for i in range(m.shape[0])]
    return MetricSpace(tuple(labels), m)


@dataclass(frozen=True)
class Violation:
    kind: str  # diagonal | symmetry | coincident | triangle
    indices: tuple[int, ...]
    detail: str


@dataclass
class ValidationReport:
    n: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [
                {"kind": v.kind, "indices": list(v.indices), "detail": v.detail}
                for v in self.violations
            ],
        }


def validate_metric(m, tol: float = ABS_TOL) -> ValidationReport:
    """Check the metric axioms, listing every violation with its witness.

    Non-square or negative input raises FormatError; axiom failures are
    reported, not raised.
    """
    if isinstance(m, MetricSpace):
        d = m.dist
    else:
        d = np.asarray(m, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise FormatError(f"distance matrix must be square, got shape {d.shape}")
        if np.any(d < 0):
            i, j = np.argwhere(d < 0)[0]
            raise FormatError(f"negative distance at ({i},{j})")
    n = d.shape[0]
    report = ValidationReport(n=n)
    for i in range(n):
        if abs(d[i, i]) > tol:
            report.violations.append(
                Violation("diagonal", (i,), f"dist[{i}][{i}] = {d[i, i]!r} != 0")
            )
    for i, j in zip(*np.nonzero(np.abs(d - d.T) > tol)):
        if i < j:
            report.violations.append(
                Violation(
                    "symmetry", (int(i), int(j)),
                    f"dist[{i}][{j}] = {d[i, j]!r} != dist[{j}][{i}] = {d[j, i]!r}",
                )
            )
    for i, j in zip(*np.nonzero(d <= tol)):
        if i < j:
            report.violations.append(
                Violation("coincident", (int(i), int(j)),
                          f"off-diagonal dist[{i}][{j}] = {d[i, j]!r} is not positive")
            )
    # triangle inequality, vectorized over the middle point
    for j in range(n):
        bad = d > d[:, j:j + 1] + d[j:j + 1, :] + tol
        for i, k in zip(*np.nonzero(bad)):
            if i < k and i != j and k != j:
                report.violations.append(
                    Violation(
                        "triangle", (int(i), int(j), int(k)),
                        f"dist[{i}][{k}] = {d[i, k]!r} > "
                        f"dist[{i}][{j}] + dist[{j}][{k}] = {d[i, j] + d[j, k]!r}",
                    )
                )
    return report


def shortest_path_metric(edges, labels=None, n=None) -> MetricSpace:
    """All-pairs shortest-path metric of a connected weighted graph.

    `edges` is a list of (i, j, w) with positive weights; vertices are
    0..n-1 (n inferred from the edges unless given).
    """
    edges = [(int(i), int(j), float(w)) for i, j, w in edges]
    for i, j, w in edges:
        if w <= 0:
            raise FormatError(f"edge ({i},{j}) has non-positive weight {w}")
    if n is None:
        n = max(max(i, j) for i, j, _ in edges) + 1 if edges else 0
    if labels is not None:
        n = max(n, len(labels))
    rows = [e[0] for e in edges] + [e[1] for e in edges]
    cols = [e[1] for e in edges] + [e[0] for e in edges]
    vals = [e[2] for e in edges] * 2
    g = csr_matrix((vals, (rows, cols)), shape=(n, n))
    ncomp, comp = connected_components(g, directed=False)
    if ncomp != 1:
        groups = [list(np.nonzero(comp == c)[0]) for c in range(ncomp)]
        raise DisconnectedGraphError(groups)
    d = dijkstra(g, directed=False)
    d = np.minimum(d, d.T)
    if labels is None:
        labels = [str(i) for i in range(n)]
    return MetricSpace(tuple(labels), d)


def space_from_json(data) -> MetricSpace:
    """Load a space from the JSON file schema: either an explicit matrix
    {"labels": [...], "matrix": [[...]]} or a weighted edge list
    {"labels": [...], "edges": [[i, j, w], ...]}."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if "matrix" in data:
        labels = data.get("labels") or [str(i) for i in range(len(data["matrix"]))]
        return MetricSpace(tuple(labels), np.asarray(data["matrix"], dtype=float))
    if "edges" in data:
        labels = data.get("labels")
        return shortest_path_metric(data["edges"], labels=labels)
    raise FormatError("space file needs a 'matrix' or 'edges' key")


def load_space(path) -> MetricSpace:
    with open(path) as f:
        return space_from_json(json.load(f))
