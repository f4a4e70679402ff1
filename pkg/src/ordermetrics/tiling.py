"""Binary tiling of hyperbolic space: tile coordinates and adjacency,
hyperbolic center distances, standard up-and-down paths, branch-convex
orders on the vertical forest, and multiplicity audits.

A tile (k, a_1..a_d) is the box 2^k <= x_0 <= 2^(k+1), 2^k a_i <= x_i <=
2^k (a_i + 1) in the upper half-space model with vertical coordinate x_0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .metric import MetricSpace
from .orders import TotalOrder


@dataclass(frozen=True)
class Tile:
    k: int
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))

    @property
    def d(self) -> int:
        return len(self.a)

    @property
    def parent(self) -> "Tile":
        return Tile(self.k + 1, tuple(x // 2 for x in self.a))

    def ascendant(self, level: int) -> "Tile":
        """The tile of the given level whose branch contains this tile."""
        if level < self.k:
            raise ValueError("ascendant level below the tile's own level")
        s = level - self.k
        return Tile(level, tuple(x >> s for x in self.a))

    @property
    def component(self) -> tuple[int, ...]:
        """Sign orthant identifying the vertical-forest tree of the tile."""
        return tuple(0 if x >= 0 else -1 for x in self.a)

    @property
    def center(self) -> tuple[float, ...]:
        h = 2.0 ** self.k
        return (1.5 * h,) + tuple(h * (x + 0.5) for x in self.a)

    def label(self) -> str:
        return f"({self.k}|{','.join(str(x) for x in self.a)})"


def neighbors(t: Tile) -> list[Tile]:
    """All 2d + 2^d + 1 adjacent tiles: 2d on the level, one above, 2^d
    below."""
    out = []
    for i in range(t.d):
        for s in (-1, 1):
            a = list(t.a)
            a[i] += s
            out.append(Tile(t.k, tuple(a)))
    out.append(t.parent)
    for bits in range(1 << t.d):
        out.append(
            Tile(t.k - 1, tuple(2 * t.a[i] + ((bits >> i) & 1) for i in range(t.d)))
        )
    return out


def hyperbolic_distance(p, q) -> float:
    """Distance in the upper half-space model between points with vertical
    coordinate first."""
    if p[0] <= 0 or q[0] <= 0:
        raise ValueError("points must have positive vertical coordinate")
    sq = sum((a - b) ** 2 for a, b in zip(p, q))
    horiz = sq - (p[0] - q[0]) ** 2
    return 2.0 * math.log(
        (math.sqrt(sq) + math.sqrt((p[0] + q[0]) ** 2 + horiz))
        / (2.0 * math.sqrt(p[0] * q[0]))
    )


def tile_distance(t1: Tile, t2: Tile) -> float:
    return hyperbolic_distance(t1.center, t2.center)


def rescale(t: Tile, k: int) -> Tile:
    """Image of t under the hyperbolic isometry x -> 2^k x, which shifts
    every tile k levels while preserving the tiling."""
    return Tile(t.k + k, t.a)


def translate(t: Tile, a, level: int) -> Tile:
    """Image of t under the horizontal translation by 2^level * a_i in each
    coordinate; preserves the tiling for tiles of level at most `level`."""
    if level < t.k:
        raise ValueError("translation level below the tile's level would "
                         "shift by a fraction of the tile width")
    s = level - t.k
    return Tile(t.k, tuple(x + (int(v) << s) for x, v in zip(t.a, a)))


def are_close(t1: Tile, t2: Tile) -> bool:
    """Same level and the closed boxes share a point: every coordinate
    offset is at most 1."""
    return t1.k == t2.k and all(abs(x - y) <= 1 for x, y in zip(t1.a, t2.a))


def in_branch(t: Tile, root: Tile) -> bool:
    """Whether t's box lies inside the branch box of `root` (everything at
    root's level and below over the same horizontal footprint)."""
    if t.k > root.k:
        return False
    s = root.k - t.k
    return all(r << s <= x < (r + 1) << s for x, r in zip(t.a, root.a))


@dataclass(frozen=True)
class UpDownPath:
    tiles: tuple[Tile, ...]
    up_count: int
    horizontal_count: int
    down_count: int

    @property
    def length(self) -> int:
        return len(self.tiles) - 1


def standard_up_down_path(t1: Tile, t2: Tile) -> UpDownPath:
    """Ascend from both tiles to the first level where their ascendants are
    close, take at most d unit horizontal steps (coordinates in ascending
    index order), then descend.  Minimizes the number of vertical edges."""
    if t1.d != t2.d:
        raise ValueError("tiles live in different dimensions")
    level = max(t1.k, t2.k)
    while not are_close(t1.ascendant(level), t2.ascendant(level)):
        level += 1
    z = t1.ascendant(level)
    t = t2.ascendant(level)
    tiles = [t1.ascendant(k) for k in range(t1.k, level + 1)]
    up = level - t1.k
    cur = list(z.a)
    horiz = 0
    for i in range(t1.d):
        if cur[i] != t.a[i]:
            cur[i] = t.a[i]
            tiles.append(Tile(level, tuple(cur)))
            horiz += 1
    down_part = [t2.ascendant(k) for k in range(t2.k, level)]
    tiles.extend(reversed(down_part))
    return UpDownPath(tuple(tiles), up, horiz, len(down_part))


@dataclass(frozen=True)
class TilingWindow:
    d: int
    tiles: tuple[Tile, ...]
    index: dict = field(compare=False)
    edges: tuple  # index pairs
    graph_dist: np.ndarray = field(compare=False)

    @property
    def n(self) -> int:
        return len(self.tiles)

    def __contains__(self, t: Tile) -> bool:
        return t in self.index

    def space(self) -> MetricSpace:
        """The window's graph metric as a finite metric space."""
        return MetricSpace(tuple(t.label() for t in self.tiles), self.graph_dist)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "tiles": [[t.k, list(t.a)] for t in self.tiles],
        }

    def to_dot(self) -> str:
        lines = ["graph tiling {", "  rankdir=BT;"]
        by_level = {}
        for i, t in enumerate(self.tiles):
            by_level.setdefault(t.k, []).append(i)
        for k in sorted(by_level):
            names = " ".join(f'"{self.tiles[i].label()}"' for i in by_level[k])
            lines.append(f"  {{ rank=same; {names} }}")
        for i, j in self.edges:
            lines.append(
                f'  "{self.tiles[i].label()}" -- "{self.tiles[j].label()}";'
            )
        lines.append("}")
        return "\n".join(lines)


class DisconnectedWindowError(ValueError):
    pass


def window_from_tiles(d: int, tiles) -> TilingWindow:
    tiles = tuple(dict.fromkeys(tiles))
    if any(t.d != d for t in tiles):
        raise ValueError("tile dimension does not match the window")
    index = {t: i for i, t in enumerate(tiles)}
    edges = []
    for i, t in enumerate(tiles):
        for nb in neighbors(t):
            j = index.get(nb)
            if j is not None and i < j:
                edges.append((i, j))
    n = len(tiles)
    rows = [i for i, j in edges] + [j for i, j in edges]
    cols = [j for i, j in edges] + [i for i, j in edges]
    g = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    ncomp, _ = connected_components(g, directed=False)
    if ncomp != 1:
        raise DisconnectedWindowError(
            f"window splits into {ncomp} components; widen the level or "
            "coordinate ranges"
        )
    dist = shortest_path(g, method="D", directed=False, unweighted=True)
    return TilingWindow(d, tiles, index, tuple(edges), dist)


def build_window(d: int, levels: int, span: int) -> TilingWindow:
    """Box window: levels 0..levels-1, with ceil(span / 2^k) tiles per
    coordinate at level k, so the footprint [0, span] is covered at every
    level.  With span = 2^(levels-1) this is exactly the branch of the top
    tile."""
    if d < 1 or levels < 1 or span < 1:
        raise ValueError("need d >= 1, levels >= 1, span >= 1")
    tiles = []
    for k in range(levels):
        w = -(-span // (1 << k))
        rng = range(w)
        def rec(prefix, depth):
            if depth == d:
                tiles.append(Tile(k, tuple(prefix)))
                return
            for a in rng:
                rec(prefix + [a], depth + 1)
        rec([], 0)
    return window_from_tiles(d, tiles)


def branch_convex_order(window: TilingWindow) -> TotalOrder:
    """Pre-order walk of the window's vertical forest (roots and siblings in
    lexicographic (level descending, coordinates) order); every branch
    restricted to the window is a contiguous rank block."""
    children = {i: [] for i in range(window.n)}
    roots = []
    for i, t in enumerate(window.tiles):
        p = window.index.get(t.parent)
        if p is None:
            roots.append(i)
        else:
            children[p].append(i)
    key = lambda i: (-window.tiles[i].k, window.tiles[i].a)
    seq = []
    stack = sorted(roots, key=key, reverse=True)
    for i in children:
        children[i].sort(key=key, reverse=True)
    while stack:
        v = stack.pop()
        seq.append(v)
        stack.extend(children[v])
    return TotalOrder.from_sequence(seq)


@dataclass
class AuditReport:
    paths: int
    truncated: int
    up_edge_violations: list
    down_edge_violations: list
    max_vertex_multiplicity: int

    @property
    def ok(self) -> bool:
        return not self.up_edge_violations and not self.down_edge_violations

    def to_json(self) -> dict:
        return {
            "paths": self.paths,
            "truncated": self.truncated,
            "up_edge_violations": [
                [t1.label(), t2.label(), c] for t1, t2, c in self.up_edge_violations
            ],
            "down_edge_violations": [
                [t1.label(), t2.label(), c] for t1, t2, c in self.down_edge_violations
            ],
            "max_vertex_multiplicity": self.max_vertex_multiplicity,
        }


def multiplicity_audit(window: TilingWindow, order: TotalOrder, subset
                       ) -> AuditReport:
    """Walk the subset in decreasing order along standard up-and-down paths
    and count how often each vertical edge is used upwards and downwards.
    With every branch convex each count stays at most 1.  Paths leaving the
    window are skipped and reported as truncated."""
    pts = sorted(subset, key=lambda p: -order.rank[p])
    up_use = {}
    down_use = {}
    vertex_use = {}
    paths = truncated = 0
    for a, b in zip(pts, pts[1:]):
        path = standard_up_down_path(window.tiles[a], window.tiles[b])
        if any(t not in window for t in path.tiles):
            truncated += 1
            continue
        paths += 1
        for t in path.tiles:
            vertex_use[t] = vertex_use.get(t, 0) + 1
        seq = path.tiles
        for i in range(path.up_count):
            e = (seq[i], seq[i + 1])
            up_use[e] = up_use.get(e, 0) + 1
        off = path.up_count + path.horizontal_count
        for i in range(off, len(seq) - 1):
            e = (seq[i + 1], seq[i])  # store down edges child-to-parent too
            down_use[e] = down_use.get(e, 0) + 1
    up_bad = [(e[0], e[1], c) for e, c in up_use.items() if c > 1]
    down_bad = [(e[0], e[1], c) for e, c in down_use.items() if c > 1]
    maxv = max(vertex_use.values(), default=0)
    return AuditReport(paths, truncated, up_bad, down_bad, maxv)


@dataclass(frozen=True)
class QuasiGeodesicFit:
    a: float
    b: float
    pairs: int

    def to_json(self) -> dict:
        return {"A": self.a, "B": self.b, "pairs": self.pairs}


def quasi_geodesic_fit(window: TilingWindow, rng=None, samples: int = 2000
                       ) -> QuasiGeodesicFit:
    """Empirical (A, B) with standard-path length <= A * graph distance + B
    over sampled in-window pairs."""
    n = window.n
    if rng is None:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    else:
        pairs = [tuple(sorted(rng.choice(n, 2, replace=False))) for _ in range(samples)]
        pairs = [p for p in pairs if p[0] != p[1]]
    xs, ys = [], []
    for i, j in pairs:
        path = standard_up_down_path(window.tiles[i], window.tiles[j])
        xs.append(window.graph_dist[i, j])
        ys.append(path.length)
    xs = np.asarray(xs)
    ys = np.asarray(ys)
    a = max(1.0, float(np.polyfit(xs, ys, 1)[0])) if len(xs) > 1 else 1.0
    b = float(np.max(ys - a * xs)) if len(xs) else 0.0
    return QuasiGeodesicFit(a, max(b, 0.0), len(xs))
