"""Constructions of universal orders: rooted tree orders, laminar-convex
orders, bit-interleave square orders, Star orders, clockwise orders on
acyclic gluings, and glued copies.

Continuous figures (circle, tripod, domino, graph edges) are realized as
evenly discretized finite spaces; the density parameter is recorded by the
callers that emit files.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .metric import MetricSpace, shortest_path_metric
from .orders import TotalOrder, cyclic_shift

MAX_SQUARE_EXPONENT = 16


# ---------------------------------------------------------------------------
# rooted trees


@dataclass(frozen=True)
class RootedTree:
    """parent[v] is None exactly for the root; children lists fix the DFS
    order; edge_length[v] is the length of the edge to the parent."""

    parent: tuple
    children: tuple
    edge_length: tuple

    def __post_init__(self):
        roots = [v for v, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise ValueError(f"tree must have exactly one root, found {roots}")
        seen = set()
        stack = [roots[0]]
        while stack:
            v = stack.pop()
            if v in seen:
                raise ValueError("cycle detected in tree")
            seen.add(v)
            stack.extend(self.children[v])
        if len(seen) != self.n:
            raise ValueError("some vertices are unreachable from the root")

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def root(self) -> int:
        return next(v for v, p in enumerate(self.parent) if p is None)

    @staticmethod
    def from_parents(parent, edge_length=None) -> "RootedTree":
        n = len(parent)
        children = [[] for _ in range(n)]
        for v, p in enumerate(parent):
            if p is not None:
                children[p].append(v)
        if edge_length is None:
            edge_length = [1.0] * n
        return RootedTree(
            tuple(parent), tuple(tuple(c) for c in children), tuple(edge_length)
        )


def tree_space(tree: RootedTree) -> MetricSpace:
    edges = [
        (p, v, tree.edge_length[v])
        for v, p in enumerate(tree.parent)
        if p is not None
    ]
    if not edges:
        return MetricSpace(("0",), np.zeros((1, 1)))
    return shortest_path_metric(edges, n=tree.n)


def rooted_order(tree: RootedTree) -> TotalOrder:
    """First-visit DFS order: ascendants come before their descendants and
    every branch occupies a contiguous rank interval."""
    seq = []
    stack = [tree.root]
    while stack:
        v = stack.pop()
        seq.append(v)
        stack.extend(reversed(tree.children[v]))
    return TotalOrder.from_sequence(seq)


def branch(tree: RootedTree, v: int) -> set[int]:
    out = set()
    stack = [v]
    while stack:
        u = stack.pop()
        out.add(u)
        stack.extend(tree.children[u])
    return out


def is_convex(order: TotalOrder, subset) -> bool:
    """No outside point ranks strictly between two subset points."""
    ranks = sorted(order.rank[p] for p in subset)
    if not ranks:
        return True
    return ranks[-1] - ranks[0] == len(ranks) - 1


def is_hierarchical(tree: RootedTree, order: TotalOrder) -> bool:
    return all(is_convex(order, branch(tree, v)) for v in range(tree.n))


# ---------------------------------------------------------------------------
# laminar families


class NotLaminarError(ValueError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"sets {sorted(a)} and {sorted(b)} cross")


def laminar_convex_order(n: int, sets) -> TotalOrder:
    """An order on 0..n-1 under which every family set is convex, built by
    recursive splitting on a maximal proper family set."""
    family = [frozenset(s) for s in sets]
    for a in family:
        if not a <= frozenset(range(n)):
            raise ValueError(f"set {sorted(a)} leaves the ground set")
    for i, a in enumerate(family):
        for b in family[i + 1:]:
            if a & b and not (a <= b or b <= a):
                raise NotLaminarError(a, b)

    def build(cell: frozenset) -> list[int]:
        proper = [a for a in family if a < cell and a]
        if not proper:
            return sorted(cell)
        b1 = max(proper, key=len)
        return build(b1) + build(cell - b1)

    return TotalOrder.from_sequence(build(frozenset(range(n))))


# ---------------------------------------------------------------------------
# bit-interleave square order


def interleave_key(i: int, j: int, m: int) -> float:
    """Binary key 0.a1 b1 a2 b2... for the grid point (i/2^m, j/2^m)."""
    c = 0.0
    for t in range(1, m + 1):
        a = (i >> (m - t)) & 1
        b = (j >> (m - t)) & 1
        c += a * 2.0 ** -(2 * t - 1) + b * 2.0 ** -(2 * t)
    return c


def interleave_square_order(m: int) -> tuple[MetricSpace, TotalOrder]:
    """2^m x 2^m grid of points (i/2^m, j/2^m) with the Euclidean metric,
    ordered by the interleaved-bit key."""
    if m > MAX_SQUARE_EXPONENT:
        raise ValueError(f"grid exponent {m} exceeds the key width limit "
                         f"{MAX_SQUARE_EXPONENT}")
    size = 1 << m
    coords = [(i / size, j / size) for i in range(size) for j in range(size)]
    labels = [f"({i}/{size},{j}/{size})" for i in range(size) for j in range(size)]
    arr = np.asarray(coords)
    diff = arr[:, None, :] - arr[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    sp = MetricSpace(tuple(labels), dist)
    keys = [interleave_key(i, j, m) for i in range(size) for j in range(size)]
    seq = sorted(range(size * size), key=lambda p: keys[p])
    return sp, TotalOrder.from_sequence(seq)


def dyadic_square(m: int, level: int, p: int, q: int) -> list[int]:
    """Point indices of the dyadic sub-square (p, q) at `level` (side
    2^(m-level) grid steps)."""
    size = 1 << m
    step = 1 << (m - level)
    return [
        i * size + j
        for i in range(p * step, (p + 1) * step)
        for j in range(q * step, (q + 1) * step)
    ]


# ---------------------------------------------------------------------------
# discretized figures


def circle_space(n: int, length: float = 1.0) -> tuple[MetricSpace, TotalOrder]:
    """n evenly spaced points on a circle with its inner metric; the returned
    order is the clockwise one."""
    step = length / n
    idx = np.arange(n)
    k = np.abs(idx[:, None] - idx[None, :])
    dist = np.minimum(k, n - k) * step
    sp = MetricSpace(tuple(str(i) for i in range(n)), dist)
    return sp, TotalOrder.identity(n)


def tripod_space(n: int, seg_len: float = 1.0) -> MetricSpace:
    """Center plus n points on each of three segments (3n+1 points)."""
    step = seg_len / n
    edges = []
    labels = ["c"]
    for s in range(3):
        prev = 0
        for i in range(1, n + 1):
            v = len(labels)
            labels.append(f"s{s}_{i}")
            edges.append((prev, v, step))
            prev = v
    return shortest_path_metric(edges, labels=labels)


def domino_space(density: int = 20, lengths=(1.0, 1.0, 1.0)) -> MetricSpace:
    """Two vertices joined by three disjoint paths (a cycle with a chord),
    each path discretized at `density` points per unit length."""
    labels = ["A", "B"]
    edges = []
    for p, ln in enumerate(lengths):
        segs = max(2, round(ln * density))
        step = ln / segs
        prev = 0
        for i in range(1, segs):
            v = len(labels)
            labels.append(f"p{p}_{i}")
            edges.append((prev, v, step))
            prev = v
        edges.append((prev, 1, step))
    return shortest_path_metric(edges, labels=labels)


# ---------------------------------------------------------------------------
# Star orders


@dataclass(frozen=True)
class StarSpace:
    """A graph with edges included: vertices plus 2m-1 interior sample points
    per unit edge, each point owned by exactly one star figure."""

    space: MetricSpace
    owner: tuple[int, ...]  # point index -> owning vertex
    n_vertices: int
    edges: tuple
    m: int

    def figure(self, v: int) -> list[int]:
        return [p for p, w in enumerate(self.owner) if w == v]

    def half_edge(self, v: int, u: int) -> list[int]:
        """Points of the half-edge from v towards u owned by v's figure."""
        prefix = f"e{min(v, u)}_{max(v, u)}_"
        out = []
        for p, lab in enumerate(self.space.labels):
            if self.owner[p] == v and lab.startswith(prefix):
                out.append(p)
        return out


def star_order(n_vertices: int, edges, order_v: TotalOrder, m: int = 2
               ) -> tuple[StarSpace, TotalOrder]:
    """The Star(T) order on a unit-edge graph: each edge carries 2m-1 sample
    points; the midpoint joins the half of the T-smaller endpoint.  Figures
    follow the vertex order; inside a figure half-edges go from the vertex
    outward (neighbors in ascending vertex order) and the vertex itself
    comes last."""
    edges = [tuple(sorted((int(u), int(v)))) for u, v in edges]
    labels = [f"v{v}" for v in range(n_vertices)]
    owner = list(range(n_vertices))
    wedges = []
    # position of a half-edge point inside its figure: (neighbor rank, step)
    figure_pos = {v: (1, 0, 0) for v in range(n_vertices)}  # vertex largest
    seg = 1.0 / (2 * m)
    for u, v in edges:
        prev = u
        for i in range(1, 2 * m):
            p = len(labels)
            labels.append(f"e{u}_{v}_{i}")
            wedges.append((prev, p, seg))
            prev = p
            if i < m or (i == m and order_v.rank[u] < order_v.rank[v]):
                own, nb, step = u, v, i
            else:
                own, nb, step = v, u, 2 * m - i
            owner.append(own)
            figure_pos[p] = (0, order_v.rank[nb], step)
        wedges.append((prev, v, seg))
    sp = shortest_path_metric(wedges, labels=labels)
    seq = sorted(
        range(len(labels)),
        key=lambda p: (order_v.rank[owner[p]],) + figure_pos[p],
    )
    star = StarSpace(sp, tuple(owner), n_vertices, tuple(edges), m)
    return star, TotalOrder.from_sequence(seq)


# ---------------------------------------------------------------------------
# acyclic gluings


@dataclass(frozen=True)
class AcyclicGluing:
    """Tree-structured wedge of ordered spaces.  Each joint is a list of
    (component index, point index) pairs that are identified into one
    point; the bipartite component/joint graph must be a tree."""

    components: tuple  # of (MetricSpace, TotalOrder)
    joints: tuple  # of tuples of (comp, point)

    def __post_init__(self):
        ncomp = len(self.components)
        used = set()
        edges = 0
        adj = [set() for _ in range(ncomp)]
        for j, pairs in enumerate(self.joints):
            for c, p in pairs:
                if not (0 <= c < ncomp):
                    raise ValueError(f"joint {j} names unknown component {c}")
                sp, _ = self.components[c]
                if not (0 <= p < sp.n):
                    raise ValueError(f"joint {j} names unknown point {p} of "
                                     f"component {c}")
                if (c, p) in used:
                    raise ValueError(f"point {p} of component {c} used by two joints")
                used.add((c, p))
                adj[c].add(j)
                edges += 1
        nodes = ncomp + len(self.joints)
        if edges != nodes - 1:
            raise ValueError("component/joint incidence graph is not a tree")
        # connectivity of the bipartite graph
        if ncomp:
            seen_c, seen_j = {0}, set()
            frontier = [("c", 0)]
            while frontier:
                kind, x = frontier.pop()
                if kind == "c":
                    for j in adj[x]:
                        if j not in seen_j:
                            seen_j.add(j)
                            frontier.append(("j", j))
                else:
                    for c, _ in self.joints[x]:
                        if c not in seen_c:
                            seen_c.add(c)
                            frontier.append(("c", c))
            if len(seen_c) != ncomp or len(seen_j) != len(self.joints):
                raise ValueError("component/joint incidence graph is not connected")

    def joint_point(self, j: int, c: int) -> int:
        for cc, p in self.joints[j]:
            if cc == c:
                return p
        raise KeyError(f"joint {j} does not touch component {c}")


def glue(gluing: AcyclicGluing) -> tuple[MetricSpace, list[list[int]]]:
    """Build the glued metric space; returns it plus, per component, the map
    from local point index to global index."""
    joint_of = {}
    for j, pairs in enumerate(gluing.joints):
        for c, p in pairs:
            joint_of[(c, p)] = j
    gid = {}
    labels = []
    maps = []
    joint_gid = {}
    for c, (sp, _) in enumerate(gluing.components):
        local = []
        for p in range(sp.n):
            j = joint_of.get((c, p))
            if j is not None and j in joint_gid:
                local.append(joint_gid[j])
                continue
            g = len(labels)
            labels.append(f"j{j}" if j is not None else f"c{c}:{sp.labels[p]}")
            if j is not None:
                joint_gid[j] = g
            local.append(g)
        maps.append(local)
    n = len(labels)
    edges = []
    for c, (sp, _) in enumerate(gluing.components):
        for p in range(sp.n):
            for q in range(p + 1, sp.n):
                edges.append((maps[c][p], maps[c][q], float(sp.dist[p, q])))
    glued = shortest_path_metric(edges, labels=labels, n=n)
    return glued, maps


def clockwise_order(gluing: AcyclicGluing, base_joint: int
                    ) -> tuple[MetricSpace, TotalOrder]:
    """Recursive clockwise order: the base joint first, then each component
    hanging off a joint in the cyclic shift of its own order that makes the
    joint minimal, with subtrees inserted at first visit."""
    glued, maps = glue(gluing)
    comps_at = [[] for _ in gluing.joints]
    joints_of = [[] for _ in gluing.components]
    for j, pairs in enumerate(gluing.joints):
        for c, p in pairs:
            comps_at[j].append(c)
            joints_of[c].append(j)
    seq = []
    seen_comp = set()

    def visit_comp(c: int, entry_joint: int):
        seen_comp.add(c)
        sp, t = gluing.components[c]
        entry_pt = gluing.joint_point(entry_joint, c)
        shifted = cyclic_shift(t, entry_pt)
        jp = {gluing.joint_point(j, c): j for j in joints_of[c]}
        for p in shifted.points_by_rank:
            if p == entry_pt:
                continue
            seq.append(maps[c][p])
            j = jp.get(p)
            if j is not None:
                for c2 in comps_at[j]:
                    if c2 not in seen_comp:
                        visit_comp(c2, j)

    base_gid = maps[comps_at[base_joint][0]][
        gluing.joint_point(base_joint, comps_at[base_joint][0])
    ]
    seq.append(base_gid)
    for c in sorted(comps_at[base_joint]):
        if c not in seen_comp:
            visit_comp(c, base_joint)
    return glued, TotalOrder.from_sequence(seq)


# ---------------------------------------------------------------------------
# glued copies


def glue_copies(space: MetricSpace, order: TotalOrder, omega, s: int
                ) -> tuple[MetricSpace, TotalOrder]:
    """s copies of (space, order) glued over the shared subset omega.
    The order keeps all of copy 1 first, then the extra points of each later
    copy, each block ordered as in the original."""
    omega = sorted(set(int(x) for x in omega))
    if not omega:
        raise ValueError("omega must be nonempty (the gluing would be disconnected)")
    if s < 1:
        raise ValueError("need at least one copy")
    n = space.n
    others = [p for p in range(n) if p not in omega]
    gid = {}
    labels = []
    for p in range(n):
        gid[(0, p)] = len(labels)
        labels.append(f"m1:{space.labels[p]}")
    for i in range(1, s):
        for p in omega:
            gid[(i, p)] = gid[(0, p)]
        for p in others:
            gid[(i, p)] = len(labels)
            labels.append(f"m{i + 1}:{space.labels[p]}")
    total = len(labels)
    dist = np.zeros((total, total))
    d = space.dist
    # crossing a copy boundary means passing through some shared point
    via = {}
    for p in range(n):
        for q in range(n):
            via[(p, q)] = min(d[p, w] + d[w, q] for w in omega)
    for i in range(s):
        for j in range(s):
            for p in range(n):
                a = gid[(i, p)]
                for q in range(n):
                    b = gid[(j, q)]
                    if a == b:
                        continue
                    same = i == j or (p in omega and q in omega)
                    val = d[p, q] if same else via[(p, q)]
                    dist[a, b] = val
    sp = MetricSpace(tuple(labels), dist)
    seq = []
    for p in order.points_by_rank:
        seq.append(gid[(0, p)])
    for i in range(1, s):
        for p in order.points_by_rank:
            if p not in omega:
                seq.append(gid[(i, p)])
    return sp, TotalOrder.from_sequence(seq)


# ---------------------------------------------------------------------------
# random instances (seeded; used by experiments and tests)


def random_metric_space(rng: np.random.Generator, n: int,
                        low: float = 1.0, high: float = 2.0) -> MetricSpace:
    """Distances uniform in [low, high] with high <= 2*low always satisfy the
    triangle inequality."""
    a = rng.uniform(low, high, size=(n, n))
    d = np.triu(a, 1)
    d = d + d.T
    return MetricSpace(tuple(str(i) for i in range(n)), d)


def random_order(rng: np.random.Generator, n: int) -> TotalOrder:
    return TotalOrder.from_sequence(list(rng.permutation(n)))


def random_rooted_tree(rng: np.random.Generator, n: int,
                       weighted: bool = True) -> RootedTree:
    parent = [None] + [int(rng.integers(0, v)) for v in range(1, n)]
    lengths = [0.0] + list(rng.uniform(0.5, 2.0, n - 1)) if weighted else None
    return RootedTree.from_parents(parent, lengths)


def random_connected_graph(rng: np.random.Generator, nv: int, extra_edges: int = 1):
    """Random spanning tree plus a few extra edges; returns the edge list."""
    edges = set()
    for v in range(1, nv):
        edges.add((int(rng.integers(0, v)), v))
    tries = 0
    while extra_edges > 0 and tries < 50:
        u, v = sorted(rng.choice(nv, 2, replace=False).tolist())
        tries += 1
        if (u, v) not in edges:
            edges.add((u, v))
            extra_edges -= 1
    return sorted(edges)


def random_gluing(rng: np.random.Generator, n_components: int,
                  max_component_points: int = 5) -> AcyclicGluing:
    comps = []
    for _ in range(n_components):
        nc = int(rng.integers(2, max_component_points + 1))
        comps.append((random_metric_space(rng, nc), random_order(rng, nc)))
    joints = []
    used = set()

    def fresh_point(c):
        free = [p for p in range(comps[c][0].n) if (c, p) not in used]
        if not free:
            return None
        p = free[int(rng.integers(0, len(free)))]
        used.add((c, p))
        return p

    for c in range(1, n_components):
        prev_choices = list(rng.permutation(c))
        for prev in prev_choices:
            p_prev = fresh_point(int(prev))
            if p_prev is not None:
                break
        joints.append((
            (int(prev), p_prev),
            (c, fresh_point(c)),
        ))
    if not joints:
        joints.append(((0, int(rng.integers(0, comps[0][0].n))),))
    return AcyclicGluing(tuple(comps), tuple(tuple(j) for j in joints))
