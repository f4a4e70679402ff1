"""Reproducible experiments: seeded generators, analysis runners with CSV
and JSON reports, and the acceptance checks behind `experiment
reproduce-all`."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, Field, field_validator

from . import builders, ratio, snakes, tiling
from .metric import ABS_TOL, MetricSpace, shortest_path_metric
from .orders import TotalOrder, pullback_order, ranked_matrix
from .ratio import or_profile, order_ratio
from .tours import SubsetInstance, opt_path_length

SIX_POINT_MATRIX = (
    (0.0, 1.0, 1.5, 1.7, 1.5, 2.0),
    (1.0, 0.0, 1.8, 1.6, 1.5, 1.6),
    (1.5, 1.8, 0.0, 1.0, 1.7, 2.0),
    (1.7, 1.6, 1.0, 0.0, 1.3, 1.6),
    (1.5, 1.5, 1.7, 1.3, 0.0, 1.7),
    (2.0, 1.6, 2.0, 1.6, 1.7, 0.0),
)


def six_point_space() -> MetricSpace:
    """Six points on which exactly the natural order and its reverse
    minimize OR(2), while a different order wins at OR(3)."""
    return MetricSpace(tuple(str(i + 1) for i in range(6)),
                       np.asarray(SIX_POINT_MATRIX))


# ---------------------------------------------------------------------------
# experiment specs


class GeneratorSpec(BaseModel):
    kind: str
    params: dict[str, Any] = Field(default_factory=dict)


class AnalysisSpec(BaseModel):
    kind: str  # or | or-cyclic | br | snake | best-order | audit
    params: dict[str, Any] = Field(default_factory=dict)


class ExperimentSpec(BaseModel):
    name: str
    seed: int = 0
    generator: GeneratorSpec
    order: str = "default"  # default | identity | random
    analyses: list[AnalysisSpec]

    @field_validator("analyses")
    @classmethod
    def _nonempty(cls, v):
        if not v:
            raise ValueError("experiment needs at least one analysis")
        return v

    def digest(self) -> str:
        payload = json.dumps(self.model_dump(), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class Generated:
    space: MetricSpace
    order: TotalOrder | None = None
    window: "tiling.TilingWindow | None" = None


def _gen_random(rng, n: int = 8):
    sp = builders.random_metric_space(rng, n)
    return Generated(sp, builders.random_order(rng, n))


def _gen_tree(rng, n: int = 10):
    t = builders.random_rooted_tree(rng, n)
    return Generated(builders.tree_space(t), builders.rooted_order(t))


def _gen_circle(rng, n: int = 8, length: float = 1.0):
    sp, o = builders.circle_space(n, length)
    return Generated(sp, o)


def _gen_tripod(rng, n: int = 5, seg_len: float = 1.0):
    return Generated(builders.tripod_space(n, seg_len))


def _gen_domino(rng, density: int = 20):
    return Generated(builders.domino_space(density))


def _gen_square(rng, m: int = 2):
    sp, o = builders.interleave_square_order(m)
    return Generated(sp, o)


def _gen_star(rng, nv: int = 4, extra_edges: int = 1, m: int = 3):
    edges = builders.random_connected_graph(rng, nv, extra_edges)
    star, o = builders.star_order(nv, edges, TotalOrder.identity(nv), m)
    return Generated(star.space, o)


def _gen_gluing(rng, n_components: int = 3):
    g = builders.random_gluing(rng, n_components)
    sp, o = builders.clockwise_order(g, 0)
    return Generated(sp, o)


def _gen_six_point(rng):
    return Generated(six_point_space(), TotalOrder.identity(6))


def _gen_window(rng, d: int = 1, levels: int = 5, span: int = 16):
    w = tiling.build_window(d, levels, span)
    return Generated(w.space(), tiling.branch_convex_order(w), w)


GENERATORS = {
    "random": _gen_random,
    "tree": _gen_tree,
    "circle": _gen_circle,
    "tripod": _gen_tripod,
    "domino": _gen_domino,
    "square": _gen_square,
    "star": _gen_star,
    "gluing": _gen_gluing,
    "six-point": _gen_six_point,
    "tiling-window": _gen_window,
}


def _csv_bytes(header, rows, meta: dict) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for k, v in sorted(meta.items()):
        w.writerow([f"# {k}", v])
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue().encode()


def run_experiment(spec: ExperimentSpec, out_dir) -> dict:
    """Run every analysis of the spec; outputs are byte-identical for an
    identical (spec, seed) and each report embeds the spec hash and seed."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(spec.seed)
    gen = GENERATORS.get(spec.generator.kind)
    if gen is None:
        raise ValueError(f"unknown generator {spec.generator.kind!r}; "
                         f"known: {sorted(GENERATORS)}")
    g = gen(rng, **spec.generator.params)
    if spec.order == "identity" or (spec.order == "default" and g.order is None):
        order = TotalOrder.identity(g.space.n)
    elif spec.order == "random":
        order = builders.random_order(rng, g.space.n)
    elif spec.order == "default":
        order = g.order
    else:
        raise ValueError(f"unknown order choice {spec.order!r}")
    meta = {"spec": spec.digest(), "seed": spec.seed}
    files = []
    for i, an in enumerate(spec.analyses):
        stem = f"{spec.name}_{i}_{an.kind.replace('-', '_')}"
        p = an.params
        if an.kind in ("or", "or-cyclic"):
            kmax = int(p.get("k", g.space.n - 1))
            mode = p.get("mode", "exact")
            cyclic = an.kind == "or-cyclic"
            if mode == "exact":
                reports = or_profile(g.space, order, kmax, cyclic=cyclic)
            else:
                reports = [
                    order_ratio(g.space, order, k, mode="sampled", cyclic=cyclic,
                                samples=int(p.get("samples", ratio.DEFAULT_SAMPLES)),
                                seed=spec.seed)
                    for k in range(1, kmax + 1)
                ]
            rows = [
                (r.k, repr(r.value),
                 " ".join(g.space.labels[q] for q in sorted(r.witness.points))
                 if r.witness else "")
                for r in reports
            ]
            path = out / f"{stem}.csv"
            path.write_bytes(_csv_bytes(("k", "value", "witness"), rows, meta))
        elif an.kind == "br":
            rep = ratio.order_breakpoint(g.space, order,
                                         max_s=p.get("max_s"))
            path = out / f"{stem}.json"
            path.write_bytes(json.dumps({**meta, **rep.to_json()},
                                        sort_keys=True, indent=1).encode())
        elif an.kind == "snake":
            s = int(p.get("s", 3))
            sn = snakes.find_max_elongation_snake(g.space, order, s,
                                                  seed=spec.seed)
            path = out / f"{stem}.json"
            path.write_bytes(json.dumps({**meta, **sn.to_json()},
                                        sort_keys=True, indent=1).encode())
        elif an.kind == "best-order":
            res = ratio.best_order_ratio(g.space, int(p.get("k", 2)),
                                         seed=spec.seed)
            doc = {
                **meta,
                "value": res.value,
                "mode": res.mode,
                "orders": [o.sequence_labels(g.space) for o in res.orders],
            }
            path = out / f"{stem}.json"
            path.write_bytes(json.dumps(doc, sort_keys=True, indent=1).encode())
        elif an.kind == "audit":
            if g.window is None:
                raise ValueError("audit analysis needs a tiling-window generator")
            rows = []
            nsub = int(p.get("samples", 100))
            size = int(p.get("size", 10))
            for j in range(nsub):
                sub = rng.choice(g.window.n, size=min(size, g.window.n),
                                 replace=False).tolist()
                rep = tiling.multiplicity_audit(g.window, order, sub)
                rows.append((j, rep.paths, rep.truncated,
                             len(rep.up_edge_violations) +
                             len(rep.down_edge_violations),
                             rep.max_vertex_multiplicity))
            path = out / f"{stem}.csv"
            path.write_bytes(_csv_bytes(
                ("sample", "paths", "truncated", "violations",
                 "max_vertex_multiplicity"), rows, meta))
        else:
            raise ValueError(f"unknown analysis kind {an.kind!r}")
        files.append(str(path))
    return {"spec": spec.digest(), "seed": spec.seed, "files": files}


# ---------------------------------------------------------------------------
# acceptance checks
#
# Each check returns (ok, detail).  They are shared between the test suite
# and `experiment reproduce-all`.


def check_bounds_sanity(seed: int = 0):
    """200 random spaces and orders: exact OR(k) in [1, k], nondecreasing."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(3, 13))
        sp = builders.random_metric_space(rng, n)
        o = builders.random_order(rng, n)
        prev = 0.0
        for rep in or_profile(sp, o, n - 1):
            if not (1.0 - ABS_TOL <= rep.value <= rep.k + ABS_TOL):
                return False, f"OR({rep.k}) = {rep.value} outside [1, k]"
            if rep.value < prev - ABS_TOL:
                return False, f"OR({rep.k}) = {rep.value} below OR({rep.k - 1}) = {prev}"
            prev = rep.value
            worst = max(worst, rep.value)
    return True, f"200 spaces, max OR seen {worst:.4f}"


def check_six_point():
    """All 720 orders: only the natural order and its reverse minimize
    OR(2); the order 3,4,5,1,2,6 beats the natural order at OR(3)."""
    sp = six_point_space()
    res = ratio.best_order_ratio(sp, 2, tol=1e-9)
    seqs = sorted(o.points_by_rank for o in res.orders)
    expected = [tuple(range(6)), tuple(reversed(range(6)))]
    if seqs != sorted(expected):
        return False, f"OR(2) minimizers were {seqs}"
    t1 = TotalOrder.identity(6)
    t3 = TotalOrder.from_sequence([2, 3, 4, 0, 1, 5])
    v1 = order_ratio(sp, t1, 3).value
    v3 = order_ratio(sp, t3, 3).value
    if not v3 < v1 - 1e-9:
        return False, f"OR_T3(3) = {v3} not below OR_T1(3) = {v1}"
    return True, (f"minimizers 1..6 and 6..1 at OR(2) = {res.value:.6f}; "
                  f"OR_T3(3) = {v3:.6f} < OR_T1(3) = {v1:.6f}")


def check_tree_orders(seed: int = 0):
    """100 random weighted rooted trees under the first-visit order:
    exact OR(k) <= 2 for every k."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(3, 15))
        t = builders.random_rooted_tree(rng, n)
        o = builders.rooted_order(t)
        sp = builders.tree_space(t)
        for rep in or_profile(sp, o, n - 1):
            if rep.value > 2.0 + ABS_TOL:
                return False, f"tree OR({rep.k}) = {rep.value} > 2"
            worst = max(worst, rep.value)
    return True, f"100 trees, max OR {worst:.4f} <= 2"


def check_circle(seed: int = 0):
    """All 8! orders of 8 circle points contain a long thin 3-snake; the
    clockwise order has OR(k) <= 2."""
    import itertools

    n, length = 8, 1.0
    sp, clock = builders.circle_space(n, length)
    cap = length / 8 + ABS_TOL
    need = length / 2 - length / 8 - ABS_TOL
    worst = math.inf
    for perm in itertools.permutations(range(n)):
        o = TotalOrder.from_sequence(perm)
        sn = snakes.max_diameter_snake(sp, o, 3, cap)
        if sn is None or sn.diameter < need:
            return False, f"no long thin 3-snake under order {perm}"
        worst = min(worst, sn.diameter)
    vals = [r.value for r in or_profile(sp, clock, n - 1)]
    if max(vals) > 2.0 + ABS_TOL:
        return False, f"clockwise OR = {max(vals)} > 2"
    return True, (f"8! orders: min best 3-snake diameter {worst:.4f} >= "
                  f"{length / 2 - length / 8}; clockwise OR max {max(vals):.4f}")


def check_cyclic_sandwich(seed: int = 0):
    """200 random triples: OR/2 <= cyclic OR <= 2 OR, exact."""
    rng = np.random.default_rng(seed)
    for _ in range(200):
        n = int(rng.integers(3, 11))
        sp = builders.random_metric_space(rng, n)
        o = builders.random_order(rng, n)
        k = int(rng.integers(1, n))
        a = order_ratio(sp, o, k).value
        c = order_ratio(sp, o, k, cyclic=True).value
        if not (0.5 * a - ABS_TOL <= c <= 2.0 * a + ABS_TOL):
            return False, f"OR = {a}, cyclic OR = {c} breaks the sandwich"
    return True, "200 triples inside [OR/2, 2 OR]"


def check_gluing_equality(seed: int = 0):
    """50 random acyclic gluings: cyclic OR of the clockwise order equals
    the max over components of their own cyclic OR, for all k."""
    rng = np.random.default_rng(seed)
    for trial in range(50):
        ncomp = int(rng.integers(2, 5))
        g = builders.random_gluing(rng, ncomp, max_component_points=4)
        total = sum(sp.n for sp, _ in g.components)
        if total > 13:
            continue
        glued, o = builders.clockwise_order(g, int(rng.integers(0, len(g.joints))))
        kmax = glued.n - 1
        whole = [r.value for r in or_profile(glued, o, kmax, cyclic=True)]
        parts = []
        for sp, t in g.components:
            vals = [r.value for r in or_profile(sp, t, kmax, cyclic=True)]
            parts.append(vals)
        for k in range(1, kmax + 1):
            expect = max(p[k - 1] for p in parts)
            if abs(whole[k - 1] - expect) > 1e-9:
                return False, (f"trial {trial}: cyclic OR({k}) = {whole[k - 1]}"
                               f" but component max = {expect}")
    return True, "50 gluings: cyclic OR equals the component maximum"


def check_star_bound(seed: int = 0):
    """30 random graphs: the edge-including star order obeys
    OR_star(k) <= 8 OR_vertices(k) + 4 for k <= 5."""
    rng = np.random.default_rng(seed)
    for trial in range(30):
        nv = int(rng.integers(3, 6))
        edges = builders.random_connected_graph(rng, nv, int(rng.integers(0, 2)))
        order_v = builders.random_order(rng, nv)
        vx = shortest_path_metric([(u, v, 1.0) for u, v in edges], n=nv)
        star, o = builders.star_order(nv, edges, order_v, m=3)
        v_or = [r.value for r in or_profile(vx, order_v, 5)]
        s_or = [r.value for r in or_profile(star.space, o, 5)]
        for k in range(1, 6):
            if s_or[k - 1] > 8 * v_or[k - 1] + 4 + ABS_TOL:
                return False, (f"trial {trial}: star OR({k}) = {s_or[k - 1]} "
                               f"> 8*{v_or[k - 1]} + 4")
    return True, "30 graphs within 8 OR_V + 4"


def check_domino_snakes(seed: int = 0):
    """Every tested order on the discretized domino admits a 4-snake of
    width <= 2 eps and diameter >= 1/3 - eps (eps = 0.1)."""
    eps = 0.1
    sp = builders.domino_space(20)
    rng = np.random.default_rng(seed)
    orders = [TotalOrder.identity(sp.n),
              TotalOrder.from_sequence(list(reversed(range(sp.n))))]
    # greedy nearest-neighbor construction order
    seq, left = [0], set(range(1, sp.n))
    while left:
        nxt = min(left, key=lambda q: (sp.dist[seq[-1], q], q))
        seq.append(nxt)
        left.remove(nxt)
    orders.append(TotalOrder.from_sequence(seq))
    orders += [builders.random_order(rng, sp.n) for _ in range(100)]
    worst = math.inf
    for i, o in enumerate(orders):
        sn = snakes.max_diameter_snake(sp, o, 4, 2 * eps + ABS_TOL)
        if sn is None or sn.diameter < 1.0 / 3 - eps - ABS_TOL:
            return False, f"order {i}: no 4-snake of width <= {2 * eps} and " \
                          f"diameter >= {1.0 / 3 - eps}"
        worst = min(worst, sn.diameter)
    return True, (f"{len(orders)} orders, min witness diameter {worst:.4f} "
                  f">= {1.0 / 3 - eps:.4f}")


def check_tiling_isometry(seed: int = 0):
    """Tile degree 2d + 2^d + 1 for d in 1..3 and center-distance
    invariance under the tile-to-tile isometries."""
    rng = np.random.default_rng(seed)
    for d in (1, 2, 3):
        t = tiling.Tile(0, (0,) * d)
        nb = tiling.neighbors(t)
        if len(set(nb)) != 2 * d + 2 ** d + 1:
            return False, f"d = {d}: degree {len(set(nb))}"
        for _ in range(50):
            t1 = tiling.Tile(int(rng.integers(-3, 4)),
                             tuple(int(x) for x in rng.integers(-8, 9, d)))
            t2 = tiling.Tile(int(rng.integers(-3, 4)),
                             tuple(int(x) for x in rng.integers(-8, 9, d)))
            base = tiling.tile_distance(t1, t2)
            k = int(rng.integers(-2, 3))
            lvl = max(t1.k, t2.k)
            a = tuple(int(x) for x in rng.integers(-4, 5, d))
            m1 = tiling.rescale(tiling.translate(t1, a, lvl), k)
            m2 = tiling.rescale(tiling.translate(t2, a, lvl), k)
            moved = tiling.tile_distance(m1, m2)
            if abs(base - moved) > 1e-9:
                return False, f"d = {d}: distance moved {base} -> {moved}"
    return True, "degrees and 150 isometry pairs exact to 1e-9"


def check_multiplicity(seed: int = 0):
    """1000 random sorted subsets in a 511-tile d = 1 window: every
    vertical edge used at most once upwards and once downwards."""
    w = tiling.build_window(1, 9, 256)
    order = tiling.branch_convex_order(w)
    rng = np.random.default_rng(seed)
    truncated = 0
    maxv = 0
    for _ in range(1000):
        size = int(rng.integers(3, 13))
        sub = rng.choice(w.n, size=size, replace=False).tolist()
        rep = tiling.multiplicity_audit(w, order, sub)
        if not rep.ok:
            return False, (f"violations {rep.up_edge_violations} "
                           f"{rep.down_edge_violations}")
        truncated += rep.truncated
        maxv = max(maxv, rep.max_vertex_multiplicity)
    return True, (f"window of {w.n} tiles, 1000 subsets, zero violations, "
                  f"max vertex multiplicity {maxv}, {truncated} truncated paths")


def check_branch_containment(seed: int = 0):
    """10^4 random same-branch pairs: every standard-path tile stays in the
    branch."""
    rng = np.random.default_rng(seed)
    for _ in range(10_000):
        d = int(rng.integers(1, 4))
        root = tiling.Tile(int(rng.integers(0, 6)),
                           tuple(int(x) for x in rng.integers(-6, 7, d)))

        def member():
            k = int(rng.integers(root.k - 6, root.k + 1))
            s = root.k - k
            a = tuple(int(root.a[i] << s) + int(rng.integers(0, 1 << s))
                      for i in range(d))
            return tiling.Tile(k, a)

        t1, t2 = member(), member()
        path = tiling.standard_up_down_path(t1, t2)
        for t in path.tiles:
            if not tiling.in_branch(t, root):
                return False, (f"tile {t.label()} of the path "
                               f"{t1.label()} -> {t2.label()} leaves the "
                               f"branch of {root.label()}")
    return True, "10000 pairs contained"


def _boundary_focused_or(w, space, order) -> float:
    """Deterministic lower bound for the window's OR(7): around every branch
    boundary, start from the ladder pattern (ancestors of the two adjacent
    bottom tiles plus the following branch) and greedily climb by swaps and
    additions inside the boundary's tile pool.  The worst subsets of
    branch-convex orders live on these boundaries."""
    from . import exact

    dr = ranked_matrix(space, order)
    work = np.full((1 << 8, 8), np.inf)
    levels = max(t.k for t in w.tiles)
    span = max(t.a[0] for t in w.tiles if t.k == 0) + 1

    def rk(k, a):
        i = w.index.get(tiling.Tile(k, (a,)))
        return None if i is None else order.rank[i]

    def tour_ratio(sub):
        m = len(sub)
        a = np.asarray(sub, dtype=np.int64)
        lt = sum(float(dr[a[i], a[i + 1]]) for i in range(m - 1))
        opt = float(exact.subset_opt(dr, a, m, False, work))
        return lt / opt if opt > 0 else 1.0

    best = 0.0
    for j in range(1, levels + 1):
        for x in range(1 << j, span, 1 << j):
            if (x >> j) & 1 == 0:
                continue  # a boundary of a higher level, handled there
            pool = set()
            for k in range(levels + 1):
                for a in ((x - 1) >> k, x >> k, (x >> k) + 1):
                    r = rk(k, a)
                    if r is not None:
                        pool.add(r)
            cand = [rk(j + 1, x >> (j + 1)), rk(0, x - 1), rk(j, x >> j),
                    rk(0, x), rk(j + 1, (x >> (j + 1)) + 1)]
            cand = sorted({c for c in cand if c is not None})
            if len(cand) < 4:
                continue
            cur = tour_ratio(cand)
            for _ in range(20):
                improved = False
                for jj in range(len(cand)):
                    for p in pool:
                        if p in cand:
                            continue
                        trial = sorted(set(cand[:jj] + cand[jj + 1:] + [p]))
                        if len(trial) < 2:
                            continue
                        r2 = tour_ratio(trial)
                        if r2 > cur + 1e-12:
                            cur, cand, improved = r2, trial, True
                if len(cand) < 8:
                    for p in pool:
                        if p in cand:
                            continue
                        trial = sorted(cand + [p])
                        r2 = tour_ratio(trial)
                        if r2 > cur + 1e-12:
                            cur, cand, improved = r2, trial, True
                if not improved:
                    break
            best = max(best, cur)
    return best


def check_bounded_or(seed: int = 0):
    """Sampled OR (10^4 subsets of size <= 8) under the branch-convex order
    grows by at most 10% across three geometrically growing windows.  The
    uniform sampling is backed by a deterministic search around branch
    boundaries so the per-window estimate is stable."""
    vals = []
    for levels, span in ((7, 64), (8, 128), (9, 256)):
        w = tiling.build_window(1, levels, span)
        order = tiling.branch_convex_order(w)
        sp = w.space()
        rep = order_ratio(sp, order, 7, mode="sampled",
                          samples=10_000, restarts=100, climb_steps=50,
                          seed=seed)
        focused = _boundary_focused_or(w, sp, order)
        vals.append(max(rep.value, focused))
    for a, b in zip(vals, vals[1:]):
        if b > 1.1 * a + ABS_TOL:
            return False, f"sampled OR grew {a:.4f} -> {b:.4f} (> 10%)"
    return True, "sampled OR across windows: " + ", ".join(f"{v:.4f}" for v in vals)


def check_glued_copies(seed: int = 0):
    """30 instances: s glued copies of a component with exact max ratio C
    stay within s C + s - 1."""
    rng = np.random.default_rng(seed)
    for trial in range(30):
        n = int(rng.integers(3, 6))
        sp = builders.random_metric_space(rng, n)
        o = builders.random_order(rng, n)
        s = int(rng.integers(2, 4))
        omega = sorted(rng.choice(n, size=int(rng.integers(1, n)),
                                  replace=False).tolist())
        c = max(r.value for r in or_profile(sp, o, n - 1))
        glued, go = builders.glue_copies(sp, o, omega, s)
        bound = s * c + s - 1
        for rep in or_profile(glued, go, glued.n - 1):
            if rep.value > bound + ABS_TOL:
                return False, (f"trial {trial}: OR({rep.k}) = {rep.value} "
                               f"> {s}*{c:.4f} + {s - 1}")
    return True, "30 glued instances within s C + s - 1"


def check_pullback(seed: int = 0):
    """30 net instances: the pulled-back order satisfies
    OR_N(k) <= (C^2 + C/delta) OR_M(k) with measured C and delta."""
    rng = np.random.default_rng(seed)
    for trial in range(30):
        n = int(rng.integers(6, 11))
        m_space = builders.random_metric_space(rng, n)
        t_m = builders.random_order(rng, n)
        size = int(rng.integers(3, n))
        phi = sorted(rng.choice(n, size=size, replace=False).tolist())
        # the net keeps the induced metric up to a mild factor, small enough
        # that the perturbed values still form a metric
        factor = rng.uniform(0.95, 1.05, size=(size, size))
        factor = np.triu(factor, 1)
        factor = factor + factor.T + np.eye(size)
        d_n = m_space.dist[np.ix_(phi, phi)] * factor
        n_space = MetricSpace(tuple(str(i) for i in range(size)), d_n)
        t_n = pullback_order(phi, t_m, TotalOrder.identity(size))
        dm = m_space.dist[np.ix_(phi, phi)]
        off = ~np.eye(size, dtype=bool)
        c = float(max((d_n[off] / dm[off]).max(), (dm[off] / d_n[off]).max()))
        delta = float(d_n[off].min())
        bound_factor = c * c + c / delta
        or_m = [r.value for r in or_profile(m_space, t_m, size - 1)]
        or_n = [r.value for r in or_profile(n_space, t_n, size - 1)]
        for k in range(1, size):
            if or_n[k - 1] > bound_factor * or_m[k - 1] + ABS_TOL:
                return False, (f"trial {trial}: OR_N({k}) = {or_n[k - 1]} > "
                               f"{bound_factor:.4f} * {or_m[k - 1]:.4f}")
    return True, "30 nets within (C^2 + C/delta) OR_M"


CRITERIA = (
    ("bounds-sanity", check_bounds_sanity),
    ("six-point", check_six_point),
    ("tree-orders", check_tree_orders),
    ("circle", check_circle),
    ("cyclic-sandwich", check_cyclic_sandwich),
    ("gluing-equality", check_gluing_equality),
    ("star-bound", check_star_bound),
    ("domino-snakes", check_domino_snakes),
    ("tiling-isometry", check_tiling_isometry),
    ("multiplicity", check_multiplicity),
    ("branch-containment", check_branch_containment),
    ("bounded-or", check_bounded_or),
    ("glued-copies", check_glued_copies),
    ("pullback", check_pullback),
)


def reproduce_all(seed: int = 0) -> list[dict]:
    """Run every acceptance check; each entry reports name, verdict, detail
    and wall time."""
    results = []
    for name, fn in CRITERIA:
        t0 = time.perf_counter()
        try:
            ok, detail = fn() if fn.__code__.co_argcount == 0 else fn(seed)
        except Exception as e:  # a crash is a failure, not an abort
            ok, detail = False, f"error: {e!r}"
        results.append({
            "name": name,
            "ok": bool(ok),
            "detail": detail,
            "seconds": round(time.perf_counter() - t0, 2),
        })
    return results
