"""HTTP service exposing the order-analysis core.  The CLI talks to this
app in-process by default; `ordermetrics serve` runs it standalone."""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import builders, experiments, ratio, snakes, tiling
from ..metric import FormatError, MetricSpace, space_from_json, validate_metric
from ..orders import TotalOrder
from ..ratio import best_order_ratio, or_profile, order_breakpoint, order_ratio
from ..tours import SubsetInstance, opt_cycle_length, opt_path_length
from . import schemas as sc


def _space(payload: sc.SpacePayload) -> MetricSpace:
    try:
        return space_from_json(payload.model_dump(exclude_none=True))
    except (FormatError, ValueError) as e:
        raise HTTPException(400, str(e))


def _order(space: MetricSpace, labels) -> TotalOrder:
    if labels is None:
        return TotalOrder.identity(space.n)
    try:
        return TotalOrder.from_labels(space, labels)
    except ValueError as e:
        raise HTTPException(400, str(e))


def _points(space: MetricSpace, labels) -> tuple[int, ...]:
    try:
        return tuple(space.index(l) for l in labels)
    except KeyError as e:
        raise HTTPException(400, f"unknown label {e.args[0]!r}")


def create_app() -> FastAPI:
    app = FastAPI(title="ordermetrics", version="0.1.0")

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/space/validate", response_model=sc.ValidateResponse)
    def space_validate(req: sc.SpacePayload):
        sp = _space(req)
        rep = validate_metric(sp)
        return sc.ValidateResponse(**rep.to_json())

    @app.post("/space/from-graph", response_model=sc.SpaceResponse)
    def space_from_graph(req: sc.SpacePayload):
        sp = _space(req)
        return sc.SpaceResponse(**sp.to_json())

    @app.post("/tours/compute", response_model=sc.TourResponse)
    def tours_compute(req: sc.TourRequest):
        sp = _space(req.space)
        try:
            inst = SubsetInstance(sp, _points(sp, req.points))
            res = opt_cycle_length(inst) if req.cyclic else opt_path_length(inst)
        except ValueError as e:
            raise HTTPException(400, str(e))
        return sc.TourResponse(
            length=res.length, sequence=[sp.labels[p] for p in res.sequence]
        )

    @app.post("/or/compute", response_model=sc.ORResponse)
    def or_compute(req: sc.ORRequest):
        sp = _space(req.space)
        order = _order(sp, req.order)
        kw = {}
        if req.budget is not None:
            kw["budget"] = req.budget
        try:
            if req.profile and req.mode == "exact":
                reports = or_profile(sp, order, req.k, cyclic=req.cyclic, **kw)
            else:
                if req.samples is not None:
                    kw["samples"] = req.samples
                reports = [
                    order_ratio(sp, order, req.k, mode=req.mode,
                                cyclic=req.cyclic, seed=req.seed, **kw)
                ]
        except (ratio.BudgetExceededError, ValueError) as e:
            raise HTTPException(400, str(e))
        out = []
        for r in reports:
            doc = r.to_json()
            if r.witness is not None:
                doc["witness"] = [sp.labels[p] for p in sorted(r.witness.points)]
            out.append(doc)
        return sc.ORResponse(reports=out)

    @app.post("/or/best", response_model=sc.BestOrderResponse)
    def or_best(req: sc.BestOrderRequest):
        sp = _space(req.space)
        res = best_order_ratio(sp, req.k, seed=req.seed)
        return sc.BestOrderResponse(
            value=res.value, mode=res.mode,
            orders=[o.sequence_labels(sp) for o in res.orders],
        )

    @app.post("/br/compute")
    def br_compute(req: sc.BreakpointRequest):
        sp = _space(req.space)
        order = _order(sp, req.order)
        rep = order_breakpoint(sp, order, max_s=req.max_s)
        doc = rep.to_json()
        for s, sn in doc["witness_snakes"].items():
            sn["points"] = [sp.labels[p] for p in sn["points"]]
        return doc

    @app.post("/snake/metrics")
    def snake_metrics_ep(req: sc.SnakeMetricsRequest):
        sp = _space(req.space)
        order = _order(sp, req.order)
        try:
            sn = snakes.snake_metrics(sp, order, _points(sp, req.points))
        except ValueError as e:
            raise HTTPException(400, str(e))
        doc = sn.to_json()
        doc["points"] = [sp.labels[p] for p in sn.points]
        return doc

    @app.post("/snake/find")
    def snake_find(req: sc.SnakeFindRequest):
        sp = _space(req.space)
        order = _order(sp, req.order)
        try:
            sn = snakes.find_max_elongation_snake(sp, order, req.s, seed=req.seed)
        except ValueError as e:
            raise HTTPException(400, str(e))
        doc = sn.to_json()
        doc["points"] = [sp.labels[p] for p in sn.points]
        return doc

    @app.post("/snake/bound")
    def snake_bound(req: sc.SnakeBoundRequest):
        try:
            return {"bound": snakes.snake_ratio_bound(req.s, req.a, req.b)}
        except ValueError as e:
            raise HTTPException(400, str(e))

    @app.post("/gen", response_model=sc.SpaceResponse)
    def gen(req: sc.GenRequest):
        fn = experiments.GENERATORS.get(req.kind)
        if fn is None:
            raise HTTPException(
                400, f"unknown generator {req.kind!r}; "
                     f"known: {sorted(experiments.GENERATORS)}")
        rng = np.random.default_rng(req.seed)
        try:
            g = fn(rng, **req.params)
        except (TypeError, ValueError) as e:
            raise HTTPException(400, str(e))
        doc = g.space.to_json()
        doc["order"] = g.order.sequence_labels(g.space) if g.order else None
        return sc.SpaceResponse(**doc)

    @app.post("/tiling/window", response_model=sc.WindowResponse)
    def tiling_window(req: sc.WindowRequest):
        try:
            w = tiling.build_window(req.d, req.levels, req.span)
        except ValueError as e:
            raise HTTPException(400, str(e))
        order = tiling.branch_convex_order(w)
        return sc.WindowResponse(
            d=w.d, tiles=[[t.k, list(t.a)] for t in w.tiles], n=w.n,
            order=[w.tiles[p].label() for p in order.points_by_rank],
            dot=w.to_dot() if req.dot else None,
        )

    @app.post("/tiling/audit")
    def tiling_audit(req: sc.AuditRequest):
        try:
            w = tiling.build_window(req.d, req.levels, req.span)
        except ValueError as e:
            raise HTTPException(400, str(e))
        order = tiling.branch_convex_order(w)
        rng = np.random.default_rng(req.seed)
        out = []
        for i in range(req.samples):
            sub = rng.choice(w.n, size=min(req.size, w.n), replace=False)
            rep = tiling.multiplicity_audit(w, order, sub.tolist())
            out.append({"sample": i, **rep.to_json()})
        return {"window_tiles": w.n, "audits": out,
                "all_ok": all(a["up_edge_violations"] == [] and
                              a["down_edge_violations"] == [] for a in out)}

    @app.post("/tiling/path")
    def tiling_path(req: sc.TilePathRequest):
        t1 = tiling.Tile(req.t1.k, tuple(req.t1.a))
        t2 = tiling.Tile(req.t2.k, tuple(req.t2.a))
        try:
            p = tiling.standard_up_down_path(t1, t2)
            dist = tiling.tile_distance(t1, t2)
        except ValueError as e:
            raise HTTPException(400, str(e))
        return {
            "tiles": [[t.k, list(t.a)] for t in p.tiles],
            "length": p.length,
            "up": p.up_count, "horizontal": p.horizontal_count,
            "down": p.down_count,
            "center_distance": dist,
        }

    @app.post("/experiments/run")
    def experiments_run(req: sc.ExperimentRunRequest):
        try:
            return experiments.run_experiment(req.spec, req.out_dir)
        except ValueError as e:
            raise HTTPException(400, str(e))

    @app.post("/experiments/reproduce-all")
    def experiments_reproduce(req: sc.ReproduceRequest):
        results = experiments.reproduce_all(req.seed)
        return {"ok": all(r["ok"] for r in results), "results": results}

    return app


app = create_app()
