"""Command-line front end.  Every subcommand talks to the HTTP service; by
default an in-process instance, or a remote one via --url.

Exit codes: 0 ok, 1 analysis/criterion failure, 2 usage error."""

from __future__ import annotations

import csv
import json
import os
import sys

import click
import httpx

from .service.app import create_app

EXIT_FAIL = 1
EXIT_USAGE = 2


class Client:
    """Thin HTTP client; without a URL it serves requests in process."""

    def __init__(self, url: str | None):
        self._url = url
        self._app = None if url else create_app()

    def _request(self, path: str, payload: dict) -> httpx.Response:
        if self._url:
            with httpx.Client(base_url=self._url, timeout=3600.0) as c:
                return c.post(path, json=payload)

        async def go():
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://ordermetrics.local",
                timeout=3600.0,
            ) as c:
                return await c.post(path, json=payload)

        import asyncio

        return asyncio.run(go())

    def post(self, path: str, payload: dict) -> dict:
        r = self._request(path, payload)
        if r.status_code >= 400:
            try:
                detail = r.json().get("detail", r.text)
            except ValueError:
                detail = r.text
            raise click.ClickException(str(detail))
        return r.json()


def _load_json(path):
    try:
        with open(path) as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise click.UsageError(f"cannot read {path}: {e}")


def _space_payload(path) -> dict:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise click.UsageError(f"{path}: expected an object with matrix or edges")
    return {k: doc[k] for k in ("labels", "matrix", "edges") if k in doc}


def _order_payload(path) -> list | None:
    if path is None:
        return None
    doc = _load_json(path)
    if not isinstance(doc, list):
        raise click.UsageError(f"{path}: an order file is a JSON array of labels")
    return doc


def _emit(doc, out):
    text = json.dumps(doc, indent=1, sort_keys=True)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    else:
        click.echo(text)


@click.group()
@click.option("--url", default=None, envvar="ORDERMETRICS_URL",
              help="Base URL of a running service; default runs in-process.")
@click.pass_context
def main(ctx, url):
    """Universal orders on metric spaces: construction and measurement."""
    ctx.obj = Client(url)


@main.command()
@click.argument("space_file", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def space(client: Client, space_file, out):
    """Validate a space file and print the metric (matrix form)."""
    payload = _space_payload(space_file)
    rep = client.post("/space/validate", payload)
    if not rep["valid"]:
        _emit(rep, out)
        sys.exit(EXIT_FAIL)
    _emit(client.post("/space/from-graph", payload), out)


@main.command()
@click.argument("kind")
@click.option("--seed", type=int, default=0)
@click.option("--param", "-p", multiple=True,
              help="Generator parameter as name=value (repeatable).")
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def gen(client: Client, kind, seed, param, out):
    """Generate a named space (random, tree, circle, domino, star, gluing,
    square, six-point, tiling-window, tripod) with its default order."""
    params = {}
    for p in param:
        if "=" not in p:
            raise click.UsageError(f"parameter {p!r} is not name=value")
        k, v = p.split("=", 1)
        try:
            params[k] = json.loads(v)
        except json.JSONDecodeError:
            params[k] = v
    doc = client.post("/gen", {"kind": kind, "seed": seed, "params": params})
    _emit(doc, out)


@main.command()
@click.argument("space_file", type=click.Path(exists=True))
@click.option("--order", "order_file", type=click.Path(exists=True), default=None,
              help="JSON array of labels; default is label order.")
@click.option("-k", type=int, required=True)
@click.option("--mode", type=click.Choice(["exact", "sampled"]), default="exact")
@click.option("--cyclic", is_flag=True)
@click.option("--profile", is_flag=True, help="Report every k' <= k.")
@click.option("--budget", type=int, default=None)
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=0)
@click.option("--csv", "csv_out", type=click.Path(), default=None,
              help="Write a k,value,witness CSV series.")
@click.pass_obj
def or_(client: Client, space_file, order_file, k, mode, cyclic, profile,
        budget, samples, seed, csv_out):
    """Order ratio OR(k) of an order on a space."""
    doc = client.post("/or/compute", {
        "space": _space_payload(space_file),
        "order": _order_payload(order_file),
        "k": k, "mode": mode, "cyclic": cyclic, "profile": profile,
        "budget": budget, "samples": samples, "seed": seed,
    })
    if csv_out:
        with open(csv_out, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["k", "value", "witness"])
            for r in doc["reports"]:
                w.writerow([r["k"], repr(r["value"]),
                            " ".join(r["witness"] or [])])
    else:
        _emit(doc, None)


main.add_command(or_, name="or")


@main.command()
@click.argument("space_file", type=click.Path(exists=True))
@click.option("--order", "order_file", type=click.Path(exists=True), default=None)
@click.option("--max-s", type=int, default=None)
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def br(client: Client, space_file, order_file, max_s, out):
    """Order breakpoint with per-s values and snake witnesses."""
    doc = client.post("/br/compute", {
        "space": _space_payload(space_file),
        "order": _order_payload(order_file),
        "max_s": max_s,
    })
    _emit(doc, out)


@main.command()
@click.argument("space_file", type=click.Path(exists=True))
@click.option("--order", "order_file", type=click.Path(exists=True), default=None)
@click.option("-s", type=int, default=3, help="Number of snake points.")
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def snake(client: Client, space_file, order_file, s, seed, out):
    """Maximum-elongation snake of an order."""
    doc = client.post("/snake/find", {
        "space": _space_payload(space_file),
        "order": _order_payload(order_file),
        "s": s, "seed": seed,
    })
    _emit(doc, out)


@main.command("best-order")
@click.argument("space_file", type=click.Path(exists=True))
@click.option("-k", type=int, default=2)
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def best_order(client: Client, space_file, k, seed, out):
    """Best achievable OR(k) over orders, with every minimizer when exact."""
    doc = client.post("/or/best", {
        "space": _space_payload(space_file), "k": k, "seed": seed,
    })
    _emit(doc, out)


@main.group()
def tiling():
    """Binary-tiling windows of hyperbolic space."""


@tiling.command("gen")
@click.option("--d", type=int, default=1)
@click.option("--levels", type=int, default=5)
@click.option("--span", type=int, default=16)
@click.option("--dot", type=click.Path(), default=None,
              help="Also write a DOT rendering of the window graph.")
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def tiling_gen(client: Client, d, levels, span, dot, out):
    """Build a window and its branch-convex order."""
    doc = client.post("/tiling/window", {
        "d": d, "levels": levels, "span": span, "dot": dot is not None,
    })
    if dot:
        with open(dot, "w") as f:
            f.write(doc.pop("dot") + "\n")
    else:
        doc.pop("dot", None)
    _emit(doc, out)


@tiling.command("audit")
@click.option("--d", type=int, default=1)
@click.option("--levels", type=int, default=5)
@click.option("--span", type=int, default=16)
@click.option("--samples", type=int, default=100)
@click.option("--size", type=int, default=10)
@click.option("--seed", type=int, default=0)
@click.option("--csv", "csv_out", type=click.Path(), default=None)
@click.pass_obj
def tiling_audit(client: Client, d, levels, span, samples, size, seed, csv_out):
    """Vertical-edge multiplicity audit along standard up-and-down paths."""
    doc = client.post("/tiling/audit", {
        "d": d, "levels": levels, "span": span,
        "samples": samples, "size": size, "seed": seed,
    })
    if csv_out:
        with open(csv_out, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["sample", "paths", "truncated", "violations",
                        "max_vertex_multiplicity"])
            for a in doc["audits"]:
                w.writerow([a["sample"], a["paths"], a["truncated"],
                            len(a["up_edge_violations"]) +
                            len(a["down_edge_violations"]),
                            a["max_vertex_multiplicity"]])
    else:
        click.echo(json.dumps(
            {"window_tiles": doc["window_tiles"], "all_ok": doc["all_ok"]}))
    if not doc["all_ok"]:
        sys.exit(EXIT_FAIL)


@tiling.command("path")
@click.argument("t1")
@click.argument("t2")
@click.pass_obj
def tiling_path(client: Client, t1, t2):
    """Standard up-and-down path between tiles given as k:a1,a2,..."""

    def parse(s):
        try:
            k, rest = s.split(":", 1)
            return {"k": int(k), "a": [int(x) for x in rest.split(",")]}
        except ValueError:
            raise click.UsageError(f"tile {s!r} is not of the form k:a1,a2")

    doc = client.post("/tiling/path", {"t1": parse(t1), "t2": parse(t2)})
    _emit(doc, None)


@main.group()
def experiment():
    """Reproducible experiment runner."""


@experiment.command("run")
@click.argument("spec_file", type=click.Path(exists=True))
@click.option("--out-dir", type=click.Path(), default="experiments-out")
@click.pass_obj
def experiment_run(client: Client, spec_file, out_dir):
    """Run an experiment spec (JSON) and write its reports."""
    doc = client.post("/experiments/run",
                      {"spec": _load_json(spec_file), "out_dir": out_dir})
    _emit(doc, None)


@experiment.command("reproduce-all")
@click.option("--seed", type=int, default=0)
@click.pass_obj
def experiment_reproduce(client: Client, seed):
    """Run every acceptance check and print a pass/fail table."""
    doc = client.post("/experiments/reproduce-all", {"seed": seed})
    for r in doc["results"]:
        verdict = "PASS" if r["ok"] else "FAIL"
        click.echo(f"{verdict} {r['seconds']:8.2f}s {r['name']}: {r['detail']}")
    if not doc["ok"]:
        sys.exit(EXIT_FAIL)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("ordermetrics.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
