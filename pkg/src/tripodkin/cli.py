"""Benchmark CLI: a thin client over the kinematics service.

By default each command runs against an in-process application instance;
pass --server to target a running deployment instead.  Angles on this
surface are degrees, lengths millimetres.  Exit codes: 0 ok, 1 check or
solver failure, 2 usage error.
"""

import json
import sys

import click


def _client(server):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        # starlette's test client import warns about its httpx pin; harmless
        # for the in-process transport used here
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app())


def _post(server, path, payload):
    with _client(server) as client:
        resp = client.post(path, json=payload)
    if resp.status_code == 200:
        return resp.json()
    try:
        body = resp.json()
    except ValueError:
        body = {"detail": resp.text}
    click.echo(f"error: {json.dumps(body, sort_keys=True)}", err=True)
    # 400 carries solver/check failures; anything else is a usage problem.
    sys.exit(1 if resp.status_code == 400 else 2)


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _load_config(path):
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _geometry_payload(flag, file_cfg):
    if flag:
        parts = flag.split(",")
        if len(parts) != 3:
            raise click.BadParameter("--geometry expects d1,d2,d3 in mm")
        try:
            d1, d2, d3 = (float(p) for p in parts)
        except ValueError as exc:
            raise click.BadParameter(f"--geometry: {exc}") from exc
        return {"d1": d1, "d2": d2, "d3": d3}
    return file_cfg.get("geometry", {})


def _solver_payload(file_cfg, eta, iters):
    solver = dict(file_cfg.get("solver", {}))
    if "iters" not in solver and "max_iters" in solver:
        solver["iters"] = solver.pop("max_iters")
    if eta is not None:
        solver["eta"] = eta
    if iters is not None:
        solver["iters"] = iters
    return solver


def common_options(fn):
    fn = click.option("--geometry", default=None, metavar="D1,D2,D3",
                      help="manipulator dimensions in mm")(fn)
    fn = click.option("--config", "config_path", default=None,
                      type=click.Path(exists=True, dir_okay=False),
                      help="JSON config file; explicit flags win")(fn)
    fn = click.option("--out", "out_path", default=None,
                      type=click.Path(dir_okay=False), help="output file path")(fn)
    return fn


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="service base URL; default runs the app in process")
@click.pass_context
def main(ctx, server):
    """Kinematics and FK benchmark harness for the three-limb platform."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@click.argument("z", type=float)
@click.argument("alpha", type=float)
@click.argument("beta", type=float)
@common_options
@click.pass_context
def ik(ctx, z, alpha, beta, geometry, config_path, out_path):
    """Joint lengths and parasitic motions at heave Z (mm), roll ALPHA and
    pitch BETA (degrees)."""
    cfg = _load_config(config_path)
    payload = {
        "geometry": _geometry_payload(geometry, cfg),
        "z": z, "alpha_deg": alpha, "beta_deg": beta,
    }
    data = _post(ctx.obj["server"], "/ik", payload)
    text = _dump(data)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    click.echo(text)


@main.command()
@click.argument("l1", type=float)
@click.argument("l2", type=float)
@click.argument("l3", type=float)
@click.option("--eta", type=float, default=None, help="gradient step size")
@click.option("--iters", type=int, default=None, help="solver iterations")
@click.option("--z-init", type=float, default=None, help="initial heave estimate (mm)")
@click.option("--trace", is_flag=True, help="include the per-iteration trace")
@common_options
@click.pass_context
def fk(ctx, l1, l2, l3, eta, iters, z_init, trace, geometry, config_path, out_path):
    """Estimate (Z, alpha, beta) from joint lengths L1 L2 L3 (mm)."""
    cfg = _load_config(config_path)
    solver = _solver_payload(cfg, eta, iters)
    payload = {
        "geometry": _geometry_payload(geometry, cfg),
        "l1": l1, "l2": l2, "l3": l3,
        "trace": trace,
    }
    payload.update(solver)
    if z_init is not None:
        payload["z_init"] = z_init
    data = _post(ctx.obj["server"], "/fk", payload)
    text = _dump(data)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    click.echo(text)


@main.command()
@click.option("--f-pitch", type=float, default=None, help="pitch sinusoid frequency (Hz)")
@click.option("--rate", type=float, default=None, help="sample rate (Hz)")
@click.option("--duration", type=float, default=None, help="trajectory duration (s)")
@click.option("--eta", type=float, default=None)
@click.option("--iters", type=int, default=None)
@click.option("--cold-start", is_flag=True, help="disable warm-start chaining")
@common_options
@click.pass_context
def trajectory(ctx, f_pitch, rate, duration, eta, iters, cold_start,
               geometry, config_path, out_path):
    """Track the benchmark trajectory with both FK methods; writes per-sample
    CSV and prints a summary JSON."""
    cfg = _load_config(config_path)
    traj = dict(cfg.get("trajectory", {}))
    if f_pitch is not None:
        traj["f_pitch"] = f_pitch
    if rate is not None:
        traj["rate"] = rate
    if duration is not None:
        traj["duration"] = duration
    payload = {
        "geometry": _geometry_payload(geometry, cfg),
        "solver": _solver_payload(cfg, eta, iters),
        "trajectory": traj,
        "warm_start": not cold_start,
    }
    data = _post(ctx.obj["server"], "/trajectory", payload)
    out_path = out_path or "trajectory.csv"
    with open(out_path, "w") as fh:
        fh.write(data["csv"])
    click.echo(_dump(data["summary"]))


@main.command("parasitic-map")
@click.option("--grid", "grid_n", type=int, default=None, help="grid points per axis")
@click.option("--bins", type=int, default=None, help="histogram bins")
@common_options
@click.pass_context
def parasitic_map(ctx, grid_n, bins, geometry, config_path, out_path):
    """Histogram the parasitic-to-heave ratios over the workspace grid."""
    cfg = _load_config(config_path)
    payload = {"geometry": _geometry_payload(geometry, cfg)}
    if grid_n is not None:
        payload["grid_n"] = grid_n
    if bins is not None:
        payload["bins"] = bins
    data = _post(ctx.obj["server"], "/parasitic-map", payload)
    out_path = out_path or "parasitic_map.csv"
    with open(out_path, "w") as fh:
        fh.write(data["csv"])
    click.echo(_dump(data["summary"]))


@main.command("verify-bounds")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--samples", type=int, default=None,
              help="override every check's sample count (0 for an empty report)")
@common_options
@click.pass_context
def verify_bounds(ctx, seed, samples, geometry, config_path, out_path):
    """Run all bound checks; exit 0 only when every check passes."""
    cfg = _load_config(config_path)
    payload = {"geometry": _geometry_payload(geometry, cfg), "seed": seed}
    if samples is not None:
        payload["samples"] = samples
    data = _post(ctx.obj["server"], "/verify-bounds", payload)
    text = _dump(data["report"])
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    click.echo(text)
    if not data["passed"]:
        sys.exit(1)


@main.command()
@common_options
@click.pass_context
def opcount(ctx, geometry, config_path, out_path):
    """Elementary-operation comparison of one baseline step against one
    gradient iteration."""
    cfg = _load_config(config_path)
    payload = {"geometry": _geometry_payload(geometry, cfg)}
    data = _post(ctx.obj["server"], "/opcount", payload)
    click.echo(data["table"])
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(_dump(data["report"]) + "\n")


if __name__ == "__main__":
    main()
