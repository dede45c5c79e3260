"""Command-line front end: density evaluation, verification suites, sampling.

Exit codes are a stable contract: 0 success / all checks pass, 1 verification
failure (report still written), 2 usage error, 3 domain error.  A config file
of ``key = value`` lines can preload any option; explicit flags win.  The
``BRIDGELAB_THREADS`` environment variable caps worker threads for path
generation.  All file output is atomic (write temp, rename) and numeric
output is locale-independent.
"""

import json
import sys

import click
import numpy as np

from . import models, sample, verify
from .bridges import BridgeSpec
from .exceptions import BridgelabError, DomainError
from .quadrature import QuadratureConfig
from .sample import atomic_write_text
from .verify import commutation_check, run_suite

SCHEMA_VERSION = 1

EXIT_VERIFY_FAIL = 1
EXIT_DOMAIN = 3


def _parse_config_file(path):
    """Flat ``key = value`` pairs; '#' starts a comment; quotes optional."""
    values = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise click.UsageError(f"config line is not key = value: {raw!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = val.strip("\"'")
    return values


def _parse_vector(text, d):
    vals = [float(v) for v in str(text).split(",")]
    if len(vals) == 1 and d > 1:
        vals = vals * d
    if len(vals) != d:
        raise DomainError(f"expected {d} components, got {len(vals)}")
    return np.array(vals)


def _parse_matrix(text):
    rows = [
        [float(v) for v in row.split(",")]
        for row in str(text).split(";")
        if row.strip()
    ]
    return np.array(rows)


def _build_model(name, dim, a, sigma, drift, diffusion):
    name = name.lower()
    if name == "wiener":
        return models.Wiener(dim)
    if name == "bessel":
        return models.Bessel(dim)
    if name == "ou-scalar":
        return models.OuScalar(a, sigma, dim)
    if name == "ou-radial":
        return models.OuRadial(a, sigma, dim)
    if name == "ou-matrix":
        if drift is None:
            raise DomainError("ou-matrix needs --drift-matrix")
        A = _parse_matrix(drift)
        S = _parse_matrix(diffusion) if diffusion is not None else np.eye(A.shape[0])
        return models.OuMatrix(A, S)
    raise DomainError(f"unknown model '{name}'")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--config",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Key = value file preloading option defaults; flags override.",
)
@click.pass_context
def main(ctx, config):
    """Transition densities, bridges, verification and sampling."""
    if config is not None:
        defaults = _parse_config_file(config)
        ctx.default_map = {
            cmd: dict(defaults) for cmd in ("density", "verify", "sample")
        }


@main.command()
@click.option("--model", required=True, help="wiener | bessel | ou-scalar | ou-radial | ou-matrix")
@click.option("-d", "--dim", type=int, default=1, show_default=True)
@click.option("-t", "--time", type=float, required=True)
@click.option("-x", required=True, help="state (comma-separated for vectors)")
@click.option("-y", required=True, help="state (comma-separated for vectors)")
@click.option("--a", type=float, default=0.0, help="drift coefficient")
@click.option("--sigma", type=float, default=1.0, help="noise coefficient")
@click.option("--drift-matrix", default=None, help='rows "a,b;c,d" (ou-matrix)')
@click.option("--diffusion-matrix", default=None, help='rows "a,b;c,d" (ou-matrix)')
@click.option("--tilde", is_flag=True, help="backward Gramian form (ou-matrix)")
def density(model, dim, time, x, y, a, sigma, drift_matrix, diffusion_matrix, tilde):
    """Print one transition density value with 15 significant digits."""
    t = time
    try:
        m = _build_model(model, dim, a, sigma, drift_matrix, diffusion_matrix)
        if m.state_space == "halfline":
            xv, yv = float(x), float(y)
        else:
            xv = _parse_vector(x, m.d)
            yv = _parse_vector(y, m.d)
        if tilde:
            value = models.density_tilde(m, t, xv, yv)
        else:
            value = models.density(m, t, xv, yv)
    except BridgelabError as exc:
        click.echo(f"domain error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)
    click.echo(f"{value:.15g}")


def _quad_from_flags(abs_tol, rel_tol, max_subdivisions, truncation_radius):
    return QuadratureConfig(
        abs_tol=abs_tol,
        rel_tol=rel_tol,
        max_subdivisions=max_subdivisions,
        truncation_radius=truncation_radius,
    )


@main.command(name="verify")
@click.argument(
    "suite",
    type=click.Choice(
        ["kc", "normalization", "commute", "bessel-identity", "lemma-hypotheses", "all"]
    ),
)
@click.option("--out", type=click.Path(dir_okay=False), default="verify_report.json", show_default=True)
@click.option("--model", default=None, help="restrict kc to one model")
@click.option("-d", "--dim", type=int, default=2, show_default=True)
@click.option("--a", type=float, default=None, help="drift (commute single run)")
@click.option("--sigma", type=float, default=1.0, show_default=True)
@click.option("-T", "--horizon", type=float, default=1.0, show_default=True)
@click.option("--drift-matrix", default=None)
@click.option("--diffusion-matrix", default=None)
@click.option("--abs-tol", type=float, default=1e-10, show_default=True)
@click.option("--rel-tol", type=float, default=1e-9, show_default=True)
@click.option("--max-subdivisions", type=int, default=2000, show_default=True)
@click.option("--truncation-radius", type=float, default=None)
def verify_cmd(
    suite,
    out,
    model,
    dim,
    a,
    sigma,
    horizon,
    drift_matrix,
    diffusion_matrix,
    abs_tol,
    rel_tol,
    max_subdivisions,
    truncation_radius,
):
    """Run a verification suite and write its JSON report."""
    cfg = _quad_from_flags(abs_tol, rel_tol, max_subdivisions, truncation_radius)
    try:
        if suite == "commute" and a is not None:
            reports = [commutation_check(a, sigma, dim, horizon, cfg)]
        elif suite == "kc" and model is not None:
            m = _build_model(model, dim, a or 0.0, sigma, drift_matrix, diffusion_matrix)
            reports = verify.suite_kc(quad_cfg=cfg, models=[m])
        else:
            reports = run_suite(suite, quad_cfg=cfg)
    except BridgelabError as exc:
        click.echo(f"domain error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)
    all_pass = all(r.passed for r in reports)
    doc = {
        "schema": SCHEMA_VERSION,
        "suite": suite,
        "pass": all_pass,
        "reports": [r.to_dict() for r in reports],
    }
    atomic_write_text(out, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        click.echo(
            f"[{status}] {r.check_name}: max residual {r.max_residual:.3e}"
            f" (tolerance {r.tolerance:.1e})"
        )
    click.echo(f"report written to {out}")
    if not all_pass:
        sys.exit(EXIT_VERIFY_FAIL)


@main.command(name="sample")
@click.option("--bridge", required=True, help="wiener | ou-scalar | ou-matrix | bessel | ou-radial")
@click.option("-d", "--dim", type=int, default=1, show_default=True)
@click.option("--a", type=float, default=0.0)
@click.option("--sigma", type=float, default=1.0)
@click.option("--drift-matrix", default=None)
@click.option("--diffusion-matrix", default=None)
@click.option("-T", "--horizon", type=float, default=1.0, show_default=True)
@click.option("--grid", type=int, default=101, show_default=True, help="grid points on [0, T]")
@click.option("--paths", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(file_okay=False), default="paths", show_default=True)
@click.option("--threads", type=int, default=None, help="defaults to BRIDGELAB_THREADS")
def sample_cmd(
    bridge,
    dim,
    a,
    sigma,
    drift_matrix,
    diffusion_matrix,
    horizon,
    grid,
    paths,
    seed,
    out,
    threads,
):
    """Sample pinned-endpoint paths to CSV files plus a metadata sidecar."""
    try:
        base = _build_model(bridge, dim, a, sigma, drift_matrix, diffusion_matrix)
        if base.state_space == "halfline":
            spec = BridgeSpec(base, 0.0, 0.0, horizon)
        else:
            spec = BridgeSpec(base, np.zeros(base.d), np.zeros(base.d), horizon)
        if grid < 2:
            raise DomainError("grid needs at least 2 points")
        times = np.linspace(0.0, horizon, grid)
        result = sample.sample_bridge_paths(spec, times, paths, seed, threads=threads)
        meta = {
            "schema": SCHEMA_VERSION,
            "bridge": bridge,
            "dim": base.d,
            "a": a,
            "sigma": sigma,
            "drift_matrix": drift_matrix,
            "diffusion_matrix": diffusion_matrix,
            "horizon": horizon,
            "grid_points": grid,
            "paths": paths,
            "seed": seed,
        }
        names = sample.write_paths(out, result, meta)
    except BridgelabError as exc:
        click.echo(f"domain error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)
    click.echo(f"wrote {len(names)} paths to {out}")


if __name__ == "__main__":
    main()
