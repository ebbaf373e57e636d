"""Command-line front end: every checker and sweep behind one executable.

Each run prints a single JSON report document (schema 1) on standard
output; sweep commands additionally write a CSV with columns
``n,quotient,limit_constant,gap`` when ``--out`` is given.  Reports with
identical flags and seed are byte-identical except for ``wall_time_ms``.

Pass rules (also encoded in the ``pass`` field):

* ``laplacian --method both``: |pv - closed| within
  max(1e-6 |closed|, 1e-9, combined error estimates).
* ``verify-identity``: |residual| within max(1e-6 energy, error estimate,
  1e-12).
* ``hardy`` / ``killed``: slack >= -(error estimate + 1e-12); ``killed``
  additionally requires the identity residual within
  max(1e-6 full_energy, error estimate).
* ``sharpness``: every quotient at or above the limit constant (up to the
  error budget), strictly decreasing for the killed form; with
  ``--rayleigh-nodes``, the discrete minimum must be at least
  (1 - 1e-3) times the limit constant.
* ``convex``: slack >= -2 slack_stderr.

Exit codes: 0 pass, 1 inequality/identity violation, 2 numerical
non-convergence, 64 usage error.
"""

from __future__ import annotations

import json
import sys
import time

import click

from . import convex as convex_mod
from . import forms, laplacian, sharpness, specfun
from .errors import DomainError, NonConvergenceError
from .functions import Hat, PowerFunction, SmoothBump, TruncatedGroundState
from .quadrature import QuadConfig

SCHEMA_VERSION = 1


def parse_u_spec(spec: str, alpha: float):
    """``bump:c=<center>,w=<width>[,o=<order>]`` | ``hat:<n1>,<n2>,...`` |
    ``gsn:n=<n>`` (truncated ground state, uses the run's alpha)."""
    try:
        kind, _, body = spec.partition(":")
        if kind == "bump":
            kv = dict(item.split("=") for item in body.split(","))
            return SmoothBump(
                center=float(kv["c"]),
                width=float(kv["w"]),
                order=float(kv.get("o", 1.0)),
            )
        if kind == "hat":
            nodes = tuple(float(t) for t in body.split(","))
            return Hat(nodes=nodes)
        if kind == "gsn":
            kv = dict(item.split("=") for item in body.split(","))
            return TruncatedGroundState(n=int(kv["n"]), alpha=float(alpha))
    except DomainError:
        raise
    except Exception as exc:
        raise click.UsageError(f"cannot parse u-spec {spec!r}: {exc}") from exc
    raise click.UsageError(f"unknown u-spec kind in {spec!r} (bump:|hat:|gsn:)")


def _quad_options(fn):
    fn = click.option("--rel-tol", type=float, default=1e-9, show_default=True,
                      help="relative quadrature tolerance")(fn)
    fn = click.option("--abs-tol", type=float, default=1e-11, show_default=True,
                      help="absolute quadrature tolerance")(fn)
    fn = click.option("--max-subdivisions", type=int, default=2000, show_default=True)(fn)
    fn = click.option("--pv-excision-start", type=float, default=0.1, show_default=True,
                      help="half-width of the symmetric PV window")(fn)
    fn = click.option("--grading-exponent", type=float, default=2.0, show_default=True,
                      help="power-substitution strength for endpoint singularities")(fn)
    return fn


def _cfg(kw) -> QuadConfig:
    return QuadConfig(
        rel_tol=kw.pop("rel_tol"),
        abs_tol=kw.pop("abs_tol"),
        max_subdivisions=kw.pop("max_subdivisions"),
        pv_excision_start=kw.pop("pv_excision_start"),
        grading_exponent=kw.pop("grading_exponent"),
    )


def emit_report(command, parameters, results, error_estimates, ok, t0, seed=None):
    report = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "results": results,
        "error_estimates": error_estimates,
        "wall_time_ms": int(round(1000.0 * (time.monotonic() - t0))),
        "seed": seed,
        "pass": bool(ok),
    }
    click.echo(json.dumps(report, indent=2))
    return report


@click.group()
def cli():
    """Numerical checks for the interval fractional Laplacian and the sharp
    Hardy inequalities."""


@cli.command()
@click.option("--n", type=int, required=True, help="space dimension for the constants")
@click.option("--alpha", type=float, required=True)
def constants(n, alpha):
    """Print kappa(n, alpha), the beta term and the remainder coefficients."""
    t0 = time.monotonic()
    rep = specfun.constant_report(n, alpha)
    results = {
        "kappa_n_alpha": rep.kappa_n_alpha,
        "beta_term": rep.beta_term,
        "remainder_coeff_1d": (
            specfun.remainder_coeff_1d(alpha, -1.0, 1.0) if 1.0 < alpha < 2.0 else None
        ),
        "remainder_coeff_nd": rep.remainder_coeff,
        "reference_interval": [-1.0, 1.0],
        "reference_diameter": 2.0,
    }
    emit_report("constants", {"n": n, "alpha": alpha}, results, {}, True, t0)


@cli.command()
@click.option("--p", type=float, required=True, help="exponent of (1 - x^2)^p")
@click.option("--x", type=float, required=True)
@click.option("--alpha", type=float, required=True)
@click.option("--method", type=click.Choice(["pv", "closed", "both"]), default="both",
              show_default=True)
@_quad_options
@click.pass_context
def laplacian_cmd(ctx, p, x, alpha, method, **kw):
    """Regional fractional Laplacian of the power function (1 - x^2)^p."""
    cfg = _cfg(kw)
    t0 = time.monotonic()
    results = {}
    errs = {}
    ok = True
    if method in ("pv", "both"):
        res = laplacian.regional_laplacian_pv(PowerFunction(p), x, alpha, cfg)
        results["pv"] = res.value
        errs["pv"] = res.error_estimate
        results["pv_subdivisions"] = res.subdivisions_used
    if method in ("closed", "both"):
        val, err = laplacian._closed_with_error(p, x, alpha, cfg)
        results["closed"] = val
        errs["closed"] = err
    if method == "both":
        disc = abs(results["pv"] - results["closed"])
        results["discrepancy"] = disc
        budget = max(1e-6 * abs(results["closed"]), 1e-9, errs["pv"] + errs["closed"])
        ok = disc <= budget
    emit_report(
        "laplacian",
        {"p": p, "x": x, "alpha": alpha, "method": method},
        results,
        errs,
        ok,
        t0,
    )
    ctx.exit(0 if ok else 1)


cli.add_command(laplacian_cmd, name="laplacian")


@cli.command("verify-identity")
@click.option("--u", "u_spec", required=True, help="bump:c=,w=[,o=] | hat:n1,n2,... | gsn:n=")
@click.option("--alpha", type=float, required=True)
@_quad_options
@click.pass_context
def verify_identity(ctx, u_spec, alpha, **kw):
    """Ground-state representation: energy = kernel term + potential terms."""
    cfg = _cfg(kw)
    t0 = time.monotonic()
    u = parse_u_spec(u_spec, alpha)
    br = forms.verify_gsr_identity(u, alpha, cfg)
    ok = abs(br.residual) <= max(1e-6 * abs(br.energy), br.error_estimate, 1e-12)
    emit_report(
        "verify-identity",
        {"u": u_spec, "alpha": alpha},
        {
            "energy": br.energy,
            "gs_term": br.gs_term,
            "kappa_term": br.kappa_term,
            "phi_term": br.phi_term,
            "residual": br.residual,
        },
        {"total": br.error_estimate},
        ok,
        t0,
    )
    ctx.exit(0 if ok else 1)


@cli.command()
@click.option("--u", "u_spec", required=True,
              help="bump:c=,w=[,o=] | hat:n1,n2,... | gsn:n=")
@click.option("--a", type=float, required=True, help="left endpoint")
@click.option("--b", type=float, required=True, help="right endpoint")
@click.option("--alpha", type=float, required=True)
@_quad_options
@click.pass_context
def hardy(ctx, u_spec, a, b, alpha, **kw):
    """Remainder-term Hardy inequality on the interval (a, b)."""
    cfg = _cfg(kw)
    t0 = time.monotonic()
    u = parse_u_spec(u_spec, alpha)
    if isinstance(u, TruncatedGroundState) and (a, b) != (-1.0, 1.0):
        # the cutoff ground state is defined on the reference interval;
        # transport it affinely onto (a, b)
        u = u.affine_image(center=0.5 * (a + b), scale=0.5 * (b - a))
    hc = forms.hardy_check_1d(u, (a, b), alpha, cfg)
    ok = hc.slack >= -(hc.error_estimate + 1e-12)
    emit_report(
        "hardy",
        {"u": u_spec, "a": a, "b": b, "alpha": alpha},
        {
            "lhs": hc.lhs,
            "rhs_main": hc.rhs_main,
            "rhs_remainder": hc.rhs_remainder,
            "slack": hc.slack,
        },
        {"total": hc.error_estimate},
        ok,
        t0,
    )
    ctx.exit(0 if ok else 1)


@cli.command()
@click.option("--u", "u_spec", required=True,
              help="bump:c=,w=[,o=] | hat:n1,n2,... | gsn:n=")
@click.option("--alpha", type=float, required=True)
@_quad_options
@click.pass_context
def killed(ctx, u_spec, alpha, **kw):
    """Whole-line (killed) identity and sharp inequality without remainder."""
    cfg = _cfg(kw)
    t0 = time.monotonic()
    u = parse_u_spec(u_spec, alpha)
    kc = forms.killed_check(u, alpha, cfg)
    ok = (
        abs(kc.identity_residual) <= max(1e-6 * abs(kc.full_energy), kc.error_estimate)
        and kc.ineq_slack >= -(kc.error_estimate + 1e-12)
    )
    emit_report(
        "killed",
        {"u": u_spec, "alpha": alpha},
        {
            "full_energy": kc.full_energy,
            "regional_energy": kc.regional_energy,
            "killing_term": kc.killing_term,
            "killing_term_direct": kc.killing_term_direct,
            "gs_term": kc.gs_term,
            "const_term": kc.const_term,
            "identity_residual": kc.identity_residual,
            "ineq_slack": kc.ineq_slack,
        },
        {"total": kc.error_estimate},
        ok,
        t0,
    )
    ctx.exit(0 if ok else 1)


@cli.command("sharpness")
@click.option("--form", "form_kind",
              type=click.Choice(["killed", "regional", "regional_minus_remainder"]),
              required=True)
@click.option("--alpha", type=float, required=True)
@click.option("--n-list", required=True, help="comma-separated cutoff indices, e.g. 4,16,64")
@click.option("--rayleigh-nodes", type=int, default=None,
              help="also solve the discrete eigenproblem on this many nodes")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="write the sweep as CSV (n,quotient,limit_constant,gap)")
@_quad_options
@click.pass_context
def sharpness_cmd(ctx, form_kind, alpha, n_list, rayleigh_nodes, out, **kw):
    """Cutoff-sequence sweep toward the sharp constant; optional eigensolve."""
    cfg = _cfg(kw)
    t0 = time.monotonic()
    try:
        ns = [int(t) for t in n_list.split(",")]
    except ValueError as exc:
        raise click.UsageError(f"bad --n-list {n_list!r}: {exc}") from exc
    points = sharpness.sharpness_sweep(form_kind, alpha, ns, cfg)
    climit = sharpness.limit_constant(form_kind, alpha)
    ok = all(p.quotient >= climit - (1e-9 * abs(climit) + 1e-12) for p in points)
    if form_kind == "killed":
        ok = ok and all(
            p2.quotient < p1.quotient for p1, p2 in zip(points, points[1:])
        )
    results = {
        "limit_constant": climit,
        "sweep": [
            {"n": p.n, "quotient": p.quotient, "gap": p.gap} for p in points
        ],
    }
    if rayleigh_nodes is not None:
        df = sharpness.assemble(form_kind, alpha, rayleigh_nodes, cfg)
        r = sharpness.min_rayleigh(df)
        results["rayleigh"] = {
            "n_nodes": rayleigh_nodes,
            "min_quotient": r.min_quotient,
            "iterations": r.iterations,
            "residual_norm": r.residual_norm,
        }
        ok = ok and r.min_quotient >= climit * (1.0 - 1e-3)
    if out:
        with open(out, "w") as fh:
            fh.write("n,quotient,limit_constant,gap\n")
            for p in points:
                fh.write(f"{p.n},{p.quotient!r},{p.limit_constant!r},{p.gap!r}\n")
    emit_report(
        "sharpness",
        {
            "form": form_kind,
            "alpha": alpha,
            "n_list": ns,
            "rayleigh_nodes": rayleigh_nodes,
            "out": out,
        },
        results,
        {},
        ok,
        t0,
    )
    ctx.exit(0 if ok else 1)


def parse_u2_spec(spec: str):
    """``radial:cx=,cy=,r=[,o=]`` | ``product:cx=,cy=,wx=,wy=[,o=]``"""
    try:
        kind, _, body = spec.partition(":")
        kv = dict(item.split("=") for item in body.split(","))
        if kind == "radial":
            return convex_mod.RadialBump2D(
                center=(float(kv["cx"]), float(kv["cy"])),
                radius=float(kv["r"]),
                order=float(kv.get("o", 1.0)),
            )
        if kind == "product":
            return convex_mod.ProductBump2D(
                center=(float(kv["cx"]), float(kv["cy"])),
                half_widths=(float(kv["wx"]), float(kv["wy"])),
                order=float(kv.get("o", 1.0)),
            )
    except DomainError:
        raise
    except Exception as exc:
        raise click.UsageError(f"cannot parse u2-spec {spec!r}: {exc}") from exc
    raise click.UsageError(f"unknown u2-spec kind in {spec!r} (radial:|product:)")


@cli.command("convex")
@click.option("--shape", type=click.Choice(["disk", "square", "rect"]), required=True)
@click.option("--center", default="0,0", show_default=True, help="disk center")
@click.option("--radius", type=float, default=1.0, show_default=True, help="disk radius")
@click.option("--corner-min", default="-0.5,-0.5", show_default=True)
@click.option("--corner-max", default="0.5,0.5", show_default=True)
@click.option("--u2", "u2_spec", default="radial:cx=0,cy=0,r=0.7", show_default=True,
              help="radial:cx=,cy=,r=[,o=] | product:cx=,cy=,wx=,wy=[,o=]")
@click.option("--alpha", type=float, required=True)
@click.option("--samples", type=int, default=10**6, show_default=True)
@click.option("--seed", type=int, default=20200513, show_default=True)
@click.option("--stratification", type=click.Choice(["none", "radial"]),
              default="none", show_default=True)
@click.pass_context
def convex_cmd(ctx, shape, center, radius, corner_min, corner_max, u2_spec,
               alpha, samples, seed, stratification):
    """Monte-Carlo convex-domain Hardy inequality check in dimension two."""
    t0 = time.monotonic()

    def pair(s):
        a, b = s.split(",")
        return (float(a), float(b))

    if samples < 10_000:
        raise click.UsageError("reported runs need --samples >= 10000")
    if shape == "disk":
        dom = convex_mod.Disk(pair(center), radius)
    elif shape == "square":
        dom = convex_mod.Rectangle((-0.5, -0.5), (0.5, 0.5))
    else:
        dom = convex_mod.Rectangle(pair(corner_min), pair(corner_max))
    u2 = parse_u2_spec(u2_spec)
    mc = convex_mod.MCConfig(
        sample_count=samples, rng_seed=seed, stratification=stratification
    )
    r = convex_mod.hardy_check_convex(dom, u2, alpha, mc)
    ok = r.slack >= -2.0 * r.slack_stderr
    emit_report(
        "convex",
        {
            "shape": shape,
            "domain": repr(dom),
            "u2": u2_spec,
            "alpha": alpha,
            "samples": samples,
            "stratification": stratification,
        },
        {
            "lhs": r.lhs,
            "lhs_stderr": r.lhs_stderr,
            "rhs_main": r.rhs_main,
            "rhs_remainder": r.rhs_remainder,
            "rhs_stderr": r.rhs_stderr,
            "slack": r.slack,
            "slack_stderr": r.slack_stderr,
        },
        {"lhs": r.lhs_stderr, "rhs": r.rhs_stderr},
        ok,
        t0,
        seed=seed,
    )
    ctx.exit(0 if ok else 1)


def main(argv=None):
    try:
        cli(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        code = exc.exit_code
        if code not in (0, 1, 2):
            code = 64 if code != 0 else 0
        sys.exit(code)
    except click.UsageError as exc:
        exc.show()
        sys.exit(64)
    except click.ClickException as exc:
        exc.show()
        sys.exit(64)
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(64)
    except NonConvergenceError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
