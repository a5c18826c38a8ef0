"""Command-line surface.

Every command emits canonical JSON (sorted keys, two-space indent) or a
lossy CSV projection of its records.  All randomness flows from the
single seed in the run configuration.  Exit codes: 0 success, 1 usage
or domain error, 2 failed verification (theorem violation, junction gap,
sieve mismatch).
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import click

from .areas import area_closed, hat_area
from .coding import PrimeCoding, coding_from_json, coding_to_json, default_coding
from .config import RunConfig, resolve_config
from .construction import (
    GoldbachSpec,
    build_goldbach,
    junction_gaps,
    scalar_limit_sweep,
    verify_continuity,
)
from .errors import (
    ConstructionFailureError,
    DomainError,
    HypgoldError,
    TheoremViolationError,
    VerificationError,
)
from .hyperbola import classify_number, classify_point
from .numeric import (
    MODE_FLOAT,
    MODE_RATIONAL,
    format_exact,
    format_real,
    is_integral,
    parse_exact,
    to_fraction,
)
from .oracles import goldbach_partitions_oracle
from .points import essential_points, goldbach_characterization
from .regions import enumerate_regions


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return format_exact(obj)
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    # mpf and anything else numeric: deterministic decimal rendering
    return format_real(obj)


def canonical_json(payload: dict) -> str:
    return json.dumps(_jsonable(payload), sort_keys=True, indent=2,
                      separators=(",", ": ")) + "\n"


def records_csv(records: list) -> str:
    buf = io.StringIO()
    if records:
        writer = csv.DictWriter(buf, fieldnames=list(records[0].keys()),
                                lineterminator="\n")
        writer.writeheader()
        for row in records:
            writer.writerow({k: _jsonable(v) for k, v in row.items()})
    return buf.getvalue()


def emit(payload: dict, records: list, cfg: RunConfig, out: str | None) -> None:
    text = records_csv(records) if cfg.output_format == "csv" else canonical_json(payload)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _common(f):
    for opt in reversed([
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                     default=None, help="JSON config file mirroring the run configuration."),
        click.option("--mode", type=click.Choice([MODE_RATIONAL, MODE_FLOAT]), default=None),
        click.option("--precision", "precision_bits", type=int, default=None,
                     help="Float-mode mantissa bits (>= 53)."),
        click.option("--tol", "tolerance_rel", type=float, default=None,
                     help="Relative tolerance for float-mode comparisons."),
        click.option("--seed", type=int, default=None),
        click.option("--json", "output_format", flag_value="json", default=None),
        click.option("--csv", "output_format", flag_value="csv", default=None),
        click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None),
    ]):
        f = opt(f)
    return f


def _resolve(config_path, **kwargs) -> RunConfig:
    return resolve_config(cli_overrides=kwargs, config_path=config_path)


def _load_coding(path: str | None, cfg: RunConfig, fallback_index: int) -> PrimeCoding:
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            return coding_from_json(json.load(fh))
    return default_coding(fallback_index, mode=cfg.mode, precision=cfg.precision_bits)


@click.group()
def cli():
    """Hyperbolic classification and Goldbach characterization toolkit."""


@cli.command()
@click.option("--k0", type=int, required=True)
@_common
def regions(k0, config_path, **kwargs):
    """Enumerate the typed essential regions of k0."""
    out = kwargs.pop("out", None)
    cfg = _resolve(config_path, **kwargs)
    region_set = enumerate_regions(k0)
    records = [
        {"n": n, "n_prime": np_, "type": t.value} for n, np_, t in region_set
    ]
    payload = {
        "command": "regions",
        "config": cfg.as_dict(),
        "k0": k0,
        "count": len(records),
        "records": records,
    }
    emit(payload, records, cfg, out)


@cli.command()
@click.option("--k0", type=int, required=True)
@click.option("--k", "k_text", type=str, required=True,
              help="Evaluation point in [k0, k0+1]; exact 'p/q' or decimal.")
@click.option("--coding", "coding_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Coding JSON for deformed-plane areas (default: identity).")
@_common
def areas(k0, k_text, coding_path, config_path, **kwargs):
    """Closed-form areas and derivatives over the essential regions of k0."""
    out = kwargs.pop("out", None)
    cfg = _resolve(config_path, **kwargs)
    k = parse_exact(k_text)
    region_set = enumerate_regions(k0)
    if coding_path:
        with open(coding_path, "r", encoding="utf-8") as fh:
            coding = coding_from_json(json.load(fh))
    else:
        top = max(np_ for _, np_, _ in region_set)
        coding = PrimeCoding(slopes=(Fraction(1),) * (top + 1), mode=cfg.mode,
                             precision=cfg.precision_bits)
    records = []
    for n, np_, t in region_set:
        res = area_closed(t, n, np_, k, precision=cfg.precision_bits)
        records.append({
            "n": n,
            "n_prime": np_,
            "type": t.value,
            "area": res.area,
            "d1": res.d1,
            "d2": res.d2,
            "hat_area": hat_area(coding, t, n, np_, k),
        })
    payload = {
        "command": "areas",
        "config": cfg.as_dict(),
        "k0": k0,
        "k": format_exact(k),
        "records": records,
    }
    emit(payload, records, cfg, out)


@cli.command()
@click.option("--alpha", type=int, required=True)
@click.option("--coding", "coding_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Coding JSON (default: the strict default coding).")
@_common
def points(alpha, coding_path, config_path, **kwargs):
    """Essential points (x_k0, y_k0) for k0 = 4 .. alpha/2 - 1."""
    out = kwargs.pop("out", None)
    cfg = _resolve(config_path, **kwargs)
    coding = _load_coding(coding_path, cfg, fallback_index=max(alpha - 4, 16))
    pts = essential_points(coding, alpha)
    records = [{"k0": p.k0, "x": p.x, "y": p.y} for p in pts]
    payload = {
        "command": "points",
        "config": cfg.as_dict(),
        "alpha": alpha,
        "records": records,
    }
    emit(payload, records, cfg, out)


def _alpha_range(text: str) -> list:
    try:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as exc:
        raise click.UsageError(f"--alpha-range wants 'a..b', got {text!r}") from exc
    if lo > hi:
        raise click.UsageError("--alpha-range wants a <= b")
    start = lo if lo % 2 == 0 else lo + 1
    return [a for a in range(max(start, 16), hi + 1, 2)]


def _sweep_one(args):
    coding, alpha, tol, want_timing = args
    t0 = time.perf_counter()
    try:
        k0_list = goldbach_characterization(coding, alpha, rel_tol=tol)
        agreement, error = True, None
    except TheoremViolationError as exc:
        k0_list, agreement, error = [], False, str(exc)
    oracle = goldbach_partitions_oracle(alpha)
    record = {
        "alpha": alpha,
        "k0_list": list(k0_list),
        "sieve_window": list(oracle.inside_window),
        "sieve_outside_window": list(oracle.outside_window),
        "sieve_agreement": agreement,
    }
    if error:
        record["error"] = error
    if want_timing:
        record["timing_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
    return record


@cli.command(name="goldbach-check")
@click.option("--alpha-range", "alpha_range", type=str, required=True,
              help="Even alphas 'a..b' to reconcile against the sieve.")
@click.option("--coding", "coding_path", type=click.Path(exists=True, dir_okay=False),
              default=None)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--timing", is_flag=True, default=False,
              help="Include per-alpha timing (breaks byte-determinism).")
@_common
def goldbach_check(alpha_range, coding_path, workers, timing, config_path, **kwargs):
    """Reconcile the essential-point characterization with the sieve."""
    out = kwargs.pop("out", None)
    cfg = _resolve(config_path, **kwargs)
    alphas = _alpha_range(alpha_range)
    if not alphas:
        raise click.UsageError("no even alpha >= 16 in the requested range")
    coding = _load_coding(coding_path, cfg, fallback_index=max(alphas[-1] - 4, 16))
    tasks = [(coding, a, cfg.tolerance_rel, timing) for a in alphas]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_sweep_one, tasks, chunksize=8))
    else:
        records = [_sweep_one(t) for t in tasks]
    records.sort(key=lambda r: r["alpha"])
    all_agree = all(r["sieve_agreement"] for r in records)
    payload = {
        "command": "goldbach-check",
        "config": cfg.as_dict(),
        "alpha_range": [alphas[0], alphas[-1]],
        "all_agree": all_agree,
        "records": records,
    }
    emit(payload, records, cfg, out)
    if not all_agree:
        raise TheoremViolationError("characterization disagreed with the sieve")


@cli.command(name="build-g")
@click.option("--alpha", type=int, required=True)
@click.option("--scalar-u", "scalar_u", type=str, default=None,
              help="Use the scalar family lambda_i = u (> 1); exact 'p/q' or decimal.")
@click.option("--xi2", "xi2_text", type=str, default="1", show_default=True)
@click.option("--xi-half", "xi_half_text", type=str, default=None)
@click.option("--out", "coding_out", type=click.Path(dir_okay=False, writable=True),
              default="coding.json", show_default=True,
              help="Where to write the constructed coding JSON.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--mode", type=click.Choice([MODE_RATIONAL, MODE_FLOAT]), default=None)
@click.option("--precision", "precision_bits", type=int, default=None)
@click.option("--tol", "tolerance_rel", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--json", "output_format", flag_value="json", default=None)
@click.option("--csv", "output_format", flag_value="csv", default=None)
def build_g(alpha, scalar_u, xi2_text, xi_half_text, coding_out, config_path, **kwargs):
    """Construct a coding with a continuous total-area second derivative."""
    cfg = _resolve(config_path, **kwargs)
    spec = GoldbachSpec(
        alpha=alpha,
        xi2_sq=parse_exact(xi2_text),
        xi_half_sq=parse_exact(xi_half_text) if xi_half_text else None,
        scalar_u=parse_exact(scalar_u) if scalar_u else None,
        seed=cfg.seed,
    )
    cc = build_goldbach(spec, precision=cfg.precision_bits)
    max_gap = verify_continuity(cc, rel_tol=cfg.tolerance_rel)
    coding_payload = coding_to_json(cc.prime_coding())
    coding_payload.update({
        "alpha": alpha,
        "seed": cfg.seed,
        "xi2_sq": format_exact(spec.xi2_sq),
        "xi_half_sq": format_exact(cc.xi_sq[alpha // 2]),
        "lambda_sq": {str(i): format_exact(v) for i, v in sorted(cc.lambda_sq.items())},
        "provenance": {str(i): v for i, v in sorted(cc.provenance.items())},
        "max_junction_gap": format_real(max_gap),
    })
    with open(coding_out, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(coding_payload))
    report = {
        "command": "build-g",
        "config": cfg.as_dict(),
        "alpha": alpha,
        "seed": cfg.seed,
        "max_junction_gap": format_real(max_gap),
        "coding_file": coding_out,
    }
    click.echo(canonical_json(report), nl=False)


@cli.command(name="scalar-limit")
@click.option("--alpha", type=int, required=True)
@click.option("--u", "u_text", type=str, required=True,
              help="Comma list; values <= 1 are offsets h (u = 1 + h), values > 1 are u.")
@click.option("--xi2", "xi2_text", type=str, default="1", show_default=True)
@_common
def scalar_limit(alpha, u_text, xi2_text, config_path, **kwargs):
    """Tabulate x_k0(u), y_k0(u) for the scalar family along u -> 1+."""
    out = kwargs.pop("out", None)
    cfg = _resolve(config_path, **kwargs)
    u_values = []
    for part in u_text.split(","):
        h = parse_exact(part)
        u_values.append(1 + h if h <= 1 else h)
    result = scalar_limit_sweep(alpha, u_values, xi2_sq=parse_exact(xi2_text),
                                precision=cfg.precision_bits)
    records = [
        {"u": format_exact(r.u), "k0": r.k0, "x_k0": r.x_k0, "y_k0": r.y_k0}
        for r in result.rows
    ]
    payload = {
        "command": "scalar-limit",
        "config": cfg.as_dict(),
        "alpha": alpha,
        "xi2_sq": format_exact(parse_exact(xi2_text)),
        "monotone": result.monotone,
        "final_below": result.final_below,
        "converged": result.converged,
        "max_deviation": [format_real(d) for d in result.max_deviation],
        "records": records,
    }
    emit(payload, records, cfg, out)
    if not result.converged:
        raise ConstructionFailureError(
            "scalar limit failed to converge monotonically below tolerance"
        )


@cli.command()
@click.option("--k", "k_text", type=str, required=True,
              help="Number to classify; exact 'p/q' or decimal.")
@click.option("--coding", "coding_path", type=click.Path(exists=True, dir_okay=False),
              default=None)
@_common
def classify(k_text, coding_path, config_path, **kwargs):
    """Hyperbolic classification of k: prime, composite natural, or non-natural."""
    out = kwargs.pop("out", None)
    cfg = _resolve(config_path, **kwargs)
    k = parse_exact(k_text)
    if k <= 1:
        raise DomainError("classification needs k > 1")
    fallback = max(math.ceil(k) + 1, 16)
    coding = _load_coding(coding_path, cfg, fallback_index=fallback)
    kind = classify_number(coding, k, rel_tol=cfg.tolerance_rel)
    witnesses = []
    if is_integral(k):
        kn = int(k)
        for d in range(1, math.isqrt(kn) + 1):
            if kn % d == 0:
                pk = classify_point(coding, k, coding.psi(d), rel_tol=cfg.tolerance_rel)
                witnesses.append({"x": d, "y": kn // d, "kind": pk.value})
    payload = {
        "command": "classify",
        "config": cfg.as_dict(),
        "k": format_exact(k),
        "kind": kind.value,
        "witnesses": witnesses,
    }
    emit(payload, witnesses, cfg, out)


def _error_payload(exc: BaseException) -> str:
    return json.dumps(
        {"error": type(exc).__name__, "message": str(exc)}, sort_keys=True
    )


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        return 1
    except click.UsageError as exc:
        click.echo(_error_payload(exc), err=True)
        return 1
    except click.ClickException as exc:
        click.echo(_error_payload(exc), err=True)
        return 1
    except VerificationError as exc:
        click.echo(_error_payload(exc), err=True)
        return 2
    except HypgoldError as exc:
        click.echo(_error_payload(exc), err=True)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
