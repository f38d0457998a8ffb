"""Experiment runner: validated configs in, reproducible CSV/JSON records out.

Payloads are deterministic functions of the config. Wall-clock metadata goes
to a ``<out>.meta.json`` sidecar, never into the payload itself.
"""

from __future__ import annotations

import csv
import glob
import io
import json
import math
import os
import tempfile
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import grover, qft, shor, walk
from .errors import DomainError, QWaveError, ResourceLimitError, ValidationError
from .fitting import DEFAULT_BURN_IN, fit_power_law, fit_records
from .rng import RNG_NAME, RNG_VERSION, make_rng

SCHEMA_VERSION = 1
FORMATS = ("csv", "json")
SUBCOMMANDS = ("qft", "shor", "grover", "walk", "baseline", "summary")


@dataclass
class ExperimentConfig:
    subcommand: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    out: str | None = None
    format: str = "csv"

    def echo(self) -> dict:
        return {"subcommand": self.subcommand, "seed": self.seed, "format": self.format,
                "rng": f"{RNG_NAME}/v{RNG_VERSION}", **{k: self.params[k] for k in sorted(self.params)}}


@dataclass
class ExperimentResult:
    status: int
    columns: list = field(default_factory=list)
    records: list = field(default_factory=list)
    summary: dict | None = None
    payload: str = ""
    error: dict | None = None


# ---------------------------------------------------------------- formatting

def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if isinstance(v, (list, tuple)):
        return ";".join(_fmt(x) for x in v)
    if v is None:
        return ""
    return str(v)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def render(config: ExperimentConfig, columns, records, summary=None) -> str:
    echo = config.echo()
    if config.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "config": echo, "columns": list(columns), "records": records}
        if summary is not None:
            doc["summary"] = summary
        return json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# qwave schema={SCHEMA_VERSION} config={json.dumps(_jsonable(echo), sort_keys=True)}\n")
    if summary is not None:
        buf.write(f"# summary={json.dumps(_jsonable(summary), sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in records:
        w.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".qwave-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_output(path: str) -> dict:
    """Parse a file written by :func:`run_experiment` back into config/records."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        doc = json.loads(text)
        return {"config": doc["config"], "records": doc["records"], "summary": doc.get("summary")}
    config, summary, body = None, None, []
    for line in text.splitlines():
        if line.startswith("# qwave"):
            config = json.loads(line.split("config=", 1)[1])
        elif line.startswith("# summary="):
            summary = json.loads(line.split("=", 1)[1])
        elif not line.startswith("#"):
            body.append(line)
    if config is None:
        raise ValidationError(f"{path}: missing qwave header")
    records = list(csv.DictReader(io.StringIO("\n".join(body))))
    return {"config": config, "records": records, "summary": summary}


# ---------------------------------------------------------------- validation

def _need_int(p: dict, key: str, lo=None, hi=None):
    v = p.get(key)
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
        raise ValidationError(f"parameter {key!r} must be an integer, got {v!r}")
    if lo is not None and v < lo:
        raise ValidationError(f"parameter {key!r} must be >= {lo}, got {v}")
    if hi is not None and v > hi:
        raise ValidationError(f"parameter {key!r} must be <= {hi}, got {v}")
    return int(v)


def _need_choice(p: dict, key: str, choices):
    v = p.get(key)
    if v not in choices:
        raise ValidationError(f"parameter {key!r} must be one of {list(choices)}, got {v!r}")
    return v


def validate(config: ExperimentConfig) -> None:
    if config.subcommand not in SUBCOMMANDS:
        raise ValidationError(f"unknown subcommand {config.subcommand!r}")
    if config.format not in FORMATS:
        raise ValidationError(f"format must be one of {FORMATS}")
    if isinstance(config.seed, bool) or not isinstance(config.seed, (int, np.integer)) or config.seed < 0:
        raise ValidationError("seed must be a non-negative integer")
    p = config.params
    sub = config.subcommand
    if sub == "qft":
        mode = _need_choice(p, "mode", ("compare", "table"))
        if mode == "compare":
            _need_int(p, "n", 1, 12)
            _need_int(p, "states", 1)
        else:
            _need_int(p, "n_max", 1, 12)
    elif sub == "shor":
        M = _need_int(p, "modulus", 4)
        if M > shor.MAX_MODULUS:
            raise ResourceLimitError(f"modulus {M} exceeds simulation limit {shor.MAX_MODULUS}")
        if all(M % k for k in range(2, math.isqrt(M) + 1)):
            raise DomainError(f"{M} is prime")
        _need_int(p, "retries", 1)
    elif sub == "grover":
        N = _need_int(p, "n", 2, 1 << 24)
        _need_int(p, "target", 0, N - 1)
        if p.get("queries") != "auto":
            _need_int(p, "queries", 0)
        _need_int(p, "trials", 1)
    elif sub == "walk":
        mode = _need_choice(p, "mode", ("spread", "search", "scaling"))
        d = _need_int(p, "d", 1, 8)
        _need_choice(p, "coin", ("auto",) + walk.COINS)
        if p["coin"] == "hadamard" and d != 1:
            raise ValidationError("the Hadamard coin is only defined for d = 1")
        if p["coin"] != "auto" and (mode == "scaling" or p.get("walker") == "classical"):
            raise ValidationError("--coin applies only to quantum spread and search runs")
        if mode == "scaling":
            sides = p.get("sides")
            if not isinstance(sides, (list, tuple)) or len(sides) < 3:
                raise ValidationError("scaling mode needs at least 3 side lengths")
            for L in sides:
                walk.Lattice(d, int(L))
        else:
            L = _need_int(p, "side", 2)
            walk.Lattice(d, L)
            if p.get("steps") is not None:
                _need_int(p, "steps", 1)
            elif mode == "spread":
                raise ValidationError("spread mode needs --steps")
            if mode == "spread":
                _need_choice(p, "walker", ("quantum", "classical"))
                _need_int(p, "trials", 1)
    elif sub == "baseline":
        _need_int(p, "n", 2, 1 << 20)
        _need_int(p, "trials", 1)
        _need_int(p, "target", 0, p["n"] - 1)
    elif sub == "summary":
        d = p.get("in_dir")
        if not isinstance(d, str):
            raise ValidationError("summary needs an input directory")


# ---------------------------------------------------------------- experiments

def _run_qft(cfg):
    p = cfg.params
    if p["mode"] == "table":
        rows = qft.complexity_table(range(1, p["n_max"] + 1))
        recs = [{"n": r.n, "naive_ops": r.naive_ops, "fft_ops": r.fft_ops, "qft_gates": r.qft_gates} for r in rows]
        return ["n", "naive_ops", "fft_ops", "qft_gates"], recs, None
    n = p["n"]
    N = 1 << n
    recs = []
    for k in range(p["states"]):
        rng = make_rng(cfg.seed, k)
        v = rng.normal(size=N) + 1j * rng.normal(size=N)
        v /= np.linalg.norm(v)
        a = qft.dft_bruteforce(v)
        b = qft.fft_classical(v)
        c = qft.qft_vector(v)
        recs.append({
            "n": n, "state": k,
            "dev_fft_dft": float(np.max(np.abs(b.amplitudes - a.amplitudes))),
            "dev_qft_dft": float(np.max(np.abs(c.amplitudes - a.amplitudes))),
            "dev_qft_fft": float(np.max(np.abs(c.amplitudes - b.amplitudes))),
            "naive_ops": a.ops, "fft_ops": b.ops, "qft_gates": c.ops,
        })
    worst = max(max(r["dev_fft_dft"], r["dev_qft_dft"], r["dev_qft_fft"]) for r in recs)
    cols = ["n", "state", "dev_fft_dft", "dev_qft_dft", "dev_qft_fft", "naive_ops", "fft_ops", "qft_gates"]
    return cols, recs, {"max_deviation": worst}


def _run_shor(cfg):
    p = cfg.params
    res = shor.shor_factor(p["modulus"], cfg.seed, p["retries"])
    rec = res.to_record()
    cols = ["M", "seed", "method", "a_values_tried", "y_samples", "r", "factors", "oracle_calls", "attempts", "lucky_gcd"]
    return cols, [rec], None


def _run_grover(cfg):
    p = cfg.params
    N, target = p["n"], p["target"]
    Q = grover.optimal_queries(N).Q_star if p["queries"] == "auto" else p["queries"]
    hits = 0
    calls = 0
    for k in range(p["trials"]):
        r = grover.grover_search(N, target, Q, make_rng(cfg.seed, k))
        hits += r.success
        calls += r.oracle_calls
    rec = {"N": N, "Q": Q, "predicted_success": grover.success_probability(N, Q),
           "empirical_success": hits / p["trials"], "oracle_calls": calls}
    return ["N", "Q", "predicted_success", "empirical_success", "oracle_calls"], [rec], None


def _resolve_coin(p):
    return None if p["coin"] == "auto" else p["coin"]


def _run_walk(cfg):
    p = cfg.params
    d = p["d"]
    if p["mode"] == "scaling":
        recs = walk.scaling_experiment(d, [int(L) for L in p["sides"]], p.get("steps"))
        rows = [{"d": d, "L": r.extra["L"], "N": r.N, "T_peak": r.extra["T_peak"], "p_peak": r.extra["p_peak"],
                 "T_eff": r.extra["T_eff"], "T_amplified": r.extra["T_amplified"], "t_max": r.extra["t_max"]}
                for r in recs]
        fit = fit_records(recs, DEFAULT_BURN_IN)
        summary = {"d": d, "exponent": fit.exponent, "log_intercept": fit.log_intercept, "r_squared": fit.r_squared}
        return ["d", "L", "N", "T_peak", "p_peak", "T_eff", "T_amplified", "t_max"], rows, summary
    L = p["side"]
    if p["mode"] == "spread":
        if p["walker"] == "classical":
            recs = walk.classical_walk_spread(d, L, p["steps"], p["trials"], cfg.seed)
        else:
            recs = walk.quantum_walk_spread(d, L, p["steps"], _resolve_coin(p))
        rows = [{"t": r.t, "sigma": r.sigma, "wrapped": r.wrapped} for r in recs]
        return ["t", "sigma", "wrapped"], rows, None
    lat = walk.Lattice(d, L)
    tr = walk.spatial_search(lat, t_max=p.get("steps"), coin=_resolve_coin(p))
    rows = [{"t": t, "p_marked": float(v)} for t, v in enumerate(tr.probabilities)]
    summary = {"N": lat.N, "T_peak": tr.T_peak, "p_peak": tr.p_peak,
               "T_eff": walk.search_cost(tr.T_peak, tr.p_peak) if tr.found_peak else None}
    return ["t", "p_marked"], rows, summary


def _run_baseline(cfg):
    p = cfg.params
    N, target = p["n"], p["target"]
    try:
        hybrid = grover.hybrid_factorized_search(N, target, 4, cfg.seed).total_queries
    except ValidationError:
        hybrid = None
    rec = {
        "N": N,
        "random_mean": grover.random_search_mean(N, p["trials"], cfg.seed, target),
        "sorted_queries": grover.classical_sorted_search(N, target),
        "grover_queries": grover.optimal_queries(N).Q_star,
        "hybrid_queries": hybrid,
        "sort_cost": grover.sort_cost(N),
    }
    cols = ["N", "random_mean", "sorted_queries", "grover_queries", "hybrid_queries", "sort_cost"]
    return cols, [rec], None


# ---------------------------------------------------------------- summary

@dataclass
class SummaryReport:
    tables: dict
    missing: list

    @property
    def complete(self) -> bool:
        return not self.missing


SUMMARY_INPUTS = {
    "fourier": "qft --table output (Fourier operation counts)",
    "search": "baseline output (search-query hierarchy)",
    "walk": "walk --mode scaling output (spatial-search exponents)",
}


def summary_table(in_dir: str) -> SummaryReport:
    """Join experiment outputs found in ``in_dir`` into one table per claim."""
    tables = {"fourier": [], "search": [], "walk": []}
    paths = sorted(glob.glob(os.path.join(in_dir, "*.csv")) + glob.glob(os.path.join(in_dir, "*.json")))
    for path in paths:
        if path.endswith((".meta.json", ".summary.json")):
            continue
        try:
            doc = read_output(path)
        except (ValueError, KeyError, ValidationError, json.JSONDecodeError):
            continue
        cfg, src = doc["config"], os.path.basename(path)
        sub = cfg.get("subcommand")
        if sub == "qft" and cfg.get("mode") == "table":
            for r in doc["records"]:
                n = int(r["n"])
                tables["fourier"].append({"n": n, "N": 1 << n, "naive_ops": int(r["naive_ops"]),
                                          "fft_ops": int(r["fft_ops"]), "qft_gates": int(r["qft_gates"]),
                                          "units": "multiply-adds / butterflies / gates", "source": src})
        elif sub == "baseline":
            for r in doc["records"]:
                N = int(r["N"])
                hyb = r.get("hybrid_queries")
                tables["search"].append({
                    "N": N,
                    "random_mean": float(r["random_mean"]),
                    "sorted": int(r["sorted_queries"]),
                    "grover": int(r["grover_queries"]),
                    "hybrid": int(hyb) if hyb not in (None, "") else None,
                    "ref_random": N,
                    "ref_sorted": math.log2(N),
                    "ref_grover": math.pi * math.sqrt(N) / 4,
                    "ref_hybrid": math.log2(N) / 2,
                    "trials": cfg.get("trials"),
                    "source": src,
                })
        elif sub == "walk" and cfg.get("mode") == "scaling":
            recs = doc["records"]
            pts = [(float(r["N"]), float(r["T_eff"])) for r in recs]
            fit = fit_power_law(pts, min_size=DEFAULT_BURN_IN)
            tables["walk"].append({
                "d": int(cfg["d"]),
                "sides": [int(r["L"]) for r in recs],
                "exponent": fit.exponent,
                "r_squared": fit.r_squared,
                "T_eff_over_sqrtN": [c / math.sqrt(n) for n, c in pts],
                "source": src,
            })
    for k in tables:
        tables[k].sort(key=lambda r: tuple(v for v in (r.get("n"), r.get("N"), r.get("d")) if v is not None))
    missing = [f"{k}: {SUMMARY_INPUTS[k]}" for k in tables if not tables[k]]
    return SummaryReport(tables, missing)


def render_summary(report: SummaryReport) -> str:
    out = []
    if report.tables["fourier"]:
        out.append("## Fourier transform operation counts")
        out.append("| n | N | naive (multiply-adds) | FFT (butterflies) | QFT (gates) | source |")
        out.append("|---|---|---|---|---|---|")
        for r in report.tables["fourier"]:
            out.append(f"| {r['n']} | {r['N']} | {r['naive_ops']} | {r['fft_ops']} | {r['qft_gates']} | {r['source']} |")
        out.append("")
    if report.tables["search"]:
        out.append("## Search queries")
        out.append("| N | random (mean) | ~N | sorted | log2 N | Grover | pi sqrt(N)/4 | hybrid | log2(N)/2 | source |")
        out.append("|---|---|---|---|---|---|---|---|---|---|")
        for r in report.tables["search"]:
            hyb = "-" if r["hybrid"] is None else r["hybrid"]
            out.append(f"| {r['N']} | {r['random_mean']:.2f} | {r['ref_random']} | {r['sorted']} | {r['ref_sorted']:.2f} "
                       f"| {r['grover']} | {r['ref_grover']:.2f} | {hyb} | {r['ref_hybrid']:.2f} | {r['source']} |")
        out.append("")
    if report.tables["walk"]:
        out.append("## Spatial search cost exponents")
        out.append("| d | sides | exponent | r^2 | T_eff/sqrt(N) | source |")
        out.append("|---|---|---|---|---|---|")
        for r in report.tables["walk"]:
            ratios = ", ".join(f"{x:.3f}" for x in r["T_eff_over_sqrtN"])
            out.append(f"| {r['d']} | {r['sides']} | {r['exponent']:.4f} | {r['r_squared']:.4f} | {ratios} | {r['source']} |")
        out.append("")
    if report.missing:
        out.append("## Missing inputs")
        out.extend(f"- {m}" for m in report.missing)
        out.append("")
    return "\n".join(out)


# ---------------------------------------------------------------- dispatch

_RUNNERS = {"qft": _run_qft, "shor": _run_shor, "grover": _run_grover, "walk": _run_walk, "baseline": _run_baseline}


def error_object(exc: Exception) -> dict:
    kind = getattr(exc, "kind", "error")
    obj = {"error": kind, "message": str(exc), "exit_status": getattr(exc, "exit_code", 1)}
    log = getattr(exc, "log", None)
    if log:
        obj["log"] = _jsonable(log)
    return obj


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Validate, run, render and (optionally) write one experiment.

    Failures come back as a nonzero status plus a machine-readable error
    object. No output file is created in that case.
    """
    try:
        validate(config)
        if config.subcommand == "summary":
            rep = summary_table(config.params["in_dir"])
            text = render_summary(rep)
            if config.format == "json":
                text = json.dumps(_jsonable({"schema_version": SCHEMA_VERSION, "config": config.echo(),
                                             "tables": rep.tables, "missing": rep.missing}),
                                  sort_keys=True, indent=2) + "\n"
            if rep.missing:
                err = {"error": "missing-inputs", "message": "summary inputs missing", "missing": rep.missing,
                       "exit_status": ValidationError.exit_code}
                return ExperimentResult(ValidationError.exit_code, payload=text, error=err,
                                        summary={"missing": rep.missing})
            _emit(config, text)
            return ExperimentResult(0, payload=text, summary={"tables": rep.tables})
        cols, recs, summary = _RUNNERS[config.subcommand](config)
        text = render(config, cols, recs, summary)
        _emit(config, text, summary)
        return ExperimentResult(0, cols, recs, summary, text)
    except QWaveError as exc:
        return ExperimentResult(exc.exit_code, error=error_object(exc))


def _emit(config: ExperimentConfig, text: str, summary=None) -> None:
    if not config.out:
        return
    atomic_write(config.out, text)
    meta = {"timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()), "qwave_version": __version__,
            "numpy_version": np.__version__, "schema_version": SCHEMA_VERSION}
    atomic_write(config.out + ".meta.json", json.dumps(meta, sort_keys=True, indent=2) + "\n")
    if summary is not None and config.format == "csv":
        atomic_write(config.out + ".summary.json", json.dumps(_jsonable(summary), sort_keys=True, indent=2) + "\n")


__all__ = ["ExperimentConfig", "ExperimentResult", "SummaryReport", "run_experiment", "summary_table",
           "render_summary", "read_output"]
