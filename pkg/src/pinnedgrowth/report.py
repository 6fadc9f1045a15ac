"""Experiment configs, single-set reports and size sweeps."""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from dataclasses import asdict, dataclass, fields, replace
from decimal import Context, Decimal
from fractions import Fraction

from . import __version__
from . import growth as G
from . import incidence as I
from .errors import ConfigError, PinnedGrowthError
from .exact import FIELDS, GAUSSIAN, RATIONAL, format_rational, format_scalar, parse_scalar
from .sets import (
    direct_product,
    geometric_set,
    interval_set,
    random_gaussian_set,
    random_set,
    read_set_file,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FAMILIES = ("interval", "geometric", "random", "gaussian-random", "file", "gaussian-file")
SIZED_FAMILIES = ("interval", "geometric", "random", "gaussian-random")

_LN_CONTEXT = Context(prec=45)
_OUT_CONTEXT = Context(prec=20)


@dataclass(frozen=True)
class ExperimentConfig:
    family: str = "interval"
    n: int | None = None
    base: str | None = None
    seed: int | None = None
    bound: int | None = None
    path: str | None = None
    field: str = RATIONAL
    cap_bruteforce: int = G.DEFAULT_Q_CAP
    cap_points: int = 1024

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        if self.field not in FIELDS:
            raise ConfigError(f"unknown field {self.field!r}")
        if self.family in SIZED_FAMILIES and self.n is None:
            raise ConfigError(f"family {self.family} needs --n")
        if self.family == "geometric" and self.base is None:
            raise ConfigError("family geometric needs --base")
        if self.family in ("random", "gaussian-random"):
            if self.seed is None or self.bound is None:
                raise ConfigError(f"family {self.family} needs --seed and --bound")
        if self.family in ("file", "gaussian-file") and not self.path:
            raise ConfigError(f"family {self.family} needs --input")
        if self.family in ("gaussian-random", "gaussian-file") and self.field != GAUSSIAN:
            raise ConfigError(f"family {self.family} requires --field gaussian")
        if self.cap_bruteforce < 1 or self.cap_points < 2:
            raise ConfigError("caps must be positive")


def build_set(config: ExperimentConfig):
    config.validate()
    f = config.family
    if f == "interval":
        A = interval_set(config.n)
    elif f == "geometric":
        base = parse_scalar(config.base)
        A = geometric_set(base, config.n)
    elif f == "random":
        A = random_set(config.seed, config.n, config.bound)
    elif f == "gaussian-random":
        return random_gaussian_set(config.seed, config.n, config.bound)
    elif f == "file":
        A = read_set_file(config.path, None if config.field == GAUSSIAN else RATIONAL)
    else:
        return read_set_file(config.path, GAUSSIAN)
    if config.field == GAUSSIAN:
        return A.to_gaussian()
    if A.field != RATIONAL:
        raise ConfigError("set is Gaussian; run it with --field gaussian")
    return A


def decimal_string(value: Decimal) -> str:
    """Round to 20 significant digits."""
    return str(_OUT_CONTEXT.plus(value))


def _ln(n: int) -> Decimal:
    return Decimal(n).ln(_LN_CONTEXT)


def ratio_over_n4_log(count: int, n: int) -> dict:
    value = _LN_CONTEXT.divide(Decimal(count), Decimal(n) ** 4 * _ln(n))
    return {"count": count, "n": n, "form": "count / (n^4 ln n)", "value": decimal_string(value)}


def ratio_log_over_n2(count: int, n: int) -> dict:
    value = _LN_CONTEXT.divide(Decimal(count) * _ln(n), Decimal(n) ** 2)
    return {"count": count, "n": n, "form": "count * ln n / n^2", "value": decimal_string(value)}


def _fraction_json(q: Fraction) -> dict:
    return {"exact": format_rational(q), "value": decimal_string(Decimal(q.numerator) / Decimal(q.denominator))}


def _certificate_json(cert: G.PinnedCertificate) -> dict:
    return {
        "a": format_scalar(cert.a),
        "a_prime": format_scalar(cert.a_prime),
        "energy": cert.energy,
        "product_set_size": cert.product_set_size,
        "cs_lower_bound": _fraction_json(cert.cs_lower_bound),
        "energy_sum": cert.energy_sum,
        "cs_holds": cert.cs_holds(),
        "pigeonhole_holds": cert.pigeonhole_holds(),
    }


class _Timer:
    def __init__(self):
        self.laps = {}

    def lap(self, name, start):
        self.laps[name] = time.perf_counter() - start


def run(config: ExperimentConfig, workers: int | None = None, timings: dict | None = None) -> dict:
    """Compute every quantity for the configured set.

    The returned dict is deterministic in ``config``; wall-clock timings go
    into the optional ``timings`` dict instead of the report.
    """
    A = build_set(config)
    n = len(A)
    if n < 2:
        raise ConfigError(f"|A| = {n}; ratio fields need |A| >= 2")
    timer = _Timer()
    absent = {}
    quantities = {}

    t = time.perf_counter()
    q = G.count_Q(A, "fast", workers=workers)
    quantities["q"] = {"q_total": q.q_total, "q_zero": q.q_zero, "q_diag": q.q_diag, "q_star": q.q_star}
    if n <= config.cap_bruteforce:
        quantities["q"]["oracle_agrees"] = G.count_Q(A, "bruteforce", cap=config.cap_bruteforce) == q
    else:
        absent["q.oracle_agrees"] = f"|A|={n} exceeds cap_bruteforce={config.cap_bruteforce}"
    timer.lap("q", t)

    t = time.perf_counter()
    certs = {sign: G.extract_pinned_pair(A, sign, workers=workers) for sign in G.SIGNS}
    quantities["shifted_energy_sum"] = {sign: c.energy_sum for sign, c in certs.items()}
    quantities["pinned"] = {sign: _certificate_json(c) for sign, c in certs.items()}
    timer.lap("pinned", t)

    t = time.perf_counter()
    quantities["difference_product_size"] = len(G.difference_product_set(A))
    spectrum = G.cross_ratio_spectrum(A)
    quantities["cross_ratio"] = {
        "size": len(spectrum),
        "total": spectrum.total,
        "sum_of_squares": spectrum.sum_of_squares(),
    }
    timer.lap("sets", t)

    t = time.perf_counter()
    P = direct_product(A, A)
    sub = certs[G.SUBTRACTIVE]
    quantities["pinned_rect_distance_size"] = len(I.pinned_rect_distance(P, (sub.a, sub.a_prime)))
    if len(P) <= config.cap_points:
        quantities["rect_distance_size"] = len(I.rect_distance_set(P))
        lines = I.spanned_lines(P)
        quantities["collinear"] = {
            "cube_sum": I.collinear_cube_sum(lines),
            "ordered_triples": I.ordered_collinear_triples(lines),
            "line_histogram": {str(m): c for m, c in lines.histogram().items()},
        }
        quantities["rich_lines"] = [
            {"k": k, "count": count, "ratio": _fraction_json(ratio)}
            for k, count, ratio in (I.st_ratio_report(lines) if len(P) >= 4 else [])
        ]
    else:
        reason = f"|P|={len(P)} exceeds cap_points={config.cap_points}"
        for key in ("rect_distance_size", "collinear", "rich_lines"):
            quantities[key] = None
            absent[key] = reason
    timer.lap("incidence", t)

    ratios = {
        "q_ratio": ratio_over_n4_log(q.q_total, n),
        "pinned_subtractive_ratio": ratio_log_over_n2(certs[G.SUBTRACTIVE].product_set_size, n),
        "pinned_additive_ratio": ratio_log_over_n2(certs[G.ADDITIVE].product_set_size, n),
        "cross_ratio_ratio": ratio_log_over_n2(len(spectrum), n),
    }
    if timings is not None:
        timings.update(timer.laps)
    return {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "config": config.to_dict(),
        "set": {"field": A.field, "size": n, "elements": [format_scalar(x) for x in A]},
        "quantities": quantities,
        "ratios": ratios,
        "absent": absent,
    }


def error_report(config: ExperimentConfig | None, exc: Exception) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "config": config.to_dict() if config is not None else None,
        "error": {"type": type(exc).__name__, "message": str(exc)},
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


SWEEP_COLUMNS = (
    "n", "set_size",
    "q_total", "q_zero", "q_diag", "q_star",
    "energy_sum_subtractive", "energy_sum_additive",
    "pinned_a", "pinned_a_prime", "pinned_energy", "pinned_size",
    "pinned_additive_a", "pinned_additive_a_prime", "pinned_additive_energy", "pinned_additive_size",
    "difference_product_size", "cross_ratio_size",
    "q_ratio", "pinned_ratio", "pinned_additive_ratio", "cross_ratio_ratio",
    "error",
)


def sweep_row(report: dict) -> dict:
    qs, ratios = report["quantities"], report["ratios"]
    sub, add = qs["pinned"][G.SUBTRACTIVE], qs["pinned"][G.ADDITIVE]
    return {
        "n": report["config"]["n"],
        "set_size": report["set"]["size"],
        **{k: qs["q"][k] for k in ("q_total", "q_zero", "q_diag", "q_star")},
        "energy_sum_subtractive": qs["shifted_energy_sum"][G.SUBTRACTIVE],
        "energy_sum_additive": qs["shifted_energy_sum"][G.ADDITIVE],
        "pinned_a": sub["a"], "pinned_a_prime": sub["a_prime"],
        "pinned_energy": sub["energy"], "pinned_size": sub["product_set_size"],
        "pinned_additive_a": add["a"], "pinned_additive_a_prime": add["a_prime"],
        "pinned_additive_energy": add["energy"], "pinned_additive_size": add["product_set_size"],
        "difference_product_size": qs["difference_product_size"],
        "cross_ratio_size": qs["cross_ratio"]["size"],
        "q_ratio": ratios["q_ratio"]["value"],
        "pinned_ratio": ratios["pinned_subtractive_ratio"]["value"],
        "pinned_additive_ratio": ratios["pinned_additive_ratio"]["value"],
        "cross_ratio_ratio": ratios["cross_ratio_ratio"]["value"],
        "error": "",
    }


def sweep(base_config: ExperimentConfig, sizes, workers: int | None = None,
          timings: dict | None = None) -> list:
    """One row dict per size; a failing size records its error and the sweep goes on."""
    if base_config.family not in SIZED_FAMILIES:
        raise ConfigError(f"family {base_config.family} has no size parameter to sweep")
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ConfigError("sweep sizes must be ascending")
    rows = []
    for n in sizes:
        config = replace(base_config, n=n)
        start = time.perf_counter()
        try:
            rows.append(sweep_row(run(config, workers=workers)))
        except PinnedGrowthError as exc:
            row = dict.fromkeys(SWEEP_COLUMNS, "")
            row.update(n=n, error=f"{type(exc).__name__}: {exc}")
            rows.append(row)
        if timings is not None:
            timings[n] = time.perf_counter() - start
        log.info("sweep n=%d done in %.2fs", n, time.perf_counter() - start)
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
