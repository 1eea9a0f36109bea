"""Grid scans over the complex-alpha plane and tau sweeps, with CSV/JSON emission.

Cells are independent pure computations, evaluated tau-major then im then
re in a deterministic order regardless of worker count. Cells that violate
a state precondition (the odd cat at alpha ~ 0) carry a NaN sentinel and
valid=False instead of aborting the scan.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import __version__
from .beamsplitter import SplitterParams, entropy_for_kind
from .errors import ConfigError, NcqoError
from .observables import (
    cat_validity_value,
    mandel_closed,
    photon_distribution,
    quad_moments_closed,
)
from .states import (
    MIN_CAT_ODD_ALPHA,
    StateFamily,
    StateKind,
    build_state,
    perturbative_warning_indicator,
)

CSV_HEADER = "re_alpha,im_alpha,tau,value,valid,warn"


class Quantity(Enum):
    VAR_Y = "varY"
    VAR_Z = "varZ"
    R = "R"
    SATURATION_DEFECT = "saturation_defect"
    U = "U"
    U_TILDE = "U_tilde"
    MANDEL = "mandel"
    PHOTON_DIST = "photon_dist"
    ENTROPY = "entropy"


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    re_steps: int
    im_min: float
    im_max: float
    im_steps: int

    def validate(self) -> None:
        if self.re_steps < 1 or self.im_steps < 1:
            raise ConfigError("grid steps must be >= 1")
        for v in (self.re_min, self.re_max, self.im_min, self.im_max):
            if not math.isfinite(v):
                raise ConfigError("grid ranges must be finite")

    @property
    def re_values(self) -> np.ndarray:
        return np.linspace(self.re_min, self.re_max, self.re_steps)

    @property
    def im_values(self) -> np.ndarray:
        return np.linspace(self.im_min, self.im_max, self.im_steps)


@dataclass(frozen=True)
class ScanSpec:
    quantity: Quantity
    family: StateFamily
    grid: GridSpec
    tau_list: tuple
    splitter: SplitterParams = SplitterParams()
    cutoff: int | None = None  # None = automatic per alpha
    fock_n: int = 0  # photon index for quantity=photon_dist
    exact: bool = False  # exact-factorial coefficient mode

    def validate(self) -> None:
        self.grid.validate()
        if len(self.tau_list) == 0:
            raise ConfigError("tau_list must be nonempty")
        if any(t < 0 or not math.isfinite(t) for t in self.tau_list):
            raise ConfigError("tau values must be finite and >= 0")
        if self.cutoff is not None and self.cutoff < 6:
            raise ConfigError("explicit cutoff must be >= 6")
        if self.fock_n < 0:
            raise ConfigError("fock_n must be >= 0")


@dataclass(frozen=True)
class ScanRow:
    re_alpha: float
    im_alpha: float
    tau: float
    value: float
    valid: bool
    warn: bool


@dataclass(frozen=True)
class ScanTable:
    rows: tuple
    metadata: dict = field(default_factory=dict)


def _cell_flags(spec: ScanSpec, alpha: complex, tau: float) -> tuple[bool, bool]:
    warn = perturbative_warning_indicator(alpha, tau)
    if spec.family is StateFamily.COHERENT:
        return True, warn
    valid = cat_validity_value(alpha, tau, spec.family.parity) >= 0.0
    return valid, warn


def _evaluate_cell(spec: ScanSpec, alpha: complex, tau: float) -> ScanRow:
    nan_row = ScanRow(alpha.real, alpha.imag, tau, float("nan"), False, False)
    if spec.family is StateFamily.CAT_ODD and abs(alpha) < MIN_CAT_ODD_ALPHA:
        return nan_row
    valid, warn = _cell_flags(spec, alpha, tau)
    kind = StateKind(spec.family, alpha, tau)
    q = spec.quantity
    try:
        if q is Quantity.ENTROPY:
            value = entropy_for_kind(kind, spec.splitter, spec.cutoff, spec.exact)
        elif q is Quantity.MANDEL:
            value = mandel_closed(kind).mandel_Q
        elif q is Quantity.PHOTON_DIST:
            state = build_state(kind, spec.cutoff, spec.exact)
            dist = photon_distribution(state)
            value = float(dist[spec.fock_n]) if spec.fock_n < dist.size else 0.0
        else:
            moments = quad_moments_closed(kind)
            value = {
                Quantity.VAR_Y: moments.var_Y,
                Quantity.VAR_Z: moments.var_Z,
                Quantity.R: moments.R,
                Quantity.SATURATION_DEFECT: moments.saturation_defect,
                Quantity.U: moments.U,
                Quantity.U_TILDE: moments.U_tilde,
            }[q]
    except NcqoError:
        return nan_row
    return ScanRow(alpha.real, alpha.imag, tau, float(value), valid, warn)


def _worker_count() -> int:
    env = os.environ.get("NCQO_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(f"NCQO_THREADS is not an integer: {env!r}") from exc
    return os.cpu_count() or 1


def run_scan(spec: ScanSpec) -> ScanTable:
    """Evaluate every grid cell; row order is tau-major, then im, then re."""
    spec.validate()
    cells = [
        (complex(re, im), tau)
        for tau in spec.tau_list
        for im in spec.grid.im_values
        for re in spec.grid.re_values
    ]
    workers = _worker_count()
    if workers == 1:
        rows = [_evaluate_cell(spec, a, t) for a, t in cells]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda c: _evaluate_cell(spec, *c), cells))
    metadata = {
        "quantity": spec.quantity.value,
        "kind": spec.family.value,
        "cutoff": spec.cutoff if spec.cutoff is not None else "auto",
        "tool_version": __version__,
        "tau_list": list(spec.tau_list),
        "theta": spec.splitter.theta,
        "phi": spec.splitter.phi,
        "exact": spec.exact,
        "fock_n": spec.fock_n,
        "grid": {
            "re_min": spec.grid.re_min,
            "re_max": spec.grid.re_max,
            "re_steps": spec.grid.re_steps,
            "im_min": spec.grid.im_min,
            "im_max": spec.grid.im_max,
            "im_steps": spec.grid.im_steps,
        },
    }
    return ScanTable(rows=tuple(rows), metadata=metadata)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def emit(table: ScanTable, format: str, path: str) -> None:
    """Write a scan table as CSV or JSON (floats at 17 significant digits)."""
    if format not in ("csv", "json"):
        raise ConfigError(f"unknown format {format!r}")
    try:
        if format == "csv":
            lines = [CSV_HEADER]
            for r in table.rows:
                lines.append(
                    ",".join(
                        (
                            _fmt(r.re_alpha),
                            _fmt(r.im_alpha),
                            _fmt(r.tau),
                            _fmt(r.value),
                            _fmt_bool(r.valid),
                            _fmt_bool(r.warn),
                        )
                    )
                )
            with open(path, "w", newline="") as fh:
                fh.write("\n".join(lines) + "\n")
        else:
            payload = {
                "metadata": table.metadata,
                "rows": [
                    {
                        "re_alpha": r.re_alpha,
                        "im_alpha": r.im_alpha,
                        "tau": r.tau,
                        "value": r.value,
                        "valid": r.valid,
                        "warn": r.warn,
                    }
                    for r in table.rows
                ],
            }
            with open(path, "w") as fh:
                json.dump(payload, fh, indent=1)
                fh.write("\n")
    except OSError as exc:
        raise OSError(f"failed writing scan output to {path}: {exc}") from exc


def parse_csv(path: str) -> ScanTable:
    """Read back a CSV emitted by emit(); metadata is not stored in CSV."""
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ConfigError(f"{path} is not an ncqo scan CSV")
    rows = []
    for ln in lines[1:]:
        re_a, im_a, tau, value, valid, warn = ln.split(",")
        rows.append(
            ScanRow(
                float(re_a), float(im_a), float(tau), float(value),
                valid == "true", warn == "true",
            )
        )
    return ScanTable(rows=tuple(rows))


def parse_json(path: str) -> ScanTable:
    with open(path) as fh:
        payload = json.load(fh)
    rows = tuple(
        ScanRow(r["re_alpha"], r["im_alpha"], r["tau"], r["value"], r["valid"], r["warn"])
        for r in payload["rows"]
    )
    return ScanTable(rows=rows, metadata=payload.get("metadata", {}))


def rows_equal(a: ScanRow, b: ScanRow) -> bool:
    """Field-for-field equality treating NaN == NaN."""
    def feq(x, y):
        return (math.isnan(x) and math.isnan(y)) or x == y

    return (
        feq(a.re_alpha, b.re_alpha)
        and feq(a.im_alpha, b.im_alpha)
        and feq(a.tau, b.tau)
        and feq(a.value, b.value)
        and a.valid == b.valid
        and a.warn == b.warn
    )


def tables_equal(a: ScanTable, b: ScanTable) -> bool:
    return len(a.rows) == len(b.rows) and all(
        rows_equal(x, y) for x, y in zip(a.rows, b.rows)
    )
