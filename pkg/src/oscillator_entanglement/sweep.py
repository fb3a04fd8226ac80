"""Single points, parameter sweeps, the claims document, and their serialization."""

from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import math
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from .entropy import (
    CLAIM_TOL,
    DISCREPANT,
    FAIL,
    PASS,
    ROUTES,
    Claim,
    EntropyReport,
    condition_report,
    entropy_report,
)
from .errors import EntanglementError, InvalidParams, InvalidSpec
from .oracle import normal_modes
from .params import SystemParams, derive

SWEEPABLE = ("omega", "kappa", "Omega")
SCALES = {"lin": "linear", "linear": "linear", "log": "logarithmic", "logarithmic": "logarithmic"}
DEFAULT_SWEEP_ROUTES = ("oracle", "paper_algebraic")

CSV_COLUMNS = (
    "swept_param",
    "value",
    "s_l_paper_literal",
    "s_l_paper_algebraic",
    "s_l_kernel",
    "s_l_quadrature",
    "s_l_oracle",
    "deviation",
    "flags",
)
_NUMERIC_COLUMNS = CSV_COLUMNS[1:-1]

NOT_PAPER_SOURCED = (
    "Sweep ranges and fixed parameter values are user choices; the source figures "
    "do not state them."
)


def _version() -> str:
    from . import __version__

    return __version__


def format_decimal(x: float | None) -> str:
    """17 significant digits; round-trips through float() exactly."""
    return "" if x is None else format(x, ".17g")


def check_routes(routes) -> tuple[str, ...]:
    routes = tuple(routes)
    unknown = [r for r in routes if r not in ROUTES]
    if unknown or not routes:
        raise InvalidParams(f"unknown or empty routes {unknown}; choose from {', '.join(ROUTES)}")
    return routes


def run_point(params: SystemParams, routes=ROUTES) -> EntropyReport:
    """Evaluate every requested route at one parameter point."""
    if not isinstance(params, SystemParams):
        raise InvalidParams("run_point needs a SystemParams instance")
    return entropy_report(params, check_routes(routes))


@dataclass(frozen=True)
class SweepSpec:
    swept: str
    start: float
    stop: float
    count: int
    fixed: SystemParams
    scale: str = "linear"
    routes: tuple[str, ...] = DEFAULT_SWEEP_ROUTES

    def __post_init__(self):
        if self.swept not in SWEEPABLE:
            raise InvalidSpec(f"swept must be one of {SWEEPABLE}, got {self.swept!r}")
        if self.scale not in SCALES:
            raise InvalidSpec(f"scale must be lin or log, got {self.scale!r}")
        object.__setattr__(self, "scale", SCALES[self.scale])
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or self.start < 0:
            raise InvalidSpec("sweep bounds must be finite and non-negative")
        if not self.start < self.stop:
            raise InvalidSpec(f"need start < stop, got {self.start} >= {self.stop}")
        if int(self.count) != self.count or self.count < 2:
            raise InvalidSpec(f"count must be an integer >= 2, got {self.count}")
        if self.scale == "logarithmic" and self.start <= 0:
            raise InvalidSpec("logarithmic scale needs start > 0")
        try:
            object.__setattr__(self, "routes", check_routes(self.routes))
        except InvalidParams as exc:
            raise InvalidSpec(str(exc)) from None

    def values(self) -> np.ndarray:
        if self.scale == "logarithmic":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["routes"] = list(self.routes)
        return d


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list[tuple[float, EntropyReport]]
    metadata: dict = field(default_factory=dict)

    def route_values(self, route: str) -> list[float | None]:
        return [report.value(route) for _, report in self.rows]

    def any_total_failure(self) -> bool:
        """True if at some point every requested route failed."""
        return any(all(report.failed(r) for r in self.spec.routes) for _, report in self.rows)


def monotonicity(values) -> dict:
    """Strict monotonicity verdict for an ordered sequence.

    The direction is set by the first step; ``violation_index`` is the index
    of the first value that breaks it.
    """
    values = list(values)
    for i, v in enumerate(values):
        if v is None or not math.isfinite(v):
            return {"verdict": "undefined", "violation_index": i}
    steps = np.diff(values)
    if steps[0] > 0:
        direction, bad = "increasing", np.flatnonzero(steps <= 0)
    elif steps[0] < 0:
        direction, bad = "decreasing", np.flatnonzero(steps >= 0)
    else:
        return {"verdict": "non-monotone", "violation_index": 1}
    if bad.size:
        return {"verdict": "non-monotone", "violation_index": int(bad[0]) + 1}
    return {"verdict": direction, "violation_index": None}


def _timestamp() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def run_sweep(spec: SweepSpec) -> SweepResult:
    rows = []
    for value in spec.values():
        params = spec.fixed.with_(**{spec.swept: float(value)})
        rows.append((float(value), entropy_report(params, spec.routes)))
    result = SweepResult(spec, rows)
    result.metadata = {
        "tool": "oscillator_entanglement",
        "version": _version(),
        "timestamp": _timestamp(),
        "row_flags": [report.flags for _, report in rows],
        "monotonicity": {r: monotonicity(result.route_values(r)) for r in spec.routes},
        "note": NOT_PAPER_SOURCED,
    }
    return result


def _row_dict(swept: str, value: float | None, report: EntropyReport) -> dict:
    return {
        "swept_param": swept,
        "value": value,
        "s_l_paper_literal": report.s_l_paper_literal,
        "s_l_paper_algebraic": report.s_l_paper_algebraic,
        "s_l_kernel": report.s_l_kernel,
        "s_l_quadrature": report.s_l_quadrature,
        "s_l_oracle": report.s_l_oracle,
        "deviation": report.deviation,
        "flags": ";".join(report.flags),
    }


def _csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [row[c] if c in ("swept_param", "flags") else format_decimal(row[c]) for c in CSV_COLUMNS]
        )
    return buf.getvalue()


def sweep_to_csv(result: SweepResult) -> str:
    return _csv_text([_row_dict(result.spec.swept, v, rep) for v, rep in result.rows])


def sweep_to_json(result: SweepResult) -> str:
    rows = []
    for value, report in result.rows:
        row = _row_dict(result.spec.swept, value, report)
        # x-coordinate of the Omega_eff plot for kappa sweeps
        row["omega_eff"] = math.sqrt(result.spec.fixed.with_(**{result.spec.swept: value}).omega_eff_sq)
        rows.append(row)
    spec = result.spec.as_dict()
    return json.dumps({"spec": spec, "rows": rows, "metadata": result.metadata}, indent=2) + "\n"


def point_to_csv(report: EntropyReport) -> str:
    return _csv_text([_row_dict("", None, report)])


def point_to_json(params: SystemParams, routes, report: EntropyReport) -> str:
    doc = {
        "spec": {"params": asdict(params), "routes": list(routes)},
        "rows": [_row_dict("", None, report) | {"a_value": report.a_value, "b_value": report.b_value}],
        "metadata": {"tool": "oscillator_entanglement", "version": _version(), "timestamp": _timestamp()},
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_csv(text: str) -> list[dict]:
    """Read emitted CSV back; numeric cells become floats (None when empty)."""
    rows = []
    for raw in csv.DictReader(io.StringIO(text)):
        row = dict(raw)
        for c in _NUMERIC_COLUMNS:
            row[c] = float(row[c]) if row[c] != "" else None
        rows.append(row)
    return rows


def _frequency_claims(params: SystemParams) -> list[Claim]:
    """Compare the kernel frequencies z+/z- with the exact normal modes."""
    try:
        d = derive(params)
        modes = normal_modes(params)
    except EntanglementError as exc:
        return [Claim("frequencies", "z+/z- coincide with the normal modes", FAIL, detail=f"{exc.flag}: {exc}")]
    pairs = [
        ("frequencies.sum_of_squares", "z+^2 + z-^2 = nu+^2 + nu-^2",
         d.z_plus**2 + d.z_minus**2, modes.nu_plus**2 + modes.nu_minus**2),
        ("frequencies.product", "z+ z- = nu+ nu-", d.z_plus * d.z_minus, modes.nu_plus * modes.nu_minus),
        ("frequencies.z_plus", "z+ = nu+", d.z_plus, modes.nu_plus),
        ("frequencies.z_minus", "z- = nu-", d.z_minus, modes.nu_minus),
    ]
    claims = []
    for key, statement, z_value, nu_value in pairs:
        dev = abs(z_value - nu_value) / abs(nu_value)
        claims.append(
            Claim(key, statement, PASS if dev <= CLAIM_TOL else DISCREPANT, z_value, nu_value, dev, CLAIM_TOL,
                  detail="measured: kernel frequencies; expected: normal modes; relative deviation")
        )
    return claims


def _point_claims(params: SystemParams) -> list[Claim]:
    report = entropy_report(params)
    claims = []
    checks = [
        ("point.paper_vs_oracle", "closed-form S_L matches the exact ground state",
         "paper_algebraic", "oracle", CLAIM_TOL, DISCREPANT),
        ("point.kernel_vs_paper", "1 - sqrt(q/p) equals 1 - sqrt(A/B)",
         "kernel", "paper_algebraic", 1e-8, FAIL),
        ("point.kernel_vs_quadrature", "kernel closed form equals its double integral",
         "kernel", "quadrature", 1e-8, FAIL),
    ]
    for key, statement, route, reference, tol, mismatch in checks:
        a, b = report.value(route), report.value(reference)
        if a is None or b is None:
            missing = [f for f in report.flags if f.split(":")[0] in (route, reference)]
            claims.append(Claim(key, statement, FAIL, a, b, None, tol, detail="; ".join(missing)))
            continue
        dev = abs(a - b)
        claims.append(Claim(key, statement, PASS if dev <= tol else mismatch, a, b, dev, tol))
    return claims


def claims_report(params: SystemParams) -> dict:
    """Every checkable claim with a PASS / FAIL / DISCREPANT verdict.

    PASS: holds to tolerance.  FAIL: the closed forms do not deliver their own
    claim, or could not be evaluated.  DISCREPANT: the exact ground state
    contradicts the claim.
    """
    claims = condition_report(params) + _frequency_claims(params) + _point_claims(params)
    return {
        "params": asdict(params),
        "claims": [c.as_dict() for c in claims],
        "summary": dict(Counter(c.verdict for c in claims)),
        "metadata": {
            "tool": "oscillator_entanglement",
            "version": _version(),
            "timestamp": _timestamp(),
            "note": NOT_PAPER_SOURCED,
        },
    }


def claims_to_csv(doc: dict) -> str:
    cols = ("key", "verdict", "measured", "expected", "deviation", "tolerance", "statement", "detail")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for claim in doc["claims"]:
        writer.writerow(
            [format_decimal(claim[c]) if isinstance(claim[c], float) or claim[c] is None else claim[c] for c in cols]
        )
    return buf.getvalue()
