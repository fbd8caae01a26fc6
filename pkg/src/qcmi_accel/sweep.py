"""Grid sweeps, formula reconciliation and randomized property checks.

Everything here returns plain data; rendering to CSV, JSON or whitespace
plot data is deterministic (12 significant digits) so identical configs
give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import analytic
from .analytic import COMPARISON_TOL, FormulaComparison, Status, compare
from .fock import random_tripartite_state
from .infomeasures import QCMI_NEG_TOL, InvariantViolation, Partition, Scenario, qcmi, scenario_qcmi
from .matcore import partial_trace
from .rindler import R_MAX

FORMATS = ("csv", "json", "plotdata")
SWEEP_COLUMNS = ("r", "r2", "S_ABC", "S_AC", "S_BC", "S_C", "QCMI", "QCMI_analytic", "abs_diff")
ROW_SUM_TOL = 1e-12
PROPERTY_TOL = 1e-12


def fmt_num(x: float | None) -> str:
    """12 significant digits; scientific (lowercase) below 1e-4; '' for None."""
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if x == 0:
        return "0"
    return f"{x:.12g}"


def _json_num(x):
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return None
    return float(fmt_num(x))


@dataclass
class SweepConfig:
    scenario: Scenario | str
    r_min: float = 0.0
    r_max: float = R_MAX
    steps: int = 64
    # "locked" (r2 = r1), "grid" (independent r2 over the same grid) or a fixed value
    r2_mode: str | float = "locked"
    fmt: str = "csv"
    out: str | None = None
    compare_analytic: bool = False
    tolerance: float = COMPARISON_TOL
    seed: int = 0

    def __post_init__(self):
        self.scenario = Scenario.parse(self.scenario)
        self.r_min, self.r_max = float(self.r_min), float(self.r_max)
        if not (0.0 <= self.r_min <= self.r_max <= R_MAX + 1e-12):
            raise ValueError(f"need 0 <= r_min <= r_max <= pi/4, got [{self.r_min}, {self.r_max}]")
        self.r_max = min(self.r_max, R_MAX)
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"steps must be a positive integer, got {self.steps!r}")
        self.steps = int(self.steps)
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance!r}")
        if isinstance(self.r2_mode, str) and self.r2_mode not in ("locked", "grid"):
            self.r2_mode = float(self.r2_mode)
        if not isinstance(self.r2_mode, str):
            if not self.scenario.two_party:
                raise ValueError(f"{self.scenario.value} accelerates one party; --r2 must be 'locked'")
            if not 0.0 <= self.r2_mode <= R_MAX + 1e-12:
                raise ValueError(f"r2 must lie in [0, pi/4], got {self.r2_mode}")
        elif self.r2_mode == "grid" and not self.scenario.two_party:
            raise ValueError(f"{self.scenario.value} accelerates one party; --r2 must be 'locked'")

    def grid(self) -> list[float]:
        """``r_min + k (r_max - r_min) / steps`` for k = 0..steps; one point if the range is empty."""
        if self.r_max == self.r_min:
            return [self.r_min]
        width = self.r_max - self.r_min
        return [min(self.r_min + k * width / self.steps, R_MAX) for k in range(self.steps + 1)]

    def points(self) -> list[tuple[float, float | None]]:
        g = self.grid()
        if not self.scenario.two_party:
            return [(r, None) for r in g]
        if self.r2_mode == "locked":
            return [(r, r) for r in g]
        if self.r2_mode == "grid":
            return [(r1, r2) for r1 in g for r2 in g]
        return [(r, float(self.r2_mode)) for r in g]

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario.value,
            "r_min": _json_num(self.r_min),
            "r_max": _json_num(self.r_max),
            "steps": self.steps,
            "r2": self.r2_mode if isinstance(self.r2_mode, str) else _json_num(self.r2_mode),
            "format": self.fmt,
            "compare_analytic": self.compare_analytic,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class SweepRow:
    r: float
    r2: float | None
    s_abc: float
    s_ac: float
    s_bc: float
    s_c: float
    qcmi: float
    qcmi_analytic: float | None = None
    abs_diff: float | None = None
    status: Status | None = None

    def values(self) -> list:
        return [self.r, self.r2, self.s_abc, self.s_ac, self.s_bc, self.s_c, self.qcmi, self.qcmi_analytic, self.abs_diff]


@dataclass
class SweepResult:
    config: SweepConfig
    rows: list[SweepRow]

    @property
    def compared(self) -> bool:
        return self.config.compare_analytic

    @property
    def max_abs_diff(self) -> float | None:
        diffs = [row.abs_diff for row in self.rows if row.abs_diff is not None and math.isfinite(row.abs_diff)]
        return max(diffs) if diffs else None

    @property
    def status(self) -> str:
        if not self.compared:
            return "not-compared"
        return "match" if all(row.status is Status.MATCH for row in self.rows) else "mismatch"


def run_sweep(config: SweepConfig) -> SweepResult:
    """Pipeline QCMI (and, optionally, the eigenvalue-oracle QCMI) over the grid."""
    rows = []
    for r1, r2 in config.points():
        rep = scenario_qcmi(config.scenario, r1, r2)
        if abs(rep.qcmi - (rep.s_ac + rep.s_bc - rep.s_abc - rep.s_c)) > ROW_SUM_TOL:
            raise InvariantViolation(f"row at r={r1} does not add up")
        extra = {}
        if config.compare_analytic:
            a = analytic.analytic_qcmi(config.scenario, r1, r2, form="eigenvalues")
            cmp = compare(rep.qcmi, a, rep.r_values, config.tolerance)
            extra = {"qcmi_analytic": a, "abs_diff": cmp.abs_diff, "status": cmp.status}
        rows.append(SweepRow(r1, r2, rep.s_abc, rep.s_ac, rep.s_bc, rep.s_c, rep.qcmi, **extra))
    return SweepResult(config, rows)


# -- rendering --------------------------------------------------------------


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt_num(v) for v in row])
    return buf.getvalue()


def _plotdata(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = ["# " + " ".join(header)]
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, str):
                cells.append(v)
            else:
                cells.append("nan" if v is None else fmt_num(v))
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def render_sweep(result: SweepResult, fmt: str | None = None) -> str:
    fmt = fmt or result.config.fmt
    rows = [row.values() for row in result.rows]
    if fmt == "csv":
        return _csv(SWEEP_COLUMNS, rows)
    if fmt == "plotdata":
        return _plotdata(SWEEP_COLUMNS, rows)
    if fmt == "json":
        return _json(
            {
                "config": result.config.to_dict(),
                "rows": [dict(zip(SWEEP_COLUMNS, (_json_num(v) for v in row))) for row in rows],
                "summary": {"max_abs_diff": _json_num(result.max_abs_diff), "status": result.status},
            }
        )
    raise ValueError(f"unknown format {fmt!r}")


# -- printed-formula reconciliation ------------------------------------------

COMPARE_COLUMNS = (
    "scenario",
    "form",
    "r",
    "r2",
    "QCMI",
    "QCMI_eigen",
    "QCMI_printed",
    "abs_diff_eigen",
    "abs_diff_printed",
    "status_eigen",
    "status_printed",
)

# printed forms matching at fewer than this fraction of points are flagged
STABLE_MATCH_FRACTION = 0.95


@dataclass(frozen=True)
class CompareRow:
    scenario: Scenario
    form: str
    r: float
    r2: float | None
    numeric: float
    eigen: FormulaComparison
    printed: FormulaComparison

    def values(self) -> list:
        return [
            self.scenario.value,
            self.form,
            self.r,
            self.r2,
            self.numeric,
            self.eigen.analytic,
            self.printed.analytic,
            self.eigen.abs_diff,
            self.printed.abs_diff,
            self.eigen.status.value,
            self.printed.status.value,
        ]


@dataclass
class FormSummary:
    form: str
    scenario: str
    points: int = 0
    match: int = 0
    mismatch: int = 0
    undefined: int = 0
    max_abs_diff: float | None = None

    @property
    def match_fraction(self) -> float:
        return self.match / self.points if self.points else 0.0

    @property
    def stable_divergence(self) -> bool:
        return self.match_fraction < STABLE_MATCH_FRACTION


@dataclass
class CompareResult:
    scenarios: list[Scenario]
    steps: int
    r2_value: float | None
    tolerance: float
    rows: list[CompareRow] = field(default_factory=list)

    @property
    def eigen_ok(self) -> bool:
        return all(row.eigen.status is Status.MATCH for row in self.rows)

    @property
    def eigen_max_abs_diff(self) -> float | None:
        diffs = [row.eigen.abs_diff for row in self.rows if math.isfinite(row.eigen.abs_diff)]
        return max(diffs) if diffs else None

    def summaries(self) -> list[FormSummary]:
        out: dict[str, FormSummary] = {}
        for row in self.rows:
            s = out.setdefault(row.form, FormSummary(row.form, row.scenario.value))
            s.points += 1
            st = row.printed.status
            if st is Status.MATCH:
                s.match += 1
            elif st is Status.MISMATCH:
                s.mismatch += 1
            else:
                s.undefined += 1
            d = row.printed.abs_diff
            if math.isfinite(d) and (s.max_abs_diff is None or d > s.max_abs_diff):
                s.max_abs_diff = d
        return list(out.values())


def interior_grid(steps: int) -> list[float]:
    return [k * R_MAX / steps for k in range(1, steps)]


def run_compare(
    scenarios: Sequence[Scenario | str] | None = None,
    steps: int = 64,
    r2_value: float | None = None,
    tolerance: float = COMPARISON_TOL,
) -> CompareResult:
    """Evaluate every printed QCMI expression on the interior grid.

    Each point is compared against the pipeline, as is the eigenvalue-oracle
    QCMI. With ``r2_value`` set, two-party scenarios use the general forms
    at ``(r, r2_value)``; otherwise ``r2 = r`` and both the general and the
    locked forms are evaluated.
    """
    if steps < 2:
        raise ValueError("compare needs steps >= 2 for a nonempty interior grid")
    scenarios = [Scenario.parse(s) for s in (scenarios or list(Scenario))]
    result = CompareResult(scenarios, steps, r2_value, tolerance)
    for sc in scenarios:
        forms = analytic.printed_forms_for(sc)
        if sc.two_party and r2_value is not None:
            forms = [f for f in forms if f.two_args]
        for r in interior_grid(steps):
            r2 = (r if r2_value is None else r2_value) if sc.two_party else None
            rep = scenario_qcmi(sc, r, r2)
            eig = compare(rep.qcmi, analytic.analytic_qcmi(sc, r, r2, "eigenvalues"), rep.r_values, tolerance)
            for f in forms:
                pr = compare(rep.qcmi, analytic.analytic_qcmi(sc, r, r2, f.name), rep.r_values, tolerance)
                result.rows.append(CompareRow(sc, f.name, r, r2, rep.qcmi, eig, pr))
    return result


def render_compare(result: CompareResult, fmt: str) -> str:
    rows = [row.values() for row in result.rows]
    if fmt == "csv":
        return _csv(COMPARE_COLUMNS, rows)
    if fmt == "plotdata":
        return _plotdata(COMPARE_COLUMNS, rows)
    if fmt == "json":
        config = {
            "scenarios": [s.value for s in result.scenarios],
            "steps": result.steps,
            "r2": _json_num(result.r2_value) if result.r2_value is not None else "locked",
            "tolerance": result.tolerance,
        }
        forms = {
            s.form: {
                "scenario": s.scenario,
                "points": s.points,
                "match": s.match,
                "mismatch": s.mismatch,
                "undefined": s.undefined,
                "max_abs_diff": _json_num(s.max_abs_diff),
                "stable_divergence": s.stable_divergence,
            }
            for s in result.summaries()
        }
        return _json(
            {
                "config": config,
                "rows": [
                    {k: (v if isinstance(v, str) else _json_num(v)) for k, v in zip(COMPARE_COLUMNS, row)}
                    for row in rows
                ],
                "summary": {
                    "max_abs_diff": _json_num(result.eigen_max_abs_diff),
                    "status": "match" if result.eigen_ok else "mismatch",
                    "forms": forms,
                },
            }
        )
    raise ValueError(f"unknown format {fmt!r}")


def compare_summary_text(result: CompareResult) -> str:
    lines = [
        f"eigenvalue oracle: {'match' if result.eigen_ok else 'MISMATCH'} "
        f"at {len({(r.scenario, r.r, r.r2) for r in result.rows})} points "
        f"(max abs diff {fmt_num(result.eigen_max_abs_diff)})"
    ]
    for s in result.summaries():
        flag = "stable divergence" if s.stable_divergence else "ok"
        lines.append(
            f"printed {s.form:<13} {s.match:>3}/{s.points} match, {s.undefined} undefined, "
            f"max abs diff {fmt_num(s.max_abs_diff)}: {flag}"
        )
    return "\n".join(lines) + "\n"


# -- randomized strong-subadditivity check ------------------------------------


@dataclass
class PropertiesReport:
    seed: int
    count: int
    passed: int = 0
    failures: list[tuple[int, str]] = field(default_factory=list)
    min_qcmi: float = math.inf
    max_trace_defect: float = 0.0
    max_hermiticity_defect: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def text(self) -> str:
        lines = [
            f"properties seed={self.seed} count={self.count}",
            f"passed {self.passed}/{self.count}",
            f"min qcmi {fmt_num(self.min_qcmi)}",
            f"max partial-trace trace defect {fmt_num(self.max_trace_defect)}",
            f"max partial-trace hermiticity defect {fmt_num(self.max_hermiticity_defect)}",
        ]
        lines += [f"FAIL index={i}: {msg}" for i, msg in self.failures]
        lines.append("status " + ("pass" if self.ok else "fail"))
        return "\n".join(lines) + "\n"


def run_properties(seed: int, count: int) -> PropertiesReport:
    """Strong subadditivity and partial-trace invariants on random states.

    Each state is a random complex-Gaussian 4-qubit pure state with one
    qubit traced out; the generator is seeded so reports are reproducible.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    report = PropertiesReport(seed, count)
    part = Partition((0,), (1,), (2,))
    for i in range(count):
        try:
            rho = random_tripartite_state(rng)
            problems = []
            for keep in ([0, 2], [1, 2], [2], []):
                red = partial_trace(rho.matrix, [2, 2, 2], keep)
                td = abs(complex(np.trace(red)) - 1.0)
                hd = float(np.linalg.norm(red - red.conj().T))
                report.max_trace_defect = max(report.max_trace_defect, td)
                report.max_hermiticity_defect = max(report.max_hermiticity_defect, hd)
                if td > PROPERTY_TOL or hd > PROPERTY_TOL:
                    problems.append(f"partial trace onto {keep}: trace defect {td:.3e}, hermiticity {hd:.3e}")
            value = qcmi(rho, part).qcmi
            report.min_qcmi = min(report.min_qcmi, value)
            if value < -QCMI_NEG_TOL:
                problems.append(f"qcmi {value!r}")
        except (ValueError, InvariantViolation) as exc:
            problems = [str(exc)]
        if problems:
            report.failures.append((i, "; ".join(problems)))
        else:
            report.passed += 1
    return report
