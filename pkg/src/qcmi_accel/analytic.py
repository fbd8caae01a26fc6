"""Closed-form spectra, entropies and QCMI expressions for every scenario.

These are evaluated directly from formulas and never touch the state
pipeline, so they serve as an independent oracle for it. Two kinds of
formula live here:

* eigenvalue lists per subsystem. A few printed lists are not spectra at all
  (they do not sum to one); for those ``printed=False`` (the default)
  returns the minimally corrected list and ``printed=True`` the formula as
  published. ``ERRATA`` records each correction.
* composed QCMI expressions as published (``PRINTED_FORMS``). They are kept
  verbatim for reconciliation against the pipeline and are not corrected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .infomeasures import Scenario, entropy_from_eigenvalues, scenario_qcmi, scenario_r_values
from .rindler import R_MAX

SUBSYSTEMS = ("ABC", "AC", "BC", "C")
SUBSYSTEM_DIMS = {"ABC": 8, "AC": 4, "BC": 4, "C": 2}
COMPARISON_TOL = 1e-6
LIMIT_STEP = 1e-6
LIMIT_DIVERGENCE = 1e-3

ERRATA = {
    (Scenario.W_BC, "ABC"): (
        "pair term: '-2(cos2r1 - cos2r2)' -> '-2(cos2r1 + cos2r2)'; radicand "
        "'... - 16cos2r2 + cos4r2' -> '... - 16cos2r2 + 8cos4r2'"
    ),
    (Scenario.W_AB, "ABC"): (
        "pair term: '-2(cos2r1 - cos2r2)' -> '-2(cos2r1 + cos2r2)'; radicand "
        "'-16cos2r1 cos^2 r2' -> '-32cos2r1 cos^2 r2'"
    ),
    (Scenario.BISEP2_C, "entropies"): "published entropies omit the 1/2 inside each eigenvalue",
    (Scenario.BISEP3_C, "entropies"): (
        "published entropies omit the 1/2 inside each eigenvalue and pair "
        "S(ABC) with S(AC); for this state S(ABC) = S(BC) and S(AC) = S(C)"
    ),
}


def _c2(r):
    return math.cos(2 * r)


def _pad(values, dim: int) -> np.ndarray:
    out = np.zeros(dim)
    v = np.sort(np.asarray(values, dtype=float))[::-1]
    out[: v.size] = v
    return out


# -- eigenvalue lists -------------------------------------------------------


def _one_abc(r):
    return [(1 - _c2(r)) / 3, (2 + _c2(r)) / 3]


def _one_pair(r):
    # spectrum of the two-party marginal that contains the accelerated party
    root = math.sqrt(14 + 2 * math.cos(4 * r))
    return [math.cos(r) ** 2 / 3, (4 + root) / 12, (4 - root) / 12, math.sin(r) ** 2 / 3]


def _one_c(r):
    return [(1 + 2 * math.sin(r) ** 2) / 3, 2 * math.cos(r) ** 2 / 3]


_INERTIAL_MARGINAL = [2 / 3, 1 / 3]


def _two_abc_pair(r1, r2, scenario: Scenario, printed: bool):
    c1, c2 = _c2(r1), _c2(r2)
    cm, cp = math.cos(2 * (r1 - r2)), math.cos(2 * (r1 + r2))
    if printed:
        base = (6 - 2 * (c1 - c2) - cm - cp) / 24
        if scenario is Scenario.W_BC:
            rad = 32 + 8 * math.cos(4 * r1) - 32 * c1 * math.cos(r2) ** 2 - 16 * c2 + math.cos(4 * r2)
        else:
            rad = 32 + 8 * math.cos(4 * r1) - 16 * c1 * math.cos(r2) ** 2 - 16 * c2 + 8 * math.cos(4 * r2)
        root = math.sqrt(rad) / 24 if rad >= 0 else math.nan
        return [base + root, base - root]
    return _quadratic_pair(math.sin(r1) ** 2, math.sin(r2) ** 2)


def corrected_pair_trig(r1: float, r2: float) -> list[float]:
    """Corrected published form of the three-party pair, ``base +- sqrt(rad) / 24``.

    Kept as a reference; ``_quadratic_pair`` evaluates the same roots stably.
    """
    c1, c2 = _c2(r1), _c2(r2)
    base = (6 - 2 * (c1 + c2) - math.cos(2 * (r1 - r2)) - math.cos(2 * (r1 + r2))) / 24
    rad = 32 + 8 * math.cos(4 * r1) + 8 * math.cos(4 * r2) - 32 * c1 * math.cos(r2) ** 2 - 16 * c2
    root = math.sqrt(max(rad, 0.0)) / 24
    return [base + root, base - root]


def _quadratic_pair(x, y):
    """Roots ``(x + y - xy -+ sqrt(x^2 - xy + y^2)) / 3``.

    Same values as the trigonometric form, written in ``x, y`` so that no
    cancellation occurs when both roots are small; the smaller one is
    ``product / larger``.
    """
    hi = (x + y - x * y + math.sqrt((x - y) ** 2 + x * y)) / 3
    product = x * y * ((1 - x) * (1 - y) + (1 - x) + (1 - y)) / 9
    return [hi, product / hi if hi > 0 else 0.0]


def _two_abc(r1, r2, scenario, printed):
    c1, c2 = _c2(r1), _c2(r2)
    s = math.sin(r1) ** 2 * math.sin(r2) ** 2 / 3
    if scenario is Scenario.W_BC:
        big = (5 + 3 * c2 + c1 * (3 + c2)) / 12
    else:
        big = (10 + 6 * (c1 + c2) + math.cos(2 * (r1 - r2)) + math.cos(2 * (r1 + r2))) / 24
    return [s, big] + _two_abc_pair(r1, r2, scenario, printed)


def _bc_two(r1, r2):
    # BC marginal with both B and C accelerated; the pair is the cos^2
    # counterpart of the three-party one
    s1, s2 = math.sin(r1) ** 2, math.sin(r2) ** 2
    return [math.cos(r1) ** 2 * math.cos(r2) ** 2 / 3, (s1 + s2 + s1 * s2) / 3] + _quadratic_pair(
        math.cos(r1) ** 2, math.cos(r2) ** 2
    )


def _bisep_spectra(k: int, r: float) -> dict[str, list[float]]:
    c, s = math.cos(r) ** 2, math.sin(r) ** 2
    if k == 1:
        return {"ABC": [c, s], "AC": [c / 2, c / 2, s / 2, s / 2], "BC": [c / 2, c / 2, s / 2, s / 2], "C": [c, s]}
    paired = [(1 + c) / 2, s / 2]
    single = [(1 + s) / 2, c / 2]
    if k == 2:
        return {"ABC": paired, "AC": paired, "BC": single, "C": single}
    return {"ABC": paired, "AC": single, "BC": paired, "C": single}


def _spectra(scenario: Scenario, r1: float, r2: float | None, printed: bool) -> dict[str, list[float]]:
    if scenario is Scenario.W_C:
        return {"ABC": _one_abc(r1), "AC": _one_pair(r1), "BC": _one_pair(r1), "C": _one_c(r1)}
    if scenario is Scenario.W_B:
        return {"ABC": _one_abc(r1), "AC": _INERTIAL_MARGINAL, "BC": _one_pair(r1), "C": _INERTIAL_MARGINAL}
    if scenario is Scenario.W_BC:
        return {
            "ABC": _two_abc(r1, r2, scenario, printed),
            "AC": _one_pair(r2),
            "BC": _bc_two(r1, r2),
            "C": _one_c(r2),
        }
    if scenario is Scenario.W_AB:
        return {
            "ABC": _two_abc(r1, r2, scenario, printed),
            "AC": _one_pair(r1),
            "BC": _one_pair(r2),
            "C": _INERTIAL_MARGINAL,
        }
    k = int(scenario.value[5])
    return _bisep_spectra(k, r1)


@dataclass(frozen=True)
class AnalyticSpectrum:
    scenario: Scenario
    subsystem: str
    r_values: tuple[float, ...]
    values: np.ndarray
    printed: bool = False

    @property
    def sum_defect(self) -> float:
        return abs(float(np.sum(self.values)) - 1.0)


def analytic_eigenvalues(
    scenario: Scenario | str, subsystem: str, r1: float, r2: float | None = None, printed: bool = False
) -> AnalyticSpectrum:
    """Closed-form spectrum of one subsystem, zero-padded and sorted descending.

    ``r1``/``r2`` follow :func:`qcmi_accel.infomeasures.scenario_state`. With
    ``printed=True`` the formulas are taken exactly as published, including
    the lists recorded in ``ERRATA``.
    """
    scenario = Scenario.parse(scenario)
    if subsystem not in SUBSYSTEM_DIMS:
        raise ValueError(f"subsystem must be one of {SUBSYSTEMS}, got {subsystem!r}")
    rs = scenario_r_values(scenario, r1, r2)
    values = _spectra(scenario, rs[0], rs[1] if len(rs) > 1 else None, printed)[subsystem]
    return AnalyticSpectrum(scenario, subsystem, rs, _pad(values, SUBSYSTEM_DIMS[subsystem]), printed)


def analytic_entropies(scenario: Scenario | str, r1: float, r2: float | None = None) -> dict[str, float]:
    """Entropies (bits) of the four subsystems from the closed-form spectra."""
    return {
        sub: entropy_from_eigenvalues(analytic_eigenvalues(scenario, sub, r1, r2).values) for sub in SUBSYSTEMS
    }


def eigenvalue_qcmi(scenario: Scenario | str, r1: float, r2: float | None = None) -> float:
    s = analytic_entropies(scenario, r1, r2)
    return s["AC"] + s["BC"] - s["ABC"] - s["C"]


def _h(p):
    return entropy_from_eigenvalues([p, 1 - p])


def analytic_biseparable_entropies(k: int, r: float, printed: bool = False) -> dict[str, float]:
    """Entropies of the biseparable states with C accelerated.

    ``printed=True`` returns the expressions as published, which for ``k`` in
    {2, 3} are not entropies of the stated density matrices (see ``ERRATA``);
    the derived QCMI is zero for both variants.
    """
    if k not in (1, 2, 3):
        raise ValueError(f"biseparable configuration must be 1, 2 or 3, got {k!r}")
    c, s = math.cos(r) ** 2, math.sin(r) ** 2
    if k == 1:
        h = _h(s)
        return {"ABC": h, "AC": 1 + h, "BC": 1 + h, "C": h}
    if printed:
        with np.errstate(divide="ignore", invalid="ignore"):
            first = float(-_xlog2(s, s) - _xlog2(1 + c, 1 + c))
            second = float(-_xlog2(1 + s, 1 + s) - _xlog2(c, c))
        return {"ABC": first, "AC": first, "BC": second, "C": second}
    return {sub: entropy_from_eigenvalues(v) for sub, v in _bisep_spectra(k, r).items()}


# -- composed QCMI expressions as published ---------------------------------


def _xlog2(x, y):
    """``x * log2(y)``, with ``0 * log2(0) = 0``."""
    if x == 0 and y == 0:
        return 0.0
    return x * np.log2(y)


def _printed_w_c(r):
    q = math.sqrt(3 + math.cos(2 * r) ** 2)
    a = (1 + 2 * math.cos(r) ** 2) / 3
    b = (1 + 2 * math.sin(r) ** 2) / 3
    return (
        2 / 3
        - _xlog2(4 / 3, math.cos(r) * math.sin(r) / 3)
        - _xlog2(2 * q / 3, (2 - q) / math.sin(2 * r))
        + _xlog2(a, a)
        + _xlog2(b, b)
    )


def _printed_w_b(r):
    q = math.sqrt(3 + math.cos(2 * r) ** 2)
    c, s = math.cos(r) ** 2, math.sin(r) ** 2
    a = (1 + 2 * c) / 3
    return (
        _xlog2(q / 3, (2 - q) / math.sin(2 * r))
        - _xlog2((1 + c) / 3, c / 3)
        + _xlog2((2 * s - c) / 3, s / 3)
        + _xlog2(a, a)
    )


def _printed_w_bc_general(r1, r2, unsubscripted=None):
    """General two-party form. The bare ``sin r cos r`` term has no subscript
    in print; it is evaluated at ``unsubscripted`` (default ``r2``)."""
    r = r2 if unsubscripted is None else unsubscripted
    s1, s2 = math.sin(r1) ** 2, math.sin(r2) ** 2
    c1, c2 = math.cos(r1) ** 2, math.cos(r2) ** 2
    C1, C2 = _c2(r1), _c2(r2)
    xi1 = math.sqrt(2 + math.cos(2 * r1 + 2 * r2) * math.cos(2 * r1 - 2 * r2) - C2 - 2 * C1 * c2)
    xi2 = C2 + math.sqrt(12 + 2 * math.cos(4 * r1) + 2 * math.cos(4 * r2) - 16 * s1 * s2)
    xi3 = math.sqrt(C1**2 + C2**2 + 2 + 4 * s1 * s2)
    xi4 = 5 + 6 * math.cos(r1 + r2) * math.cos(r1 - r2) + C2 * C1
    xi5 = s1 * (1 + s2) + s2
    xi6 = s1 * s2
    xi7 = s2 * c2
    u = 2 * s2 + 2 * s1 * c2
    t_minus = (u - xi1) / 6
    t_plus = (u + xi1) / 6
    t3 = (2 - 2 * s1 * s2 - xi3) / 6
    t5 = (3 + 2 * C1 * s2 + xi2) / 12
    sq = math.sqrt(1 - xi7)
    return (
        _xlog2(t_minus, t_minus)
        + _xlog2(t_plus, t_plus)
        - _xlog2(t3, t3)
        + _xlog2(xi4 / 12, xi4)
        - _xlog2(t5, t5)
        + c2 / 3 * (2 + _xlog2(s1, c2 / 3) - _xlog2(c1, c1))
        + _xlog2((1 + 2 * s2) / 3, (1 + 2 * s2) / 3)
        + _xlog2(xi6 / 3, 3 * s1 / xi5)
        - _xlog2(sq / 3, (1 + sq) / (1 - sq))
        - _xlog2(2 / 3, math.sin(r) * math.cos(r) / 3)
        - _xlog2((s1 + s2) / 3, xi5 / 3)
        - _xlog2(c1 * s2 / 3, s2 / 3)
    )


def _printed_w_bc_locked(r):
    s, c = math.sin(r) ** 2, math.cos(r) ** 2
    q = math.sqrt(3 + math.cos(2 * r) ** 2)
    first = c / 3 * (2 * s + _xlog2(c, 2 + c) + np.log2((2 + c) ** 4 / (2 + s) ** 2))
    inner = (math.sin(r) + 2 * math.sin(r) ** 3) ** 2 * ((6 + 3 * c) / (2 * s + s**2)) ** 2
    second = s / 3 * (_xlog2(c, s / (2 + s)) + _xlog2(s, 3 * s**2 / (2 * s + s**2)) + np.log2(inner))
    return (
        first
        + second
        + np.log2(1 + 2 * s) / 3
        + _xlog2(q / 3, (2 - q) / math.sin(2 * r))
        - 7 / 3
        - _xlog2(2 / 3, math.sin(r) * math.cos(r) / 3)
    )


def _printed_w_ab_general(r1, r2):
    s1, s2 = math.sin(r1) ** 2, math.sin(r2) ** 2
    c1, c2 = math.cos(r1) ** 2, math.cos(r2) ** 2
    C1, C2 = _c2(r1), _c2(r2)
    z1 = 5 + 3 * C1 + 3 * C2 + C1 * C2
    z2 = 3 - C1 - C2 - C1 * C2
    z3 = 8 - 4 * (C1 + C2) + 2 * (math.cos(4 * r1) + math.cos(4 * r2) - 4 * C1 * C2)
    sq_z3 = math.sqrt(z3) if z3 >= 0 else math.nan
    k = math.sqrt(1 - s2 * c2)
    lo, hi = (z2 - sq_z3) / 12, (z2 + sq_z3) / 12
    return (
        _xlog2(-s1 * c2 / 3, s1 / 3)
        - _xlog2(c1 * s2 / 3, s2)
        + _xlog2((3 + s2) / 3, 3)
        - _xlog2(c1 / 3, c1 / 3)
        - _xlog2(c2 / 3, c2 / 3)
        + 2 / 3
        - _xlog2(math.sqrt(2 - s1 * c1 - s2 * c2) / 3, (1 + k) / (1 - k))
        - _xlog2(2 / 3, math.sin(r1) * math.sin(r2) * math.cos(r1) * math.cos(r2) / 9)
        + _xlog2(lo, lo)
        + _xlog2(hi, hi)
        + _xlog2(z1 / 12, z1 / 12)
    )


def _printed_w_ab_locked(r):
    s, c = math.sin(r) ** 2, math.cos(r) ** 2
    q = math.sqrt(3 + math.cos(2 * r) ** 2)
    a = s * (2 + c) / 3
    b = (2 * c + c**2) / 3
    return (
        _xlog2(2 * q / 3, (2 - q) / math.sin(2 * r))
        - _xlog2((3 - s * c) / 3, math.cos(r) * math.sin(r))
        + _xlog2(a, a)
        + _xlog2((2 + c) / 3, 3)
        + 2 / 3
        - _xlog2(b, b)
        - 4 * c / 3 * (np.log2(math.cos(r)) + _xlog2(s, math.sin(r)))
    )


@dataclass(frozen=True)
class PrintedForm:
    name: str
    scenario: Scenario
    two_args: bool
    func: Callable[..., float]


PRINTED_FORMS: dict[str, PrintedForm] = {
    f.name: f
    for f in [
        PrintedForm("W_C", Scenario.W_C, False, _printed_w_c),
        PrintedForm("W_B", Scenario.W_B, False, _printed_w_b),
        PrintedForm("W_BC_general", Scenario.W_BC, True, _printed_w_bc_general),
        PrintedForm("W_BC_locked", Scenario.W_BC, False, _printed_w_bc_locked),
        PrintedForm("W_AB_general", Scenario.W_AB, True, _printed_w_ab_general),
        PrintedForm("W_AB_locked", Scenario.W_AB, False, _printed_w_ab_locked),
        PrintedForm("BISEP1_C", Scenario.BISEP1_C, False, lambda r: 2.0),
        PrintedForm("BISEP2_C", Scenario.BISEP2_C, False, lambda r: 0.0),
        PrintedForm("BISEP3_C", Scenario.BISEP3_C, False, lambda r: 0.0),
    ]
}


def printed_forms_for(scenario: Scenario | str) -> list[PrintedForm]:
    scenario = Scenario.parse(scenario)
    return [f for f in PRINTED_FORMS.values() if f.scenario is scenario]


def _raw(f: Callable[..., float], rs) -> float:
    with np.errstate(all="ignore"):
        try:
            v = float(f(*rs))
        except (ValueError, ZeroDivisionError, OverflowError):
            return math.nan
    return v


def _at_endpoint(r: float) -> bool:
    return r <= 0.0 or r >= R_MAX


def limit_eval(f: Callable[..., float], rs, step: float = LIMIT_STEP) -> float:
    """Evaluate ``f`` at ``rs``; at an interval endpoint use a one-sided limit.

    Every coordinate sitting on 0 or pi/4 is moved inward by ``step`` and
    ``2 step``, and the two values are combined by linear (Richardson)
    extrapolation. Returns NaN when the limit is not finite.
    """
    rs = tuple(float(r) for r in rs)
    v = _raw(f, rs)
    if math.isfinite(v) or not any(_at_endpoint(r) for r in rs):
        return v

    def shifted(h):
        return tuple((r + h if r <= 0.0 else r - h) if _at_endpoint(r) else r for r in rs)

    f1, f2 = _raw(f, shifted(step)), _raw(f, shifted(2 * step))
    # a convergent limit moves by O(step) between the two probes; a log or
    # pole divergence moves by O(1) or more
    if not (math.isfinite(f1) and math.isfinite(f2)) or abs(f1 - f2) > LIMIT_DIVERGENCE:
        return math.nan
    return 2 * f1 - f2


def analytic_qcmi(scenario: Scenario | str, r1: float, r2: float | None = None, form: str = "printed") -> float:
    """Closed-form ``I(A:B|C)`` in bits.

    ``form`` is ``"eigenvalues"`` (entropies of the corrected closed-form
    spectra), ``"printed"`` (the published composed expression; for two-party
    scenarios the locked ``r1 = r2`` form when ``r2`` is absent or equal to
    ``r1``, else the general one) or a key of ``PRINTED_FORMS``. Returns NaN
    where a printed expression is undefined.
    """
    scenario = Scenario.parse(scenario)
    rs = scenario_r_values(scenario, r1, r2)
    if form == "eigenvalues":
        return eigenvalue_qcmi(scenario, *rs)
    if form == "printed":
        if scenario.two_party:
            form = f"{scenario.value}_locked" if rs[0] == rs[1] else f"{scenario.value}_general"
        else:
            form = scenario.value
    try:
        pf = PRINTED_FORMS[form]
    except KeyError:
        raise ValueError(f"unknown form {form!r}; use 'eigenvalues', 'printed' or one of {list(PRINTED_FORMS)}")
    if pf.scenario is not scenario:
        raise ValueError(f"form {form!r} belongs to scenario {pf.scenario.value}, not {scenario.value}")
    if pf.two_args:
        return limit_eval(pf.func, rs)
    if scenario.two_party and rs[0] != rs[1]:
        raise ValueError(f"form {form!r} requires r1 == r2")
    return limit_eval(pf.func, rs[:1])


class Status(str, Enum):
    MATCH = "match"
    MISMATCH = "mismatch"
    UNDEFINED = "undefined-at-point"


@dataclass(frozen=True)
class FormulaComparison:
    r_values: tuple[float, ...]
    numeric: float
    analytic: float
    abs_diff: float
    status: Status


def compare(numeric: float, analytic: float, r_values=(), tolerance: float = COMPARISON_TOL) -> FormulaComparison:
    if not (math.isfinite(numeric) and math.isfinite(analytic)):
        return FormulaComparison(tuple(r_values), numeric, analytic, math.nan, Status.UNDEFINED)
    d = abs(numeric - analytic)
    status = Status.MATCH if d <= tolerance else Status.MISMATCH
    return FormulaComparison(tuple(r_values), numeric, analytic, d, status)


def compare_formula(
    scenario: Scenario | str,
    r1: float,
    r2: float | None = None,
    form: str = "printed",
    tolerance: float = COMPARISON_TOL,
    numeric: float | None = None,
) -> FormulaComparison:
    """Compare a closed form against the pipeline value at one point."""
    rs = scenario_r_values(scenario, r1, r2)
    if numeric is None:
        numeric = scenario_qcmi(scenario, r1, r2).qcmi
    return compare(numeric, analytic_qcmi(scenario, r1, r2, form), rs, tolerance)
