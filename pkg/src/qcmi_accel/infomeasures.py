"""Von Neumann entropy, mutual information and conditional mutual information."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

from .fock import (
    DensityMatrix,
    InvalidStateError,
    ModeRegister,
    Party,
    PureState,
    biseparable_state,
    w_state,
)
from .matcore import EIG_TOL, hermitian_eigenvalues
from .rindler import accelerate_and_trace, check_r

QCMI_NEG_TOL = 1e-9


class InvariantViolation(RuntimeError):
    pass


def entropy_from_eigenvalues(values: Iterable[float]) -> float:
    """``-sum(l * log2(l))`` with ``0 log 0 = 0``.

    Values in ``[-EIG_TOL, 0)`` are treated as zero; anything more negative
    is not a valid spectrum.
    """
    lam = np.asarray(list(values), dtype=float)
    if lam.size and lam.min() < -EIG_TOL:
        raise InvalidStateError(f"eigenvalue {lam.min()!r} below -{EIG_TOL}")
    lam = lam[lam > 0]
    # + 0.0 turns -0.0 into 0.0
    return float(-np.sum(lam * np.log2(lam))) + 0.0


def von_neumann_entropy(rho: DensityMatrix | np.ndarray) -> float:
    """Entropy in bits."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else rho
    return entropy_from_eigenvalues(hermitian_eigenvalues(m))


def _as_density(rho: DensityMatrix | np.ndarray) -> DensityMatrix:
    if isinstance(rho, DensityMatrix):
        return rho
    m = np.asarray(rho, dtype=complex)
    n = int(round(math.log2(m.shape[0])))
    reg = ModeRegister.minkowski("ABC"[:n]) if n <= 3 else None
    if reg is None or reg.dim != m.shape[0]:
        raise ValueError("pass a DensityMatrix for registers other than 1-3 inertial modes")
    return DensityMatrix(reg, m)


def mutual_information(rho: DensityMatrix, split: tuple[Sequence[int], Sequence[int]]) -> float:
    """``S(X) + S(Y) - S(XY)`` for a bipartition ``split = (X, Y)`` of mode indices."""
    rho = _as_density(rho)
    x, y = (sorted(set(g)) for g in split)
    n = len(rho.register)
    if set(x) & set(y) or set(x) | set(y) != set(range(n)) or not x or not y:
        raise ValueError(f"{split} is not a bipartition of {n} modes")
    return (
        von_neumann_entropy(rho.reduce(x))
        + von_neumann_entropy(rho.reduce(y))
        - von_neumann_entropy(rho)
    )


@dataclass(frozen=True)
class Partition:
    """Disjoint, exhaustive mode groups; ``c`` is the conditioning group."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, tuple(sorted(set(getattr(self, name)))))

    def validate(self, n_modes: int) -> None:
        groups = [set(self.a), set(self.b), set(self.c)]
        union = set().union(*groups)
        if sum(len(g) for g in groups) != len(union) or union != set(range(n_modes)):
            raise ValueError(f"{self} is not a partition of {n_modes} modes")

    @classmethod
    def by_party(cls, register: ModeRegister) -> "Partition":
        return cls(*(tuple(register.indices_of(p)) for p in Party))


@dataclass(frozen=True)
class QcmiReport:
    r_values: tuple[float, ...]
    s_abc: float
    s_ac: float
    s_bc: float
    s_c: float
    qcmi: float


def qcmi(
    rho: DensityMatrix,
    partition: Partition | None = None,
    r_values: Sequence[float] = (),
) -> QcmiReport:
    """``I(A:B|C) = S(AC) + S(BC) - S(ABC) - S(C)`` in bits."""
    rho = _as_density(rho)
    if partition is None:
        partition = Partition.by_party(rho.register)
    partition.validate(len(rho.register))
    p = partition
    s_abc = von_neumann_entropy(rho)
    s_ac = von_neumann_entropy(rho.reduce(p.a + p.c))
    s_bc = von_neumann_entropy(rho.reduce(p.b + p.c))
    s_c = von_neumann_entropy(rho.reduce(p.c)) if p.c else 0.0
    value = s_ac + s_bc - s_abc - s_c
    if value < -QCMI_NEG_TOL:
        raise InvariantViolation(f"conditional mutual information {value!r} < -{QCMI_NEG_TOL}")
    return QcmiReport(tuple(float(r) for r in r_values), s_abc, s_ac, s_bc, s_c, value)


class Scenario(str, Enum):
    """Initial state and accelerated parties; C is always the conditioning party."""

    W_C = "W_C"
    W_B = "W_B"
    W_BC = "W_BC"
    W_AB = "W_AB"
    BISEP1_C = "BISEP1_C"
    BISEP2_C = "BISEP2_C"
    BISEP3_C = "BISEP3_C"

    @property
    def accelerated(self) -> tuple[Party, ...]:
        return tuple(Party(ch) for ch in self.value.split("_")[1])

    @property
    def two_party(self) -> bool:
        return len(self.accelerated) == 2

    def initial_state(self) -> PureState:
        return _INITIAL[self]()

    @classmethod
    def parse(cls, name: str | "Scenario") -> "Scenario":
        try:
            return cls(name if isinstance(name, cls) else str(name).upper())
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown scenario {name!r}; choose from {choices}") from None


_INITIAL: dict[Scenario, Callable[[], PureState]] = {
    Scenario.W_C: w_state,
    Scenario.W_B: w_state,
    Scenario.W_BC: w_state,
    Scenario.W_AB: w_state,
    Scenario.BISEP1_C: lambda: biseparable_state(1),
    Scenario.BISEP2_C: lambda: biseparable_state(2),
    Scenario.BISEP3_C: lambda: biseparable_state(3),
}

W_SCENARIOS = (Scenario.W_C, Scenario.W_B, Scenario.W_BC, Scenario.W_AB)
BISEPARABLE_SCENARIOS = (Scenario.BISEP1_C, Scenario.BISEP2_C, Scenario.BISEP3_C)


def scenario_r_values(scenario: Scenario | str, r1: float, r2: float | None = None) -> tuple[float, ...]:
    """Validated r values; a two-party scenario without ``r2`` uses ``r2 = r1``."""
    scenario = Scenario.parse(scenario)
    r1 = check_r(r1)
    if scenario.two_party:
        return (r1, r1 if r2 is None else check_r(r2))
    if r2 is not None:
        raise ValueError(f"{scenario.value} accelerates one party; r2 is not accepted")
    return (r1,)


def scenario_state(
    scenario: Scenario | str, r1: float, r2: float | None = None, phase: float = 0.0
) -> DensityMatrix:
    """Accelerated, region-II-traced state of a scenario.

    For two-party scenarios ``r1`` belongs to the first accelerated party in
    A, B, C order (B for W_BC, A for W_AB) and ``r2`` to the second.
    """
    scenario = Scenario.parse(scenario)
    rs = scenario_r_values(scenario, r1, r2)
    psi = scenario.initial_state()
    return accelerate_and_trace(psi, dict(zip(scenario.accelerated, rs)), phase)


def scenario_qcmi(
    scenario: Scenario | str, r1: float, r2: float | None = None, phase: float = 0.0
) -> QcmiReport:
    """Conditional mutual information ``I(A:B|C)`` of an accelerated scenario."""
    rs = scenario_r_values(scenario, r1, r2)
    rho = scenario_state(scenario, r1, r2, phase)
    return qcmi(rho, Partition.by_party(rho.register), rs)
