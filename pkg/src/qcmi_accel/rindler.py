"""Single-mode Rindler transformation of accelerated parties.

Under uniform acceleration a party's inertial mode splits into a region-I
particle mode and a region-II antiparticle mode::

    |0>  ->  cos r |0>_I |0>_II + e^{-i phi} sin r |1>_I |1>_II
    |1>  ->  |1>_I |0>_II

Region II is causally disconnected from the observer and is traced out.
Modes compose by plain tensor product; no fermionic sign bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .fock import (
    DensityMatrix,
    Frame,
    ModeLabel,
    ModeRegister,
    Party,
    PureState,
    to_density_matrix,
)
from .matcore import partial_trace

R_MAX = math.pi / 4
SPEED_OF_LIGHT = 299_792_458.0
# slack for r values produced by float arithmetic on pi/4
_R_SLACK = 1e-12


def check_r(r: float) -> float:
    """Validate an acceleration parameter; returns it as a float."""
    r = float(r)
    if not (-_R_SLACK <= r <= R_MAX + _R_SLACK) or math.isnan(r):
        raise ValueError(f"acceleration parameter r={r!r} outside [0, pi/4]")
    return min(max(r, 0.0), R_MAX)


@dataclass(frozen=True)
class PhysicalAcceleration:
    a: float  # proper acceleration, m/s^2
    omega: float  # Minkowski frequency, rad/s
    c: float = SPEED_OF_LIGHT

    def __post_init__(self):
        for name in ("a", "omega", "c"):
            v = getattr(self, name)
            if not v > 0:
                raise ValueError(f"{name} must be positive, got {v!r}")

    @property
    def rindler_frequency(self) -> float:
        return self.omega * self.c / self.a


def r_from_rindler_frequency(big_omega: float) -> float:
    if big_omega < 0:
        raise ValueError(f"Rindler frequency must be nonnegative, got {big_omega!r}")
    return math.atan(math.exp(-math.pi * big_omega))


def acceleration_to_r(p: PhysicalAcceleration) -> float:
    """``r = arctan(exp(-pi * omega * c / a))``."""
    return r_from_rindler_frequency(p.rindler_frequency)


def sma_isometry(r: float, phase: float = 0.0) -> np.ndarray:
    """(4, 2) map from an inertial qubit to the (I, II) mode pair."""
    r = check_r(r)
    v = np.zeros((4, 2), dtype=complex)
    v[0b00, 0] = math.cos(r)
    v[0b11, 0] = np.exp(-1j * phase) * math.sin(r)
    v[0b10, 1] = 1.0
    return v


def sma_substitute(psi: PureState, party: Party | str, r: float, phase: float = 0.0) -> PureState:
    """Replace ``party``'s inertial mode by its region I / region II pair, in place."""
    party = Party(party)
    reg = psi.register
    try:
        q = reg.index(party, Frame.MINKOWSKI)
    except KeyError:
        raise ValueError(f"party {party.value} is not held as an inertial mode in {reg}") from None
    n = len(reg)
    v = sma_isometry(r, phase).reshape(2, 2, 2)
    t = psi.amplitudes.reshape((2,) * n)
    # contract the party's axis; new I, II axes land at the end
    out = np.tensordot(t, v, axes=([q], [2]))
    out = np.moveaxis(out, [n - 1, n], [q, q + 1])
    modes = list(reg.modes)
    modes[q : q + 1] = [ModeLabel(party, Frame.RINDLER_I), ModeLabel(party, Frame.RINDLER_II)]
    return PureState(ModeRegister(tuple(modes)), out.reshape(-1))


def check_assignment(assignment: Mapping[Party | str, float]) -> dict[Party, float]:
    out = {Party(p): check_r(r) for p, r in assignment.items()}
    if not out:
        raise ValueError("acceleration assignment is empty")
    if len(out) > 2 or len(out) != len(assignment):
        raise ValueError(f"assignment must name one or two distinct parties, got {list(assignment)}")
    return out


def accelerate(psi: PureState, assignment: Mapping[Party | str, float], phase: float = 0.0) -> PureState:
    """Apply the substitution to each assigned party, in A, B, C order."""
    assignment = check_assignment(assignment)
    for party in Party:
        if party in assignment:
            psi = sma_substitute(psi, party, assignment[party], phase)
    return psi


def trace_region_ii(rho: np.ndarray, register: ModeRegister) -> DensityMatrix:
    keep = [i for i, m in enumerate(register) if m.frame is not Frame.RINDLER_II]
    m = partial_trace(rho, [2] * len(register), keep)
    return DensityMatrix(register.subregister(keep), m)


def accelerate_and_trace(
    psi: PureState, assignment: Mapping[Party | str, float], phase: float = 0.0
) -> DensityMatrix:
    """Accelerate the assigned parties and discard every region-II mode.

    The result lives on three modes, one per party, each either inertial or
    region I.
    """
    if any(m.frame is not Frame.MINKOWSKI for m in psi.register) or len(psi.register) != 3:
        raise ValueError(f"expected an inertial three-party state, got register {psi.register}")
    full = accelerate(psi, assignment, phase)
    return trace_region_ii(to_density_matrix(full).matrix, full.register)
