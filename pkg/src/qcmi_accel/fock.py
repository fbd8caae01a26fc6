"""Labeled mode registers and the scenario states built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .matcore import EIG_TOL, HERMITIAN_TOL, hermitian_eigenvalues, kron_all, partial_trace

NORM_TOL = 1e-12


class Party(str, Enum):
    A = "A"
    B = "B"
    C = "C"


class Frame(str, Enum):
    MINKOWSKI = "M"
    RINDLER_I = "I"
    RINDLER_II = "II"


class Species(str, Enum):
    PARTICLE = "+"
    ANTIPARTICLE = "-"


_SPECIES_FOR_FRAME = {
    Frame.MINKOWSKI: Species.PARTICLE,
    Frame.RINDLER_I: Species.PARTICLE,
    Frame.RINDLER_II: Species.ANTIPARTICLE,
}


class InvalidStateError(ValueError):
    pass


@dataclass(frozen=True)
class ModeLabel:
    party: Party
    frame: Frame = Frame.MINKOWSKI
    species: Species | None = None

    def __post_init__(self):
        object.__setattr__(self, "party", Party(self.party))
        object.__setattr__(self, "frame", Frame(self.frame))
        expected = _SPECIES_FOR_FRAME[self.frame]
        if self.species is None:
            object.__setattr__(self, "species", expected)
        elif Species(self.species) is not expected:
            raise ValueError(f"{self.frame.name} modes carry species {expected.name}, got {self.species}")

    def __str__(self):
        if self.frame is Frame.MINKOWSKI:
            return self.party.value
        return f"{self.party.value}_{self.frame.value}{self.species.value}"


@dataclass(frozen=True)
class ModeRegister:
    """Ordered modes; basis index bit order follows this order (mode 0 = MSB)."""

    modes: tuple[ModeLabel, ...]

    def __post_init__(self):
        modes = tuple(self.modes)
        object.__setattr__(self, "modes", modes)
        seen = set()
        for m in modes:
            key = (m.party, m.frame)
            if key in seen:
                raise ValueError(f"duplicate mode {m}")
            seen.add(key)
        for party in Party:
            idx = [i for i, m in enumerate(modes) if m.party is party]
            frames = [modes[i].frame for i in idx]
            if Frame.MINKOWSKI in frames and len(frames) > 1:
                raise ValueError(f"party {party.value} is both inertial and accelerated")
            if Frame.RINDLER_I in frames and Frame.RINDLER_II in frames:
                i1 = idx[frames.index(Frame.RINDLER_I)]
                i2 = idx[frames.index(Frame.RINDLER_II)]
                if i2 != i1 + 1:
                    raise ValueError(f"Rindler modes of party {party.value} must be adjacent (I then II)")

    @classmethod
    def minkowski(cls, parties: Iterable[Party | str] = "ABC") -> "ModeRegister":
        return cls(tuple(ModeLabel(Party(p)) for p in parties))

    def __len__(self):
        return len(self.modes)

    def __iter__(self):
        return iter(self.modes)

    def __getitem__(self, i):
        return self.modes[i]

    @property
    def dim(self) -> int:
        return 2 ** len(self.modes)

    def index(self, party: Party | str, frame: Frame | str = Frame.MINKOWSKI) -> int:
        party, frame = Party(party), Frame(frame)
        for i, m in enumerate(self.modes):
            if m.party is party and m.frame is frame:
                return i
        raise KeyError(f"no {frame.name} mode for party {party.value} in {self}")

    def indices_of(self, party: Party | str) -> list[int]:
        party = Party(party)
        return [i for i, m in enumerate(self.modes) if m.party is party]

    def subregister(self, keep: Iterable[int]) -> "ModeRegister":
        return ModeRegister(tuple(self.modes[i] for i in sorted(set(keep))))

    def __str__(self):
        return "[" + ", ".join(str(m) for m in self.modes) + "]"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class PureState:
    register: ModeRegister
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = _frozen(np.ravel(self.amplitudes))
        if amps.size != self.register.dim:
            raise ValueError(f"expected {self.register.dim} amplitudes for {self.register}, got {amps.size}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state is not normalized: <psi|psi> = {norm2!r}")
        object.__setattr__(self, "amplitudes", amps)

    def amplitude(self, bits: str) -> complex:
        """Amplitude of the basis ket written as a bit string, e.g. ``'001'``."""
        if len(bits) != len(self.register):
            raise ValueError(f"need {len(self.register)} bits, got {bits!r}")
        return complex(self.amplitudes[int(bits, 2)])


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator on a register."""

    register: ModeRegister
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = _frozen(self.matrix)
        d = self.register.dim
        if m.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix for {self.register}, got {m.shape}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > HERMITIAN_TOL:
            raise InvalidStateError(f"trace is {tr!r}, not 1")
        # hermitian_eigenvalues checks the Hermiticity defect
        lam = hermitian_eigenvalues(m, tol=HERMITIAN_TOL)
        if lam[-1] < -EIG_TOL:
            raise InvalidStateError(f"negative eigenvalue {lam[-1]!r}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.register.dim

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)

    def reduce(self, keep: Iterable[int]) -> "DensityMatrix":
        """Partial trace onto the listed mode indices."""
        keep = sorted(set(keep))
        m = partial_trace(self.matrix, [2] * len(self.register), keep)
        return DensityMatrix(self.register.subregister(keep), m)


def w_state() -> PureState:
    """``(|001> + |010> + |100>)/sqrt(3)`` on inertial modes A, B, C."""
    amps = np.zeros(8, dtype=complex)
    amps[[0b001, 0b010, 0b100]] = 1 / np.sqrt(3)
    return PureState(ModeRegister.minkowski(), amps)


_BISEPARABLE_PARTNER = {1: 0b110, 2: 0b101, 3: 0b011}
# the party left in |0> by each biseparable configuration
BISEPARABLE_SEPARATE_PARTY = {1: Party.C, 2: Party.B, 3: Party.A}


def biseparable_state(k: int) -> PureState:
    """Bell pair on two parties times ``|0>`` on the third.

    ``k=1`` pairs A-B, ``k=2`` pairs A-C, ``k=3`` pairs B-C; each is
    ``(|000> + |x>)/sqrt(2)`` with ``x`` the pair's ``|11>`` ket.
    """
    if k not in _BISEPARABLE_PARTNER:
        raise ValueError(f"biseparable configuration must be 1, 2 or 3, got {k!r}")
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[_BISEPARABLE_PARTNER[k]] = 1 / np.sqrt(2)
    return PureState(ModeRegister.minkowski(), amps)


def product_state(single_qubit_states: Sequence) -> PureState:
    """Kronecker product of three normalized single-qubit kets (A, B, C)."""
    factors = [np.asarray(v, dtype=complex).ravel() for v in single_qubit_states]
    if len(factors) != 3 or any(f.size != 2 for f in factors):
        raise ValueError("product_state needs three 2-component vectors")
    for i, f in enumerate(factors):
        n2 = float(np.vdot(f, f).real)
        if abs(n2 - 1.0) > NORM_TOL:
            raise InvalidStateError(f"factor {i} is not normalized: <v|v> = {n2!r}")
    return PureState(ModeRegister.minkowski(), kron_all(factors))


def to_density_matrix(psi: PureState) -> DensityMatrix:
    a = psi.amplitudes
    return DensityMatrix(psi.register, np.outer(a, a.conj()))


def random_pure_amplitudes(n_modes: int, rng: np.random.Generator) -> np.ndarray:
    """Normalized complex Gaussian amplitude vector on ``n_modes`` qubits."""
    v = rng.standard_normal(2**n_modes) + 1j * rng.standard_normal(2**n_modes)
    return v / np.linalg.norm(v)


def random_tripartite_state(rng: np.random.Generator) -> DensityMatrix:
    """Random 4-qubit pure state with the last qubit traced out, on inertial A, B, C."""
    v = random_pure_amplitudes(4, rng)
    rho = partial_trace(np.outer(v, v.conj()), [2, 2, 2, 2], [0, 1, 2])
    return DensityMatrix(ModeRegister.minkowski(), rho)


def random_product_state(rng: np.random.Generator) -> PureState:
    return product_state([random_pure_amplitudes(1, rng) for _ in range(3)])
