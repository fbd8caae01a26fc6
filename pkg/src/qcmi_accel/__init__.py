"""Conditional mutual information of tripartite states with accelerated parties."""

from .fock import (
    DensityMatrix,
    ModeRegister,
    Party,
    PureState,
    biseparable_state,
    product_state,
    to_density_matrix,
    w_state,
)
from .infomeasures import (
    Partition,
    QcmiReport,
    Scenario,
    mutual_information,
    qcmi,
    scenario_qcmi,
    scenario_state,
    von_neumann_entropy,
)
from .rindler import PhysicalAcceleration, acceleration_to_r, accelerate_and_trace, sma_substitute

__all__ = [
    "DensityMatrix",
    "ModeRegister",
    "Party",
    "Partition",
    "PhysicalAcceleration",
    "PureState",
    "QcmiReport",
    "Scenario",
    "accelerate_and_trace",
    "acceleration_to_r",
    "biseparable_state",
    "mutual_information",
    "product_state",
    "qcmi",
    "scenario_qcmi",
    "scenario_state",
    "sma_substitute",
    "to_density_matrix",
    "von_neumann_entropy",
    "w_state",
]
