"""Discriminating inertial from uniformly accelerated motion with a qubit probe.

The package simulates a two-level detector coupled to a massless scalar
vacuum as an open quantum system and quantifies how well its evolved state
distinguishes the inertial from the accelerated scenario, for a bare probe
and for a probe entangled with an idle ancilla.
"""

from .analysis import (
    Extremum,
    SweepGrid,
    SweepRow,
    advantage_threshold,
    advantage_threshold_point,
    find_sudden_change,
    find_zero_crossing,
    maximize_distance,
    sweep,
)
from .detector import (
    BlochVector,
    DetectorParams,
    KossakowskiCoeffs,
    ThermalPoint,
    acceleration_for_n,
    bloch_from_angle,
    bloch_of,
    density_matrix,
    evolve_bloch,
    kossakowski,
    lindblad_oracle,
    thermal_params,
)
from .discrimination import (
    DiscriminationResult,
    LambdaTriple,
    XStateCoeffs,
    bipartite_distance,
    equilibrium_distance,
    evolve_xstate,
    helstrom,
    lambdas,
    single_distance,
    werner,
)

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "DetectorParams",
    "DiscriminationResult",
    "Extremum",
    "KossakowskiCoeffs",
    "LambdaTriple",
    "SweepGrid",
    "SweepRow",
    "ThermalPoint",
    "XStateCoeffs",
    "acceleration_for_n",
    "advantage_threshold",
    "advantage_threshold_point",
    "bipartite_distance",
    "bloch_from_angle",
    "bloch_of",
    "density_matrix",
    "equilibrium_distance",
    "evolve_bloch",
    "evolve_xstate",
    "find_sudden_change",
    "find_zero_crossing",
    "helstrom",
    "kossakowski",
    "lambdas",
    "lindblad_oracle",
    "maximize_distance",
    "single_distance",
    "sweep",
    "thermal_params",
    "werner",
]
