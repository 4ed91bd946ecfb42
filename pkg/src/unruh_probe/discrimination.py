"""State-discrimination quantities for the inertial-vs-accelerated probe.

The task is binary: after an interaction time tau, decide whether the
probe evolved inertially (n = 1) or in the accelerated bath (n > 1).
All distances reduce to three decay envelopes evaluated at gt = gamma0*tau,

    L1 = e^{-gt/2} - e^{-n gt/2}
    L2 = e^{-gt}   - e^{-n gt}
    L3 = (1 - e^{-gt}) - (1 - e^{-n gt}) / n

and every closed form here is paired with a brute-force route that evolves
the density matrices and diagonalizes the difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import detector, qmath

#: positivity slack accepted when validating reconstructed states
PSD_TOL = 1e-10


@dataclass(frozen=True)
class LambdaTriple:
    """The three decay envelopes at fixed (gt, n); all vanish at gt = 0."""

    lambda1: float
    lambda2: float
    lambda3: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.lambda1, self.lambda2, self.lambda3)


def lambdas(gt: float, n: float) -> LambdaTriple:
    """Decay envelopes at dimensionless time gt = gamma0 * tau."""
    if gt < 0.0:
        raise ValueError(f"gt must be >= 0, got {gt!r}")
    if not n >= 1.0:
        raise ValueError(f"thermal parameter n must be >= 1, got {n!r}")
    # e^{-a} - e^{-b} = -e^{-a} * expm1(-(b - a)), stable for small gt
    l1 = -math.exp(-0.5 * gt) * math.expm1(-0.5 * (n - 1.0) * gt)
    l2 = -math.exp(-gt) * math.expm1(-(n - 1.0) * gt)
    l3 = -math.expm1(-gt) + math.expm1(-n * gt) / n
    return LambdaTriple(l1, l2, l3)


def equilibrium_distance(n: float) -> float:
    """Late-time distinguishability 1 - 1/n; zero in the inertial case."""
    if not n >= 1.0:
        raise ValueError(f"thermal parameter n must be >= 1, got {n!r}")
    return 1.0 - 1.0 / n


def helstrom(distance: float) -> float:
    """Minimum error probability (1 - distance/2) / 2 of the optimal test."""
    if not 0.0 <= distance <= 2.0:
        raise ValueError(f"trace-norm distance must lie in [0, 2], got {distance!r}")
    return 0.5 * (1.0 - 0.5 * distance)


@dataclass(frozen=True)
class DiscriminationResult:
    """Distance diagnostics at one time; tau is the dimensionless gamma0*tau.

    normalized is distance / (1 - 1/n) and is None in the inertial case,
    where the normalizer vanishes.
    """

    tau: float
    distance: float
    normalized: float | None
    error_probability: float


def _result(gt: float, dist: float, n: float) -> DiscriminationResult:
    normalized = dist / equilibrium_distance(n) if n > 1.0 else None
    return DiscriminationResult(gt, dist, normalized, helstrom(dist))


def single_distance(theta: float, gt: float, n: float) -> DiscriminationResult:
    """Trace distance between inertial and accelerated single-probe states.

    The probe starts in the pure state with Bloch vector
    (sin(theta), 0, cos(theta)); for qubits the trace norm of the
    difference equals the Euclidean Bloch-vector distance,

        sqrt(sin^2(theta) L1^2 + (cos(theta) L2 - L3)^2).
    """
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
    lam = lambdas(gt, n)
    dist = math.hypot(
        math.sin(theta) * lam.lambda1,
        math.cos(theta) * lam.lambda2 - lam.lambda3,
    )
    return _result(gt, dist, n)


def single_distance_numeric(
    theta: float, gt: float, n: float, gamma0: float = 1.0
) -> float:
    """Brute-force route: evolve both 2x2 states and take the trace norm."""
    r0 = detector.bloch_from_angle(theta)
    tau = gt / gamma0
    inertial = detector.DetectorParams(gamma0=gamma0, n=1.0)
    accelerated = detector.DetectorParams(gamma0=gamma0, n=n)
    rho1 = detector.density_matrix(detector.evolve_bloch(r0, inertial, tau))
    rho2 = detector.density_matrix(detector.evolve_bloch(r0, accelerated, tau))
    return qmath.trace_norm(rho1 - rho2)


@dataclass(frozen=True)
class XStateCoeffs:
    """Two-qubit X-state: (1 + sum_i c_i s_i x s_i + c30 s_3 x s_0) / 4.

    The probe is the first tensor factor; c30 is its polarization picked up
    during evolution and is zero for the states used as inputs. Validity is
    checked by explicit eigendecomposition of the reconstructed matrix.
    """

    c1: float
    c2: float
    c3: float
    c30: float = 0.0

    def __post_init__(self) -> None:
        for name in ("c1", "c2", "c3", "c30"):
            v = getattr(self, name)
            if not -1.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [-1, 1], got {v!r}")
        low = float(qmath.hermitian_eigenvalues(self.density_matrix())[0])
        if low < -PSD_TOL:
            raise ValueError(
                f"coefficients give a non-positive state (min eigenvalue {low:.3e})"
            )

    def density_matrix(self) -> np.ndarray:
        rho = qmath.tensor(qmath.pauli(0), qmath.pauli(0)).astype(complex)
        for i, c in ((1, self.c1), (2, self.c2), (3, self.c3)):
            rho = rho + c * qmath.tensor(qmath.pauli(i), qmath.pauli(i))
        rho = rho + self.c30 * qmath.tensor(qmath.pauli(3), qmath.pauli(0))
        return 0.25 * rho


def werner(c: float) -> XStateCoeffs:
    """Werner family c1 = -c2 = c3 = c; entangled exactly when c > 1/3."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"Werner parameter must lie in [0, 1], got {c!r}")
    return XStateCoeffs(c, -c, c)


def evolve_xstate(c0: XStateCoeffs, n: float, gt: float) -> XStateCoeffs:
    """Probe half of the pair evolved for gt = gamma0*tau; ancilla untouched."""
    if c0.c30 != 0.0:
        raise ValueError("initial state must have zero probe polarization (c30 = 0)")
    if gt < 0.0:
        raise ValueError(f"gt must be >= 0, got {gt!r}")
    if not n >= 1.0:
        raise ValueError(f"thermal parameter n must be >= 1, got {n!r}")
    transverse = math.exp(-0.5 * n * gt)
    axial = math.exp(-n * gt)
    return XStateCoeffs(
        c0.c1 * transverse,
        c0.c2 * transverse,
        c0.c3 * axial,
        math.expm1(-n * gt) / n,
    )


def bipartite_distance(c0: XStateCoeffs, n: float, gt: float) -> DiscriminationResult:
    """Trace distance between the pair evolved inertially and at n.

    Closed form from the four X-block eigenvalues of the difference:

        (1/4) [ |s+ + z| + |s+ - z| + |z + s-| + |z - s-| ]

    with s+- = sqrt((c1 +- c2)^2 L1^2 + L3^2) and z = c3 L2. Tends to
    1 - 1/n as gt grows, for every valid input.
    """
    if c0.c30 != 0.0:
        raise ValueError("initial state must have zero probe polarization (c30 = 0)")
    lam = lambdas(gt, n)
    s_plus = math.hypot((c0.c1 + c0.c2) * lam.lambda1, lam.lambda3)
    s_minus = math.hypot((c0.c1 - c0.c2) * lam.lambda1, lam.lambda3)
    z = c0.c3 * lam.lambda2
    dist = 0.25 * (
        abs(s_plus + z) + abs(s_plus - z) + abs(z + s_minus) + abs(z - s_minus)
    )
    return _result(gt, dist, n)


def bipartite_distance_numeric(c0: XStateCoeffs, n: float, gt: float) -> float:
    """Brute-force route: 4x4 eigenvalue trace norm of the evolved difference."""
    rho1 = evolve_xstate(c0, 1.0, gt).density_matrix()
    rho2 = evolve_xstate(c0, n, gt).density_matrix()
    return qmath.trace_norm(rho1 - rho2)
