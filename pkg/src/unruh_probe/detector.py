"""Open-system dynamics of a uniformly accelerated two-level probe.

Natural units throughout (hbar = c = k_B = 1). A two-level atom with
level spacing omega0 couples linearly to a massless scalar vacuum; along
a uniformly accelerated worldline the field correlations are thermal, so
in the weak-coupling (Markovian) limit the reduced state obeys a
completely positive semigroup fixed by two rates,

    A = (gamma0 / 4) * n,      B = gamma0 / 4,

where gamma0 is the spontaneous emission rate of the inertial atom and
n = 1 + 2*N is the thermal occupation parameter (N the mean number of
thermal quanta at the detector gap, n = 1 the inertial case). All the
observables computed downstream depend only on (gamma0 * tau, n); the
acceleration, temperature and occupation number are convertible views.

The coherent piece of the generator only contributes a phase at the
(environment-shifted) level spacing, which drops out of every quantity
evaluated here, so all evolution is written in the interaction picture
and the shifted spacing is never computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import qmath

TWO_PI = 2.0 * math.pi

# largest h * gamma0 * n accepted by the fixed-step integrator
MAX_ORACLE_STEP = 0.1


@dataclass(frozen=True)
class DetectorParams:
    """Probe parameters; n = 1 is exactly the inertial case."""

    omega0: float = 1.0
    gamma0: float = 1.0
    n: float = 1.0

    def __post_init__(self) -> None:
        if not self.omega0 > 0.0:
            raise ValueError(f"omega0 must be positive, got {self.omega0!r}")
        if not self.gamma0 > 0.0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0!r}")
        if not self.n >= 1.0:
            raise ValueError(f"thermal parameter n must be >= 1, got {self.n!r}")

    @property
    def acceleration(self) -> float:
        return acceleration_for_n(self.n, self.omega0)

    @property
    def temperature(self) -> float:
        return self.acceleration / TWO_PI

    @classmethod
    def from_acceleration(
        cls, a: float, omega0: float = 1.0, gamma0: float = 1.0
    ) -> "DetectorParams":
        return cls(omega0=omega0, gamma0=gamma0, n=thermal_params(a, omega0).n)


class ThermalPoint(NamedTuple):
    temperature: float
    n_quanta: float
    n: float


def thermal_params(a: float, omega0: float) -> ThermalPoint:
    """Temperature, mean quantum number and n for a given acceleration.

    T = a / 2pi and N = 1 / (exp(omega0/T) - 1); a = 0 maps exactly to
    (0, 0, 1) rather than through a limit.
    """
    if a < 0.0:
        raise ValueError(f"acceleration must be >= 0, got {a!r}")
    if not omega0 > 0.0:
        raise ValueError(f"omega0 must be positive, got {omega0!r}")
    if a == 0.0:
        return ThermalPoint(0.0, 0.0, 1.0)
    temperature = a / TWO_PI
    n_quanta = 1.0 / math.expm1(omega0 / temperature)
    return ThermalPoint(temperature, n_quanta, 1.0 + 2.0 * n_quanta)


def acceleration_for_n(n: float, omega0: float) -> float:
    """Acceleration whose thermal bath has occupation parameter n.

    Inverts n = coth(pi * omega0 / a); n = 1 returns exactly 0.
    """
    if not omega0 > 0.0:
        raise ValueError(f"omega0 must be positive, got {omega0!r}")
    if not n >= 1.0:
        raise ValueError(f"thermal parameter n must be >= 1, got {n!r}")
    if n == 1.0:
        return 0.0
    return math.pi * omega0 / math.atanh(1.0 / n)


def coupling_for(gamma0: float, omega0: float) -> float:
    """Coupling constant mu with gamma0 = mu^2 * omega0 / (2 pi)."""
    if not gamma0 > 0.0 or not omega0 > 0.0:
        raise ValueError("gamma0 and omega0 must be positive")
    return math.sqrt(TWO_PI * gamma0 / omega0)


def correlation_spectrum(lam: float, a: float, mu: float) -> float:
    """Fourier transform of the field correlation on the accelerated worldline.

    Equals (mu^2 * lam / 4pi) * (1 + coth(pi*lam/a)); written via expm1 so
    the exponentially small negative-frequency tail keeps full precision.
    Positive for every lam != 0 and satisfies the detailed-balance ratio
    G(lam)/G(-lam) = exp(2*pi*lam/a).
    """
    if not a > 0.0:
        raise ValueError(
            "acceleration must be positive; use correlation_spectrum_inertial "
            "for the a -> 0 case"
        )
    if lam == 0.0:
        raise ValueError("spectrum is evaluated at nonzero frequency only")
    # 1 + coth(x) = -2 / expm1(-2x)
    x = math.pi * lam / a
    return -mu * mu * lam / TWO_PI / math.expm1(-2.0 * x)


def correlation_spectrum_inertial(lam: float, mu: float) -> float:
    """Zero-acceleration limit: mu^2 * lam / 2pi for lam > 0, else 0."""
    if lam == 0.0:
        raise ValueError("spectrum is evaluated at nonzero frequency only")
    return mu * mu * lam / TWO_PI if lam > 0.0 else 0.0


@dataclass(frozen=True)
class KossakowskiCoeffs:
    """Decay/pumping rates of the dissipator; A/B = n exactly."""

    A: float
    B: float

    def __post_init__(self) -> None:
        if not (self.A >= self.B > 0.0):
            raise ValueError(f"need A >= B > 0, got A={self.A!r}, B={self.B!r}")


def kossakowski(params: DetectorParams) -> KossakowskiCoeffs:
    """Rates of the dissipator: B = gamma0/4 and A = n * B."""
    b = 0.25 * params.gamma0
    return KossakowskiCoeffs(A=b * params.n, B=b)


def kossakowski_matrix(params: DetectorParams) -> np.ndarray:
    """3x3 coefficient matrix a_ij = A d_ij - i B eps_ij3 - A d_i3 d_j3."""
    k = kossakowski(params)
    return np.array(
        [
            [k.A, -1.0j * k.B, 0.0],
            [1.0j * k.B, k.A, 0.0],
            [0.0, 0.0, 0.0],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class BlochVector:
    """Qubit state as rho = (1 + r1 s1 + r2 s2 + r3 s3) / 2."""

    r1: float
    r2: float
    r3: float

    def norm(self) -> float:
        return math.sqrt(self.r1 ** 2 + self.r2 ** 2 + self.r3 ** 2)

    def is_physical(self, tol: float = 1e-12) -> bool:
        return self.r1 ** 2 + self.r2 ** 2 + self.r3 ** 2 <= 1.0 + tol

    def as_array(self) -> np.ndarray:
        return np.array([self.r1, self.r2, self.r3])


def bloch_from_angle(theta: float) -> BlochVector:
    """Pure initial state (sin(theta), 0, cos(theta)).

    theta = 0 is the excited state, theta = pi the ground state.
    """
    return BlochVector(math.sin(theta), 0.0, math.cos(theta))


def stationary_bloch(params: DetectorParams) -> BlochVector:
    """Fixed point (0, 0, -1/n): the Gibbs state at the bath temperature."""
    return BlochVector(0.0, 0.0, -1.0 / params.n)


def _require_physical(r: BlochVector) -> None:
    if not r.is_physical():
        raise ValueError(f"Bloch vector of length {r.norm():.6g} is unphysical")


def evolve_bloch(r0: BlochVector, params: DetectorParams, tau: float) -> BlochVector:
    """Interaction-picture evolution after proper time tau.

    Transverse components decay at gamma0*n/2, the axial one at gamma0*n
    while relaxing toward -1/n.
    """
    if tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau!r}")
    _require_physical(r0)
    x = params.gamma0 * params.n * tau
    transverse = math.exp(-0.5 * x)
    axial = math.exp(-x)
    # -(1/n)(1 - e^{-x}) written as expm1(-x)/n to keep small-tau accuracy
    r3 = r0.r3 * axial + math.expm1(-x) / params.n
    return BlochVector(r0.r1 * transverse, r0.r2 * transverse, r3)


def density_matrix(r: BlochVector) -> np.ndarray:
    """2x2 density matrix of a physical Bloch vector."""
    _require_physical(r)
    return 0.5 * (
        qmath.pauli(0)
        + r.r1 * qmath.pauli(1)
        + r.r2 * qmath.pauli(2)
        + r.r3 * qmath.pauli(3)
    )


def bloch_of(rho: np.ndarray, tol: float = 1e-10) -> BlochVector:
    """Bloch vector of a 2x2 density matrix; inverse of density_matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
    if qmath.hermiticity_defect(rho) > tol:
        raise ValueError("density matrix is not Hermitian within tolerance")
    trace = rho[0, 0].real + rho[1, 1].real
    if abs(trace - 1.0) > tol:
        raise ValueError(f"density matrix trace {trace!r} is not 1")
    r = BlochVector(
        float(np.trace(rho @ qmath.pauli(1)).real),
        float(np.trace(rho @ qmath.pauli(2)).real),
        float(np.trace(rho @ qmath.pauli(3)).real),
    )
    _require_physical(r)
    return r


def lindblad_superoperator(params: DetectorParams) -> np.ndarray:
    """Dissipator as a 4x4 matrix acting on the row-major flattened state.

    Built directly from the coefficient matrix a_ij:
        L[rho] = (1/2) sum_ij a_ij (2 s_j rho s_i - s_i s_j rho - rho s_i s_j)
    using vec(A X B) = (A kron B^T) vec(X) for row-major vec.
    """
    a = kossakowski_matrix(params)
    eye = qmath.pauli(0)
    lmat = np.zeros((4, 4), dtype=complex)
    for i in range(1, 4):
        for j in range(1, 4):
            if a[i - 1, j - 1] == 0.0:
                continue
            si = qmath.pauli(i)
            sj = qmath.pauli(j)
            sisj = si @ sj
            term = (
                2.0 * np.kron(sj, si.T)
                - np.kron(sisj, eye)
                - np.kron(eye, sisj.T)
            )
            lmat += (0.5 * a[i - 1, j - 1]) * term
    return lmat


def _rk4(lmat: np.ndarray, y0: np.ndarray, h: np.ndarray | float, steps: int) -> np.ndarray:
    """Classical fixed-step RK4 for y' = lmat @ y.

    y0 may hold one state per column, each with its own step size h.
    """
    y = y0.astype(complex)
    half = 0.5 * h
    sixth = h / 6.0
    for _ in range(steps):
        k1 = lmat @ y
        k2 = lmat @ (y + half * k1)
        k3 = lmat @ (y + half * k2)
        k4 = lmat @ (y + h * k3)
        y = y + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def _bloch_components(rho_vec: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Bloch components of flattened 2x2 states, one per column."""
    p00, p01, p10, p11 = rho_vec
    trace_err = np.max(np.abs(p00 + p11 - 1.0))
    herm_err = np.max(np.abs(p01 - np.conj(p10)))
    if trace_err > tol or herm_err > tol:
        raise ValueError("integrated state left the density-matrix manifold")
    r1 = (p01 + p10).real
    r2 = (1.0j * (p01 - p10)).real
    r3 = (p00 - p11).real
    return np.stack([r1, r2, r3], axis=-1)


def lindblad_oracle_many(
    r0s: np.ndarray, params: DetectorParams, taus: np.ndarray, steps: int
) -> np.ndarray:
    """RK4 integration of the master equation for a batch of initial states.

    r0s has shape (k, 3) and taus shape (k,); each trajectory is integrated
    from 0 to its own tau in the given number of steps. Returns (k, 3).
    """
    r0s = np.asarray(r0s, dtype=float)
    taus = np.asarray(taus, dtype=float)
    if r0s.ndim != 2 or r0s.shape[1] != 3 or r0s.shape[0] != taus.shape[0]:
        raise ValueError("expected r0s of shape (k, 3) and taus of shape (k,)")
    if steps < 1:
        raise ValueError(f"steps must be a positive integer, got {steps!r}")
    if np.any(taus < 0.0):
        raise ValueError("all times must be >= 0")
    if np.any(np.sum(r0s ** 2, axis=1) > 1.0 + 1e-12):
        raise ValueError("unphysical initial Bloch vector in batch")
    h = taus / steps
    rate = params.gamma0 * params.n
    if float(np.max(h)) * rate >= MAX_ORACLE_STEP:
        raise ValueError(
            f"step size too coarse: h*gamma0*n = {float(np.max(h)) * rate:.3g} "
            f">= {MAX_ORACLE_STEP}"
        )
    y0 = np.empty((4, r0s.shape[0]), dtype=complex)
    y0[0] = 0.5 * (1.0 + r0s[:, 2])
    y0[1] = 0.5 * (r0s[:, 0] - 1.0j * r0s[:, 1])
    y0[2] = 0.5 * (r0s[:, 0] + 1.0j * r0s[:, 1])
    y0[3] = 0.5 * (1.0 - r0s[:, 2])
    y = _rk4(lindblad_superoperator(params), y0, h, steps)
    return _bloch_components(y)


def lindblad_oracle(
    r0: BlochVector, params: DetectorParams, tau: float, steps: int
) -> BlochVector:
    """Numerical cross-check of evolve_bloch via the master equation.

    Requires h * gamma0 * n < 0.1 with h = tau / steps; agreement with the
    analytic evolution is O(h^4).
    """
    out = lindblad_oracle_many(
        np.array([[r0.r1, r0.r2, r0.r3]]), params, np.array([tau]), steps
    )
    return BlochVector(*map(float, out[0]))
