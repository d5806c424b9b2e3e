"""Gaussian dynamics of one bosonic mode under the TLS-induced rates.

The effective single-mode master equation is quadratic, so the first and
second moments close on themselves.  Everything here works on the moment
vector ``v = (<s+ s>, <s>, <s+>, <s^2>, <s+^2>)`` (that ordering is used
throughout): linear drift plus constant inhomogeneity, steady state by
direct solve, stability from the drift spectrum, quadrature covariance and
squeezing, and the first-order coherence function by quantum regression.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import eigenvalues, expm_apply, solve_linear
from .rates import SingleModeRates

__all__ = [
    "MomentSystem",
    "StabilityReport",
    "SteadyStateReport",
    "CoherenceSeries",
    "UnstableSystemError",
    "build_moment_system",
    "stability",
    "steady_state",
    "approx_steady_state",
    "coherence_g1",
    "evolve_moments",
]

# Margin on the drift spectrum: stable means max Re(lambda) < EPS_STAB.
EPS_STAB = 1e-12

# Tolerances for the physicality checks on a steady state.
HEISENBERG_ATOL = 1e-9
OCCUPATION_ATOL = 1e-9

# Conjugation structure of the moment vector, checked after solves.
CONJUGATION_RTOL = 1e-10


class UnstableSystemError(ArithmeticError):
    """Moment drift has a nondecaying direction; no steady state exists."""


@dataclass(frozen=True, eq=False)
class MomentSystem:
    """Drift and inhomogeneity of the closed moment hierarchy."""

    drift: np.ndarray
    inhom: np.ndarray
    rates: SingleModeRates
    gamma0: float
    delta_prime: float

    @property
    def gamma_total(self) -> float:
        return self.gamma0 + self.rates.gamma


@dataclass(frozen=True)
class StabilityReport:
    """Spectral verdict alongside the resonant closed-form criterion."""

    stable: bool
    criterion: bool
    max_real_part: float


@dataclass(frozen=True, eq=False)
class SteadyStateReport:
    """Stationary moments with derived quadrature properties."""

    moments: np.ndarray
    occupation: float
    amplitude: complex
    pair_amplitude: complex
    centered_occupation: float
    centered_pair: complex
    var_x: float
    var_p: float
    cov_xp: float
    det_sigma: float
    xi: float
    squeezed: bool
    heisenberg_ok: bool
    occupation_ok: bool


@dataclass(frozen=True, eq=False)
class CoherenceSeries:
    """First-order coherence ``g1`` sampled on a time grid."""

    tau: np.ndarray
    values: np.ndarray
    asymptote: complex


def build_moment_system(
    rates: SingleModeRates, gamma0: float, delta_0: float
) -> MomentSystem:
    """Drift matrix and inhomogeneity for the moment vector.

    ``delta_0`` is the bare mode detuning from the drive; the TLS-induced
    frequency shift is added on top.  The intrinsic mode bath enters only
    through its linewidth (zero-temperature form; the TLS-side thermal
    physics is already inside the rates).
    """
    if gamma0 < 0:
        raise ValueError("gamma0 must be nonnegative")
    dp = delta_0 + rates.delta
    gt = gamma0 + rates.gamma
    om = rates.Omega_prime
    g = rates.g
    gg = rates.Gamma
    dt = 1j * dp - 0.5 * gt  # complex frequency of <s+>
    dtc = np.conj(dt)
    drift = np.array(
        [
            [-gt, 1j * om, -1j * np.conj(om), 2j * g, -2j * np.conj(g)],
            [0.0, dtc, -2j * np.conj(g), 0.0, 0.0],
            [0.0, 2j * g, dt, 0.0, 0.0],
            [-4j * np.conj(g), -2j * np.conj(om), 0.0, 2.0 * dtc, 0.0],
            [4j * g, 0.0, 2j * om, 0.0, 2.0 * dt],
        ],
        dtype=complex,
    )
    inhom = np.array(
        [
            rates.gamma_plus,
            -1j * np.conj(om),
            1j * om,
            -2j * np.conj(g) - np.conj(gg),
            2j * g - gg,
        ],
        dtype=complex,
    )
    return MomentSystem(
        drift=drift,
        inhom=inhom,
        rates=rates,
        gamma0=float(gamma0),
        delta_prime=float(dp),
    )


def stability(ms: MomentSystem) -> StabilityReport:
    """Evaluate both stability tests.

    ``stable`` is the spectral verdict on the drift; ``criterion`` is the
    closed-form inequality ``gamma0 + gamma >= 4 |g|`` carried with the
    same margin, exact for a resonant mode (the two verdicts provably
    coincide there; off resonance the criterion is only indicative).
    """
    max_re = float(np.max(eigenvalues(ms.drift).real))
    stable = max_re < EPS_STAB
    criterion = (
        ms.gamma_total - 4.0 * abs(ms.rates.g) > -2.0 * EPS_STAB
    )
    return StabilityReport(
        stable=stable, criterion=criterion, max_real_part=max_re
    )


def _check_conjugation(v: np.ndarray) -> None:
    scale = max(np.abs(v).max(), np.finfo(float).tiny)
    dev = max(
        abs(v[1] - np.conj(v[2])),
        abs(v[3] - np.conj(v[4])),
        abs(v[0].imag),
    )
    if dev > CONJUGATION_RTOL * scale:
        raise ArithmeticError(
            f"moment vector lost conjugation structure (deviation {dev:.3e})"
        )


def steady_state(ms: MomentSystem) -> SteadyStateReport:
    """Stationary moments and the quadrature covariance they imply.

    Requires a stable drift (checked; raises
    :class:`UnstableSystemError` otherwise).  The report carries the
    centered covariance matrix data, the squeezing factor
    ``xi = 1 / sqrt(2 * min eig sigma)``, and physicality flags for the
    Heisenberg determinant bound and the centered occupation.
    """
    verdict = stability(ms)
    if not verdict.stable:
        raise UnstableSystemError(
            f"drift spectrum reaches Re(lambda) = {verdict.max_real_part:.3e}"
        )
    v = solve_linear(ms.drift, -ms.inhom)
    _check_conjugation(v)
    occupation = float(v[0].real)
    amp = complex(v[1])
    pair = complex(v[3])
    n_c = occupation - abs(amp) ** 2
    m2 = pair - amp**2
    var_x = 0.5 + m2.real + n_c
    var_p = 0.5 - m2.real + n_c
    cov_xp = m2.imag
    lam_min = n_c + 0.5 - abs(m2)
    lam_max = n_c + 0.5 + abs(m2)
    det_sigma = lam_min * lam_max
    xi = 1.0 / np.sqrt(2.0 * lam_min) if lam_min > 0 else np.inf
    return SteadyStateReport(
        moments=v,
        occupation=occupation,
        amplitude=amp,
        pair_amplitude=pair,
        centered_occupation=n_c,
        centered_pair=m2,
        var_x=var_x,
        var_p=var_p,
        cov_xp=cov_xp,
        det_sigma=det_sigma,
        xi=float(xi),
        squeezed=bool(xi > 1.0),
        heisenberg_ok=bool(det_sigma >= 0.25 - HEISENBERG_ATOL),
        occupation_ok=bool(n_c >= -OCCUPATION_ATOL),
    )


def approx_steady_state(
    rates: SingleModeRates, gamma0: float
) -> tuple[float, complex]:
    """Weak-squeezing closed form for the stationary state.

    Drops the pair amplitudes from the balance, leaving incoherent
    up/down competition plus the coherent displacement; the denominators
    carry the total decay rate.  Returns ``(occupation, <s+>)``.
    """
    gt = gamma0 + rates.gamma
    if gt <= 0:
        raise UnstableSystemError("total decay rate must be positive")
    occupation = rates.gamma_plus / gt + 4.0 * abs(rates.Omega_prime) ** 2 / gt**2
    amplitude_dag = 2j * rates.Omega_prime / gt
    return float(occupation), complex(amplitude_dag)


def _amplitude_block(ms: MomentSystem) -> tuple[np.ndarray, np.ndarray]:
    # Drift and inhomogeneity of the (<s>, <s+>) pair.
    return ms.drift[1:3, 1:3], ms.inhom[1:3]


def default_tau_grid(gamma_total: float, points: int = 400) -> np.ndarray:
    """Logarithmic time grid from zero out to 20 total decay times."""
    if gamma_total <= 0:
        raise ValueError("gamma_total must be positive")
    if points < 2:
        raise ValueError("need at least two grid points")
    t_max = 20.0 / gamma_total
    grid = np.geomspace(1e-4 * t_max, t_max, points - 1)
    return np.concatenate(([0.0], grid))


def coherence_g1(
    ms: MomentSystem, report: SteadyStateReport, tau_grid=None
) -> CoherenceSeries:
    """Normalized first-order coherence of the stationary mode.

    Quantum regression: the lagged pair ``(<s+(0) s(tau)>, <s+(0) s+(tau)>)``
    obeys the amplitude block of the moment drift with the inhomogeneity
    scaled by the stationary amplitude, starting from the stationary
    occupation and pair moment.  Values are normalized to unity at zero
    lag; the asymptote is the coherent fraction
    ``|<s>|^2 / <s+ s>``.
    """
    if report.occupation <= 0:
        raise ValueError("coherence undefined for an unoccupied mode")
    if tau_grid is None:
        tau_grid = default_tau_grid(ms.gamma_total)
    tau_grid = np.asarray(tau_grid, dtype=float)
    if np.any(tau_grid < 0) or np.any(np.diff(tau_grid) <= 0):
        raise ValueError("tau grid must be nonnegative and increasing")
    block, inhom = _amplitude_block(ms)
    source = inhom * np.conj(report.amplitude)
    z0 = np.array(
        [report.occupation, np.conj(report.pair_amplitude)], dtype=complex
    )
    z_inf = solve_linear(block, -source)
    dev0 = z0 - z_inf
    values = np.empty(tau_grid.size, dtype=complex)
    for k, tau in enumerate(tau_grid):
        if tau == 0.0:
            values[k] = z0[0]
        else:
            values[k] = z_inf[0] + expm_apply(block, dev0, tau)[0]
    values /= report.occupation
    if tau_grid[0] == 0.0:
        values[0] = 1.0 + 0.0j
    asymptote = complex(z_inf[0] / report.occupation)
    return CoherenceSeries(tau=tau_grid, values=values, asymptote=asymptote)


def evolve_moments(ms: MomentSystem, v0, t: float) -> np.ndarray:
    """Propagate a moment vector for time ``t``.

    Uses the augmented homogeneous form so marginal and unstable drifts
    are handled without inverting anything.
    """
    v0 = np.asarray(v0, dtype=complex)
    if v0.shape != (5,):
        raise ValueError("moment vector must have 5 components")
    aug = np.zeros((6, 6), dtype=complex)
    aug[:5, :5] = ms.drift
    aug[:5, 5] = ms.inhom
    w = np.concatenate((v0, [1.0]))
    return expm_apply(aug, w, t)[:5]
