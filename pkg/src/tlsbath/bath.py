"""Driven, lossy two-level systems acting as a structured bath.

Each TLS is driven coherently near its transition and damped by its own
electromagnetic environment.  In the frame rotating at the drive frequency
its Bloch vector relaxes to a stationary point, and the two-time
fluctuations around that point are what the bosonic modes feel.  This
module provides the stationary Bloch state, the drift matrix of the
fluctuations, their equal-time correlators, and the one-sided spectral
densities obtained by resolvent integration of the regression dynamics.

Units: hbar = k_B = 1 throughout; rates and frequencies share the same unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import solve_linear

__all__ = [
    "TlsParams",
    "BathEnvironment",
    "BlochSteadyState",
    "PsdTable",
    "bose_occupation",
    "transverse_rate",
    "saturation",
    "bloch_steady_state",
    "bloch_matrix",
    "same_time_correlators",
    "correlator_integral",
    "psd",
    "build_psd_table",
]

# Row order of the fluctuation vector used everywhere in this module:
# (raising, lowering, inversion), i.e. (sigma+~, sigma-~, sigmaz~).
IDX_PLUS, IDX_MINUS, IDX_Z = 0, 1, 2


@dataclass(frozen=True)
class TlsParams:
    """One two-level system of the bath.

    Attributes
    ----------
    omega_B : float
        Transition frequency (sets the thermal occupation of its local bath).
    kappa1 : float
        Radiative relaxation rate.
    kappa2 : float
        Pure dephasing rate.
    Omega_B : complex
        Coherent drive amplitude in the rotating frame.
    Delta_B : float
        Detuning of the transition from the drive frequency.
    couplings : tuple[complex, ...]
        Jaynes-Cummings coupling to each bosonic mode, one entry per mode.
    """

    omega_B: float
    kappa1: float
    kappa2: float
    Omega_B: complex
    Delta_B: float
    couplings: tuple[complex, ...]

    def __post_init__(self):
        if self.omega_B <= 0:
            raise ValueError("TLS transition frequency must be positive")
        if self.kappa1 <= 0:
            raise ValueError("TLS relaxation rate kappa1 must be positive")
        if self.kappa2 < 0:
            raise ValueError("pure dephasing kappa2 must be nonnegative")
        object.__setattr__(self, "Omega_B", complex(self.Omega_B))
        object.__setattr__(
            self, "couplings", tuple(complex(g) for g in self.couplings)
        )


@dataclass(frozen=True)
class BathEnvironment:
    """Shared thermal environment of the TLS and the modes."""

    temperature: float = 0.0

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be nonnegative")


@dataclass(frozen=True)
class BlochSteadyState:
    """Stationary Bloch vector of a single driven TLS."""

    sigma_plus: complex
    sigma_z: float
    saturation: float
    kappa_t: float

    @property
    def sigma_minus(self) -> complex:
        return np.conj(self.sigma_plus)


def bose_occupation(omega: float, temperature: float) -> float:
    """Thermal occupation of a harmonic environment mode.

    Exactly zero at zero temperature.
    """
    if omega <= 0:
        raise ValueError("frequency must be positive")
    if temperature < 0:
        raise ValueError("temperature must be nonnegative")
    if temperature == 0.0:
        return 0.0
    return 1.0 / math.expm1(omega / temperature)


def transverse_rate(p: TlsParams, env: BathEnvironment) -> float:
    """Decay rate of the TLS coherences (transverse Bloch components).

    Combines thermally enhanced relaxation with pure dephasing:
    ``kappa1/2 * (1 + 2 nbar) + 2 kappa2``.
    """
    nbar = bose_occupation(p.omega_B, env.temperature)
    return 0.5 * p.kappa1 * (1.0 + 2.0 * nbar) + 2.0 * p.kappa2


def saturation(p: TlsParams, env: BathEnvironment) -> float:
    """Dimensionless saturation parameter of the driven transition.

    Zero without drive, unity at the knee where the drive starts to bleach
    the TLS response, large when the transition is fully saturated.
    """
    kt = transverse_rate(p, env)
    return (kt / p.kappa1) * abs(p.Omega_B) ** 2 / (kt**2 + p.Delta_B**2)


def bloch_steady_state(p: TlsParams, env: BathEnvironment) -> BlochSteadyState:
    """Stationary point of the driven, damped Bloch equations."""
    kt = transverse_rate(p, env)
    s = saturation(p, env)
    nbar = bose_occupation(p.omega_B, env.temperature)
    denom = 1.0 + 2.0 * nbar + s
    sigma_plus = -np.conj(p.Omega_B) / (2.0 * (p.Delta_B + 1j * kt)) / denom
    sigma_z = -1.0 / denom
    return BlochSteadyState(
        sigma_plus=complex(sigma_plus),
        sigma_z=float(sigma_z),
        saturation=s,
        kappa_t=kt,
    )


def bloch_matrix(p: TlsParams, env: BathEnvironment) -> np.ndarray:
    """Drift matrix of the centered Bloch fluctuations.

    Acts on the fluctuation vector (raising, lowering, inversion); its
    spectrum lies strictly in the left half plane for any kappa1 > 0, so
    the regression integrals below always converge.
    """
    kt = transverse_rate(p, env)
    nbar = bose_occupation(p.omega_B, env.temperature)
    ob = complex(p.Omega_B)
    return np.array(
        [
            [1j * p.Delta_B - kt, 0.0, -0.5j * np.conj(ob)],
            [0.0, -1j * p.Delta_B - kt, 0.5j * ob],
            [-1j * ob, 1j * np.conj(ob), -p.kappa1 * (1.0 + 2.0 * nbar)],
        ],
        dtype=complex,
    )


def same_time_correlators(state: BlochSteadyState, beta: int) -> np.ndarray:
    """Equal-time correlators of the centered Bloch operators.

    Returns the vector ``<sigma~_vec sigma~_beta>`` in the row order
    (raising, lowering, inversion), where ``beta`` is +1 for the raising
    and -1 for the lowering fluctuation on the right.  Obtained from the
    Pauli algebra with the stationary single-operator averages subtracted.
    """
    if beta not in (+1, -1):
        raise ValueError("beta must be +1 or -1")
    sp = state.sigma_plus
    sm = np.conj(sp)
    sz = state.sigma_z
    if beta == -1:
        return np.array(
            [
                0.5 * (1.0 + sz) - sp * sm,  # <sigma+~ sigma-~>
                -(sm**2),                    # <sigma-~ sigma-~>
                -sm * (1.0 + sz),            # <sigmaz~ sigma-~>
            ],
            dtype=complex,
        )
    return np.array(
        [
            -(sp**2),                        # <sigma+~ sigma+~>
            0.5 * (1.0 - sz) - sp * sm,      # <sigma-~ sigma+~>
            sp * (1.0 - sz),                 # <sigmaz~ sigma+~>
        ],
        dtype=complex,
    )


def correlator_integral(
    p: TlsParams, env: BathEnvironment, beta: int, delta_m: float
) -> np.ndarray:
    """Half-line Laplace transform of the Bloch fluctuation correlators.

    Computes ``integral_0^inf dtau <sigma~_vec(tau) sigma~_beta(0)>
    exp(beta * i * delta_m * tau)`` by resolvent inversion of the
    regression dynamics: the result is
    ``-(A + beta * i * delta_m)^-1 @ <sigma~_vec sigma~_beta>``.
    """
    if beta not in (+1, -1):
        raise ValueError("beta must be +1 or -1")
    a = bloch_matrix(p, env)
    c0 = same_time_correlators(bloch_steady_state(p, env), beta)
    shifted = a + beta * 1j * delta_m * np.eye(3)
    return -solve_linear(shifted, c0)


class PsdTable:
    """Spectral-density components indexed by (alpha, beta, m, n).

    ``alpha`` and ``beta`` are +1/-1 for the raising/lowering TLS
    fluctuation; ``m`` and ``n`` index modes.  Entries carry the coupling
    weights, summed over the bath.
    """

    def __init__(self, entries: dict, n_modes: int):
        self._entries = dict(entries)
        self.n_modes = n_modes

    def __getitem__(self, key) -> complex:
        return self._entries[key]

    def items(self):
        return self._entries.items()


def _coupling(g: complex, alpha: int) -> complex:
    return g if alpha == +1 else np.conj(g)


def _resolve_counts(tls_list, counts):
    if counts is None:
        return [1] * len(tls_list)
    counts = [int(c) for c in counts]
    if len(counts) != len(tls_list) or any(c < 1 for c in counts):
        raise ValueError("counts must hold one positive integer per TLS")
    return counts


def _grouped(tls_list, counts):
    # Identical-TLS fast path: collapse equal parameter sets into one
    # weighted entry so an N-fold ensemble costs a single resolvent solve.
    groups: dict[TlsParams, int] = {}
    order: list[TlsParams] = []
    for p, c in zip(tls_list, counts):
        if p in groups:
            groups[p] += c
        else:
            groups[p] = c
            order.append(p)
    return [(p, groups[p]) for p in order]


def psd(
    tls_list,
    env: BathEnvironment,
    detunings,
    alpha: int,
    beta: int,
    m: int,
    n: int,
    counts=None,
) -> complex:
    """One spectral-density component of the TLS dipole fluctuations.

    ``Gamma_alphabeta^mn = sum_i G_in^(alpha) G_im^(beta) * I_alpha`` where
    ``I`` is :func:`correlator_integral` of TLS ``i`` evaluated with
    exponent sign ``beta`` at the detuning of mode ``m``, and the coupling
    factors conjugate with negative alpha/beta.  Independent TLS do not mix,
    so the sum runs over the bath with one term per TLS.
    """
    if alpha not in (+1, -1) or beta not in (+1, -1):
        raise ValueError("alpha and beta must be +1 or -1")
    detunings = np.atleast_1d(np.asarray(detunings, dtype=float))
    n_modes = len(detunings)
    if not (0 <= m < n_modes and 0 <= n < n_modes):
        raise ValueError("mode indices out of range")
    counts = _resolve_counts(tls_list, counts)
    row = IDX_PLUS if alpha == +1 else IDX_MINUS
    total = 0.0 + 0.0j
    for p, weight in _grouped(tls_list, counts):
        integ = correlator_integral(p, env, beta, detunings[m])
        g_n = _coupling(p.couplings[n], alpha)
        g_m = _coupling(p.couplings[m], beta)
        total += weight * g_n * g_m * integ[row]
    return complex(total)


def build_psd_table(
    tls_list, env: BathEnvironment, detunings, counts=None
) -> PsdTable:
    """All spectral-density components for a set of modes.

    Shares the resolvent work across components: for each TLS group only
    2 * n_modes linear solves are needed (one per exponent sign and mode
    detuning), from which every (alpha, beta, m, n) entry follows.
    """
    detunings = np.atleast_1d(np.asarray(detunings, dtype=float))
    n_modes = len(detunings)
    counts = _resolve_counts(tls_list, counts)
    entries: dict = {}
    for alpha in (+1, -1):
        for beta in (+1, -1):
            for m in range(n_modes):
                for n in range(n_modes):
                    entries[(alpha, beta, m, n)] = 0.0 + 0.0j
    for p, weight in _grouped(tls_list, counts):
        integrals = {
            (beta, m): correlator_integral(p, env, beta, detunings[m])
            for beta in (+1, -1)
            for m in range(n_modes)
        }
        for alpha in (+1, -1):
            row = IDX_PLUS if alpha == +1 else IDX_MINUS
            for beta in (+1, -1):
                for m in range(n_modes):
                    val = integrals[(beta, m)][row]
                    for n in range(n_modes):
                        g_n = _coupling(p.couplings[n], alpha)
                        g_m = _coupling(p.couplings[m], beta)
                        entries[(alpha, beta, m, n)] += weight * g_n * g_m * val
    return PsdTable(entries, n_modes)
