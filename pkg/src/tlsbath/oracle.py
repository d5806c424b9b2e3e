"""Exact Lindblad reference for small mode + TLS Hilbert spaces.

Brute-force cross-check of the effective theory: the full rotating-frame
Liouvillian of one truncated bosonic mode coupled to a handful of driven,
damped TLS is built as a dense superoperator, its steady state extracted
from the kernel, and expectation values compared against the adiabatic
elimination.  Nothing here reuses the effective-rate pipeline; the only
shared code is the dense linear-algebra kernel.

Matrix vectorization is row-major throughout: ``vec(A rho B) =
kron(A, B.T) @ vec(rho)``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.integrate
import scipy.linalg

from .bath import BathEnvironment, TlsParams, bose_occupation
from .linalg import expm_apply, null_vector
from .rates import ModeParams

__all__ = [
    "HilbertSpec",
    "DimensionCapError",
    "TruncationWarning",
    "build_liouvillian",
    "tls_liouvillian",
    "steady_state_full",
    "steady_state_autogrow",
    "evolve",
    "expectation",
    "mode_moments",
    "tls_marginal",
    "bloch_correlator_numeric",
    "coherence_g1_numeric",
]

# Population allowed in the top two Fock levels before a truncation warning.
LEAK_TOL = 1e-8

DEFAULT_DIM_CAP = 64


class DimensionCapError(ValueError):
    """Requested Hilbert space exceeds the configured dimension cap."""


class TruncationWarning(UserWarning):
    """Fock truncation is carrying non-negligible population."""


@dataclass(frozen=True)
class HilbertSpec:
    """Truncated Hilbert space of one mode and a small TLS ensemble."""

    fock_dim: int
    mode: ModeParams
    tls: tuple[TlsParams, ...]
    env: BathEnvironment
    omega_d: float
    dim_cap: int = DEFAULT_DIM_CAP

    def __post_init__(self):
        if self.fock_dim < 2:
            raise ValueError("need at least two Fock levels")
        if not 1 <= len(self.tls) <= 3:
            raise ValueError("oracle supports 1 to 3 TLS")
        if self.omega_d <= 0:
            raise ValueError("drive frequency must be positive")
        if self.dim > self.dim_cap:
            raise DimensionCapError(
                f"total dimension {self.dim} exceeds cap {self.dim_cap}"
            )

    @property
    def n_tls(self) -> int:
        return len(self.tls)

    @property
    def dim(self) -> int:
        return self.fock_dim * 2**self.n_tls


def _destroy(n: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1).astype(complex)

# TLS basis ordering (ground, excited).
_SP = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # raising
_SM = _SP.conj().T
_SZ = np.array([[-1.0, 0.0], [0.0, 1.0]], dtype=complex)
_ID2 = np.eye(2, dtype=complex)


def _embed(ops: list[np.ndarray]) -> np.ndarray:
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def mode_operator(spec: HilbertSpec) -> np.ndarray:
    """Annihilation operator of the mode on the full space."""
    return _embed([_destroy(spec.fock_dim)] + [_ID2] * spec.n_tls)


def tls_operator(spec: HilbertSpec, i: int, op: np.ndarray) -> np.ndarray:
    """Single-TLS operator embedded on the full space."""
    ops = [np.eye(spec.fock_dim, dtype=complex)]
    for j in range(spec.n_tls):
        ops.append(op if j == i else _ID2)
    return _embed(ops)


def _spre(a: np.ndarray) -> np.ndarray:
    return np.kron(a, np.eye(a.shape[0], dtype=complex))


def _spost(b: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(b.shape[0], dtype=complex), b.T)


def _dissipator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # D_{a,b}[rho] = a rho b - (b a rho + rho b a) / 2
    ba = b @ a
    return np.kron(a, b.T) - 0.5 * (_spre(ba) + _spost(ba))


def _hamiltonian_part(h: np.ndarray) -> np.ndarray:
    return -1j * (_spre(h) - _spost(h))


def build_liouvillian(spec: HilbertSpec) -> np.ndarray:
    """Dense rotating-frame Liouvillian of the coupled system.

    Hamiltonian: detuned mode with direct drive, detuned driven TLS,
    excitation-conserving mode-TLS exchange.  Dissipators: thermal decay
    of the mode at its own frequency, thermal TLS relaxation plus pure
    dephasing.  The returned matrix acts on row-major vectorized density
    matrices and annihilates the trace functional from the left.
    """
    s = mode_operator(spec)
    sd = s.conj().T
    delta0 = spec.mode.omega - spec.omega_d
    om0 = complex(spec.mode.Omega)
    h = delta0 * (sd @ s) + om0 * s + np.conj(om0) * sd
    for i, p in enumerate(spec.tls):
        sp = tls_operator(spec, i, _SP)
        sm = tls_operator(spec, i, _SM)
        sz = tls_operator(spec, i, _SZ)
        ob = complex(p.Omega_B)
        g = complex(p.couplings[0])
        h = h + 0.5 * p.Delta_B * sz
        h = h + 0.5 * (ob * sp + np.conj(ob) * sm)
        h = h + g * (sp @ s) + np.conj(g) * (sd @ sm)

    liou = _hamiltonian_part(h)
    nbar0 = bose_occupation(spec.mode.omega, spec.env.temperature)
    liou += spec.mode.gamma0 * (1.0 + nbar0) * _dissipator(s, sd)
    if nbar0 > 0:
        liou += spec.mode.gamma0 * nbar0 * _dissipator(sd, s)
    for i, p in enumerate(spec.tls):
        sp = tls_operator(spec, i, _SP)
        sm = tls_operator(spec, i, _SM)
        sz = tls_operator(spec, i, _SZ)
        nbar = bose_occupation(p.omega_B, spec.env.temperature)
        liou += p.kappa1 * (1.0 + nbar) * _dissipator(sm, sp)
        if nbar > 0:
            liou += p.kappa1 * nbar * _dissipator(sp, sm)
        if p.kappa2 > 0:
            liou += p.kappa2 * _dissipator(sz, sz)
    return liou


def tls_liouvillian(p: TlsParams, env: BathEnvironment) -> np.ndarray:
    """Vectorized generator of a single driven, damped TLS (4x4)."""
    ob = complex(p.Omega_B)
    h = 0.5 * p.Delta_B * _SZ + 0.5 * (ob * _SP + np.conj(ob) * _SM)
    nbar = bose_occupation(p.omega_B, env.temperature)
    liou = _hamiltonian_part(h)
    liou += p.kappa1 * (1.0 + nbar) * _dissipator(_SM, _SP)
    if nbar > 0:
        liou += p.kappa1 * nbar * _dissipator(_SP, _SM)
    if p.kappa2 > 0:
        liou += p.kappa2 * _dissipator(_SZ, _SZ)
    return liou


def _normalize_density(rho: np.ndarray) -> np.ndarray:
    tr = np.trace(rho)
    if abs(tr) < 1e-12:
        raise ArithmeticError("kernel vector carries no trace weight")
    rho = rho / tr
    return 0.5 * (rho + rho.conj().T)


def assert_physical_state(rho: np.ndarray, eig_floor: float = -1e-8) -> None:
    """Validate Hermiticity, unit trace, and spectral positivity."""
    if np.abs(rho - rho.conj().T).max() > 1e-10:
        raise ArithmeticError("state is not Hermitian")
    if abs(np.trace(rho) - 1.0) > 1e-10:
        raise ArithmeticError("state trace differs from one")
    if np.linalg.eigvalsh(rho).min() < eig_floor:
        raise ArithmeticError("state has a significantly negative eigenvalue")


def steady_state_full(liou: np.ndarray) -> np.ndarray:
    """Stationary density matrix from the Liouvillian kernel.

    The kernel vector is reshaped, rephased to unit trace, and
    Hermitized; physicality is validated before returning.
    """
    dim = int(round(np.sqrt(liou.shape[0])))
    if dim * dim != liou.shape[0]:
        raise ValueError("Liouvillian side is not a perfect square")
    vec = null_vector(liou)
    rho = _normalize_density(vec.reshape(dim, dim))
    assert_physical_state(rho)
    return rho


def evolve(liou: np.ndarray, rho0: np.ndarray, t: float) -> np.ndarray:
    """Propagate a density matrix for time ``t`` under the Liouvillian."""
    dim = rho0.shape[0]
    vec = expm_apply(liou, rho0.reshape(dim * dim), t)
    return vec.reshape(dim, dim)


def expectation(rho: np.ndarray, op: np.ndarray) -> complex:
    return complex(np.trace(op @ rho))


def _fock_populations(rho: np.ndarray, spec: HilbertSpec) -> np.ndarray:
    probs = np.diag(rho).real
    per_level = probs.reshape(spec.fock_dim, -1).sum(axis=1)
    return per_level


def mode_moments(
    rho: np.ndarray, spec: HilbertSpec, check_leak: bool = True
) -> tuple[float, complex, complex]:
    """Stationary mode moments ``(<s+ s>, <s>, <s^2>)``.

    Warns with :class:`TruncationWarning` when the top two Fock levels
    hold more than the leak tolerance (the truncated values are still
    returned; the caller decides whether to grow the space).
    """
    if check_leak:
        leak = _fock_populations(rho, spec)[-2:].sum()
        if leak > LEAK_TOL:
            warnings.warn(
                f"top Fock levels hold population {leak:.2e}",
                TruncationWarning,
                stacklevel=2,
            )
    s = mode_operator(spec)
    occ = expectation(rho, s.conj().T @ s).real
    return float(occ), expectation(rho, s), expectation(rho, s @ s)


def tls_marginal(rho: np.ndarray, spec: HilbertSpec, which: int = 0) -> np.ndarray:
    """Reduced 2x2 state of one TLS."""
    dims = [spec.fock_dim] + [2] * spec.n_tls
    full = rho.reshape(dims + dims)
    keep = 1 + which
    n_sub = len(dims)
    out = full
    # Trace out every subsystem except `keep`, highest axis first.
    for axis in reversed(range(n_sub)):
        if axis == keep:
            continue
        out = np.trace(out, axis1=axis, axis2=axis + out.ndim // 2)
    return out


def steady_state_autogrow(
    mode: ModeParams,
    tls: tuple[TlsParams, ...],
    env: BathEnvironment,
    omega_d: float,
    fock_start: int = 8,
    dim_cap: int = DEFAULT_DIM_CAP,
) -> tuple[np.ndarray, HilbertSpec]:
    """Steady state with the Fock truncation grown until it is clean.

    Doubles the Fock dimension until the top-level leak is below
    tolerance; raises :class:`DimensionCapError` when even the cap cannot
    accommodate a clean truncation.
    """
    fock = fock_start
    while True:
        if fock * 2 ** len(tls) > dim_cap:
            raise DimensionCapError(
                f"leak tolerance needs fock_dim > {fock // 2}, but "
                f"dimension cap {dim_cap} forbids it"
            )
        spec = HilbertSpec(
            fock_dim=fock,
            mode=mode,
            tls=tuple(tls),
            env=env,
            omega_d=omega_d,
            dim_cap=dim_cap,
        )
        rho = steady_state_full(build_liouvillian(spec))
        leak = _fock_populations(rho, spec)[-2:].sum()
        if leak < LEAK_TOL:
            return rho, spec
        fock *= 2


def _sigma_ops_centered(
    p: TlsParams, env: BathEnvironment
) -> tuple[np.ndarray, dict[int, np.ndarray]]:
    liou = tls_liouvillian(p, env)
    rho = _normalize_density(null_vector(liou).reshape(2, 2))
    sp_avg = expectation(rho, _SP)
    ops = {
        +1: _SP - sp_avg * _ID2,
        -1: _SM - np.conj(sp_avg) * _ID2,
    }
    return liou, {"rho": rho, **ops}


def bloch_correlator_numeric(
    p: TlsParams,
    env: BathEnvironment,
    alpha: int,
    beta: int,
    delta_m: float,
    rtol: float = 1e-10,
) -> complex:
    """Brute-force Laplace transform of a Bloch fluctuation correlator.

    Integrates ``<sigma~_alpha(tau) sigma~_beta(0)> exp(beta i delta_m
    tau)`` over the half line by quantum regression on the vectorized TLS
    space: the lagged state is propagated with matrix-exponential steps,
    sampled on a uniform grid, and Simpson-integrated; the grid is then
    refined (halved step) until two successive results agree.  The cutoff
    sits at 40 coherence times, beyond which an analytic tail from the
    slowest decaying eigenvalue is added.
    """
    if alpha not in (+1, -1) or beta not in (+1, -1):
        raise ValueError("alpha and beta must be +1 or -1")
    liou, bag = _sigma_ops_centered(p, env)
    rho = bag["rho"]
    x0 = (bag[beta] @ rho).reshape(4)
    trace_row = bag[alpha].T.reshape(4)

    nbar = bose_occupation(p.omega_B, env.temperature)
    kappa_t = 0.5 * p.kappa1 * (1.0 + 2.0 * nbar) + 2.0 * p.kappa2
    tau_max = 40.0 / kappa_t
    phase_rate = beta * 1j * delta_m

    lam = np.linalg.eigvals(liou)
    decaying = lam[lam.real < -1e-3 * kappa_t]
    lam_slow = decaying[np.argmax(decaying.real)]

    result = None
    n = 2**14
    while n <= 2**20:
        dt = tau_max / n
        prop = scipy.linalg.expm(liou * dt)
        states = np.empty((n + 1, 4), dtype=complex)
        states[0] = x0
        filled = 1
        power = prop
        while filled <= n:
            take = min(filled, n + 1 - filled)
            states[filled : filled + take] = states[:take] @ power.T
            power = power @ power
            filled += take
        taus = np.arange(n + 1) * dt
        integrand = (states @ trace_row) * np.exp(phase_rate * taus)
        total = scipy.integrate.simpson(integrand, dx=dt)
        f_end = states[-1] @ trace_row
        total += -f_end * np.exp(phase_rate * tau_max) / (lam_slow + phase_rate)
        if result is not None and abs(total - result) <= rtol * max(
            1e-300, abs(total)
        ):
            return complex(total)
        result = total
        n *= 2
    return complex(result)


def coherence_g1_numeric(
    liou: np.ndarray,
    rho_ss: np.ndarray,
    spec: HilbertSpec,
    tau_grid,
) -> np.ndarray:
    """Normalized lagged amplitude correlator from the full Liouvillian.

    Quantum regression with the stationary state seeded from the right:
    ``<s+(0) s(tau)> = tr[s exp(L tau)(rho_ss s+)]``, normalized by the
    stationary occupation.
    """
    s = mode_operator(spec)
    occ = expectation(rho_ss, s.conj().T @ s).real
    if occ <= 0:
        raise ValueError("coherence undefined for an unoccupied mode")
    seed = (rho_ss @ s.conj().T).reshape(-1)
    trace_row = s.T.reshape(-1)
    out = np.empty(len(tau_grid), dtype=complex)
    for k, tau in enumerate(tau_grid):
        out[k] = trace_row @ expm_apply(liou, seed, float(tau))
    return out / occ
