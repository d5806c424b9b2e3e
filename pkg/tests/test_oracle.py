"""Exact small-dimension reference dynamics and its cross-checks."""

import numpy as np
import pytest

from tlsbath.bath import (
    BathEnvironment,
    TlsParams,
    bloch_steady_state,
    correlator_integral,
)
from tlsbath.dynamics import build_moment_system, coherence_g1, steady_state
from tlsbath.oracle import (
    DimensionCapError,
    HilbertSpec,
    TruncationWarning,
    bloch_correlator_numeric,
    build_liouvillian,
    coherence_g1_numeric,
    evolve,
    mode_moments,
    mode_operator,
    steady_state_autogrow,
    steady_state_full,
    tls_marginal,
)
from tlsbath.rates import ModeParams, single_mode_rates

ENV0 = BathEnvironment(temperature=0.0)
KAPPA_1 = 1e-4
KAPPA_T = 5e-5  # T=0, kappa_2=0


def _tls(Omega_B, G, Delta_B=0.0, kappa2=0.0):
    return TlsParams(1.0, KAPPA_1, kappa2, Omega_B, Delta_B, (G,))


def _drive(s):
    return float(np.sqrt(s * KAPPA_1 * KAPPA_T))


def _small_spec(fock=6, G=5e-7, s=1.0, gamma0=3e-6, Omega_0=0j, **kw):
    mode = ModeParams(omega=1.0, gamma0=gamma0, Omega=Omega_0)
    return HilbertSpec(
        fock_dim=fock,
        mode=mode,
        tls=(_tls(_drive(s), G),),
        env=ENV0,
        omega_d=1.0,
        **kw,
    )


def test_spec_validation():
    mode = ModeParams(omega=1.0, gamma0=1e-6, Omega=0j)
    tls = (_tls(1e-5, 1e-7),)
    with pytest.raises(ValueError):
        HilbertSpec(fock_dim=1, mode=mode, tls=tls, env=ENV0, omega_d=1.0)
    with pytest.raises(ValueError):
        HilbertSpec(fock_dim=4, mode=mode, tls=(), env=ENV0, omega_d=1.0)
    with pytest.raises(ValueError):
        HilbertSpec(fock_dim=4, mode=mode, tls=tls * 4, env=ENV0, omega_d=1.0)
    with pytest.raises(ValueError):
        HilbertSpec(fock_dim=4, mode=mode, tls=tls, env=ENV0, omega_d=0.0)
    with pytest.raises(DimensionCapError):
        HilbertSpec(fock_dim=40, mode=mode, tls=tls, env=ENV0, omega_d=1.0)


def test_mode_operator_commutator():
    spec = _small_spec(fock=5)
    s = mode_operator(spec)
    comm = s @ s.conj().T - s.conj().T @ s
    # the truncation corrupts only the top Fock level
    want = np.eye(spec.dim, dtype=complex)
    top = np.arange(spec.dim) // 2**spec.n_tls == spec.fock_dim - 1
    want[top, top] = 1 - spec.fock_dim
    assert np.allclose(comm, want, atol=1e-13)


def test_liouvillian_annihilates_trace():
    spec = _small_spec(fock=4, s=2.0, G=1e-6)
    liou = build_liouvillian(spec)
    trace_row = np.eye(spec.dim, dtype=complex).reshape(-1)
    residual = np.abs(trace_row @ liou).max()
    assert residual < 1e-14 * np.abs(liou).max()


def test_steady_state_full_is_stationary_and_physical():
    spec = _small_spec(fock=6, s=1.0)
    liou = build_liouvillian(spec)
    rho = steady_state_full(liou)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert np.abs(rho - rho.conj().T).max() < 1e-12
    assert np.linalg.eigvalsh(rho).min() > -1e-10
    flow = np.abs(liou @ rho.reshape(-1)).max()
    assert flow < 1e-12 * np.abs(liou).max()


def test_decoupled_state_factorizes():
    """At zero coupling the stationary state is (driven TLS) x (vacuum)."""
    spec = _small_spec(fock=4, G=0.0, s=1.5)
    rho = steady_state_full(build_liouvillian(spec))

    occ, amp, pair = mode_moments(rho, spec)
    assert abs(occ) < 1e-12
    assert abs(amp) < 1e-12
    assert abs(pair) < 1e-12

    marg = tls_marginal(rho, spec)
    ref = bloch_steady_state(spec.tls[0], ENV0)
    assert marg[0, 1] == pytest.approx(ref.sigma_plus, abs=1e-10)
    got_sz = (marg[1, 1] - marg[0, 0]).real
    assert got_sz == pytest.approx(ref.sigma_z, abs=1e-10)


def test_evolve_preserves_trace_and_relaxes():
    spec = _small_spec(fock=4, s=1.0, G=1e-6)
    liou = build_liouvillian(spec)
    rho_ss = steady_state_full(liou)
    rho0 = np.zeros((spec.dim, spec.dim), dtype=complex)
    rho0[3, 3] = 1.0  # excited product basis state
    kappa_t = KAPPA_T
    rho_t = evolve(liou, rho0, 0.5 / kappa_t)
    assert np.trace(rho_t).real == pytest.approx(1.0, abs=1e-10)
    rho_late = evolve(liou, rho0, 400.0 / kappa_t)
    assert np.abs(rho_late - rho_ss).max() < 1e-6


def test_mode_moments_warns_on_leak():
    # strong direct drive pushes the coherent amplitude past the truncation
    spec = _small_spec(fock=4, G=0.0, s=0.0, gamma0=3e-6, Omega_0=1.8e-6 + 0j)
    rho = steady_state_full(build_liouvillian(spec))
    with pytest.warns(TruncationWarning):
        mode_moments(rho, spec)
    # the check can be bypassed
    occ, _, _ = mode_moments(rho, spec, check_leak=False)
    assert occ > 0.5


def test_autogrow_expands_until_clean():
    mode = ModeParams(omega=1.0, gamma0=3e-6, Omega=1.8e-6 + 0j)
    tls = (_tls(0.0, 0.0),)
    rho, spec = steady_state_autogrow(mode, tls, ENV0, 1.0, fock_start=4)
    assert spec.fock_dim >= 16
    occ, amp, _ = mode_moments(rho, spec)
    # decoupled coherently driven mode: displaced vacuum
    alpha = -1j * np.conj(mode.Omega) / (mode.gamma0 / 2)
    assert amp == pytest.approx(alpha, rel=1e-6)
    assert occ == pytest.approx(abs(alpha) ** 2, rel=1e-6)


def test_autogrow_respects_dimension_cap():
    mode = ModeParams(omega=1.0, gamma0=3e-6, Omega=1.8e-6 + 0j)
    tls = (_tls(0.0, 0.0),)
    with pytest.raises(DimensionCapError):
        steady_state_autogrow(mode, tls, ENV0, 1.0, fock_start=4, dim_cap=16)


def test_bloch_correlator_matches_resolvent():
    """Brute-force Laplace transform vs direct resolvent inversion."""
    p = _tls(8e-5, 0.0, Delta_B=3e-5, kappa2=2e-5)
    env = BathEnvironment(temperature=0.3)
    row = {+1: 0, -1: 1}
    for beta in (+1, -1):
        for delta_m in (-2e-5, 4e-5):
            ref = correlator_integral(p, env, beta, delta_m)
            for alpha in (+1, -1):
                got = bloch_correlator_numeric(p, env, alpha, beta, delta_m)
                want = ref[row[alpha]]
                assert got == pytest.approx(want, rel=1e-7, abs=1e-16)


def test_coherence_matches_effective_theory():
    """g1 from the exact Liouvillian vs the moment-hierarchy form.

    Weak coupling (G = 0.01 kappa_t, one TLS) keeps the perturbative
    rates accurate; the curves must agree pointwise to within 2e-2 out to
    ten effective decay times.
    """
    G = 0.01 * KAPPA_T
    gamma0 = 3e-6
    mode = ModeParams(omega=1.0, gamma0=gamma0, Omega=0j)
    tls = _tls(_drive(1.0), G)

    rates = single_mode_rates(mode, [tls], ENV0, 1.0, counts=[1.0])
    ms = build_moment_system(rates, gamma0, 0.0)
    rep = steady_state(ms)
    tau = np.linspace(0.0, 10.0 / ms.gamma_total, 21)
    eff = coherence_g1(ms, rep, tau)

    rho, spec = steady_state_autogrow(mode, (tls,), ENV0, 1.0)
    liou = build_liouvillian(spec)
    exact = coherence_g1_numeric(liou, rho, spec, tau)

    assert exact[0] == pytest.approx(1.0, abs=1e-10)
    assert np.abs(exact - eff.values).max() < 2e-2


def test_coherence_numeric_rejects_vacuum():
    spec = _small_spec(fock=4, G=0.0, s=1.0)
    liou = build_liouvillian(spec)
    rho = np.zeros((spec.dim, spec.dim), dtype=complex)
    rho[0, 0] = 1.0  # exact vacuum, zero occupation
    with pytest.raises(ValueError):
        coherence_g1_numeric(liou, rho, spec, np.array([0.0, 1.0]))
