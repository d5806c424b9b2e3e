"""Self-contained acceptance suite: 12 numbered criteria, each a
quantitative claim about the library checked at a pinned tolerance.

Every criterion pins its own parameters (the baseline set: N = 1e5,
G = 1e-8, kappa_1 = 1e-4, kappa_2 = 0, gamma_0 = 1e-7, T = 0, units
omega_B = 1) except the oracle comparison, which reads the [oracle]
config section so a too-small dimension cap surfaces as a skip with a
reason rather than a silent pass.  Runtime budgets are part of the
verdict where stated.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .bath import BathEnvironment, TlsParams, psd, transverse_rate
from .config import ScenarioConfig, resolve
from .dynamics import (
    UnstableSystemError,
    build_moment_system,
    stability,
    steady_state,
)
from .oracle import DimensionCapError, bloch_correlator_numeric
from .rates import ModeParams, mollow_sideband, optimal_detuning, single_mode_rates
from .sweeps import _oracle_point

N_TLS = 1e5
COUPLING = 1e-8
KAPPA_1 = 1e-4
GAMMA_0 = 1e-7
ENV = BathEnvironment(temperature=0.0)
KAPPA_T = 0.5 * KAPPA_1  # zero-temperature, no dephasing


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    status: str  # "pass" | "fail" | "skip"
    measured: str
    tolerance: str
    runtime: float
    budget: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def line(self) -> str:
        tag = {"pass": "PASS", "fail": "FAIL", "skip": "SKIP"}[self.status]
        budget = f" (budget {self.budget:g}s)" if self.budget else ""
        return (
            f"[{tag}] {self.number:02d} {self.name}: {self.measured}; "
            f"tolerance {self.tolerance}; {self.runtime:.2f}s{budget}"
        )


@dataclass(frozen=True)
class ValidationReport:
    results: tuple

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list:
        return [r.line() for r in self.results]


def _tls(Omega_B, Delta_B=0.0, kappa1=KAPPA_1, kappa2=0.0, G=COUPLING) -> TlsParams:
    return TlsParams(
        omega_B=1.0,
        kappa1=kappa1,
        kappa2=kappa2,
        Omega_B=Omega_B,
        Delta_B=Delta_B,
        couplings=(G,),
    )


def _pipeline(
    Omega_B,
    Delta_0=0.0,
    Delta_B=0.0,
    gamma0=GAMMA_0,
    Omega_0=0j,
    n_tls=N_TLS,
    env=ENV,
    **tls_kw,
):
    omega_d = 1.0 - Delta_B
    mode = ModeParams(omega=omega_d + Delta_0, gamma0=gamma0, Omega=Omega_0)
    tls = _tls(Omega_B, Delta_B=Delta_B, **tls_kw)
    return single_mode_rates(mode, [tls], env, omega_d, counts=[n_tls])


def _drive_for_saturation(s: float) -> float:
    # resonant, zero temperature: s = |Omega_B|^2 / (kappa_1 kappa_t)
    return float(np.sqrt(s * KAPPA_1 * KAPPA_T))


def _verdict(number, name, ok, measured, tolerance, t0, budget=None) -> CriterionResult:
    runtime = time.perf_counter() - t0
    if budget is not None and runtime >= budget:
        ok = False
        measured += f"; runtime {runtime:.2f}s exceeded budget"
    return CriterionResult(
        number=number,
        name=name,
        status="pass" if ok else "fail",
        measured=measured,
        tolerance=tolerance,
        runtime=runtime,
        budget=budget,
    )


def criterion_01_zero_drive() -> CriterionResult:
    t0 = time.perf_counter()
    worst = 0.0
    for delta_0 in (0.0, 1e-3, -2.5e-2):
        r = _pipeline(0j, Delta_0=delta_0, Omega_0=1e-6 + 0j)
        worst = max(worst, abs(r.g), abs(r.Gamma), abs(r.Omega_prime - 1e-6))
    return _verdict(
        1,
        "zero-drive-collapse",
        worst < 1e-14,
        f"max |g|, |Gamma|, |drive shift| = {worst:.2e}",
        "< 1e-14",
        t0,
        budget=1.0,
    )


def criterion_02_low_drive_decay() -> CriterionResult:
    t0 = time.perf_counter()
    target = 2.0 * N_TLS * COUPLING**2 / KAPPA_T  # 4e-7
    r = _pipeline(_drive_for_saturation(1e-6))
    rel = abs(r.gamma - target) / target
    return _verdict(
        2,
        "low-drive-decay-limit",
        rel < 1e-2,
        f"gamma = {r.gamma:.6e} vs {target:.1e}, rel dev {rel:.2e}",
        "< 1% of 4e-7",
        t0,
        budget=1.0,
    )


def criterion_03_saturation() -> CriterionResult:
    t0 = time.perf_counter()
    r = _pipeline(_drive_for_saturation(1e6))
    target = N_TLS * COUPLING**2 / (2.0 * KAPPA_T)  # 1e-7
    rel = abs(r.Gamma - target) / target
    # reference scales of the weak-drive limits: gamma at resonance,
    # the frequency-shift extremum over detuning
    gamma_ref = 2.0 * N_TLS * COUPLING**2 / KAPPA_T
    delta_ref = N_TLS * COUPLING**2 / (2.0 * KAPPA_T)
    suppressed = abs(r.gamma) < 1e-4 * gamma_ref and abs(r.delta) < 1e-4 * delta_ref
    return _verdict(
        3,
        "saturation-limit",
        rel < 1e-3 and suppressed,
        (
            f"Gamma rel dev {rel:.2e}; |gamma| = {abs(r.gamma):.2e} "
            f"({abs(r.gamma) / gamma_ref:.1e} of weak-drive), "
            f"|delta| = {abs(r.delta):.2e} ({abs(r.delta) / delta_ref:.1e})"
        ),
        "Gamma < 0.1%; residual rates < 1e-4 of weak-drive values",
        t0,
    )


def criterion_04_closed_form() -> CriterionResult:
    from .rates import resonant_closed_form

    t0 = time.perf_counter()
    worst = 0.0
    detunings = np.linspace(-1e3 * KAPPA_1, 1e3 * KAPPA_1, 101)
    for s in (1e-2, 1.0, 1e2):
        drive = _drive_for_saturation(s)
        for d0 in detunings:
            r = _pipeline(drive, Delta_0=float(d0))
            g_ref, gam_ref = resonant_closed_form(N_TLS, COUPLING, KAPPA_1, s, float(d0))
            worst = max(
                worst,
                abs(r.g - g_ref) / max(abs(g_ref), 1e-300),
                abs(r.Gamma - gam_ref) / max(abs(gam_ref), 1e-300),
            )
    return _verdict(
        4,
        "closed-form-equivalence",
        worst < 1e-10,
        f"max rel deviation {worst:.2e} over 303 grid points",
        "< 1e-10",
        t0,
        budget=5.0,
    )


def criterion_05_driving_structure() -> CriterionResult:
    t0 = time.perf_counter()

    def neg_drive(s):
        return -abs(_pipeline(_drive_for_saturation(s)).Omega_prime)

    res = scipy.optimize.minimize_scalar(
        neg_drive, bracket=(0.2, 0.8, 5.0), method="golden", options={"xtol": 1e-10}
    )
    s_star = float(res.x)
    ok = abs(s_star - 1.0) < 1e-6
    details = [f"peak saturation {s_star:.9f}"]

    for mult in (2.0, 4.0):
        drive = mult * KAPPA_T
        pred = optimal_detuning(drive, KAPPA_T)
        grid = np.linspace(-4.0 * KAPPA_T, 4.0 * KAPPA_T, 1601)
        step = grid[1] - grid[0]
        vals = np.array(
            [abs(_pipeline(drive, Delta_B=float(db)).Omega_prime) for db in grid]
        )
        interior = (vals[1:-1] > vals[:-2]) & (vals[1:-1] > vals[2:])
        peaks = grid[1:-1][interior]
        ok = ok and peaks.size == 2
        if peaks.size == 2:
            dev = max(abs(np.sort(peaks) - np.array([-pred, pred])))
            ok = ok and dev <= step + 1e-15
            details.append(f"drive {mult:g}x: peak dev {dev / step:.2f} steps")
        else:
            details.append(f"drive {mult:g}x: found {peaks.size} peaks")
    return _verdict(
        5,
        "driving-rate-structure",
        ok,
        "; ".join(details),
        "peak at s = 1 +- 1e-6; double peaks within one grid step",
        t0,
    )


def criterion_06_mollow_sidebands() -> CriterionResult:
    t0 = time.perf_counter()
    ok = True
    details = []
    step = 0.4 * KAPPA_T
    for mult in (10.0, 30.0):
        drive = mult * KAPPA_T
        pred = mollow_sideband(drive, KAPPA_T)
        grid = pred + np.linspace(-2.0, 2.0, 11) * KAPPA_T
        vals = np.array(
            [abs(_pipeline(drive, Delta_0=float(d0)).Gamma) for d0 in grid]
        )
        located = float(grid[np.argmax(vals)])
        dev = abs(located - pred)
        ok = ok and dev <= step + 1e-15
        details.append(f"drive {mult:g}x: |dev| = {dev / step:.2f} steps")
    return _verdict(
        6,
        "mollow-sidebands",
        ok,
        "; ".join(details),
        "within one grid step (0.4 kappa_t) of the sideband position",
        t0,
    )


def criterion_07_amplification_window() -> CriterionResult:
    t0 = time.perf_counter()
    drive = 10.0 * KAPPA_T
    grid = np.geomspace(1e-2 * KAPPA_T, 100.0 * drive, 1000)
    gam = np.array([_pipeline(drive, Delta_0=float(d0)).gamma for d0 in grid])
    neg = gam < 0
    runs = int(np.sum(np.diff(neg.astype(int)) != 0))
    single_window = runs == 2 and not neg[0] and not neg[-1]
    window_lo = grid[neg].min() if neg.any() else np.nan
    window_hi = grid[neg].max() if neg.any() else np.nan
    mid = (grid >= KAPPA_T) & (grid <= 0.9 * drive)
    inside_negative = bool(np.all(gam[mid] < 0))
    cooling_far = bool(np.all(gam[grid >= 2.0 * drive] > 0))
    cooling_near = bool(np.all(gam[grid <= 0.1 * KAPPA_T] > 0))
    upper_ok = bool(window_hi <= drive)
    ok = single_window and inside_negative and cooling_far and cooling_near and upper_ok
    return _verdict(
        7,
        "amplification-window",
        ok,
        (
            f"window [{window_lo / KAPPA_T:.3f} kappa_t, "
            f"{window_hi / drive:.4f} Omega_B], {runs} sign changes"
        ),
        "single negative window covering [kappa_t, 0.9 Omega_B], "
        "upper edge <= Omega_B, cooling outside",
        t0,
    )


def criterion_08_stability_map() -> CriterionResult:
    t0 = time.perf_counter()
    drives = np.geomspace(1e-6, 1e-3, 100)
    gammas = np.geomspace(1e-9, 1e-5, 100)
    disagreements = 0
    unstable_low = 0
    unstable_high = 0
    for g0 in gammas:
        for ob in drives:
            r = _pipeline(complex(ob), gamma0=float(g0))
            ms = build_moment_system(r, float(g0), 0.0)
            rep = stability(ms)
            if rep.stable != rep.criterion:
                disagreements += 1
            if not rep.stable and g0 >= 1e-6:
                unstable_high += 1
    for ob in drives:
        r = _pipeline(complex(ob), gamma0=3e-8)
        rep = stability(build_moment_system(r, 3e-8, 0.0))
        if not rep.stable:
            unstable_low += 1
    ok = disagreements == 0 and unstable_low > 0 and unstable_high == 0
    return _verdict(
        8,
        "stability-map",
        ok,
        (
            f"{disagreements} verdict disagreements on 100x100 grid; "
            f"{unstable_low} unstable cells at gamma_0 = 3e-8, "
            f"{unstable_high} at gamma_0 >= 1e-6"
        ),
        "verdicts identical; unstable region nonempty at 3e-8, empty at >= 1e-6",
        t0,
        budget=30.0,
    )


def criterion_09_squeezing() -> CriterionResult:
    import dataclasses

    t0 = time.perf_counter()
    s_grid = np.geomspace(1e-3, 10.0, 150)
    xi_full = np.full(s_grid.size, np.nan)
    xi_nog = np.full(s_grid.size, np.nan)
    for k, s in enumerate(s_grid):
        r = _pipeline(_drive_for_saturation(float(s)))
        try:
            xi_full[k] = steady_state(build_moment_system(r, GAMMA_0, 0.0)).xi
        except UnstableSystemError:
            pass
        try:
            r0 = dataclasses.replace(r, g=0j)
            xi_nog[k] = steady_state(build_moment_system(r0, GAMMA_0, 0.0)).xi
        except UnstableSystemError:
            pass
    near = (s_grid > 0.05) & (s_grid < 0.2)
    squeezed_near = bool(np.all(xi_full[near] > 1.0))
    nonempty = bool(np.any(xi_full > 1.0))
    reduced = float(np.nanmax(xi_full)) < float(np.nanmax(xi_nog))
    differs = bool(np.nanmax(np.abs(xi_full - xi_nog)) > 1e-6)
    ok = squeezed_near and nonempty and reduced and differs
    return _verdict(
        9,
        "squeezing-reduction",
        ok,
        (
            f"xi > 1 around s = 0.1: {squeezed_near}; "
            f"max xi full {np.nanmax(xi_full):.4f} vs "
            f"pair-pumping-free {np.nanmax(xi_nog):.4f}"
        ),
        "xi > 1 near s = 0.1; full optimum below pair-pumping-free optimum",
        t0,
    )


def criterion_10_oracle(cfg: ScenarioConfig) -> CriterionResult:
    t0 = time.perf_counter()
    drive = KAPPA_1 / np.sqrt(2.0)  # saturation parameter 1 on resonance
    point = cfg.replace(
        n_tls=1.0,
        Omega_B=complex(drive),
        Delta_B=0.0,
        Delta_0=0.0,
        kappa_1=KAPPA_1,
        kappa_2=0.0,
        temperature=0.0,
    )
    ratios = sorted(point.oracle_ratios, reverse=True)
    devs = []
    try:
        for ratio in ratios:
            row = _oracle_point(point, float(ratio))
            devs.append(max(row[4], row[9], row[14]))
    except DimensionCapError as exc:
        return CriterionResult(
            number=10,
            name="oracle-equivalence",
            status="skip",
            measured=f"dimension cap: {exc}",
            tolerance="< 5% at coupling ratio 1e-2, monotone in ratio",
            runtime=time.perf_counter() - t0,
            budget=60.0,
        )
    monotone = all(a >= b for a, b in zip(devs, devs[1:]))
    ok = devs[-1] < 0.05 and monotone
    return _verdict(
        10,
        "oracle-equivalence",
        ok,
        f"max moment deviations {['%.2e' % d for d in devs]} for ratios {list(ratios)}",
        "< 5% at coupling ratio 1e-2, monotone in ratio",
        t0,
        budget=60.0,
    )


def criterion_11_correlator_quadrature() -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(20260816)
    worst = 0.0
    for _ in range(50):
        kappa1 = 10.0 ** rng.uniform(-5.0, -3.0)
        kappa2 = float(rng.choice([0.0, 10.0 ** rng.uniform(-6.0, -4.0)]))
        temp = float(rng.choice([0.0, 10.0 ** rng.uniform(-2.0, -0.5)]))
        env = BathEnvironment(temperature=temp)
        phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        p = TlsParams(
            omega_B=1.0,
            kappa1=kappa1,
            kappa2=kappa2,
            Omega_B=10.0 ** rng.uniform(-5.0, -3.0) * phase,
            Delta_B=float(rng.uniform(-3.0, 3.0)) * kappa1,
            couplings=(10.0 ** rng.uniform(-8.0, -5.0),),
        )
        kt = transverse_rate(p, env)
        detuning = float(rng.uniform(-5.0, 5.0)) * kt
        n_tls = float(10.0 ** rng.integers(0, 6))
        for alpha in (+1, -1):
            for beta in (+1, -1):
                via_resolvent = psd(
                    [p], env, np.array([detuning]), alpha, beta, 0, 0,
                    counts=[n_tls],
                )
                integral = bloch_correlator_numeric(p, env, alpha, beta, detuning)
                g_a = p.couplings[0] if alpha > 0 else np.conj(p.couplings[0])
                g_b = p.couplings[0] if beta > 0 else np.conj(p.couplings[0])
                via_quadrature = n_tls * g_a * g_b * integral
                worst = max(worst, abs(via_resolvent - via_quadrature))
    return _verdict(
        11,
        "correlator-quadrature",
        worst < 1e-8,
        f"max absolute deviation {worst:.2e} over 200 components",
        "< 1e-8 absolute",
        t0,
        budget=10.0,
    )


def criterion_12_physicality() -> CriterionResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(1234)
    checked = 0
    worst_det = np.inf
    worst_occ = np.inf
    attempts = 0
    while checked < 1000 and attempts < 8000:
        attempts += 1
        kappa1 = 10.0 ** rng.uniform(-5.0, -3.0)
        s = 10.0 ** rng.uniform(-3.0, 3.0)
        p_env = BathEnvironment(temperature=float(rng.choice([0.0, 0.05, 0.2])))
        phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        kt_guess = transverse_rate(
            TlsParams(1.0, kappa1, 0.0, 0j, 0.0, (COUPLING,)), p_env
        )
        drive = np.sqrt(s * kappa1 * kt_guess) * phase
        delta_b = float(rng.uniform(-2.0, 2.0)) * kappa1
        delta_0 = float(rng.uniform(-10.0, 10.0)) * kappa1
        gamma0 = 10.0 ** rng.uniform(-9.0, -5.0)
        try:
            r = _pipeline(
                drive,
                Delta_0=delta_0,
                Delta_B=delta_b,
                gamma0=gamma0,
                env=p_env,
                kappa1=kappa1,
            )
            ms = build_moment_system(r, gamma0, delta_0)
            rep = steady_state(ms)
        except UnstableSystemError:
            continue
        checked += 1
        worst_det = min(worst_det, rep.det_sigma)
        worst_occ = min(worst_occ, rep.centered_occupation)
    ok = (
        checked == 1000
        and worst_det >= 0.25 - 1e-9
        and worst_occ >= -1e-9
    )
    return _verdict(
        12,
        "physicality-suite",
        ok,
        (
            f"{checked} stable states; min det sigma - 1/4 = {worst_det - 0.25:.2e}, "
            f"min centered occupation = {worst_occ:.2e}"
        ),
        "det sigma >= 1/4 - 1e-9; centered occupation >= -1e-9",
        t0,
    )


def validate_all(cfg: ScenarioConfig | None = None) -> ValidationReport:
    """Run every criterion; config only feeds the oracle comparison."""
    if cfg is None:
        cfg = resolve({})
    results = (
        criterion_01_zero_drive(),
        criterion_02_low_drive_decay(),
        criterion_03_saturation(),
        criterion_04_closed_form(),
        criterion_05_driving_structure(),
        criterion_06_mollow_sidebands(),
        criterion_07_amplification_window(),
        criterion_08_stability_map(),
        criterion_09_squeezing(),
        criterion_10_oracle(cfg),
        criterion_11_correlator_quadrature(),
        criterion_12_physicality(),
    )
    return ValidationReport(results=results)


def report_rows(report: ValidationReport):
    """Rows for CSV/JSON emission of a validation run."""
    columns = ("number", "name", "status", "measured", "tolerance", "runtime_s")
    rows = tuple(
        (r.number, r.name, r.status, r.measured, r.tolerance, float(f"{r.runtime:.3f}"))
        for r in report.results
    )
    return columns, rows
