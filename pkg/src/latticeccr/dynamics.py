"""Wave-packet time evolution and closed-form trajectory oracles.

Propagation is spectral (expand in the precomputed eigenbasis, advance the
phases), so unitarity is exact to rounding and no integrator error enters
the comparisons between exact dynamics and the trajectories predicted by
assuming the canonical commutation relation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import LeakageError, ToleranceError
from .ccr import alternating_overlap
from .lattice import (
    Hopping,
    LatticeSpec,
    Potential,
    StateVector,
    build_hamiltonian,
    build_quasi_momentum,
    expectation,
)
from .spectral import SpectrumResult, eigensolve

LEAK_WARN = 1e-10
LEAK_FAIL = 1e-6


@dataclass(frozen=True)
class GaussianPacket:
    """Initial Gaussian wave packet exp(-falloff (m - center)^2) e^{i k0 a m}.

    falloff is the dimensionless exponent coefficient in the site index
    (larger = narrower packet); k0 is an optional quasi-momentum kick.
    """

    center_site: int
    falloff: float
    k0: float = 0.0

    def __post_init__(self):
        if not self.falloff > 0:
            raise ValueError(f"falloff must be positive, got {self.falloff}")


@dataclass(frozen=True)
class TimeSeries:
    """Sampled observables of one propagation run.

    x_ccr holds the selected model prediction (None if no model requested);
    x_exact_oracle holds the closed-form Heisenberg solution, available for
    linear potentials only. boundary_max records the largest boundary-site
    amplitude seen, the truncation-honesty figure of merit.
    """

    times: np.ndarray
    x_mean: np.ndarray
    k_mean: np.ndarray
    s_abs: np.ndarray
    norm: np.ndarray
    x_ccr: np.ndarray | None
    x_exact_oracle: np.ndarray | None
    boundary_max: float


def make_gaussian(spec: LatticeSpec, packet: GaussianPacket) -> StateVector:
    """Normalized Gaussian packet on the window.

    The center must lie inside the window; if the normalized boundary-site
    amplitude exceeds 1e-10 a leakage warning is issued (the window is then
    too small to stand in for the infinite lattice)."""
    m = spec.half_width
    if abs(packet.center_site) >= m:
        raise ValueError(f"packet center {packet.center_site} outside window |m| < {m}")
    sites = spec.sites
    amp = np.exp(-packet.falloff * (sites - packet.center_site) ** 2.0).astype(complex)
    amp *= np.exp(1j * packet.k0 * spec.spacing * sites)
    state = StateVector(amp).normalize()
    edge = max(abs(state.amplitudes[0]), abs(state.amplitudes[-1]))
    if edge > LEAK_WARN:
        warnings.warn(
            f"initial packet has boundary amplitude {edge:.2e} > {LEAK_WARN:.0e}",
            stacklevel=2,
        )
    return state


def propagate(psi0: StateVector, sr: SpectrumResult, t: float) -> StateVector:
    """Evolve a state to time t in the eigenbasis of its Hamiltonian."""
    if len(psi0.amplitudes) != sr.dimension:
        raise ValueError("state dimension does not match the spectrum")
    coeff = sr.eigenvectors.conj().T @ psi0.amplitudes
    amp = sr.eigenvectors @ (np.exp(-1j * sr.eigenvalues * t) * coeff)
    return StateVector(amp, normalized=psi0.normalized)


def translation_expectation(psi: StateVector, shift: int) -> complex:
    """<psi|T_shift|psi> computed from shifted amplitude overlaps."""
    amp = psi.amplitudes
    if shift == 0:
        return complex(np.vdot(amp, amp))
    if abs(shift) >= len(amp):
        return 0.0 + 0.0j
    if shift > 0:
        return complex(np.vdot(amp[shift:], amp[:-shift]))
    return complex(np.vdot(amp[:shift], amp[-shift:]))


def exact_position_linear(
    psi0: StateVector,
    spec: LatticeSpec,
    hop: Hopping,
    force: float,
    t,
) -> float | np.ndarray:
    """Closed-form <x(t)> for kinetic hopping plus a linear potential.

    The Heisenberg solution follows from [x, T_n] = a n T_n and
    [T_n, H] = a n F T_n:

        x(t) = x - sum_{n>0} [ t_n T_n (e^{-i a n F t} - 1)/F + h.c. ],

    with t_n the hopping amplitudes (the coefficient of T_n in H is -t_n).
    Manifestly periodic with the Bloch period 2 pi/(a F).
    """
    if force == 0:
        raise ValueError("force must be nonzero; use free evolution instead")
    a = spec.spacing
    _, amps = hop.terms(spec)
    t_exp = np.array([translation_expectation(psi0, r) for r in range(1, len(amps) + 1)])
    x0 = np.real(expectation(psi0, spec.positions))
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    n = np.arange(1, len(amps) + 1)
    phase = np.exp(-1j * a * force * np.outer(t_arr, n)) - 1.0
    series = 2.0 * np.real(phase * (amps * t_exp)[None, :]).sum(axis=1) / force
    out = x0 - series
    return out if np.ndim(t) else float(out[0])


def ccr_position_linear(psi0: StateVector, spec: LatticeSpec, force: float, t):
    """Free-acceleration parabola <x> + <k> t + F t^2/2 implied by the CCR."""
    x0 = np.real(expectation(psi0, spec.positions))
    k0 = np.real(expectation(psi0, build_quasi_momentum(spec)))
    t_arr = np.asarray(t, dtype=float)
    out = x0 + k0 * t_arr + force * t_arr**2 / 2
    return out if np.ndim(t) else float(out)


def ccr_position_harmonic(psi0: StateVector, spec: LatticeSpec, curvature: float, t):
    """Harmonic CCR trajectory <x> cos(sqrt(c) t) + (<k>/sqrt(c)) sin(sqrt(c) t)."""
    if curvature <= 0:
        raise ValueError("curvature must be positive")
    x0 = np.real(expectation(psi0, spec.positions))
    k0 = np.real(expectation(psi0, build_quasi_momentum(spec)))
    w = np.sqrt(curvature)
    t_arr = np.asarray(t, dtype=float)
    out = x0 * np.cos(w * t_arr) + (k0 / w) * np.sin(w * t_arr)
    return out if np.ndim(t) else float(out)


def ccr_position_periodic_kinetic(psi0: StateVector, spec: LatticeSpec, force: float, t):
    """Semiclassical CCR trajectory for the nearest-neighbour kinetic energy.

    Evaluates <x>_0 + <cos(a k) - cos(a k + a F t)>_0 / (a^2 F) using the
    exact operator identities cos(a k) = (T_1 + T_-1)/2 and
    cos(a k + a F t) = (e^{iaFt} T_-1 + e^{-iaFt} T_1)/2; for this
    2pi-periodic dispersion the CCR result coincides with the exact
    Heisenberg solution.
    """
    if force == 0:
        raise ValueError("force must be nonzero")
    a = spec.spacing
    x0 = np.real(expectation(psi0, spec.positions))
    t1 = translation_expectation(psi0, 1)
    t_arr = np.asarray(t, dtype=float)
    out = x0 + (np.real(t1) - np.real(np.exp(-1j * a * force * t_arr) * t1)) / (a**2 * force)
    return out if np.ndim(t) else float(out)


def run_timeseries(
    spec: LatticeSpec,
    hop: Hopping,
    pot: Potential,
    packet: GaussianPacket,
    t_grid,
    model: str = "auto",
    sr: SpectrumResult | None = None,
    leak_warn: float = LEAK_WARN,
    leak_fail: float = LEAK_FAIL,
) -> TimeSeries:
    """Propagate a Gaussian packet and record observables at each grid time.

    model selects the CCR prediction filled into x_ccr: "linear", "harmonic",
    "periodic_kinetic", "none", or "auto" (matches the potential kind, using
    the periodic-kinetic form for cosine hopping in a linear potential). For
    linear potentials the closed-form Heisenberg oracle is always recorded.
    Boundary amplitude above leak_warn issues a warning; above leak_fail the
    run aborts with LeakageError.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) == 0:
        raise ValueError("t_grid must be a non-empty 1-D array")
    if np.any(np.diff(t_grid) <= 0) or t_grid[0] < 0:
        raise ValueError("t_grid must ascend from t >= 0")
    if model == "auto":
        if pot.kind == "linear":
            model = "periodic_kinetic" if hop.kind == "cosine" else "linear"
        elif pot.kind == "harmonic":
            model = "harmonic"
        else:
            model = "none"
    if model not in ("linear", "harmonic", "periodic_kinetic", "none"):
        raise ValueError(f"unknown model {model!r}")

    if sr is None:
        sr = eigensolve(build_hamiltonian(spec, hop, pot))
    psi0 = make_gaussian(spec, packet)
    kop = build_quasi_momentum(spec).matrix
    x = spec.positions
    coeff = sr.eigenvectors.conj().T @ psi0.amplitudes

    x_mean = np.empty(len(t_grid))
    k_mean = np.empty(len(t_grid))
    s_abs = np.empty(len(t_grid))
    norm = np.empty(len(t_grid))
    boundary = 0.0
    half = spec.half_width
    signs = (-1.0) ** np.abs(spec.sites)
    for i, t in enumerate(t_grid):
        amp = sr.eigenvectors @ (np.exp(-1j * sr.eigenvalues * t) * coeff)
        x_mean[i] = np.real(np.vdot(amp, x * amp))
        k_mean[i] = np.real(np.vdot(amp, kop @ amp))
        s_abs[i] = abs(np.sum(signs * amp))
        norm[i] = np.linalg.norm(amp)
        if abs(norm[i] - 1.0) > 1e-10:
            raise ToleranceError(f"norm drifted to {norm[i]:.12f} at t = {t:g}")
        edge = max(abs(amp[0]), abs(amp[-1]))
        boundary = max(boundary, edge)
        if edge > leak_fail:
            raise LeakageError(
                f"boundary amplitude {edge:.2e} at t = {t:g} exceeds {leak_fail:.0e} "
                f"(window half_width {half} too small)"
            )
    if boundary > leak_warn:
        warnings.warn(
            f"boundary amplitude reached {boundary:.2e} > {leak_warn:.0e}", stacklevel=2
        )

    x_ccr = None
    if model == "linear":
        x_ccr = ccr_position_linear(psi0, spec, pot.force, t_grid)
    elif model == "harmonic":
        x_ccr = ccr_position_harmonic(psi0, spec, pot.curvature, t_grid)
    elif model == "periodic_kinetic":
        x_ccr = ccr_position_periodic_kinetic(psi0, spec, pot.force, t_grid)
    x_exact = None
    if pot.kind == "linear" and pot.force != 0:
        x_exact = exact_position_linear(psi0, spec, hop, pot.force, t_grid)

    return TimeSeries(
        times=t_grid,
        x_mean=x_mean,
        k_mean=k_mean,
        s_abs=s_abs,
        norm=norm,
        x_ccr=x_ccr,
        x_exact_oracle=x_exact,
        boundary_max=boundary,
    )
