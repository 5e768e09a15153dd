"""Site-basis operators on a finite symmetric lattice window.

The infinite lattice is truncated to sites m = -half_width..half_width with
hard (open) boundaries: operator tails are simply dropped, never wrapped,
because the phase-operator and kinetic matrix elements decay only like
1/|m-n| and 1/(m-n)^2 and periodic images would corrupt the commutator
identities this package is built to check.

All builders return dense matrices validated to be Hermitian to an absolute
entrywise tolerance (default 1e-12); the closed forms are exact, so only
floating-point rounding enters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

HERMITICITY_TOL = 1e-12
NORM_TOL = 1e-12


@dataclass(frozen=True)
class LatticeSpec:
    """Finite symmetric site window m = -half_width..half_width with spacing a.

    The window stands in for the infinite lattice; the symmetric index set is
    required so that parity (site reflection) is well defined.
    """

    half_width: int
    spacing: float = 1.0

    def __post_init__(self):
        if self.half_width < 1:
            raise ValueError(f"half_width must be >= 1, got {self.half_width}")
        if not (self.spacing > 0):
            raise ValueError(f"spacing must be positive, got {self.spacing}")

    @property
    def n_sites(self) -> int:
        return 2 * self.half_width + 1

    @property
    def sites(self) -> np.ndarray:
        """Integer site labels -half_width..half_width."""
        return np.arange(-self.half_width, self.half_width + 1)

    @property
    def positions(self) -> np.ndarray:
        """Physical positions spacing * m."""
        return self.spacing * self.sites

    @property
    def brillouin_edge(self) -> float:
        """Largest quasi-momentum pi/spacing of the first Brillouin zone."""
        return np.pi / self.spacing

    def interior_sites(self, margin: int) -> np.ndarray:
        """Boolean mask of sites at least `margin` away from the boundary."""
        return np.abs(self.sites) <= self.half_width - margin


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense Hermitian operator in the site basis.

    Construction verifies ||A - A^dagger||_max <= hermiticity_tol; matrices
    are treated as immutable afterwards and safe to share between threads.
    """

    matrix: np.ndarray
    hermiticity_tol: float = HERMITICITY_TOL

    def __post_init__(self):
        mat = np.asarray(self.matrix)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator must be square, got shape {mat.shape}")
        object.__setattr__(self, "matrix", mat)
        defect = np.abs(mat - mat.conj().T).max()
        if defect > self.hermiticity_tol:
            raise ValueError(
                f"matrix is not Hermitian: max |A - A^dagger| = {defect:.3e} "
                f"exceeds {self.hermiticity_tol:.1e}"
            )

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.matrix) or np.abs(self.matrix.imag).max() == 0.0

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return self.matrix @ other.matrix
        return self.matrix @ other


@dataclass(frozen=True)
class StateVector:
    """Complex amplitudes over the site window, ordered m = -M..M."""

    amplitudes: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amp)
        if amp.ndim != 1:
            raise ValueError("amplitudes must be a 1-D array")
        if not np.all(np.isfinite(amp)):
            raise ValueError("amplitudes must all be finite")
        if self.normalized and abs(self.norm**2 - 1.0) > NORM_TOL:
            raise ValueError(
                f"state flagged normalized but |norm^2 - 1| = {abs(self.norm ** 2 - 1):.3e}"
            )

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "StateVector":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize the zero state")
        return StateVector(self.amplitudes / n, normalized=True)


@dataclass(frozen=True)
class Hopping:
    """Kinetic-energy choice for the hopping Hamiltonian.

    kind "quadratic"  : long-range hopping whose matrix equals half the
                        squared quasi-momentum operator; onsite -pi^2/(6a^2),
                        range-n amplitude (-1)^(n+1)/(a n)^2.
    kind "cosine"     : nearest-neighbour form (1 - cos(a k))/a^2, i.e.
                        onsite -1/a^2 and t_1 = 1/(2 a^2).
    kind "custom"     : explicit onsite t0 and amplitudes (t_1, t_2, ...).

    The Hamiltonian assembled from amplitudes is
    -t0 * I - sum_{n>=1} t_n (T_n + T_n^dagger) so that energy eigenvalues
    follow the dispersion -t0 - 2 sum t_n cos(a k n).
    """

    kind: str
    t0: float = 0.0
    amplitudes: tuple = ()

    _KINDS = ("quadratic", "cosine", "custom")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown hopping kind {self.kind!r}; expected one of {self._KINDS}")

    @classmethod
    def quadratic(cls) -> "Hopping":
        return cls("quadratic")

    @classmethod
    def cosine(cls) -> "Hopping":
        return cls("cosine")

    @classmethod
    def custom(cls, t0: float, amplitudes: Sequence[float]) -> "Hopping":
        return cls("custom", float(t0), tuple(float(t) for t in amplitudes))

    def terms(self, spec: LatticeSpec, max_range: int | None = None):
        """Return (t0, t_n array for n=1..R) on the given window.

        For the quadratic kind every hop with range <= 2*half_width is kept
        (full dense band); max_range only trims further if smaller.
        """
        a = spec.spacing
        full = 2 * spec.half_width
        if self.kind == "quadratic":
            r = full if max_range is None else min(max_range, full)
            n = np.arange(1, r + 1)
            return -np.pi**2 / (6 * a**2), (-1.0) ** (n + 1) / (a * n) ** 2
        if self.kind == "cosine":
            return -1.0 / a**2, np.array([1.0 / (2 * a**2)])
        t = np.asarray(self.amplitudes, dtype=float)
        if len(t) > full:
            raise ValueError(
                f"custom hopping range {len(t)} exceeds window diameter {full}"
            )
        return self.t0, t


@dataclass(frozen=True)
class Potential:
    """On-site potential V_m on the window.

    kind "constant" : V_m = v0
    kind "linear"   : V_m = -force * a * m  (ladder spacing a*force)
    kind "harmonic" : V_m = curvature * (a m)^2 / 2
    kind "custom"   : explicit values, one per site
    """

    kind: str
    v0: float = 0.0
    force: float = 0.0
    curvature: float = 0.0
    custom_values: tuple = ()

    _KINDS = ("constant", "linear", "harmonic", "custom")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown potential kind {self.kind!r}; expected one of {self._KINDS}")

    @classmethod
    def constant(cls, v0: float = 0.0) -> "Potential":
        return cls("constant", v0=float(v0))

    @classmethod
    def linear(cls, force: float) -> "Potential":
        return cls("linear", force=float(force))

    @classmethod
    def harmonic(cls, curvature: float) -> "Potential":
        if not curvature > 0:
            raise ValueError(f"harmonic curvature must be positive, got {curvature}")
        return cls("harmonic", curvature=float(curvature))

    @classmethod
    def custom(cls, values: Sequence[float]) -> "Potential":
        vals = tuple(float(v) for v in values)
        if not all(np.isfinite(vals)):
            raise ValueError("custom potential values must be finite")
        return cls("custom", custom_values=vals)

    def values(self, spec: LatticeSpec) -> np.ndarray:
        x = spec.positions
        if self.kind == "constant":
            return np.full(spec.n_sites, self.v0)
        if self.kind == "linear":
            return -self.force * x
        if self.kind == "harmonic":
            return self.curvature * x**2 / 2
        vals = np.asarray(self.custom_values, dtype=float)
        if len(vals) != spec.n_sites:
            raise ValueError(
                f"custom potential has {len(vals)} values for {spec.n_sites} sites"
            )
        return vals


def _site_differences(spec: LatticeSpec) -> np.ndarray:
    m = spec.sites
    return m[:, None] - m[None, :]


def build_position(spec: LatticeSpec) -> OperatorMatrix:
    """Position operator: diagonal matrix with entries spacing * m."""
    return OperatorMatrix(np.diag(spec.positions.astype(float)))


def build_phase_operator(spec: LatticeSpec) -> OperatorMatrix:
    """Phase operator with elements (-1)^(m-n) / (i (m-n)), zero on the diagonal.

    This is the infinite-lattice version of the Garrison-Wong/Galindo phase
    operator, truncated to the window; the quasi-momentum operator is this
    matrix divided by the lattice spacing.
    """
    d = _site_differences(spec)
    safe = np.where(d == 0, 1, d)
    theta = (-1.0) ** np.abs(d) / (1j * safe)
    theta[d == 0] = 0.0
    return OperatorMatrix(theta)


def build_quasi_momentum(spec: LatticeSpec) -> OperatorMatrix:
    """Quasi-momentum operator: phase operator divided by the spacing."""
    return OperatorMatrix(build_phase_operator(spec).matrix / spec.spacing)


def build_k_squared(spec: LatticeSpec) -> OperatorMatrix:
    """Squared quasi-momentum: a^2 <m|k^2|n> = pi^2/3 on the diagonal and
    2 (-1)^(m-n)/(m-n)^2 off it. Real symmetric."""
    d = _site_differences(spec)
    safe = np.where(d == 0, 1, d)
    k2 = 2.0 * (-1.0) ** np.abs(d) / safe.astype(float) ** 2
    k2[d == 0] = np.pi**2 / 3
    return OperatorMatrix(k2 / spec.spacing**2)


def build_translation(spec: LatticeSpec, shift: int) -> np.ndarray:
    """Translation by `shift` sites: <m+shift|T|m> = 1, boundary rows dropped.

    Returned as a raw ndarray: translations are not Hermitian for shift != 0,
    so they cannot carry the OperatorMatrix invariant. T_{-n} equals the
    transpose of T_n on the truncated window.
    """
    n = spec.n_sites
    if abs(shift) > 2 * spec.half_width:
        raise ValueError(f"translation by {shift} empties the {n}-site window")
    return np.eye(n, k=-shift)


def build_bloch_state(spec: LatticeSpec, k: float) -> StateVector:
    """Improper Bloch state, amplitudes sqrt(a/2pi) exp(i a k m) on the window.

    Not normalized to one: its norm grows with the window size, mirroring the
    delta-function normalization on the infinite lattice.
    """
    edge = spec.brillouin_edge
    if not (-edge < k <= edge):
        raise ValueError(f"k = {k} outside the first Brillouin zone (-pi/a, pi/a]")
    amp = np.sqrt(spec.spacing / (2 * np.pi)) * np.exp(1j * spec.spacing * k * spec.sites)
    return StateVector(amp, normalized=False)


def build_kinetic(spec: LatticeSpec, hop: Hopping) -> OperatorMatrix:
    """Kinetic operator for the chosen hopping.

    quadratic -> build_k_squared(spec)/2 exactly; cosine -> the
    nearest-neighbour form (I - (T_1 + T_-1)/2)/a^2; custom -> assembled
    band matrix -t0*I - sum t_n (T_n + T_n^dagger).
    """
    if hop.kind == "quadratic":
        return OperatorMatrix(build_k_squared(spec).matrix / 2)
    t0, amps = hop.terms(spec)
    n = spec.n_sites
    mat = -t0 * np.eye(n)
    for r, t in enumerate(amps, start=1):
        if t != 0.0:
            mat -= t * (np.eye(n, k=-r) + np.eye(n, k=r))
    return OperatorMatrix(mat)


def build_hamiltonian(spec: LatticeSpec, hop: Hopping, pot: Potential) -> OperatorMatrix:
    """Hamiltonian: kinetic term plus diagonal potential."""
    h = build_kinetic(spec, hop).matrix.copy()
    h[np.diag_indices_from(h)] += pot.values(spec)
    return OperatorMatrix(h)


def commutator(a, b) -> np.ndarray:
    """Matrix commutator AB - BA; accepts OperatorMatrix or ndarray."""
    am = a.matrix if isinstance(a, OperatorMatrix) else np.asarray(a)
    bm = b.matrix if isinstance(b, OperatorMatrix) else np.asarray(b)
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    return am @ bm - bm @ am


def expectation(psi: StateVector, op) -> complex:
    """<psi|A|psi> for a (not necessarily normalized) state."""
    mat = op.matrix if isinstance(op, OperatorMatrix) else np.asarray(op)
    amp = psi.amplitudes
    if mat.ndim == 1:
        return complex(np.vdot(amp, mat * amp))
    return complex(np.vdot(amp, mat @ amp))
