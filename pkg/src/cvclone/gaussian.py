"""Analytic phase-space engine for Gaussian states of bosonic modes.

States are parametrized by a mean vector and covariance matrix over the
quadratures (x1, p1, x2, p2, ...), in dimensionless units with hbar = 1 and
vacuum variance 1/2 per quadrature. The cloning channel enters as additive
Gaussian shift noise: means are untouched and per-quadrature variances grow
by the noise variances, which is the phase-space picture of convolving the
Wigner function with the shift-error law.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

SQRT2 = np.sqrt(2.0)

#: Minimum symplectic eigenvalue of a physical covariance matrix.
VACUUM_VARIANCE = 0.5

_SYMMETRY_TOL = 1e-12
_PHYSICALITY_TOL = 1e-9


class PrecisionWarning(UserWarning):
    """Raised when a numerical result is still returned but has degraded accuracy."""


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a 2n x 2n covariance matrix.

    Args:
        cov: covariance matrix in (x1, p1, ...) quadrature ordering.

    Returns:
        Array of the n symplectic eigenvalues, sorted ascending. Physical
        states have all eigenvalues >= 1/2 in this convention.
    """
    n = cov.shape[0] // 2
    omega = np.zeros((2 * n, 2 * n))
    for k in range(n):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    eigs = np.linalg.eigvals(1j * omega @ cov)
    nu = np.sort(np.abs(eigs.real))
    # eigenvalues come in +/- pairs; keep one representative of each
    return nu[::2]


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Gaussian state of ``n_modes`` bosonic modes.

    Attributes:
        n_modes: number of modes.
        mean: length 2n vector of quadrature expectations (x1, p1, ...).
        cov: 2n x 2n real symmetric covariance matrix.
    """

    n_modes: int
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError("n_modes must be a positive integer")
        mean = np.array(self.mean, dtype=float)
        cov = np.array(self.cov, dtype=float)
        d = 2 * self.n_modes
        if mean.shape != (d,):
            raise ValueError(f"mean must have shape ({d},), got {mean.shape}")
        if cov.shape != (d, d):
            raise ValueError(f"cov must have shape ({d}, {d}), got {cov.shape}")
        if np.max(np.abs(cov - cov.T)) > _SYMMETRY_TOL:
            raise ValueError("covariance matrix is not symmetric")
        nu_min = symplectic_eigenvalues(cov).min()
        if nu_min < VACUUM_VARIANCE - _PHYSICALITY_TOL:
            raise ValueError(
                f"covariance violates the uncertainty principle "
                f"(minimal symplectic eigenvalue {nu_min:.6g} < 1/2)"
            )
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)


@dataclass(frozen=True)
class ShiftDistribution:
    """Zero-mean bivariate Gaussian law for independent (x, p) shift errors.

    Attributes:
        vx: variance of the position shift.
        vp: variance of the momentum shift.
    """

    vx: float
    vp: float

    def __post_init__(self):
        for name, v in (("vx", self.vx), ("vp", self.vp)):
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {v}")


@dataclass(frozen=True)
class GridSpec:
    """Rectangular phase-space sampling window."""

    x_min: float = -8.0
    x_max: float = 8.0
    p_min: float = -8.0
    p_max: float = 8.0
    nx: int = 257
    np: int = 257

    def __post_init__(self):
        if self.nx < 2 or self.np < 2:
            raise ValueError("grid needs at least 2 points per axis")
        if self.x_min >= self.x_max or self.p_min >= self.p_max:
            raise ValueError("grid bounds must satisfy min < max")

    def x_coords(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def p_coords(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.np)

    @property
    def cell_area(self) -> float:
        dx = (self.x_max - self.x_min) / (self.nx - 1)
        dp = (self.p_max - self.p_min) / (self.np - 1)
        return dx * dp


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """Sampled real-valued phase-space density on a rectangular grid.

    ``values[i, j]`` holds the density at ``(x_coords()[i], p_coords()[j])``.
    """

    x_min: float
    x_max: float
    p_min: float
    p_max: float
    nx: int
    np: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.nx, self.np):
            raise ValueError(
                f"values must have shape ({self.nx}, {self.np}), got {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def x_coords(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def p_coords(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.np)

    @property
    def cell_area(self) -> float:
        dx = (self.x_max - self.x_min) / (self.nx - 1)
        dp = (self.p_max - self.p_min) / (self.np - 1)
        return dx * dp

    def total_mass(self) -> float:
        """Riemann-sum normalization of the grid."""
        return float(self.values.sum() * self.cell_area)

    def moments(self) -> tuple[float, float, float, float]:
        """Riemann-sum estimates of (mean_x, mean_p, var_x, var_p)."""
        x = self.x_coords()[:, None]
        p = self.p_coords()[None, :]
        w = self.values * self.cell_area
        mx = float(np.sum(w * x))
        mp = float(np.sum(w * p))
        vx = float(np.sum(w * (x - mx) ** 2))
        vp = float(np.sum(w * (p - mp) ** 2))
        return mx, mp, vx, vp


# ---------------------------------------------------------------------------
# state constructors
# ---------------------------------------------------------------------------

def coherent(alpha_re: float, alpha_im: float) -> GaussianState:
    """Coherent state with amplitude ``alpha = alpha_re + i alpha_im``.

    The quadrature means are (sqrt(2) Re alpha, sqrt(2) Im alpha) and the
    covariance is the vacuum one, diag(1/2, 1/2).
    """
    mean = np.array([SQRT2 * alpha_re, SQRT2 * alpha_im])
    return GaussianState(1, mean, np.diag([0.5, 0.5]))


def squeezed(sigma: float, beta_re: float, beta_im: float) -> GaussianState:
    """Quadrature-squeezed state with squeezing parameter ``sigma``.

    Eigenstate of (x/sigma + i sigma p)/sqrt(2) with eigenvalue
    ``beta_re + i beta_im``; covariance diag(sigma^2/2, 1/(2 sigma^2)).

    Args:
        sigma: squeezing parameter, > 0 (sigma = 1 is the coherent case).
        beta_re: real part of the eigenvalue.
        beta_im: imaginary part of the eigenvalue.
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    mean = np.array([SQRT2 * sigma * beta_re, SQRT2 * beta_im / sigma])
    cov = np.diag([sigma**2 / 2.0, 1.0 / (2.0 * sigma**2)])
    return GaussianState(1, mean, cov)


# ---------------------------------------------------------------------------
# channels
# ---------------------------------------------------------------------------

def displace(state: GaussianState, mode: int, dx: float, dp: float) -> GaussianState:
    """Shift the (x, p) mean of one mode; the covariance is unchanged.

    Phases of the underlying displacement operator cancel at the
    density-operator level, so composing two displacements equals the single
    summed one.
    """
    if not 0 <= mode < state.n_modes:
        raise ValueError(f"mode {mode} out of range for {state.n_modes}-mode state")
    mean = state.mean.copy()
    mean[2 * mode] += dx
    mean[2 * mode + 1] += dp
    return GaussianState(state.n_modes, mean, state.cov)


def apply_cloner_noise(state: GaussianState, noise: ShiftDistribution) -> GaussianState:
    """Act with the cloning channel on a single-mode Gaussian state.

    Each cloner output is a mixture of displaced inputs with displacement law
    ``noise``; for Gaussian inputs that mixture is again Gaussian with the
    same mean and per-quadrature variances increased by (vx, vp).
    """
    if state.n_modes != 1:
        raise ValueError("cloner noise acts on single-mode states")
    cov = state.cov + np.diag([noise.vx, noise.vp])
    return GaussianState(1, state.mean, cov)


# ---------------------------------------------------------------------------
# fidelities
# ---------------------------------------------------------------------------

def fidelity_coherent_vs_noisy(
    alpha_re: float, alpha_im: float, noise: ShiftDistribution
) -> float:
    """Overlap of a coherent state with its noisy clone.

    Evaluates the Gaussian overlap integral of the shift law against
    exp(-(x^2 + p^2)/2) in closed form:

        F = 1 / sqrt((1 + vx) (1 + vp))

    The value is independent of alpha; the arguments are kept because the
    channel is displacement-covariant and callers sweep over input states.
    """
    del alpha_re, alpha_im
    return 1.0 / np.sqrt((1.0 + noise.vx) * (1.0 + noise.vp))


def fidelity_squeezed_vs_noisy(sigma: float, noise: ShiftDistribution) -> float:
    """Overlap of a sigma-squeezed state with its noisy clone.

        F = 1 / sqrt((1 + vx/sigma^2) (1 + vp sigma^2))

    Equals 2/3 exactly for the matched noise vx = sigma^2/2,
    vp = 1/(2 sigma^2), for every sigma.
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    s2 = sigma * sigma
    return 1.0 / np.sqrt((1.0 + noise.vx / s2) * (1.0 + noise.vp * s2))


# ---------------------------------------------------------------------------
# Wigner grids
# ---------------------------------------------------------------------------

def wigner_of_gaussian(state: GaussianState, grid: GridSpec = DEFAULT_GRID) -> WignerGrid:
    """Sample the Wigner function of a single-mode Gaussian state.

    The Wigner function of a Gaussian state is the normalized bivariate
    normal density with the state's mean and covariance.

    Args:
        state: single-mode state.
        grid: sampling window; should cover at least 6 standard deviations
            of the state for the grid mass to be meaningful.

    Returns:
        The sampled density as a :class:`WignerGrid`.

    Raises:
        ValueError: if the state is multimode or its covariance is not
            positive definite.
    """
    if state.n_modes != 1:
        raise ValueError("wigner_of_gaussian expects a single-mode state")
    cov = state.cov
    det = cov[0, 0] * cov[1, 1] - cov[0, 1] * cov[1, 0]
    if det <= 0 or cov[0, 0] <= 0:
        raise ValueError("covariance matrix is degenerate")
    inv = np.array([[cov[1, 1], -cov[0, 1]], [-cov[1, 0], cov[0, 0]]]) / det
    dx = grid.x_coords()[:, None] - state.mean[0]
    dp = grid.p_coords()[None, :] - state.mean[1]
    quad = inv[0, 0] * dx * dx + 2.0 * inv[0, 1] * dx * dp + inv[1, 1] * dp * dp
    values = np.exp(-0.5 * quad) / (2.0 * np.pi * np.sqrt(det))
    return WignerGrid(
        grid.x_min, grid.x_max, grid.p_min, grid.p_max, grid.nx, grid.np, values
    )


def convolve_wigner(w: WignerGrid, noise: ShiftDistribution) -> WignerGrid:
    """Convolve a Wigner grid with the Gaussian shift-error kernel.

    This is the phase-space action of the cloning channel on arbitrary
    states: the output Wigner function is the input one spread out by the
    shift law. The convolution runs over zero-padded FFTs, with padding of
    six kernel standard deviations per axis so that periodic wrap-around is
    negligible; the sampled kernel is renormalized to unit discrete mass.

    Args:
        w: input grid (the kernel is sampled with the same spacing).
        noise: shift-error law; zero variances act as exact deltas.

    Returns:
        Output grid with identical geometry.

    Warns:
        PrecisionWarning: when the kernel is wider than the grid margins
            (4 kernel standard deviations exceeding half the grid span),
            in which case mass leaks off the window.
    """
    dx = (w.x_max - w.x_min) / (w.nx - 1)
    dp = (w.p_max - w.p_min) / (w.np - 1)
    half_x = (w.x_max - w.x_min) / 2.0
    half_p = (w.p_max - w.p_min) / 2.0
    if 4.0 * np.sqrt(noise.vx) > half_x or 4.0 * np.sqrt(noise.vp) > half_p:
        warnings.warn(
            "shift kernel wider than the grid margins; convolution loses mass",
            PrecisionWarning,
            stacklevel=2,
        )

    pad_x = int(np.ceil(6.0 * np.sqrt(noise.vx) / dx)) + 1
    pad_p = int(np.ceil(6.0 * np.sqrt(noise.vp) / dp)) + 1
    big_x = w.nx + pad_x
    big_p = w.np + pad_p

    off_x = np.fft.fftfreq(big_x, d=1.0 / big_x) * dx
    off_p = np.fft.fftfreq(big_p, d=1.0 / big_p) * dp
    kx = np.exp(-off_x**2 / (2.0 * noise.vx)) if noise.vx > 0 else (off_x == 0.0) * 1.0
    kp = np.exp(-off_p**2 / (2.0 * noise.vp)) if noise.vp > 0 else (off_p == 0.0) * 1.0
    kernel = np.outer(kx, kp)
    kernel /= kernel.sum() * dx * dp

    padded = np.zeros((big_x, big_p))
    padded[: w.nx, : w.np] = w.values
    product = np.fft.rfft2(padded) * np.fft.rfft2(kernel)
    out = np.fft.irfft2(product, s=(big_x, big_p))[: w.nx, : w.np] * (dx * dp)
    return WignerGrid(w.x_min, w.x_max, w.p_min, w.p_max, w.nx, w.np, out)
