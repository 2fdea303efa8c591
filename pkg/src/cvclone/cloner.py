"""Cloner amplitude families and their error-complementarity properties.

A cloner is specified by a complex amplitude over phase-space shifts. The
squared modulus of the amplitude is the (x, p) shift-error law imprinted on
the first copy; the squared modulus of its two-dimensional symplectic
Fourier transform governs the second copy. Complementarity between the
copies takes the form of two uncertainty products, each bounded below by
1/4, and the isotropic Gaussian amplitude is the unique self-dual member
that treats every rotated quadrature alike.
"""

import warnings
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .gaussian import PrecisionWarning, ShiftDistribution

_NORM_TOL = 1e-9


@dataclass(frozen=True)
class AnalyticCloner:
    """Gaussian cloner amplitude, parametrized by the copy-a shift variances.

    The amplitude is a centered real Gaussian whose squared modulus has
    variances ``va_x`` and ``va_p`` along the two axes. The copy-b variances
    follow from the Gaussian Fourier-pair relation and are exposed as
    properties; the family saturates both uncertainty products at 1/4.
    """

    va_x: float
    va_p: float

    def __post_init__(self):
        for name, v in (("va_x", self.va_x), ("va_p", self.va_p)):
            if not (np.isfinite(v) and v > 0):
                raise ValueError(
                    f"{name} must be finite and > 0, got {v} "
                    "(delta and plane-wave cloners exist only as limits)"
                )

    @property
    def variant(self) -> str:
        return "analytic-gaussian"

    @property
    def vb_x(self) -> float:
        return 0.25 / self.va_p

    @property
    def vb_p(self) -> float:
        return 0.25 / self.va_x


@dataclass(frozen=True, eq=False)
class SampledCloner:
    """Cloner amplitude sampled on an n x n centered square grid.

    Attributes:
        n: grid size per axis.
        delta: grid spacing; ``sqrt(2 pi / n)`` makes the symplectic
            transform exactly unitary on the grid.
        amps: complex samples, normalized so sum(|amps|^2) * delta^2 = 1.
    """

    n: int
    delta: float
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("grid size must be at least 2")
        if not (np.isfinite(self.delta) and self.delta > 0):
            raise ValueError(f"delta must be finite and > 0, got {self.delta}")
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (self.n, self.n):
            raise ValueError(f"amps must have shape ({self.n}, {self.n})")
        norm = np.sum(np.abs(amps) ** 2) * self.delta**2
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"amplitude grid is not normalized: {norm}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def variant(self) -> str:
        return "sampled-grid"

    def coords(self) -> np.ndarray:
        """Centered grid coordinates, representatives in (-n/2, n/2] * delta."""
        idx = np.arange(self.n)
        return np.where(idx <= self.n // 2, idx, idx - self.n) * self.delta


ClonerSpec = Union[AnalyticCloner, SampledCloner]


@dataclass(frozen=True)
class UncertaintyReport:
    """The two cross-copy error products, in units of hbar^2 = 1."""

    prod_xa_pb: float
    prod_xb_pa: float


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def universal_cloner() -> AnalyticCloner:
    """The isotropic Gaussian cloner: shift variance 1/2 on both axes.

    Self-dual, so both copies see the same error law, and every quadrature
    c x + d p is copied with the same variance-1/2 Gaussian error.
    """
    return AnalyticCloner(0.5, 0.5)


def squeezed_cloner(sigma: float) -> AnalyticCloner:
    """Cloner matched to sigma-squeezed inputs.

    Copy-a variances (sigma^2/2, 1/(2 sigma^2)); reduces to the universal
    cloner at sigma = 1.
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    return AnalyticCloner(sigma**2 / 2.0, 1.0 / (2.0 * sigma**2))


def default_spacing(n: int) -> float:
    """Grid spacing making the discrete symplectic transform unitary."""
    return np.sqrt(2.0 * np.pi / n)


def sample_cloner(spec: AnalyticCloner, n: int, delta: float | None = None) -> SampledCloner:
    """Sample an analytic amplitude onto an n x n grid.

    Args:
        spec: analytic family member to sample.
        n: grid size per axis.
        delta: spacing; defaults to the self-dual spacing sqrt(2 pi / n).
    """
    if delta is None:
        delta = default_spacing(n)
    idx = np.arange(n)
    c = np.where(idx <= n // 2, idx, idx - n) * delta
    fx = np.exp(-(c**2) / (4.0 * spec.va_x))
    fp = np.exp(-(c**2) / (4.0 * spec.va_p))
    amps = np.outer(fx, fp).astype(complex)
    amps /= np.sqrt(np.sum(np.abs(amps) ** 2)) * delta
    return SampledCloner(n, delta, amps)


def random_sampled_cloner(
    n: int, rng: np.random.Generator, delta: float | None = None
) -> SampledCloner:
    """Normalized complex Gaussian-noise amplitude grid, for property scans."""
    if delta is None:
        delta = default_spacing(n)
    amps = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    amps /= np.sqrt(np.sum(np.abs(amps) ** 2)) * delta
    return SampledCloner(n, delta, amps)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _symplectic_grid_transform(amps: np.ndarray, coords: np.ndarray, delta: float) -> np.ndarray:
    # g(x, p) = (1/2pi) sum_{x', p'} exp(i (p x' - x p')) f(x', p') delta^2,
    # evaluated on the same centered grid via two 1-D transforms.
    plus = np.exp(1j * np.outer(coords, coords))
    return (delta**2 / (2.0 * np.pi)) * (plus.conj() @ (plus @ amps).T)


def dual_amplitude(spec: ClonerSpec) -> ClonerSpec:
    """Amplitude governing the second copy: the symplectic Fourier dual.

    For the analytic family this exchanges the roles of the axes through the
    Gaussian Fourier-pair width relation, va_x -> 1/(4 va_p) and
    va_p -> 1/(4 va_x). For sampled grids the exact transform kernel
    exp(i (p x' - x p'))/2pi is applied on the same grid and the result is
    renormalized. Applying the dual twice returns the original amplitude.

    Warns:
        PrecisionWarning: if a sampled grid is too coarse for the transform
            to preserve normalization to 1e-6.
    """
    if isinstance(spec, AnalyticCloner):
        return AnalyticCloner(0.25 / spec.va_p, 0.25 / spec.va_x)
    g = _symplectic_grid_transform(spec.amps, spec.coords(), spec.delta)
    norm = np.sum(np.abs(g) ** 2) * spec.delta**2
    if abs(norm - 1.0) > 1e-6:
        warnings.warn(
            f"sampled grid too coarse: dual normalization drifted to {norm:.8g}",
            PrecisionWarning,
            stacklevel=2,
        )
    return SampledCloner(spec.n, spec.delta, g / np.sqrt(norm))


def _grid_marginal_variances(spec: SampledCloner) -> tuple[float, float]:
    weights = np.abs(spec.amps) ** 2 * spec.delta**2
    c = spec.coords()
    wx = weights.sum(axis=1)
    wp = weights.sum(axis=0)
    vx = float(np.sum(wx * c**2) - np.sum(wx * c) ** 2)
    vp = float(np.sum(wp * c**2) - np.sum(wp * c) ** 2)
    return vx, vp


def marginals(spec: ClonerSpec, copy: str = "a") -> ShiftDistribution:
    """Per-axis shift-error variances seen by one copy.

    Args:
        spec: cloner amplitude.
        copy: "a" for the amplitude itself, "b" for its symplectic dual.

    Returns:
        The marginal error law as a :class:`ShiftDistribution`.
    """
    if copy not in ("a", "b"):
        raise ValueError(f"copy must be 'a' or 'b', got {copy!r}")
    if isinstance(spec, AnalyticCloner):
        if copy == "a":
            return ShiftDistribution(spec.va_x, spec.va_p)
        return ShiftDistribution(spec.vb_x, spec.vb_p)
    target = spec if copy == "a" else dual_amplitude(spec)
    vx, vp = _grid_marginal_variances(target)
    return ShiftDistribution(vx, vp)


def uncertainty_products(spec: ClonerSpec) -> UncertaintyReport:
    """The two cross-copy variance products, each bounded below by 1/4."""
    a = marginals(spec, "a")
    b = marginals(spec, "b")
    return UncertaintyReport(prod_xa_pb=a.vx * b.vp, prod_xb_pa=b.vx * a.vp)


def rotated_error_variance(spec: ClonerSpec, c: float, d: float, copy: str = "a") -> float:
    """Shift variance of the rotated quadrature u = c x + d p for one copy.

    The x and p shifts are independent, so the variance is the quadratic
    form c^2 vx + d^2 vp. Requires c^2 + d^2 = 1.
    """
    if abs(c * c + d * d - 1.0) > 1e-9:
        raise ValueError(f"(c, d) must be normalized, got c^2 + d^2 = {c*c + d*d}")
    law = marginals(spec, copy)
    return c * c * law.vx + d * d * law.vp
