"""Exact finite-dimensional oracle on (Z_N)^k for the cloning pipeline.

Everything here is brute-force linear algebra on modular position bases:
generalized Bell states, shift-and-phase displacement operators, the
three-variable cloning permutation, partial traces, and Bell-basis
tomography of the copies' shift-error distributions. Shifts and phases are
stored as residues in {0, ..., n-1}; centered representatives and the grid
spacing sqrt(2 pi / n) appear only in the continuum-embedding helpers.
"""

from dataclasses import dataclass, field

import numpy as np

#: Default bound on n^k, keeping oracle runs desk-scale.
AMPLITUDE_CAP = 2**20

_NORM_TOL = 1e-12


def grid_spacing(n: int) -> float:
    """Continuum-embedding spacing: the value making the DFT self-dual."""
    return np.sqrt(2.0 * np.pi / n)


def centered_representatives(n: int) -> np.ndarray:
    """Residues 0..n-1 mapped to representatives in (-n/2, n/2]."""
    idx = np.arange(n)
    return np.where(idx <= n // 2, idx, idx - n)


@dataclass(frozen=True, eq=False)
class ModularState:
    """Pure state of k variables, each with modulus n.

    ``amps`` has shape (n,) * k, C order, so variable 1 is the slowest
    index; flattening gives the row-major amplitude vector.
    """

    n: int
    k: int
    amps: np.ndarray = field(repr=False)
    max_amplitudes: int = AMPLITUDE_CAP

    def __post_init__(self):
        if self.n < 2 or self.k < 1:
            raise ValueError("need modulus >= 2 and at least one variable")
        if self.n**self.k > self.max_amplitudes:
            raise ValueError(
                f"n^k = {self.n**self.k} exceeds the amplitude cap {self.max_amplitudes}"
            )
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (self.n,) * self.k:
            raise ValueError(f"amps must have shape {(self.n,) * self.k}")
        norm = np.sum(np.abs(amps) ** 2)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized: |amps|^2 sums to {norm}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Single-variable density matrix with validated physicality."""

    n: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.shape != (self.n, self.n):
            raise ValueError(f"matrix must have shape ({self.n}, {self.n})")
        if np.max(np.abs(matrix - matrix.conj().T)) > 1e-10:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(matrix).real - 1.0) > 1e-10:
            raise ValueError(f"density matrix trace is {np.trace(matrix):.12g}, not 1")
        if np.linalg.eigvalsh((matrix + matrix.conj().T) / 2.0).min() < -1e-9:
            raise ValueError("density matrix has a negative eigenvalue")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)


@dataclass(frozen=True, eq=False)
class DiscreteAmplitude:
    """Cloner amplitude over (shift, phase) residues, unit 2-norm."""

    n: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.n, self.n):
            raise ValueError(f"values must have shape ({self.n}, {self.n})")
        norm = np.sum(np.abs(values) ** 2)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"amplitude is not normalized: {norm}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------

def basis_state(n: int, positions: tuple[int, ...]) -> ModularState:
    """Computational basis state |x1, ..., xk>."""
    k = len(positions)
    amps = np.zeros((n,) * k, dtype=complex)
    amps[tuple(p % n for p in positions)] = 1.0
    return ModularState(n, k, amps)


def position_state(n: int, x: int) -> ModularState:
    return basis_state(n, (x,))


def momentum_state(n: int, p: int) -> ModularState:
    """Discrete Fourier vector (1/sqrt(n)) sum_x exp(2 pi i p x / n) |x>."""
    x = np.arange(n)
    amps = np.exp(2j * np.pi * (p % n) * x / n) / np.sqrt(n)
    return ModularState(n, 1, amps)


def random_state(n: int, k: int, rng: np.random.Generator) -> ModularState:
    amps = rng.standard_normal((n,) * k) + 1j * rng.standard_normal((n,) * k)
    return ModularState(n, k, amps / np.linalg.norm(amps.ravel()))


def gaussian_wavepacket(n: int, x0: int = 0) -> ModularState:
    """Periodized Gaussian wavepacket, the coherent-state stand-in.

    Position density matches the vacuum variance 1/2 under the
    ``grid_spacing(n)`` embedding; the peak sits at residue ``x0``.
    """
    delta = grid_spacing(n)
    c = centered_representatives(n).astype(float)
    acc = np.zeros(n)
    for wrap in range(-4, 5):
        acc += np.exp(-0.5 * ((c + wrap * n) * delta) ** 2)
    amps = np.roll(acc, x0 % n).astype(complex)
    return ModularState(n, 1, amps / np.linalg.norm(amps))


def bell_state(n: int, a: int, b: int) -> ModularState:
    """Generalized Bell state of two variables.

    Amplitude exp(2 pi i b x / n) / sqrt(n) on the pairs (x, x + a mod n).
    The n^2 states with 0 <= a, b < n form an orthonormal basis of the
    joint space.
    """
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"shift and phase must lie in 0..{n-1}, got ({a}, {b})")
    amps = np.zeros((n, n), dtype=complex)
    x = np.arange(n)
    amps[x, (x + a) % n] = np.exp(2j * np.pi * b * x / n) / np.sqrt(n)
    return ModularState(n, 2, amps)


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

def weyl_displace(state: ModularState, variable: int, a: int, b: int) -> ModularState:
    """Apply the displacement |x> -> exp(2 pi i b x / n) |x + a mod n> to one variable.

    Displacing variable 2 of the (0, 0) Bell state by (a, b) yields the
    (a, b) Bell state.
    """
    if not 0 <= variable < state.k:
        raise ValueError(f"variable {variable} out of range for k={state.k}")
    n = state.n
    phase = np.exp(2j * np.pi * b * np.arange(n) / n)
    shape = [1] * state.k
    shape[variable] = n
    amps = state.amps * phase.reshape(shape)
    amps = np.roll(amps, a, axis=variable)
    return ModularState(n, state.k, amps)


def weyl_matrix(n: int, a: int, b: int) -> np.ndarray:
    """Matrix of the single-variable displacement operator."""
    m = np.zeros((n, n), dtype=complex)
    x = np.arange(n)
    m[(x + a) % n, x] = np.exp(2j * np.pi * b * x / n)
    return m


def ancilla_state(amplitude: DiscreteAmplitude) -> ModularState:
    """Entangled blank-plus-ancilla pair encoding the cloner amplitude.

    Superposition of Bell states with shift a and phase -b, weighted by the
    amplitude: the state sum_{a,b} f(a, b) |bell(a, -b)>. Orthonormality of
    the Bell basis keeps it normalized.
    """
    n = amplitude.n
    amps = np.zeros((n, n), dtype=complex)
    y = np.arange(n)
    # sum_b f(a, b) exp(-2 pi i b y / n) is a row-wise DFT
    rows = np.fft.fft(amplitude.values, axis=1) / np.sqrt(n)
    for a in range(n):
        amps[y, (y + a) % n] += rows[a]
    return ModularState(n, 2, amps)


def cloner_apply(state: ModularState) -> ModularState:
    """Apply the cloning permutation to a three-variable state.

    Basis action |x2, x3, x4> -> |x2 + x4 - x3, x2 + x3, x2 + x4> (mod n),
    the composition of a modular add of variable 2 onto variables 3 and 4
    followed by adding the difference x4 - x3 back onto variable 2. Being a
    permutation of the basis, it is exactly unitary.
    """
    if state.k != 3:
        raise ValueError("cloner_apply expects input, blank, and ancilla variables")
    n = state.n
    x2, x3, x4 = np.ogrid[0:n, 0:n, 0:n]
    out = np.zeros_like(state.amps)
    out[(x2 + x4 - x3) % n, (x2 + x3) % n, (x2 + x4) % n] = state.amps
    return ModularState(n, 3, out)


def partial_trace(state: ModularState, keep: int) -> DensityOperator:
    """Density operator of one variable, tracing out all the others."""
    if not 0 <= keep < state.k:
        raise ValueError(f"variable {keep} out of range for k={state.k}")
    n = state.n
    m = np.moveaxis(state.amps, keep, 0).reshape(n, -1)
    return DensityOperator(n, m @ m.conj().T)


def symplectic_dft(amplitude: DiscreteAmplitude) -> DiscreteAmplitude:
    """Dual amplitude g(c, d) = (1/n) sum exp(2 pi i (d a - c b)/n) f(a, b).

    Exactly unitary and an exact involution on the residue grid.
    """
    g = np.transpose(np.fft.fft(np.fft.ifft(amplitude.values, axis=0), axis=1))
    return DiscreteAmplitude(amplitude.n, g)


# ---------------------------------------------------------------------------
# cloning pipeline
# ---------------------------------------------------------------------------

def clone(
    input_state: ModularState, amplitude: DiscreteAmplitude
) -> tuple[DensityOperator, DensityOperator]:
    """Run the cloner on a single-variable input and return both copies.

    Builds input x ancilla pair, applies the cloning permutation, and
    partial-traces. Copy a is the mixture of displaced inputs weighted by
    |f(a, b)|^2; copy b carries the weights |g(a, b)|^2 of the dual
    amplitude.

    Returns:
        (rho_a, rho_b) density operators of the two copies.
    """
    if input_state.k != 1:
        raise ValueError("clone expects a single-variable input state")
    if input_state.n != amplitude.n:
        raise ValueError(
            f"modulus mismatch: state n={input_state.n}, amplitude n={amplitude.n}"
        )
    pair = ancilla_state(amplitude)
    joint = ModularState(
        input_state.n,
        3,
        np.einsum("i,jk->ijk", input_state.amps, pair.amps),
    )
    out = cloner_apply(joint)
    return partial_trace(out, 0), partial_trace(out, 1)


def error_distribution(
    input_state: ModularState, amplitude: DiscreteAmplitude, copy: str = "a"
) -> np.ndarray:
    """Tomography of one copy's shift-error law P(a, b).

    A reference variable is prepared maximally entangled with the cloner
    input (the (0, 0) Bell pair, which purifies any input), the cloner runs,
    and the reference-copy pair is measured in the Bell basis. The outcome
    distribution is exactly |f(a, b)|^2 for copy a and exactly the squared
    dual amplitude for copy b, independent of the state passed in; the
    argument fixes the modulus and is validated only.

    Returns:
        Real (n, n) array of probabilities indexed by (shift, phase).
    """
    if copy not in ("a", "b"):
        raise ValueError(f"copy must be 'a' or 'b', got {copy!r}")
    if input_state.k != 1 or input_state.n != amplitude.n:
        raise ValueError("input must be single-variable with matching modulus")
    n = amplitude.n
    if n**4 > input_state.max_amplitudes:
        raise ValueError(f"n^4 = {n**4} exceeds the amplitude cap")

    reference_pair = bell_state(n, 0, 0)
    joint = np.einsum("ij,kl->ijkl", reference_pair.amps, ancilla_state(amplitude).amps)
    x1, x2, x3, x4 = np.ogrid[0:n, 0:n, 0:n, 0:n]
    out = np.zeros_like(joint)
    out[x1, (x2 + x4 - x3) % n, (x2 + x3) % n, (x2 + x4) % n] = joint

    pair_axis = 1 if copy == "a" else 2
    phi = np.moveaxis(out, pair_axis, 1)
    probs = np.zeros((n, n))
    x = np.arange(n)
    for a in range(n):
        diagonal = phi[x, (x + a) % n]  # shape (n, rest...)
        overlaps = np.fft.fft(diagonal, axis=0) / np.sqrt(n)
        probs[a] = np.sum(
            np.abs(overlaps) ** 2, axis=tuple(range(1, overlaps.ndim))
        )
    return probs


def gaussian_amplitude(n: int) -> DiscreteAmplitude:
    """Sampled isotropic Gaussian amplitude, the universal cloner's.

    exp(-((a delta)^2 + (b delta)^2)/2) on centered representatives with
    delta = grid_spacing(n), normalized. Self-dual under symplectic_dft up
    to the exponentially small grid-truncation error.
    """
    if n < 4:
        raise ValueError(f"need n >= 4 for a resolvable Gaussian, got {n}")
    delta = grid_spacing(n)
    c = centered_representatives(n).astype(float)
    line = np.exp(-0.5 * (c * delta) ** 2)
    values = np.outer(line, line).astype(complex)
    return DiscreteAmplitude(n, values / np.linalg.norm(values.ravel()))


def delta_amplitude(n: int, a: int = 0, b: int = 0) -> DiscreteAmplitude:
    """Point-mass amplitude: copy a comes out perfect (up to a displacement)."""
    values = np.zeros((n, n), dtype=complex)
    values[a % n, b % n] = 1.0
    return DiscreteAmplitude(n, values)


def random_amplitude(n: int, rng: np.random.Generator) -> DiscreteAmplitude:
    values = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return DiscreteAmplitude(n, values / np.linalg.norm(values.ravel()))


def fidelity(rho: DensityOperator, psi: ModularState) -> float:
    """Overlap <psi| rho |psi> of a density operator with a pure state."""
    if psi.k != 1 or psi.n != rho.n:
        raise ValueError("fidelity needs a single-variable state of matching modulus")
    value = psi.amps.conj() @ rho.matrix @ psi.amps
    return float(value.real)
