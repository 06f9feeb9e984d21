"""Desk-scale numerical checks of the separable-energy bound.

Everything here is deliberately independent of the closed forms in
:mod:`bosewitness.witness`. A 1D box is discretized with the three-point
Laplacian and hard walls; its spectrum comes from Sturm-sequence bisection,
product states over spatial cells are sampled and minimized by brute force,
and the transition temperature is recovered by bisection on U(T).
"""

from __future__ import annotations

import itertools
import math
import sys
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .constants import CODATA2018, PhysicalConstants
from .errors import ConvergenceFailure, DomainError, NoCrossing, TooCoarse
from .gas import GasSpec, internal_energy, internal_energy_condensed
from .witness import Partition, lowest_separable_energy

MIN_GRID_POINTS = 16
RESIDUAL_LIMIT = 1e-10


# ---------------------------------------------------------------------------
# symmetric tridiagonal eigenvalues


def sturm_count(diag, off, x: float) -> int:
    """Number of eigenvalues below x of the symmetric tridiagonal (diag, off).

    The LDL^T pivots q_i are carried as r_i = q_i - |off_i|. For diagonally
    dominant matrices such as the discrete Laplacian the r_i stay small and
    positive and are formed without cancellation, so the smallest eigenvalues
    come out to high relative accuracy rather than to eps * ||T||.
    """
    n = len(diag)
    a = [abs(e) for e in off] + [0.0]
    prev_a = 0.0
    r = 0.0
    q = 1.0
    count = 0
    for i in range(n):
        excess = diag[i] - prev_a - a[i]
        if i == 0:
            r = excess - x
        else:
            r = prev_a * (r / q) + excess - x
        q = a[i] + r
        if q < 0:
            count += 1
        elif q == 0:
            # exact zero pivot: perturb it (never below the smallest normal
            # double, or subnormal input underflows it) and keep r consistent
            q = max(1e-15 * (a[i] or abs(diag[i]) or 1.0), sys.float_info.min)
            r = q - a[i]
        prev_a = a[i]
    return count


def bisect_eigenvalue(diag, off, k: int) -> float:
    """The k-th smallest eigenvalue (k >= 1) by Sturm-sequence bisection."""
    n = len(diag)
    if not 1 <= k <= n:
        raise DomainError(f"eigenvalue index {k} outside 1..{n}")
    # Gershgorin interval
    a = [abs(e) for e in off]
    radius = [(a[i - 1] if i > 0 else 0.0) + (a[i] if i < n - 1 else 0.0) for i in range(n)]
    lo = min(d - r for d, r in zip(diag, radius))
    hi = max(d + r for d, r in zip(diag, radius))
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= 2e-16 * max(abs(lo), abs(hi)):
            break
        if sturm_count(diag, off, mid) >= k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _tridiag_matvec(diag: np.ndarray, off: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = diag * v
    out[..., 1:] += off * v[..., :-1]
    out[..., :-1] += off * v[..., 1:]
    return out


def _banded(diag: np.ndarray, off: np.ndarray, shift: float) -> np.ndarray:
    ab = np.zeros((3, len(diag)))
    ab[0, 1:] = off
    ab[1] = diag - shift
    ab[2, :-1] = off
    return ab


def inverse_iteration(diag, off, eigenvalue: float, steps: int = 4) -> tuple[np.ndarray, float]:
    """Unit eigenvector for a known eigenvalue, and its relative residual.

    The residual is ||T v - lambda v|| / ||T||_inf, the backward error.
    """
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    n = len(diag)
    # shift just below the eigenvalue so the solve stays nonsingular
    ab = _banded(diag, off, eigenvalue - 1e-10 * max(abs(eigenvalue), 1e-300))
    # a start vector with no special symmetry
    v = np.linspace(1.0, 2.0, n) + np.sin(np.arange(n) * 0.7)
    v /= np.linalg.norm(v)
    for _ in range(steps):
        try:
            y = solve_banded((1, 1), ab, v, check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceFailure(f"inverse iteration broke down: {exc}") from None
        v = y / np.linalg.norm(y)
    scale = np.max(np.abs(diag) + np.r_[np.abs(off), 0] + np.r_[0, np.abs(off)])
    residual = np.linalg.norm(_tridiag_matvec(diag, off, v) - eigenvalue * v) / scale
    if v.sum() < 0:
        v = -v
    return v, float(residual)


# ---------------------------------------------------------------------------
# discretized box


@dataclass(frozen=True)
class DiscreteBox:
    """n interior grid points with spacing h = L / (n + 1) and walls at 0 and L."""

    n: int
    length: float = 1.0
    mass: float = 1.0
    constants: PhysicalConstants = CODATA2018

    def __post_init__(self):
        if self.n < MIN_GRID_POINTS:
            raise TooCoarse(f"need at least {MIN_GRID_POINTS} grid points, got {self.n}")
        if not (self.length > 0 and self.mass > 0):
            raise DomainError("box length and mass must be positive")

    @property
    def spacing(self) -> float:
        return self.length / (self.n + 1)

    @property
    def kinetic_scale(self) -> float:
        """hbar^2 / (2 m h^2): the off-diagonal magnitude of the kinetic operator."""
        return self.constants.hbar**2 / (2 * self.mass * self.spacing**2)

    def grid(self) -> np.ndarray:
        return self.spacing * np.arange(1, self.n + 1)

    def operator(self) -> tuple[np.ndarray, np.ndarray]:
        """(diagonal, off-diagonal) of -hbar^2/(2m) d^2/dx^2 with Dirichlet walls."""
        c = self.kinetic_scale
        return np.full(self.n, 2 * c), np.full(self.n - 1, -c)

    def continuum_level(self, i: int) -> float:
        """hbar^2 pi^2 i^2 / (2 m L^2), i >= 1."""
        return (self.constants.hbar * math.pi * i) ** 2 / (2 * self.mass * self.length**2)

    def exact_discrete_level(self, i: int) -> float:
        """Closed-form eigenvalue (hbar^2 / (m h^2)) (1 - cos(pi i h / L)), i >= 1."""
        return 4 * self.kinetic_scale * math.sin(math.pi * i / (2 * (self.n + 1))) ** 2

    def subset_slice(self, M: int, j: int) -> slice:
        """Grid indices strictly inside cell j (1-based) of an M-cell partition.

        Cell walls must sit on grid points, so n + 1 must be divisible by M.
        """
        if M < 1 or not 1 <= j <= M:
            raise DomainError(f"cell index {j} outside 1..{M}")
        if (self.n + 1) % M:
            raise DomainError(f"n + 1 = {self.n + 1} grid intervals do not split into {M} cells")
        width = (self.n + 1) // M
        if width - 1 < MIN_GRID_POINTS:
            raise TooCoarse(
                f"cell holds {width - 1} grid points, need at least {MIN_GRID_POINTS}"
            )
        start = (j - 1) * width  # 0-based index of grid point (j-1)*width + 1
        return slice(start, start + width - 1)


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray  # J, ascending
    residuals: np.ndarray
    eigenvectors: np.ndarray  # one unit vector per row


def box_spectrum(box: DiscreteBox, k: int) -> SpectrumResult:
    """The k lowest levels of the discretized box.

    Raises
    ------
    ConvergenceFailure
        If any eigenpair has backward error above 1e-10.
    """
    if not 1 <= k <= box.n // 4:
        raise DomainError(f"k must lie in 1..n/4 = {box.n // 4}, got {k}")
    diag, off = box.operator()
    dl, ol = diag.tolist(), off.tolist()
    values, residuals, vectors = [], [], []
    for i in range(1, k + 1):
        lam = bisect_eigenvalue(dl, ol, i)
        vec, res = inverse_iteration(diag, off, lam)
        if res > RESIDUAL_LIMIT:
            raise ConvergenceFailure(f"eigenpair {i} residual {res:.3g} > {RESIDUAL_LIMIT:g}")
        values.append(lam)
        residuals.append(res)
        vectors.append(vec)
    return SpectrumResult(np.array(values), np.array(residuals), np.array(vectors))


def subbox_ground_energy(box: DiscreteBox, M: int, j: int = 1) -> float:
    """Ground level of the kinetic operator restricted to cell j of M."""
    sl = box.subset_slice(M, j)
    diag, off = box.operator()
    sub_diag = diag[sl].tolist()
    sub_off = off[sl.start : sl.stop - 1].tolist()
    return bisect_eigenvalue(sub_diag, sub_off, 1)


# ---------------------------------------------------------------------------
# product states over the cells


@dataclass(frozen=True)
class ProductStateSample:
    """One factor per cell, embedded in the full grid, and the cell occupations."""

    factors: tuple[np.ndarray, ...]
    occupations: tuple[int, ...]


def occupation_splits(N: int, M: int):
    """All ways to place N particles in M cells (stars and bars)."""
    for bars in itertools.combinations(range(N + M - 1), M - 1):
        edges = (-1,) + bars + (N + M - 1,)
        yield tuple(edges[i + 1] - edges[i] - 1 for i in range(M))


def product_state_energy(box: DiscreteBox, sample: ProductStateSample) -> float:
    """sum_j n_j <psi_j|H|psi_j> with the full-box kinetic operator."""
    diag, off = box.operator()
    total = []
    for n_j, psi in zip(sample.occupations, sample.factors):
        total.append(n_j * float(psi @ _tridiag_matvec(diag, off, psi)) / float(psi @ psi))
    return math.fsum(total)


def _random_cell_amplitudes(width: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random unit vectors on a cell: low sine modes, noise and mixtures of both."""
    x = np.arange(1, width + 1) / (width + 1)
    n_modes = min(6, width)
    modes = np.sin(np.pi * np.outer(np.arange(1, n_modes + 1), x))
    coeffs = rng.normal(size=(count, n_modes)) * rng.exponential(size=(count, 1)) ** np.arange(
        n_modes
    )
    noise_level = rng.choice([0.0, 1e-3, 1e-1, 1.0], size=(count, 1))
    amps = coeffs @ modes + noise_level * rng.normal(size=(count, width))
    amps /= np.linalg.norm(amps, axis=1, keepdims=True)
    return amps


def sample_product_states(
    box: DiscreteBox, M: int, N: int, samples: int, rng: np.random.Generator
) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Energies of ``samples`` random product states with random occupation splits.

    Returns the energies and the splits used. Vectorized over samples; each
    factor vanishes outside its cell including on the cell walls.
    """
    diag, off = box.operator()
    splits = [tuple(s) for s in rng.multinomial(N, np.full(M, 1.0 / M), size=samples)]
    occ = np.array(splits, dtype=float)
    energies = np.zeros(samples)
    for j in range(1, M + 1):
        sl = box.subset_slice(M, j)
        width = sl.stop - sl.start
        full = np.zeros((samples, box.n))
        full[:, sl] = _random_cell_amplitudes(width, samples, rng)
        rayleigh = np.einsum("ij,ij->i", full, _tridiag_matvec(diag, off, full))
        energies += occ[:, j - 1] * rayleigh
    return energies, splits


def random_product_state(
    box: DiscreteBox, M: int, N: int, rng: np.random.Generator
) -> ProductStateSample:
    occupations = tuple(int(v) for v in rng.multinomial(N, np.full(M, 1.0 / M)))
    factors = []
    for j in range(1, M + 1):
        sl = box.subset_slice(M, j)
        psi = np.zeros(box.n)
        psi[sl] = _random_cell_amplitudes(sl.stop - sl.start, 1, rng)[0]
        factors.append(psi)
    return ProductStateSample(tuple(factors), occupations)


def _refined_cell_energy(
    box: DiscreteBox, M: int, j: int, starts: int, refine_steps: int, rng: np.random.Generator
) -> float:
    """Lowest Rayleigh quotient over random starts after projected inverse iteration."""
    sl = box.subset_slice(M, j)
    diag, off = box.operator()
    d, o = diag[sl], off[sl.start : sl.stop - 1]
    ab = _banded(d, o, 0.0)
    vecs = _random_cell_amplitudes(sl.stop - sl.start, starts, rng).T
    for _ in range(refine_steps):
        vecs = solve_banded((1, 1), ab, vecs, check_finite=False)
        vecs /= np.linalg.norm(vecs, axis=0, keepdims=True)
    rayleigh = np.einsum("ij,ij->j", vecs, _tridiag_matvec(d, o, vecs.T).T)
    return float(rayleigh.min())


def separable_minimum_bruteforce(
    box: DiscreteBox,
    M: int,
    N: int,
    samples: int = 16,
    refine_steps: int = 30,
    rng: np.random.Generator | None = None,
) -> float:
    """Minimum of sum_j n_j <psi_j|H|psi_j> over product states, found by search.

    Every occupation split is enumerated. For each cell, ``samples`` random
    factors are refined by inverse iteration on the cell-restricted operator
    (the factor never leaves its cell) and the best Rayleigh quotient is
    kept.
    """
    if N > 8 or M > 8:
        raise DomainError("brute-force search is limited to N <= 8 and M <= 8")
    rng = rng if rng is not None else np.random.default_rng(0)
    cell = [_refined_cell_energy(box, M, j, samples, refine_steps, rng) for j in range(1, M + 1)]
    best = math.inf
    for split in occupation_splits(N, M):
        best = min(best, math.fsum(n * e for n, e in zip(split, cell)))
    return best


def witness_gap_demo(box: DiscreteBox, M: int, N: int) -> tuple[float, float]:
    """(separable floor N E_0^cell, true ground energy N E_0) on the discrete box.

    For M >= 2 the delocalized ground state sits strictly below every
    product state, which is exactly what the energy witness detects.
    """
    diag, off = box.operator()
    full = bisect_eigenvalue(diag.tolist(), off.tolist(), 1)
    floor = N * subbox_ground_energy(box, M, 1)
    ground = N * full
    if M >= 2 and not ground < floor:
        raise ConvergenceFailure("ground state failed to beat the separable floor")
    return floor, ground


# ---------------------------------------------------------------------------
# crossing temperatures


@dataclass(frozen=True)
class CrossingTemperatures:
    condensed: float
    piecewise: float | None  # only defined for d = 3


CROSSING_BRACKET = (1e-12, 1e6)


def _bisect_log(f, lo: float, hi: float) -> float:
    """Root of an increasing f on [lo, hi] to 1e-12 relative width."""
    f_lo, f_hi = f(lo), f(hi)
    if f_lo > 0 or f_hi < 0:
        raise NoCrossing(f"no sign change of U(T) - E_lowest on [{lo:g}, {hi:g}] K")
    a, b = math.log(lo), math.log(hi)
    for _ in range(400):
        mid = 0.5 * (a + b)
        if f(math.exp(mid)) < 0:
            a = mid
        else:
            b = mid
        t_a, t_b = math.exp(a), math.exp(b)
        if t_b - t_a <= 1e-12 * t_a:
            break
    return math.exp(0.5 * (a + b))


def crossing_temperature(
    spec: GasSpec,
    part: Partition,
    constants: PhysicalConstants = CODATA2018,
    bracket: tuple[float, float] = CROSSING_BRACKET,
    piecewise: bool = True,
) -> CrossingTemperatures:
    """Numerically solve U(T) = E_lowest(M) for T.

    ``condensed`` uses the mu = 0 branch at all temperatures and is the same
    equation the closed-form transition temperature solves. ``piecewise``
    uses the full U(T) with the normal phase above T_crit (d = 3 only); it
    needs a fugacity solve per step and is skipped with ``piecewise=False``.
    """
    e_low = lowest_separable_energy(spec, part, constants)

    def condensed(T):
        return internal_energy_condensed(T, spec, constants) - e_low

    t_cond = _bisect_log(condensed, *bracket)
    t_piece = None
    if piecewise and spec.dimension == 3:

        def full(T):
            return internal_energy(T, spec, constants) - e_low

        t_piece = _bisect_log(full, *bracket)
    return CrossingTemperatures(t_cond, t_piece)
