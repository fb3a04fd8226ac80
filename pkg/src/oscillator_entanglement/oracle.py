"""Ground-truth purity of the light particle, from the Hamiltonian alone.

Nothing here touches z+/z-, Delta(tau) or any of the closed forms in
:mod:`.kernel` and :mod:`.entropy`.  The potential

    V = m omega^2 x^2 / 2 + M Omega^2 y^2 / 2 + kappa (x - y)^2 / 2

is diagonalized in mass-weighted coordinates (sqrt(m) x, sqrt(M) y); each
unit-mass normal mode of frequency nu has <u^2> = 1/(2 nu) and
<pi^2> = nu/2 in its ground state.  Two independent routes follow:

* :func:`purity_covariance` uses those second moments directly;
* :func:`purity_grid` tabulates psi0(x, y) and traces out y by brute force.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundStateAbsent, GridTooSmall, InvalidParams
from .params import SystemParams

HALFWIDTH_SIGMAS = 8.0
BOUNDARY_DENSITY_MAX = 1e-12
MIN_GRID_POINTS = 128


@dataclass(frozen=True)
class NormalModes:
    nu_plus: float
    nu_minus: float
    mode_vectors: np.ndarray  # columns: mass-weighted eigenvectors for nu_plus, nu_minus

    def position_covariance(self) -> np.ndarray:
        """<q q^T> in mass-weighted coordinates."""
        r = self.mode_vectors
        return r @ np.diag([0.5 / self.nu_plus, 0.5 / self.nu_minus]) @ r.T

    def momentum_covariance(self) -> np.ndarray:
        r = self.mode_vectors
        return r @ np.diag([0.5 * self.nu_plus, 0.5 * self.nu_minus]) @ r.T


def potential_matrix(params: SystemParams) -> np.ndarray:
    """Mass-weighted Hessian of the potential."""
    m, M, k = params.m, params.M, params.kappa
    return np.array(
        [
            [params.omega**2 + k / m, -k / math.sqrt(m * M)],
            [-k / math.sqrt(m * M), params.Omega**2 + k / M],
        ]
    )


def normal_modes(params: SystemParams) -> NormalModes:
    """Closed-form eigendecomposition of the 2x2 mass-weighted potential matrix."""
    m, M, k = params.m, params.M, params.kappa
    a = params.omega**2 + k / m
    c = params.Omega**2 + k / M
    b = -k / math.sqrt(m * M)
    # expanded so that every term is non-negative
    det = params.omega**2 * params.Omega**2 + params.omega**2 * k / M + params.Omega**2 * k / m
    lam_plus = 0.5 * (a + c) + math.hypot(0.5 * (a - c), b)
    if not (det > 0 and lam_plus > 0):
        raise BoundStateAbsent(f"potential matrix not positive definite (det={det:.6g})")
    lam_minus = det / lam_plus
    theta = 0.5 * math.atan2(2.0 * b, a - c)
    cs, sn = math.cos(theta), math.sin(theta)
    vectors = np.array([[cs, -sn], [sn, cs]])
    return NormalModes(math.sqrt(lam_plus), math.sqrt(lam_minus), vectors)


def _moments(modes: NormalModes, params: SystemParams, particle: int) -> tuple[float, float]:
    mass = params.m if particle == 0 else params.M
    x2 = modes.position_covariance()[particle, particle] / mass
    p2 = modes.momentum_covariance()[particle, particle] * mass
    return x2, p2


def purity_covariance(modes: NormalModes, params: SystemParams, particle: int = 0) -> float:
    """Purity 1 / (2 nu~) of one particle's reduced state.

    nu~ = sqrt(<x^2><p^2> - <xp>_sym^2); the symmetrized cross moment vanishes
    for a real ground state.  ``particle`` 0 is the light particle, 1 the heavy.
    """
    x2, p2 = _moments(modes, params, particle)
    return 1.0 / (2.0 * math.sqrt(x2 * p2))


def linear_entropy_oracle(params: SystemParams) -> float:
    return 1.0 - purity_covariance(normal_modes(params), params)


def auto_halfwidth(params: SystemParams) -> float:
    """8 times the larger of the two positional standard deviations."""
    cov = normal_modes(params).position_covariance()
    sigma_x = math.sqrt(cov[0, 0] / params.m)
    sigma_y = math.sqrt(cov[1, 1] / params.M)
    return HALFWIDTH_SIGMAS * max(sigma_x, sigma_y)


@dataclass(frozen=True)
class GridState:
    grid: np.ndarray
    psi: np.ndarray  # psi[i, j] = psi0(grid[i], grid[j]); first index is x (light)
    rho_reduced: np.ndarray

    @property
    def dx(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def norm(self) -> float:
        return float(np.sum(self.psi**2) * self.dx**2)

    def purity(self) -> float:
        r = self.rho_reduced
        return float(np.sum(r * r.T) * self.dx**2)

    def spectrum(self) -> np.ndarray:
        """Eigenvalues of rho_reduced * dx, i.e. of the discretized operator."""
        return np.linalg.eigvalsh(self.rho_reduced * self.dx)

    def heavy_reduced(self) -> np.ndarray:
        return self.psi.T @ self.psi * self.dx


def ground_state_on_grid(params: SystemParams, grid: np.ndarray) -> np.ndarray:
    """Analytic normalized ground-state amplitude psi0(x, y) on a square grid."""
    modes = normal_modes(params)
    r = modes.mode_vectors
    a = r @ np.diag([modes.nu_plus, modes.nu_minus]) @ r.T
    sm, sM = math.sqrt(params.m), math.sqrt(params.M)
    qx = sm * grid[:, None]
    qy = sM * grid[None, :]
    exponent = -0.5 * (a[0, 0] * qx * qx + 2.0 * a[0, 1] * qx * qy + a[1, 1] * qy * qy)
    det_a = modes.nu_plus * modes.nu_minus
    amplitude = (params.m * params.M * det_a) ** 0.25 / math.sqrt(math.pi)
    return amplitude * np.exp(exponent)


def _build_state(params: SystemParams, n: int, halfwidth: float) -> GridState:
    grid = np.linspace(-halfwidth, halfwidth, n)
    psi = ground_state_on_grid(params, grid)
    dy = grid[1] - grid[0]
    edge = max(
        np.max(psi[0, :] ** 2), np.max(psi[-1, :] ** 2),
        np.max(psi[:, 0] ** 2), np.max(psi[:, -1] ** 2),
    )
    if edge > BOUNDARY_DENSITY_MAX:
        raise GridTooSmall(
            f"|psi|^2 = {edge:.3g} at the grid boundary (L={halfwidth:.6g}); widen the grid"
        )
    rho = psi @ psi.T * dy
    return GridState(grid=grid, psi=psi, rho_reduced=rho)


def grid_state(params: SystemParams, n: int = 512, l: float | None = None) -> GridState:
    """Tabulate psi0 and the reduced density of the light particle.

    Raises:
        GridTooSmall: if the probability density at the boundary exceeds 1e-12.
    """
    if n < MIN_GRID_POINTS:
        raise InvalidParams(f"need at least {MIN_GRID_POINTS} grid points, got {n}")
    return _build_state(params, n, auto_halfwidth(params) if l is None else l)


def purity_grid(params: SystemParams, n: int = 512, l: float | None = None) -> float:
    """Brute-force Tr(rho_A^2) from the tabulated ground state."""
    return grid_state(params, n, l).purity()


def grid_error_estimate(params: SystemParams, n: int = 512, l: float | None = None) -> float:
    """Discretization error estimate |P(n) - P(n/2)| on the same half-width.

    The rectangle rule on a rapidly decaying smooth integrand converges faster
    than any power of the spacing, so the coarse/fine difference bounds the
    error of the fine result.
    """
    halfwidth = auto_halfwidth(params) if l is None else l
    fine = grid_state(params, n, halfwidth).purity()
    coarse = _build_state(params, n // 2, halfwidth).purity()
    return abs(fine - coarse)
