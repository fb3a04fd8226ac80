"""Influence function Delta(tau) and the Gaussian reduced-density kernel built from it.

The reduced density matrix of the light particle is

    rho(x, x') = norm * exp(-p (x - x')^2 - q (x + x')^2)

with ``q = m / (4 Delta(0))`` and ``p = m * Delta''(0) / 4``.

Two readings of the printed expressions are fixed here:

* the denominators of Delta(tau) are ``z * sinh(z beta / 2)``; the nested
  ``sinh(z sinh(...))`` form is dimensionally inconsistent;
* the relative-coordinate exponent carries a minus sign.  Delta''(0) is
  positive for every admissible parameter set, so the printed ``+`` sign would
  make the kernel grow without bound in ``x - x'``.  With the minus sign the
  ratio ``q / p`` coincides with the closed-form ``A / B`` in the ground-state
  limit.

All hyperbolic functions of large arguments go through exponent bookkeeping so
that beta can reach 1e4 and beyond.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSystem, NonNormalizable, QuadratureFailure
from .params import DerivedFrequencies, SystemParams, derive, resolve_beta

# Relative gap (z+^2 - z-^2) / z+^2 below which the divided difference is
# replaced by its derivative limit.
CONFLUENT_GAP = 1e-5

NORMALIZATION_RTOL = 1e-12


@dataclass(frozen=True)
class KernelCoefficients:
    p: float
    q: float
    norm: float
    prefactor_paper: float
    log_prefactor_paper: float = math.nan
    delta0: float = math.nan
    delta_ddot0: float = math.nan
    beta: float = math.nan

    @classmethod
    def from_exponents(cls, p: float, q: float) -> KernelCoefficients:
        """Build a normalized kernel from bare exponent coefficients."""
        if not (p > 0 and q > 0):
            raise NonNormalizable(f"need p > 0 and q > 0, got p={p}, q={q}")
        return cls(p=p, q=q, norm=diagonal_normalization(q), prefactor_paper=math.nan)


def _log_sinh(x: float) -> float:
    # x > 0
    return x + math.log(-math.expm1(-2.0 * x)) - math.log(2.0)


def _coth(x: float) -> float:
    return 1.0 / math.tanh(x)


def _csch_sq(x: float) -> float:
    e = math.exp(-2.0 * x)
    return 4.0 * e / (1.0 - e) ** 2


def _f(z: float, tau: float, beta: float) -> float:
    """cosh(z (tau - beta/2)) / (z sinh(z beta/2))."""
    a = abs(z * (tau - 0.5 * beta))
    b = z * 0.5 * beta
    # a - b without cancellation between two O(z beta) numbers
    shift = -tau if tau <= 0.5 * beta else tau - beta
    return math.exp(z * shift) * (1.0 + math.exp(-2.0 * a)) / (-math.expm1(-2.0 * b)) / z


def _df_dz(z: float, tau: float, beta: float) -> float:
    a = tau - 0.5 * beta
    b = 0.5 * beta
    return _f(z, tau, beta) * (a * math.tanh(z * a) - 1.0 / z - b * _coth(z * b))


def _h(z: float, beta: float) -> float:
    """Second tau-derivative of ``_f`` at tau = 0: z coth(z beta / 2)."""
    return z * _coth(0.5 * z * beta)


def _dh_dz(z: float, beta: float) -> float:
    b = 0.5 * beta
    return _coth(z * b) - z * b * _csch_sq(z * b)


def _weighted_pair(derived: DerivedFrequencies, F, dF) -> float:
    """((z+^2 - E^2) F(z+) - (z-^2 - E^2) F(z-)) / (z+^2 - z-^2), E = Omega_eff.

    This is a divided difference of G(s) = (s - E^2) F(sqrt(s)); at the tie it
    becomes G'(s) = F(z) + (s - E^2) F'(z) / (2 z).
    """
    zp, zm = derived.z_plus, derived.z_minus
    if zm <= 0:
        raise DegenerateSystem("z- = 0 (omega = 0): Delta(tau) diverges")
    e2 = derived.omega_eff_sq
    sp, sm = zp * zp, zm * zm
    if sp - sm <= CONFLUENT_GAP * sp:
        s = 0.5 * (sp + sm)
        z = math.sqrt(s)
        return F(z) + (s - e2) * dF(z) / (2.0 * z)
    return ((sp - e2) * F(zp) - (sm - e2) * F(zm)) / (sp - sm)


def delta_tau(tau: float, derived: DerivedFrequencies, beta: float) -> float:
    """Influence function Delta(tau) for the imaginary-time interval [0, beta].

    The expression is analytic in ``tau`` and is evaluated for any real value;
    only [0, beta] is physical.  ``Delta(tau) == Delta(beta - tau)``.
    """
    return _weighted_pair(
        derived,
        lambda z: _f(z, tau, beta),
        lambda z: _df_dz(z, tau, beta),
    )


def delta_ddot0(derived: DerivedFrequencies, beta: float) -> float:
    """Second tau-derivative of Delta at tau = 0, in closed form."""
    return _weighted_pair(derived, lambda z: _h(z, beta), lambda z: _dh_dz(z, beta))


def gauss_hermite_integral(
    func,
    center: float,
    scale: float,
    rtol: float = NORMALIZATION_RTOL,
    start_order: int = 8,
    max_order: int = 512,
) -> float:
    """Integrate ``func`` over the real line with Gauss-Hermite nodes mapped to
    ``x = center + scale * t``.

    The order is doubled until two successive estimates agree to ``rtol``.
    ``func`` must accept numpy arrays.
    """
    previous = None
    order = start_order
    while order <= max_order:
        t, w = np.polynomial.hermite.hermgauss(order)
        x = center + scale * t
        value = scale * float(np.sum(w * np.exp(t * t) * func(x)))
        if previous is not None and abs(value - previous) <= rtol * abs(value):
            return value
        previous = value
        order *= 2
    raise QuadratureFailure(f"Gauss-Hermite did not reach rtol={rtol} by order {max_order}")


def diagonal_normalization(q: float) -> float:
    """Constant making the diagonal exp(-4 q x^2) integrate to one."""
    width = 1.0 / math.sqrt(8.0 * q)
    integral = gauss_hermite_integral(lambda x: np.exp(-4.0 * q * x * x), 0.0, math.sqrt(2.0) * width)
    return 1.0 / integral


def kernel_coefficients(params: SystemParams) -> KernelCoefficients:
    """Exponent coefficients and normalization of the reduced density kernel.

    Raises:
        ComplexRegime: z+/z- complex for these parameters.
        DegenerateSystem: z- = 0 or Omega_eff = 0.
        NonNormalizable: p <= 0 or q <= 0.
    """
    derived = derive(params)
    beta = resolve_beta(params, derived)
    d0 = delta_tau(0.0, derived, beta)
    dd0 = delta_ddot0(derived, beta)
    m = params.m
    p = m * dd0 / 4.0
    q = m / (4.0 * d0)
    if not (p > 0 and q > 0):
        raise NonNormalizable(f"kernel not normalizable: p={p:.6g}, q={q:.6g}")
    log_pref = (
        0.5 * math.log(m / (4.0 * math.pi * d0))
        + _log_sinh(0.5 * derived.omega_eff * beta)
        - _log_sinh(0.5 * derived.z_plus * beta)
        - _log_sinh(0.5 * derived.z_minus * beta)
    )
    return KernelCoefficients(
        p=p,
        q=q,
        norm=diagonal_normalization(q),
        prefactor_paper=math.exp(log_pref),
        log_prefactor_paper=log_pref,
        delta0=d0,
        delta_ddot0=dd0,
        beta=beta,
    )


def reduced_density(coeffs: KernelCoefficients, x, xp):
    """Evaluate rho(x, x') on scalars or broadcastable arrays."""
    x = np.asarray(x, dtype=float)
    xp = np.asarray(xp, dtype=float)
    u = x - xp
    v = x + xp
    return coeffs.norm * np.exp(-coeffs.p * u * u - coeffs.q * v * v)
