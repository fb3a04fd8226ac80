"""Physical parameters of the two-oscillator model and the frequencies derived from them.

Natural units are used throughout (hbar = k_B = 1).  The light particle of
mass ``m`` sits in a trap of frequency ``omega``; the heavy particle of mass
``M`` oscillates at ``Omega``; the two are joined by a spring of stiffness
``kappa``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ComplexRegime, DegenerateSystem, InvalidParams

# |discriminant| below this fraction of (Omega_eff^2 + kappa/m)^2 is round-off
# on the z+ = z- locus and is set to zero.
DISCRIMINANT_ROUNDOFF = 1e-14

# beta_inf = GROUND_STATE_BETA / min(z-, Omega_eff, 1)
GROUND_STATE_BETA = 50.0


@dataclass(frozen=True)
class SystemParams:
    """Inputs of the model.

    ``beta`` is the inverse temperature.  ``None`` means "ground state": the
    consumers substitute :func:`ground_state_beta`.
    """

    m: float
    M: float
    omega: float
    Omega: float
    kappa: float
    beta: float | None = None

    def __post_init__(self):
        for name in ("m", "M", "omega", "Omega", "kappa"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParams(f"{name} must be finite, got {value!r}")
        if self.m <= 0 or self.M <= 0:
            raise InvalidParams(f"masses must be positive, got m={self.m}, M={self.M}")
        if self.omega < 0 or self.Omega < 0 or self.kappa < 0:
            raise InvalidParams("omega, Omega and kappa must be non-negative")
        if self.omega == 0 and self.Omega == 0 and self.kappa == 0:
            raise InvalidParams("at least one of omega, Omega, kappa must be positive")
        if self.beta is not None and not (self.beta > 0 and math.isfinite(self.beta)):
            raise InvalidParams(f"beta must be positive and finite, got {self.beta!r}")

    def with_(self, **changes) -> SystemParams:
        return replace(self, **changes)

    @property
    def mu(self) -> float:
        """Reduced mass."""
        return self.m * self.M / (self.m + self.M)

    @property
    def omega_eff_sq(self) -> float:
        return self.Omega**2 + self.kappa / self.M


@dataclass(frozen=True)
class DerivedFrequencies:
    omega_eff_sq: float
    z_plus: float
    z_minus: float
    mu: float
    omega_M: float
    omega_S: float
    discriminant: float

    @property
    def omega_eff(self) -> float:
        return math.sqrt(self.omega_eff_sq)

    @property
    def confluent(self) -> bool:
        return self.z_plus == self.z_minus


def discriminant(params: SystemParams) -> float:
    """(Omega_eff^2 + kappa/m)^2 - 4 omega^2 Omega_eff^2."""
    e2 = params.omega_eff_sq
    s = e2 + params.kappa / params.m
    return s * s - 4.0 * params.omega**2 * e2


def derive(params: SystemParams) -> DerivedFrequencies:
    """Compute Omega_eff, the kernel frequencies z+/z- and the condition frequencies.

    z+^2 and z-^2 are the roots of ``z^4 - (Omega_eff^2 + kappa/m) z^2 +
    omega^2 Omega_eff^2``.  The small root is taken from the product of the
    roots so that z+ z- = omega Omega_eff holds to rounding.

    Raises:
        ComplexRegime: if the discriminant is negative, i.e. z+/z- are complex.
        DegenerateSystem: if Omega_eff = 0 (heavy particle unbound).
    """
    e2 = params.omega_eff_sq
    if e2 == 0:
        raise DegenerateSystem("Omega^2 + kappa/M = 0: heavy particle is free")
    s = e2 + params.kappa / params.m
    d = discriminant(params)
    if abs(d) <= DISCRIMINANT_ROUNDOFF * s * s:
        d = 0.0
    elif d < 0:
        raise ComplexRegime(f"discriminant {d:.6g} < 0: z+ and z- are complex")
    zp_sq = 0.5 * (s + math.sqrt(d))
    zm_sq = params.omega**2 * e2 / zp_sq
    z_plus = math.sqrt(zp_sq)
    z_minus = math.sqrt(zm_sq)
    if d == 0.0:
        # exact tie: keep the pair bitwise equal so the confluent branch is taken
        z_plus = z_minus = math.sqrt(params.omega * math.sqrt(e2))
    return DerivedFrequencies(
        omega_eff_sq=e2,
        z_plus=z_plus,
        z_minus=z_minus,
        mu=params.mu,
        omega_M=omega_max_entangled(params),
        omega_S=omega_separable(params),
        discriminant=d,
    )


def omega_max_entangled(params: SystemParams) -> float:
    """Trap frequency at which the closed-form linear entropy is claimed to reach 1.

    omega_M^2 = (Omega^2 + kappa/mu)^2 / (4 (Omega^2 + kappa/M)).  The ``omega``
    field of ``params`` is not used.
    """
    denom = 4.0 * params.omega_eff_sq
    if denom == 0:
        raise DegenerateSystem("Omega^2 + kappa/M = 0")
    num = params.Omega**2 + params.kappa / params.mu
    return math.sqrt(num * num / denom)


def omega_separable(params: SystemParams) -> float:
    """Trap frequency omega_S = sqrt((Omega^2 + kappa/M) / 16)."""
    return math.sqrt(params.omega_eff_sq / 16.0)


def ground_state_beta(derived: DerivedFrequencies) -> float:
    """Finite stand-in for beta -> infinity: 50 / min(z-, Omega_eff, 1).

    A vanishing z- (omega = 0) is skipped so the result stays finite.
    """
    scales = [x for x in (derived.z_minus, derived.omega_eff) if x > 0]
    return GROUND_STATE_BETA / min(scales + [1.0])


def resolve_beta(params: SystemParams, derived: DerivedFrequencies) -> float:
    return params.beta if params.beta is not None else ground_state_beta(derived)
