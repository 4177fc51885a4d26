"""Single-solenoid Aharonov-Bohm relations and the apparatus value types.

An electron passing through a two-slit diaphragm and around a long thin
solenoid of flux Phi picks up the phase difference

    dphi = e * Phi / hbar

between the two slit paths, and its interference pattern on a screen at
distance L translates along x by

    dx = -(L/d) * (lambda/(2*pi)) * (e*Phi/hbar) = -(L/d) * (e/m) * Phi/v

where d is the slit separation, v the electron speed and
lambda = h/(m*v) the de Broglie wavelength.  Substituting lambda makes
the Planck constant cancel, so the second (classical) form carries no
hbar; both forms are provided and must agree to rounding.

Sign convention: `e` is stored as the positive elementary-charge
magnitude, the formulas are evaluated literally with it, and the signs
of dphi and dx simply track the sign of Phi.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

from .errors import ValidationError

# CODATA 2018 defaults (e and h are exact in the 2019 SI)
ELEMENTARY_CHARGE = 1.602176634e-19     # C
ELECTRON_MASS = 9.1093837015e-31        # kg
PLANCK = 6.62607015e-34                 # J s
HBAR = PLANCK / (2.0 * math.pi)         # J s


@dataclass(frozen=True)
class PhysicalConstants:
    """Electron charge magnitude, electron mass and the Planck pair.

    All four values are overridable (the hbar-independence checks scale
    the Planck pair), but h must always equal 2*pi*hbar to within one
    unit in the last place.
    """

    e: float = ELEMENTARY_CHARGE    # elementary charge magnitude, C
    m: float = ELECTRON_MASS        # electron mass, kg
    hbar: float = HBAR              # reduced Planck constant, J s
    h: float = PLANCK               # Planck constant, J s

    def __post_init__(self):
        for name in ("e", "m", "hbar", "h"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise ValidationError(f"constant {name} must be finite and positive, got {value!r}")
        if abs(self.h - 2.0 * math.pi * self.hbar) > math.ulp(self.h):
            raise ValidationError(
                f"h must equal 2*pi*hbar to 1 ulp: h={self.h!r}, 2*pi*hbar={2.0 * math.pi * self.hbar!r}"
            )

    def with_planck_scaled(self, factor: float) -> "PhysicalConstants":
        """Return a copy with hbar (and h = 2*pi*hbar) scaled by `factor`."""
        scaled = factor * self.hbar
        return replace(self, hbar=scaled, h=2.0 * math.pi * scaled)


@dataclass(frozen=True)
class Solenoid:
    """Long thin solenoid: homogeneous interior field and base radius.

    `field` is signed; its sign encodes the winding orientation along z
    and is taken as direct input (the field-to-current proportionality of
    the winding is never needed numerically).
    """

    field: float    # interior magnetic field B, tesla (signed)
    radius: float   # base radius R, meter

    def __post_init__(self):
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValidationError(f"solenoid radius must be finite and positive, got {self.radius!r}")
        if not math.isfinite(self.field):
            raise ValidationError(f"solenoid field must be finite, got {self.field!r}")

    @property
    def area(self) -> float:
        """Base area S = pi R^2, m^2."""
        return math.pi * self.radius**2


@dataclass(frozen=True)
class ApparatusGeometry:
    """Two-slit interferometer geometry and electron speed."""

    screen_distance: float   # diaphragm-to-screen distance L, m
    slit_separation: float   # slit spacing d, m
    speed: float             # electron speed v, m/s

    def __post_init__(self):
        for name in ("screen_distance", "slit_separation", "speed"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise ValidationError(f"{name} must be finite and positive, got {value!r}")

    def check_solenoid(self, solenoid: Solenoid) -> None:
        """Enforce that the slits clear the solenoid base.

        The model requires the electron paths to pass around the solenoid,
        never through it: d <= 2R is rejected, d < 10R only warned about.
        """
        if self.slit_separation <= 2.0 * solenoid.radius:
            raise ValidationError(
                f"slit separation d={self.slit_separation!r} must exceed twice the "
                f"solenoid radius (2R={2.0 * solenoid.radius!r})"
            )
        if self.slit_separation < 10.0 * solenoid.radius:
            warnings.warn(
                f"slit separation d={self.slit_separation!r} is below 10R="
                f"{10.0 * solenoid.radius!r}; the around-the-solenoid model is marginal",
                stacklevel=2,
            )


def de_broglie_wavelength(constants: PhysicalConstants, geometry: ApparatusGeometry) -> float:
    """lambda = h / (m v), meters."""
    return constants.h / (constants.m * geometry.speed)


def flux(solenoid: Solenoid) -> float:
    """Magnetic flux Phi = B * pi R^2 through the solenoid base, weber."""
    return solenoid.field * solenoid.area


def phase_shift(constants: PhysicalConstants, flux_wb: float) -> float:
    """Phase difference dphi = e Phi / hbar between the slit paths, radians."""
    return constants.e * flux_wb / constants.hbar


def fringe_shift(constants: PhysicalConstants, geometry: ApparatusGeometry, flux_wb: float) -> float:
    """Pattern translation dx = -(L/d) (lambda/2pi) (e Phi/hbar), meters."""
    lam = de_broglie_wavelength(constants, geometry)
    return (
        -(geometry.screen_distance / geometry.slit_separation)
        * (lam / (2.0 * math.pi))
        * phase_shift(constants, flux_wb)
    )


def fringe_shift_classical_form(
    constants: PhysicalConstants, geometry: ApparatusGeometry, flux_wb: float
) -> float:
    """Pattern translation in the Planck-free form dx = -(L/d)(e/m) Phi/v, meters.

    Algebraically identical to :func:`fringe_shift`; exposed separately so
    the cancellation of hbar can be verified rather than assumed.
    """
    return (
        -(geometry.screen_distance / geometry.slit_separation)
        * (constants.e / constants.m)
        * (flux_wb / geometry.speed)
    )


def fringe_period(constants: PhysicalConstants, geometry: ApparatusGeometry) -> float:
    """Fringe spacing lambda L / d on the screen, meters.

    The translation formula is treated as exact; the period is reported
    alongside so callers can judge how many fringes a given shift spans.
    """
    return de_broglie_wavelength(constants, geometry) * geometry.screen_distance / geometry.slit_separation
