"""Two-solenoid algebra: classical additive totals vs the quantum mixture.

Two parameterizations of the same apparatus are deliberately kept apart:

* classical case: both solenoid windings carry ordinary currents, the
  fluxes simply add, and an antisymmetric pair (+gamma/2, -gamma/2)
  cancels to a total of exactly zero;

* mixture case: a single wire electron is in a superposition of sitting
  in winding 1 or winding 2 with amplitudes (c1, c2), so the flux seen by
  the interfering electron is the two-point statistical mixture
  {Phi_1 with probability |c1|^2, Phi_2 with |c2|^2} whose mean is
  |c1|^2 Phi_1 + |c2|^2 Phi_2.

With equal weights and antisymmetric fluxes the mixture mean also
vanishes, but each detected electron still shows a full-magnitude phase
difference of +delta or -delta; that two-point distribution is what
distinguishes the mixture from the classical sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    ApparatusGeometry,
    PhysicalConstants,
    Solenoid,
    flux,
    fringe_shift,
    phase_shift,
)
from .errors import ValidationError

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class BranchAmplitudes:
    """Complex amplitudes (c1, c2) of the wire-electron superposition.

    Only the moduli enter any physics here, but the amplitudes are kept
    complex so phase invariance is a testable property.  Inputs violating
    |c1|^2 + |c2|^2 = 1 (tolerance 1e-12) are rejected, never silently
    renormalized.
    """

    c1: complex
    c2: complex

    def __post_init__(self):
        total = abs(self.c1) ** 2 + abs(self.c2) ** 2
        if not math.isfinite(total) or abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValidationError(
                f"|c1|^2 + |c2|^2 = {total!r} violates normalization (tolerance {NORMALIZATION_TOL})"
            )

    @property
    def p1(self) -> float:
        return abs(self.c1) ** 2

    @property
    def p2(self) -> float:
        return abs(self.c2) ** 2


@dataclass(frozen=True)
class DualSolenoidConfig:
    """Two solenoids behind the diaphragm, close enough that the electron
    passes around the pair, never between them: d > 2 (R1 + R2)."""

    solenoid1: Solenoid
    solenoid2: Solenoid
    geometry: ApparatusGeometry
    constants: PhysicalConstants

    def __post_init__(self):
        self.geometry.check_solenoid(self.solenoid1)
        self.geometry.check_solenoid(self.solenoid2)
        clearance = 2.0 * (self.solenoid1.radius + self.solenoid2.radius)
        if self.geometry.slit_separation <= clearance:
            raise ValidationError(
                f"slit separation d={self.geometry.slit_separation!r} must exceed "
                f"2(R1+R2)={clearance!r} so the electron passes around both solenoids"
            )

    @property
    def flux1(self) -> float:
        return flux(self.solenoid1)

    @property
    def flux2(self) -> float:
        return flux(self.solenoid2)


@dataclass(frozen=True)
class MixtureOutcome:
    """One branch of the two-point outcome distribution."""

    branch: int          # 1 or 2
    probability: float   # |c_k|^2
    flux: float          # Phi_k, Wb
    phase: float         # dphi_k = e Phi_k / hbar, rad
    shift: float         # dx_k, m

    def __post_init__(self):
        if self.branch not in (1, 2):
            raise ValidationError(f"branch must be 1 or 2, got {self.branch!r}")
        if not -NORMALIZATION_TOL <= self.probability <= 1.0 + NORMALIZATION_TOL:
            raise ValidationError(f"probability {self.probability!r} outside [0, 1]")


def classical_total_flux(flux1: float, flux2: float) -> float:
    """Total flux of two classically energized solenoids: Phi_1 + Phi_2."""
    return flux1 + flux2


def classical_totals(config: DualSolenoidConfig) -> tuple[float, float]:
    """Classical case: (dphi, dx) are the plain sums of per-solenoid terms.

    Returns (dphi_1 + dphi_2, dx_1 + dx_2).  For an antisymmetric pair the
    per-solenoid terms are exact floating-point negations, so both sums
    are bitwise zero.
    """
    dphi1 = phase_shift(config.constants, config.flux1)
    dphi2 = phase_shift(config.constants, config.flux2)
    dx1 = fringe_shift(config.constants, config.geometry, config.flux1)
    dx2 = fringe_shift(config.constants, config.geometry, config.flux2)
    return dphi1 + dphi2, dx1 + dx2


def mixture_field(amplitudes: BranchAmplitudes, field1: float, field2: float) -> float:
    """Mixture-mean magnetic field |c1|^2 B_1 + |c2|^2 B_2, tesla."""
    return amplitudes.p1 * field1 + amplitudes.p2 * field2


def mixture_flux(amplitudes: BranchAmplitudes, flux1: float, flux2: float) -> float:
    """Mixture-mean flux |c1|^2 Phi_1 + |c2|^2 Phi_2, weber."""
    return amplitudes.p1 * flux1 + amplitudes.p2 * flux2


def mixture_expectations(
    config: DualSolenoidConfig, amplitudes: BranchAmplitudes
) -> tuple[float, float]:
    """Mixture means (|c1|^2 dphi_1 + |c2|^2 dphi_2, |c1|^2 dx_1 + |c2|^2 dx_2).

    Equals the probability-weighted mean of :func:`outcome_distribution`.
    """
    outcomes = outcome_distribution(config, amplitudes)
    dphi = sum(o.probability * o.phase for o in outcomes)
    dx = sum(o.probability * o.shift for o in outcomes)
    return dphi, dx


def outcome_distribution(
    config: DualSolenoidConfig, amplitudes: BranchAmplitudes
) -> list[MixtureOutcome]:
    """The two-point outcome law: branch k occurs with probability |c_k|^2
    and carries the full single-branch (Phi_k, dphi_k, dx_k).

    Branch 1 is always listed first.
    """
    outcomes = []
    for branch, probability, flux_k in (
        (1, amplitudes.p1, config.flux1),
        (2, amplitudes.p2, config.flux2),
    ):
        outcomes.append(
            MixtureOutcome(
                branch=branch,
                probability=probability,
                flux=flux_k,
                phase=phase_shift(config.constants, flux_k),
                shift=fringe_shift(config.constants, config.geometry, flux_k),
            )
        )
    return outcomes
