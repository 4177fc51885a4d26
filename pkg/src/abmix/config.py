"""Run configuration: a single JSON file, SI units throughout.

Key paths (all optional: missing keys fall back to the desk-scale
defaults below):

    constants.e, constants.m, constants.hbar      override CODATA values
                                                  (h is derived as 2*pi*hbar)
    geometry.L, geometry.d, geometry.v            screen distance, slit
                                                  separation, electron speed
    solenoids.B1, solenoids.R1, solenoids.B2, solenoids.R2
    amplitudes.c1, amplitudes.c2                  [re, im] pairs
    screen.x_min, screen.x_max, screen.n          detector grid
    envelope_width                                Gaussian envelope, m
    n_electrons, seed, out_dir
    wavepackets.{eta_min, eta_max, n, kind, center1, center2, width,
                 k1, k2, k, n_ensemble}           for the `current` command

Defaults describe the antisymmetric equal-weight setup: solenoid fields
chosen so each branch phase difference is exactly +-1 rad, a screen of
16 fringe periods with 4096 cells, an envelope of 2.5 periods, and
Gaussian wire packets 16 widths apart.  Screen and envelope defaults are
derived from the geometry at load time.

Validation collects every violation instead of stopping at the first.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

from .core import ApparatusGeometry, PhysicalConstants, Solenoid, fringe_period
from .dual import BranchAmplitudes, DualSolenoidConfig
from .errors import ValidationError
from .pattern import ScreenGrid

DEFAULT_SEED = 20240601
DEFAULT_N_ELECTRONS = 100_000
DEFAULT_SCREEN_PERIODS = 16.0
DEFAULT_SCREEN_CELLS = 4096
DEFAULT_ENVELOPE_PERIODS = 2.5
DEFAULT_PACKET_WIDTH = 16.0
DEFAULT_PACKET_SEPARATION = 16.0 * DEFAULT_PACKET_WIDTH
DEFAULT_PACKET_K = 1.5
DEFAULT_GRID_CELLS = 4096


def _default_geometry() -> dict[str, float]:
    return {"L": 1.0, "d": 1e-5, "v": 1e6}


def _default_solenoids(constants: PhysicalConstants) -> dict[str, float]:
    # field magnitude giving a branch phase difference of exactly 1 rad
    radius = 2.5e-7
    b_unit = (constants.hbar / constants.e) / (math.pi * radius**2)
    return {"B1": b_unit, "R1": radius, "B2": -b_unit, "R2": radius}


def _default_wavepackets() -> dict[str, Any]:
    half = DEFAULT_PACKET_SEPARATION / 2.0 + 8.0 * DEFAULT_PACKET_WIDTH
    return {
        "kind": "gaussian",
        "eta_min": -half,
        "eta_max": half,
        "n": DEFAULT_GRID_CELLS,
        "center1": -DEFAULT_PACKET_SEPARATION / 2.0,
        "center2": DEFAULT_PACKET_SEPARATION / 2.0,
        "width": DEFAULT_PACKET_WIDTH,
        "k1": DEFAULT_PACKET_K,
        "k2": -DEFAULT_PACKET_K,
        "k": DEFAULT_PACKET_K,
        "n_ensemble": 1000,
    }


@dataclass
class RunConfig:
    """Parsed configuration plus accessors that build the domain objects."""

    constants_overrides: dict[str, float] = field(default_factory=dict)
    geometry_values: dict[str, float] = field(default_factory=_default_geometry)
    solenoid_values: dict[str, float] | None = None
    amplitude_values: dict[str, Any] | None = None
    screen_values: dict[str, Any] | None = None
    envelope_width: float | None = None
    n_electrons: int = DEFAULT_N_ELECTRONS
    seed: int = DEFAULT_SEED
    out_dir: str = "abmix-out"
    wavepacket_values: dict[str, Any] = field(default_factory=_default_wavepackets)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        known = {
            "constants", "geometry", "solenoids", "amplitudes", "screen",
            "envelope_width", "n_electrons", "seed", "out_dir", "wavepackets",
        }
        unknown = set(data) - known
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls()
        cfg.constants_overrides = dict(data.get("constants", {}))
        if "geometry" in data:
            cfg.geometry_values = {**_default_geometry(), **data["geometry"]}
        if "solenoids" in data:
            cfg.solenoid_values = dict(data["solenoids"])
        if "amplitudes" in data:
            cfg.amplitude_values = dict(data["amplitudes"])
        if "screen" in data:
            cfg.screen_values = dict(data["screen"])
        if "envelope_width" in data:
            cfg.envelope_width = float(data["envelope_width"])
        if "n_electrons" in data:
            cfg.n_electrons = int(data["n_electrons"])
        if "seed" in data:
            cfg.seed = int(data["seed"])
        if "out_dir" in data:
            cfg.out_dir = str(data["out_dir"])
        if "wavepackets" in data:
            cfg.wavepacket_values = {**_default_wavepackets(), **data["wavepackets"]}
        return cfg

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        with open(path, encoding="utf-8") as handle:
            try:
                data = json.load(handle)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ValidationError(f"config file {path} must hold a JSON object")
        return cls.from_dict(data)

    # -- builders ------------------------------------------------------

    def constants(self) -> PhysicalConstants:
        overrides = dict(self.constants_overrides)
        if "hbar" in overrides and "h" not in overrides:
            overrides["h"] = 2.0 * math.pi * float(overrides["hbar"])
        base = PhysicalConstants()
        return PhysicalConstants(
            e=float(overrides.get("e", base.e)),
            m=float(overrides.get("m", base.m)),
            hbar=float(overrides.get("hbar", base.hbar)),
            h=float(overrides.get("h", base.h)),
        )

    def geometry(self) -> ApparatusGeometry:
        g = self.geometry_values
        return ApparatusGeometry(
            screen_distance=float(g["L"]),
            slit_separation=float(g["d"]),
            speed=float(g["v"]),
        )

    def _solenoid_dict(self) -> dict[str, float]:
        if self.solenoid_values is not None:
            return self.solenoid_values
        return _default_solenoids(self.constants())

    def solenoid1(self) -> Solenoid:
        s = self._solenoid_dict()
        return Solenoid(field=float(s["B1"]), radius=float(s["R1"]))

    def solenoid2(self) -> Solenoid:
        s = self._solenoid_dict()
        return Solenoid(field=float(s["B2"]), radius=float(s["R2"]))

    def amplitudes(self) -> BranchAmplitudes:
        if self.amplitude_values is None:
            root_half = 1.0 / math.sqrt(2.0)
            return BranchAmplitudes(c1=complex(root_half, 0.0), c2=complex(root_half, 0.0))
        a = self.amplitude_values
        try:
            c1 = complex(float(a["c1"][0]), float(a["c1"][1]))
            c2 = complex(float(a["c2"][0]), float(a["c2"][1]))
        except (KeyError, IndexError, TypeError) as exc:
            raise ValidationError("amplitudes must provide c1 and c2 as [re, im] pairs") from exc
        return BranchAmplitudes(c1=c1, c2=c2)

    def screen(self) -> ScreenGrid:
        if self.screen_values is not None:
            s = self.screen_values
            return ScreenGrid(x_min=float(s["x_min"]), x_max=float(s["x_max"]), n=int(s["n"]))
        period = fringe_period(self.constants(), self.geometry())
        half = DEFAULT_SCREEN_PERIODS * period / 2.0
        return ScreenGrid(x_min=-half, x_max=half, n=DEFAULT_SCREEN_CELLS)

    def envelope(self) -> float:
        if self.envelope_width is not None:
            return self.envelope_width
        return DEFAULT_ENVELOPE_PERIODS * fringe_period(self.constants(), self.geometry())

    def dual_config(self) -> DualSolenoidConfig:
        return DualSolenoidConfig(
            solenoid1=self.solenoid1(),
            solenoid2=self.solenoid2(),
            geometry=self.geometry(),
            constants=self.constants(),
        )

    def effective_dict(self) -> dict[str, Any]:
        """The fully resolved configuration, round-trippable via from_dict.

        Embedded in every CLI artifact so any output can be reproduced
        from its own header.  The output directory is deliberately left
        out: it does not influence any computed value.
        """
        constants = self.constants()
        amplitudes = self.amplitudes()
        screen = self.screen()
        return {
            "constants": {"e": constants.e, "m": constants.m,
                          "hbar": constants.hbar, "h": constants.h},
            "geometry": {key: float(value) for key, value in self.geometry_values.items()},
            "solenoids": {key: float(value) for key, value in self._solenoid_dict().items()},
            "amplitudes": {"c1": [amplitudes.c1.real, amplitudes.c1.imag],
                           "c2": [amplitudes.c2.real, amplitudes.c2.imag]},
            "screen": {"x_min": screen.x_min, "x_max": screen.x_max, "n": screen.n},
            "envelope_width": self.envelope(),
            "n_electrons": self.n_electrons,
            "seed": self.seed,
            "wavepackets": dict(self.wavepacket_values),
        }

    # -- validation ----------------------------------------------------

    def validate(self) -> list[str]:
        """Collect every invariant violation; empty list means valid."""
        problems: list[str] = []

        def attempt(label, builder):
            try:
                return builder()
            except (ValidationError, KeyError, TypeError, ValueError) as exc:
                problems.append(f"{label}: {exc}")
                return None

        attempt("constants", self.constants)
        attempt("geometry", self.geometry)
        attempt("solenoid1", self.solenoid1)
        attempt("solenoid2", self.solenoid2)
        attempt("amplitudes", self.amplitudes)
        attempt("screen", self.screen)
        if not problems:
            attempt("solenoid clearance", self.dual_config)
            try:
                if self.envelope() <= 0.0:
                    problems.append(f"envelope_width: must be positive, got {self.envelope()!r}")
            except ValidationError as exc:
                problems.append(f"envelope_width: {exc}")
        if self.n_electrons < 1:
            problems.append(f"n_electrons: must be >= 1, got {self.n_electrons}")
        if not (0 <= self.seed < 2**64):
            problems.append(f"seed: must be an unsigned 64-bit integer, got {self.seed}")
        wp = self.wavepacket_values
        if wp.get("kind") not in ("gaussian", "plane"):
            problems.append(f"wavepackets.kind: must be 'gaussian' or 'plane', got {wp.get('kind')!r}")
        if not (float(wp.get("eta_max", 1.0)) > float(wp.get("eta_min", 0.0))):
            problems.append("wavepackets: eta_max must exceed eta_min")
        if int(wp.get("n", 0)) < 8:
            problems.append("wavepackets.n: need at least 8 grid samples")
        if float(wp.get("width", 1.0)) <= 0.0:
            problems.append("wavepackets.width: must be positive")
        if int(wp.get("n_ensemble", 1)) < 1:
            problems.append("wavepackets.n_ensemble: must be >= 1")
        return problems
