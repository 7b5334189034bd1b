"""Physical parameters, their dimensionless reduction, and quantum numbers.

Everything downstream works with two dimensionless groups:

* ``r = hbar*omega / (m0*c**2)``, the relativistic oscillator strength;
* ``theta = beta*lambda``, the deformation measured in units of the
  oscillator momentum scale ``lambda = m0*omega*hbar``.

Energies are always reported in units of ``m0*c**2``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import (NegativeRadialIndex, NonPositiveInput, ThetaOutOfRange,
                     ZeroAngularMomentumInGUP)


class Source(str, enum.Enum):
    NOGUP_CLOSED = "NoGUP_closed"
    GUP_CHAIN = "GUP_chain"
    GUP_EQ70_PRINTED = "GUP_eq70_printed"
    ORACLE = "Oracle"


class Variant(str, enum.Enum):
    """Which root for the cosine Poschl-Teller parameter.

    ``EQ60`` is ``zeta2 = 1/2 + (1/theta - 1)*Sigma`` (canonical).  ``EQ69``
    is the printed ``1/2 + 1/2 + ...`` reading, kept for comparison only.
    """

    EQ60 = "eq60"
    EQ69 = "eq69"


class Mode(str, enum.Enum):
    NOGUP = "nogup"
    GUP = "gup"


@dataclass(frozen=True)
class ModelParams:
    m0: float
    omega: float
    hbar: float
    c: float
    beta: float
    lam: float = field(init=False)
    r: float = field(init=False)
    theta: float = field(init=False)
    alpha: float = field(init=False)

    def __post_init__(self):
        for name in ("m0", "omega", "hbar", "c", "beta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise NonPositiveInput(f"{name} must be finite, got {value!r}")
        for name in ("m0", "omega", "hbar", "c"):
            if getattr(self, name) <= 0:
                raise NonPositiveInput(f"{name} must be > 0, got {getattr(self, name)!r}")
        if self.beta < 0:
            raise NonPositiveInput(f"beta must be >= 0, got {self.beta!r}")
        lam = self.m0 * self.omega * self.hbar
        theta = self.beta * lam
        if theta >= 1.0:
            raise ThetaOutOfRange(
                f"theta = beta*lambda = {theta!r} must be < 1")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "r", self.hbar * self.omega / (self.m0 * self.c ** 2))
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "alpha", lam * math.sqrt(self.beta))

    @property
    def gup(self) -> bool:
        return self.beta > 0


def make_params(m0, omega, hbar, c, beta) -> ModelParams:
    return ModelParams(float(m0), float(omega), float(hbar), float(c), float(beta))


def params_from_dimensionless(r: float, theta: float = 0.0) -> ModelParams:
    """Natural-unit parameters (m0 = hbar = c = 1) realising a given (r, theta).

    With these units ``lambda = omega = r`` and ``beta = theta / r``.
    """
    if not (math.isfinite(r) and r > 0):
        raise NonPositiveInput(f"r must be a finite positive number, got {r!r}")
    if not math.isfinite(theta) or theta < 0:
        raise NonPositiveInput(f"theta must be finite and >= 0, got {theta!r}")
    if theta >= 1.0:
        raise ThetaOutOfRange(f"theta = {theta!r} must be < 1")
    return make_params(1.0, r, 1.0, 1.0, theta / r)


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial index ``n`` and angular index ``j`` (called ``l`` in the flat-space case)."""

    n: int
    j: int

    @property
    def N(self) -> int:
        return 2 * self.n + abs(self.j)


def make_quantum_numbers(n: int, j: int, gup_mode: bool = False,
                         allow_extrapolation: bool = False) -> QuantumNumbers:
    if int(n) != n or int(j) != j:
        raise TypeError("quantum numbers must be integers")
    n, j = int(n), int(j)
    if n < 0:
        raise NegativeRadialIndex(f"n = {n}")
    if gup_mode and j == 0 and not allow_extrapolation:
        raise ZeroAngularMomentumInGUP(
            "j = 0 gives zeta1 = 1/2 outside the "
            "Poschl-Teller validity range; pass allow_extrapolation to force it")
    return QuantumNumbers(n, j)


@dataclass(frozen=True)
class EnergyLevel:
    value: float
    branch: int
    source: Source

    def __post_init__(self):
        if self.branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")

    @classmethod
    def pair(cls, magnitude: float, source: Source) -> tuple[EnergyLevel, EnergyLevel]:
        return cls(magnitude, 1, source), cls(-magnitude, -1, source)
