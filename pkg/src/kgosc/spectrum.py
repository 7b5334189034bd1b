"""Closed-form spectra of the 2D Klein-Gordon oscillator.

Three evaluators are kept side by side so they can be compared row by row:

* :func:`no_gup_energy` -- the undeformed result ``E^2 = 1 + 2 r N``;
* :func:`gup_energy_chain` -- quantization of the Poschl-Teller problem,
  ``sbar = alpha^2 (zeta1 + zeta2 + 2n)^2`` shifted back by ``1/beta``;
* :func:`gup_energy_eq70_printed` -- the closed form exactly as it appears in
  print, whose bracket disagrees with the chain.

All energies are in units of ``m0 c^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ImaginaryEnergy, KGOscError, ThetaOutOfRange, ZeroAngularMomentumInGUP
from .model import Mode, ModelParams, QuantumNumbers, Source, Variant

# the beta -> 0 limit is probed at this deformation
LIMIT_THETA = 1e-9


@dataclass(frozen=True)
class PTParams:
    zeta1: float
    zeta2: float
    Sigma: float
    theta: float
    j: int
    variant: Variant = Variant.EQ60

    @property
    def sin_strength(self) -> float:
        """zeta1 (zeta1 - 1), the coefficient of 1/sin^2."""
        return self.zeta1 * (self.zeta1 - 1.0)

    @property
    def cos_strength(self) -> float:
        return self.zeta2 * (self.zeta2 - 1.0)


def _check_theta(theta, allow_zero=False):
    lo_ok = theta >= 0 if allow_zero else theta > 0
    if not (math.isfinite(theta) and lo_ok and theta < 1):
        raise ThetaOutOfRange(f"theta = {theta!r} outside (0, 1)")


def _check_j(j, allow_extrapolation):
    if j == 0 and not allow_extrapolation:
        raise ZeroAngularMomentumInGUP("j = 0 in GUP mode")


def sigma_factor(theta: float, j: int) -> float:
    """Anisotropy sqrt(1 + j^2 / (1/theta - 1)^2); equals 1 at theta = 0."""
    if theta == 0:
        return 1.0
    return math.hypot(1.0, j * theta / (1.0 - theta))


def _zeta2_offset(variant):
    return 0.5 if Variant(variant) is Variant.EQ60 else 1.0


def pt_parameters(theta: float, j: int, variant: Variant = Variant.EQ60,
                  allow_extrapolation: bool = False) -> PTParams:
    _check_theta(theta)
    _check_j(j, allow_extrapolation)
    variant = Variant(variant)
    # (1/theta - 1) * Sigma, written without the 1/theta blow-up in Sigma
    root = math.hypot(1.0 / theta - 1.0, j)
    return PTParams(zeta1=abs(j) + 0.5, zeta2=_zeta2_offset(variant) + root,
                    Sigma=sigma_factor(theta, j), theta=theta, j=j, variant=variant)


def _pair(e_sq):
    if not e_sq >= 0:
        raise ImaginaryEnergy(f"E^2/(m0 c^2)^2 = {e_sq!r} < 0")
    e = math.sqrt(e_sq)
    return e, -e


def no_gup_energy(r: float, qn: QuantumNumbers) -> tuple[float, float]:
    return _pair(1.0 + 2.0 * r * qn.N)


def gup_energy_chain_sq(r: float, theta: float, qn: QuantumNumbers,
                        variant: Variant = Variant.EQ60,
                        allow_extrapolation: bool = False) -> float:
    """E^2 from sbar = alpha^2 (zeta1 + zeta2 + 2n)^2 and sbar = s + 1/beta.

    Nondimensionally ``E^2 = 1 + r theta S^2 - r/theta``.  Splitting
    ``S = A + (1/theta - 1) Sigma`` lets the two 1/theta pieces cancel
    analytically, so the result stays accurate down to theta ~ 1e-12.
    """
    pt = pt_parameters(theta, qn.j, variant, allow_extrapolation)
    A = pt.zeta1 + _zeta2_offset(variant) + 2 * qn.n
    theta_root = math.hypot(1.0 - theta, theta * qn.j)
    bracket = theta * A * A + 2.0 * A * theta_root - 2.0 + theta + theta * qn.j ** 2
    return 1.0 + r * bracket


def gup_energy_chain(r: float, theta: float, qn: QuantumNumbers,
                     variant: Variant = Variant.EQ60,
                     allow_extrapolation: bool = False) -> tuple[float, float]:
    return _pair(gup_energy_chain_sq(r, theta, qn, variant, allow_extrapolation))


def pt_eigenvalue(pt: PTParams, n: int) -> float:
    """Dimensionless Poschl-Teller eigenvalue sbar/lambda = theta (zeta1 + zeta2 + 2n)^2."""
    return pt.theta * (pt.zeta1 + pt.zeta2 + 2 * n) ** 2


def gup_energy_eq70_printed(r: float, theta: float, qn: QuantumNumbers,
                            allow_extrapolation: bool = False) -> tuple[float, float]:
    """The printed closed form, with (beta/beta0) r^2 read as r*theta."""
    _check_theta(theta, allow_zero=True)
    _check_j(qn.j, allow_extrapolation or theta == 0)
    N, j = qn.N, qn.j
    sig = sigma_factor(theta, j)
    e_sq = (1.0 - 2.0 * r + 2.0 * sig * r * (N + 1)
            + r * theta * (N ** 2 - 2.0 * sig * (N + 1) + j ** 2))
    return _pair(e_sq)


def limit_offset(r: float, qn: QuantumNumbers, variant: Variant = Variant.EQ60,
                 theta: float = LIMIT_THETA) -> float:
    """E^2(chain, theta -> 0) minus the undeformed E^2.

    Zero for the canonical root; ``r`` for the eq69 variant, whose extra 1/2
    in zeta2 survives the limit.
    """
    return (gup_energy_chain_sq(r, theta, qn, variant, allow_extrapolation=True)
            - (1.0 + 2.0 * r * qn.N))


@dataclass(frozen=True)
class SpectrumRow:
    n: int
    j: int
    N: int
    E_plus: float | None
    E_minus: float | None
    source: Source
    error_flag: str = ""


@dataclass(frozen=True)
class SpectrumTable:
    rows: tuple[SpectrumRow, ...]
    params: ModelParams


def level_pairs(n_max: int, j_max: int, gup: bool, allow_j0: bool = False):
    """All (n, j) with n <= n_max, |j| <= j_max, sorted by (N, |j|, n, j)."""
    if n_max < 0 or j_max < 0:
        raise ValueError("n_max and j_max must be non-negative")
    pairs = [(n, j) for n in range(n_max + 1) for j in range(-j_max, j_max + 1)
             if not (gup and j == 0 and not allow_j0)]
    return sorted(pairs, key=lambda nj: (2 * nj[0] + abs(nj[1]), abs(nj[1]), nj[0], nj[1]))


def spectrum_table(params: ModelParams, n_max: int, j_max: int, mode: Mode = Mode.NOGUP,
                   variant: Variant = Variant.EQ60,
                   allow_extrapolation: bool = False) -> SpectrumTable:
    mode = Mode(mode)
    gup = mode is Mode.GUP
    if gup:
        _check_theta(params.theta)
    rows = []
    for n, j in level_pairs(n_max, j_max, gup, allow_extrapolation):
        qn = QuantumNumbers(n, j)
        try:
            if gup:
                ep, em = gup_energy_chain(params.r, params.theta, qn, variant,
                                          allow_extrapolation)
                source = Source.GUP_CHAIN
            else:
                ep, em = no_gup_energy(params.r, qn)
                source = Source.NOGUP_CLOSED
        except KGOscError as exc:
            rows.append(SpectrumRow(n, j, qn.N, None, None,
                                    Source.GUP_CHAIN if gup else Source.NOGUP_CLOSED,
                                    type(exc).__name__))
            continue
        rows.append(SpectrumRow(n, j, qn.N, ep, em, source))
    return SpectrumTable(tuple(rows), params)
