"""Momentum-space eigenfunctions of the Klein-Gordon oscillator.

Undeformed states are Laguerre-type::

    f(p) = p^|j| exp(-p^2 / (2 lam)) 1F1(-n; |j|+1; p^2/lam)

Deformed states live naturally on ``z = beta p^2 / (1 + beta p^2)``::

    h(p) = p^(-1/2) z^(zeta1/2) (1-z)^(zeta2/2) 2F1(-n, n+zeta1+zeta2; zeta1+1/2; z)

Only the regular branch at z = 0 is kept.  Both carry the angular factor
``exp(i |j| angle)``.

Normalization uses ``p dp dangle`` without deformation and
``p dp dangle / (1 + beta p^2)`` with it; the latter is the measure under
which the deformed position operators are symmetric, and under which states
of equal j are orthogonal.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BetaZero, GridTooCoarse, NonPositiveMomentum
from .model import Mode, ModelParams, QuantumNumbers, Variant
from .quadrature import integrate
from .specfun import gauss2f1_poly, kummer_poly
from .spectrum import gup_energy_chain, no_gup_energy, pt_parameters

# Gaussian tail cut: k p^2 / 2 = TAIL_EXPONENT
TAIL_EXPONENT = 40.0


def _require_beta(params):
    if params.beta <= 0:
        raise BetaZero("the q and z maps need beta > 0")


def map_q_of_p(p, params: ModelParams):
    """q = integral dp / sqrt(a(p)) = arctan(sqrt(beta) p) / alpha."""
    _require_beta(params)
    return np.arctan(math.sqrt(params.beta) * np.asarray(p, dtype=float)) / params.alpha


def map_z_of_p(p, params: ModelParams):
    """z = sin^2(alpha q(p)), in the algebraic form beta p^2 / (1 + beta p^2)."""
    _require_beta(params)
    bp2 = params.beta * np.asarray(p, dtype=float) ** 2
    return bp2 / (1.0 + bp2)


def p_of_z(z, params: ModelParams):
    _require_beta(params)
    z = np.asarray(z, dtype=float)
    return np.sqrt(z / (params.beta * (1.0 - z)))


def radial_no_gup(qn: QuantumNumbers, params: ModelParams, p):
    """Unnormalized undeformed radial function."""
    p = np.asarray(p, dtype=float)
    t = p * p / params.lam
    aj = abs(qn.j)
    return p ** aj * np.exp(-0.5 * t) * kummer_poly(qn.n, aj + 1.0, t)


def gup_hypergeometric_parameters(qn: QuantumNumbers, theta: float,
                                  variant: Variant = Variant.EQ60,
                                  allow_extrapolation: bool = False):
    """(pt, b, c) for the terminating 2F1(-n, b; c; z).

    With a = -n and a + b = zeta1 + zeta2, b = n + zeta1 + zeta2; c = zeta1 + 1/2.
    """
    pt = pt_parameters(theta, qn.j, variant, allow_extrapolation)
    return pt, qn.n + pt.zeta1 + pt.zeta2, pt.zeta1 + 0.5


def radial_gup(qn: QuantumNumbers, params: ModelParams, p, variant: Variant = Variant.EQ60,
               allow_extrapolation: bool = False):
    """Unnormalized deformed radial function, defined for p > 0 only."""
    _require_beta(params)
    p = np.asarray(p, dtype=float)
    if np.any(p <= 0):
        raise NonPositiveMomentum("p^(-1/2) prefactor is singular at p = 0")
    pt, b, c = gup_hypergeometric_parameters(qn, params.theta, variant, allow_extrapolation)
    bp2 = params.beta * p * p
    z = bp2 / (1.0 + bp2)
    one_minus_z = 1.0 / (1.0 + bp2)
    return (p ** -0.5 * z ** (0.5 * pt.zeta1) * one_minus_z ** (0.5 * pt.zeta2)
            * gauss2f1_poly(qn.n, b, c, z))


def radial(qn, params, p, mode=Mode.NOGUP, variant=Variant.EQ60, allow_extrapolation=False):
    if Mode(mode) is Mode.GUP:
        return radial_gup(qn, params, p, variant, allow_extrapolation)
    return radial_no_gup(qn, params, p)


def p_tail(params: ModelParams) -> float:
    """Momentum where the undeformed Gaussian factor has fallen to exp(-TAIL_EXPONENT)."""
    return math.sqrt(2.0 * TAIL_EXPONENT * params.lam)


def overlap_integral(qn1, qn2, params, mode=Mode.NOGUP, variant=Variant.EQ60,
                     deformed_measure=True, allow_extrapolation=False,
                     order=20, rtol=1e-12) -> float:
    """Integral of R1 R2 over the plane (angular factor 2 pi included), unnormalized."""
    mode = Mode(mode)
    if mode is Mode.NOGUP:
        def integrand(p):
            return (2 * math.pi * p * radial_no_gup(qn1, params, p)
                    * radial_no_gup(qn2, params, p))
        return integrate(integrand, 0.0, p_tail(params), rtol=rtol, order=order)

    sqrt_beta = math.sqrt(params.beta)

    def integrand(z):
        p = p_of_z(z, params)
        dp_dz = 0.5 / sqrt_beta * z ** -0.5 * (1.0 - z) ** -1.5
        weight = (1.0 - z) if deformed_measure else 1.0
        r1 = radial_gup(qn1, params, p, variant, allow_extrapolation)
        r2 = radial_gup(qn2, params, p, variant, allow_extrapolation)
        return 2 * math.pi * r1 * r2 * p * weight * dp_dz
    return integrate(integrand, 0.0, 1.0, rtol=rtol, order=order)


@lru_cache(maxsize=4096)
def _norm_constant(qn, params, mode, variant, deformed_measure, allow_extrapolation, order):
    total = overlap_integral(qn, qn, params, mode, variant, deformed_measure,
                             allow_extrapolation, order=order)
    return 1.0 / math.sqrt(total)


def normalize(qn: QuantumNumbers, params: ModelParams, mode: Mode = Mode.NOGUP,
              variant: Variant = Variant.EQ60, deformed_measure: bool = True,
              allow_extrapolation: bool = False, order: int = 20) -> float:
    """Constant C with integral |C R|^2 dmu = 1; memoized per state and settings."""
    return _norm_constant(qn, params, Mode(mode), Variant(variant), bool(deformed_measure),
                          bool(allow_extrapolation), int(order))


def psi_no_gup(qn: QuantumNumbers, params: ModelParams, p, theta_angle):
    c = normalize(qn, params, Mode.NOGUP)
    return c * radial_no_gup(qn, params, p) * np.exp(1j * abs(qn.j) * np.asarray(theta_angle))


def psi_gup(qn: QuantumNumbers, params: ModelParams, p, theta_angle,
            variant: Variant = Variant.EQ60, deformed_measure: bool = True,
            allow_extrapolation: bool = False):
    c = normalize(qn, params, Mode.GUP, variant, deformed_measure, allow_extrapolation)
    return (c * radial_gup(qn, params, p, variant, allow_extrapolation)
            * np.exp(1j * abs(qn.j) * np.asarray(theta_angle)))


@dataclass(frozen=True)
class RadialProfile:
    grid: np.ndarray
    values: np.ndarray
    norm_constant: float


def radial_profile(qn, params, grid, mode=Mode.NOGUP, variant=Variant.EQ60,
                   allow_extrapolation=False) -> RadialProfile:
    grid = np.asarray(grid, dtype=float)
    c = normalize(qn, params, mode, variant, allow_extrapolation=allow_extrapolation)
    values = c * radial(qn, params, grid, mode, variant, allow_extrapolation)
    return RadialProfile(grid, values, c)


def count_radial_nodes(profile: RadialProfile) -> int:
    """Strict sign changes of the radial values, ignoring exact zeros."""
    values = np.asarray(profile.values)
    idx = np.flatnonzero(values != 0)
    signs = np.sign(values[idx])
    flips = np.flatnonzero(signs[1:] != signs[:-1])
    if flips.size > 1 and np.min(np.diff(idx[flips])) < 3:
        warnings.warn("sign changes closer than 3 grid points", GridTooCoarse)
    return int(flips.size)


def sample_grid(params: ModelParams, mode: Mode, samples: int) -> np.ndarray:
    """Sampling momenta for profiles.

    Undeformed: uniform on [0, p_tail].  Deformed: half the points geometric
    over six decades below 5% of the range, the rest uniform up to the
    momentum where z = 0.999.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if Mode(mode) is Mode.NOGUP:
        return np.linspace(0.0, p_tail(params), samples)
    p_hi = math.sqrt(999.0 / params.beta)
    p_knee = 0.05 * p_hi
    n_geo = samples // 2
    geo = np.geomspace(p_knee * 1e-6, p_knee, n_geo, endpoint=False) if n_geo else np.empty(0)
    lin = np.linspace(p_knee, p_hi, samples - n_geo)
    return np.concatenate([geo, lin])


_D1 = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
_D2 = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0
_OFFSETS = np.arange(-3, 4)


def _derivatives(func, p, scale):
    """Sixth-order central differences of func at the points p."""
    p = np.asarray(p, dtype=float)
    h = np.minimum(0.01 * scale, p / 8.0)
    stencil = func(p[:, None] + h[:, None] * _OFFSETS[None, :])
    f0 = stencil[:, 3]
    d1 = stencil @ _D1 / h
    d2 = stencil @ _D2 / h ** 2
    return f0, d1, d2


def default_sample_points(params: ModelParams, count: int = 50) -> np.ndarray:
    s = math.sqrt(params.lam)
    return np.linspace(0.1 * s, 5.0 * s, count)


def ode_residual(qn: QuantumNumbers, params: ModelParams, mode: Mode = Mode.NOGUP,
                 variant: Variant = Variant.EQ60, sample_points=None, energy: float | None = None,
                 allow_extrapolation: bool = False) -> float:
    """Largest residual of the radial equation, relative to its largest term.

    ``energy`` (units of m0 c^2) defaults to the closed-form level for the
    mode and variant; pass another value to test a competing formula.
    """
    mode = Mode(mode)
    if sample_points is None:
        sample_points = default_sample_points(params)
    p = np.asarray(sample_points, dtype=float)
    lam = params.lam
    if energy is None:
        if mode is Mode.GUP:
            energy = gup_energy_chain(params.r, params.theta, qn, variant, allow_extrapolation)[0]
        else:
            energy = no_gup_energy(params.r, qn)[0]
    # varsigma = (E^2 - m0^2 c^4) / c^2
    vs = (energy ** 2 - 1.0) * (params.m0 * params.c) ** 2

    if mode is Mode.NOGUP:
        f, d1, d2 = _derivatives(lambda x: radial_no_gup(qn, params, x), p, math.sqrt(lam))
        kappa_sq = (2.0 * lam + vs) / lam ** 2
        terms = np.stack([d2, d1 / p, -qn.j ** 2 * f / p ** 2, kappa_sq * f,
                          -(p / lam) ** 2 * f])
    else:
        h, d1, d2 = _derivatives(
            lambda x: radial_gup(qn, params, x, variant, allow_extrapolation), p, math.sqrt(lam))
        beta = params.beta
        a = lam ** 2 * (1.0 + beta * p ** 2) ** 2
        b = -a / p - 2.0 * beta * lam ** 2 * (1.0 + beta * p ** 2) * p
        c = p ** 2 + qn.j ** 2 * a / p ** 2 - 2.0 * lam * (1.0 + beta * p ** 2)
        terms = np.stack([-a * d2, b * d1, c * h, -vs * h])
    scale = np.max(np.abs(terms), axis=0)
    return float(np.max(np.abs(terms.sum(axis=0)) / scale))
