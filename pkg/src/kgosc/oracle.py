"""Finite-difference eigenvalue oracle.

The radial problems are discretized as symmetric tridiagonal matrices and
their lowest eigenvalues are pulled out by Sturm-sequence bisection.  Two
grids a factor of two apart are combined by Richardson extrapolation.  None
of this touches the closed forms, which makes it an independent check on
them.

Units: lambda = 1 throughout, so beta = theta and alpha = sqrt(theta).

* Deformed case: ``-phi'' + alpha^2 [g_s / sin^2(alpha q) + g_c / cos^2(alpha q)] phi
  = sbar phi`` on q in (0, pi/(2 alpha)), with g_s, g_c read directly off
  the transformed potential.  Vertex-centred grid; the poles sit at the two
  Dirichlet ends and are never evaluated.
* Undeformed case: ``-(1/p)(p f')' + (j^2/p^2 + p^2) f = kappa^2 f`` on
  (0, p_max).  Cell-centred finite volumes; the flux weight vanishes at
  p = 0, so j = 0 converges at second order like every other j.  The
  similarity transform u = sqrt(p) f makes the matrix symmetric.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (BisectionStall, DomainContainsPole, DomainTooSmall, GridMismatch,
                     KGOscError)
from .model import Mode, ModelParams, QuantumNumbers, Variant
from .spectrum import (LIMIT_THETA, PTParams, gup_energy_chain, gup_energy_eq70_printed,
                       level_pairs, limit_offset, no_gup_energy)

BISECTION_BUDGET = 200
DEFAULT_TOLERANCE = 1e-5
PT_POINTS = 1024
RADIAL_POINTS = 512
RADIAL_TAIL = 40.0


@dataclass(frozen=True)
class GridSpec:
    """``points`` counts cells; it must be a power of two of at least 64."""

    domain: tuple[float, float]
    points: int
    layout: str = "vertex"
    boundary: str = "dirichlet"

    def __post_init__(self):
        if self.points < 64 or self.points & (self.points - 1):
            raise ValueError(f"points must be a power of two >= 64, got {self.points}")
        if self.layout not in ("vertex", "cell"):
            raise ValueError("layout must be 'vertex' or 'cell'")
        lo, hi = self.domain
        if not hi > lo:
            raise ValueError("empty domain")

    @property
    def spacing(self) -> float:
        return (self.domain[1] - self.domain[0]) / self.points

    def nodes(self) -> np.ndarray:
        lo, h = self.domain[0], self.spacing
        if self.layout == "vertex":
            return lo + h * np.arange(1, self.points)
        return lo + h * (np.arange(self.points) + 0.5)

    def refined(self) -> GridSpec:
        return GridSpec(self.domain, 2 * self.points, self.layout, self.boundary)


@dataclass(frozen=True)
class TridiagonalOperator:
    diag: np.ndarray
    offdiag: np.ndarray
    grid: GridSpec | None = None

    @property
    def size(self) -> int:
        return len(self.diag)

    def norm_bound(self) -> float:
        """Gershgorin bound on the spectral radius."""
        e = np.abs(self.offdiag)
        radius = np.abs(self.diag).copy()
        radius[:-1] += e
        radius[1:] += e
        return float(radius.max())

    def dense(self) -> np.ndarray:
        return (np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1))


@dataclass(frozen=True)
class OracleResult:
    eigenvalues: np.ndarray
    grid: GridSpec | None
    extrapolated: np.ndarray | None = None
    error_estimate: np.ndarray | None = None

    @property
    def best(self) -> np.ndarray:
        return self.eigenvalues if self.extrapolated is None else self.extrapolated


def pt_grid(alpha: float, points: int = PT_POINTS) -> GridSpec:
    return GridSpec((0.0, math.pi / (2.0 * alpha)), points, "vertex")


def radial_grid(lam: float, points: int = RADIAL_POINTS, tail: float = RADIAL_TAIL) -> GridSpec:
    return GridSpec((0.0, math.sqrt(2.0 * tail * lam)), points, "cell")


def substitution_strengths(theta: float, j: int) -> tuple[float, float]:
    """Coefficients of 1/sin^2 and 1/cos^2 from inserting p = tan(alpha q)/sqrt(beta).

    These come straight from the transformed potential, not from the zeta
    roots, so the oracle does not inherit a wrong root choice.
    """
    return j * j - 0.25, j * j + 0.75 - 2.0 / theta + 1.0 / theta ** 2


def build_trig_operator(sin_strength: float, cos_strength: float, alpha: float,
                        grid: GridSpec) -> TridiagonalOperator:
    lo, hi = grid.domain
    pole = math.pi / (2.0 * alpha)
    if lo < 0 or hi > pole * (1 + 1e-12) or grid.layout != "vertex":
        raise DomainContainsPole(
            f"grid {grid.domain} must lie inside [0, {pole}] (vertex layout)")
    q = grid.nodes()
    h = grid.spacing
    x = alpha * q
    potential = alpha ** 2 * (sin_strength / np.sin(x) ** 2 + cos_strength / np.cos(x) ** 2)
    diag = 2.0 / h ** 2 + potential
    offdiag = np.full(len(q) - 1, -1.0 / h ** 2)
    return TridiagonalOperator(diag, offdiag, grid)


def build_pt_operator(pt: PTParams, alpha: float, grid: GridSpec) -> TridiagonalOperator:
    """-d^2/dq^2 + alpha^2 [zeta1(zeta1-1)/sin^2 + zeta2(zeta2-1)/cos^2]."""
    return build_trig_operator(pt.sin_strength, pt.cos_strength, alpha, grid)


def build_radial_operator_no_gup(lam: float, j: int, grid: GridSpec,
                                 tail: float = RADIAL_TAIL) -> TridiagonalOperator:
    lo, hi = grid.domain
    if lo != 0.0 or hi * hi / (2.0 * lam) < tail * (1 - 1e-12):
        raise DomainTooSmall(
            f"need (0, p_max) with p_max^2/(2 lambda) >= {tail}, got {grid.domain}")
    if grid.layout != "cell":
        raise ValueError("radial operator needs a cell-centred grid")
    h = grid.spacing
    p = grid.nodes()
    faces = h * np.arange(grid.points + 1)
    diag = (faces[1:] + faces[:-1]) / (p * h * h) + j * j / p ** 2 + (p / lam) ** 2
    offdiag = -faces[1:-1] / (h * h * np.sqrt(p[:-1] * p[1:]))
    return TridiagonalOperator(diag, offdiag, grid)


def sturm_count(diag, offdiag_sq, x: float) -> int:
    """Number of eigenvalues strictly below x (LDL^T pivot signs)."""
    count = 0
    tiny = 1e-300
    q = diag[0] - x
    if q < 0:
        count += 1
    for d, e2 in zip(diag[1:], offdiag_sq):
        if q == 0.0:
            q = tiny
        q = d - x - e2 / q
        if q < 0:
            count += 1
    return count


def eigen_lowest(op: TridiagonalOperator, count: int, rtol: float = 1e-15) -> OracleResult:
    """The ``count`` smallest eigenvalues to absolute accuracy rtol * ||op||.

    Bisection also stops once the bracket can no longer be split in floating
    point, so the default effectively runs to rounding level; fine grids have
    ||op|| ~ 1/h^2 and a looser bound would swamp the discretization error.
    """
    limit = op.size if op.grid is None else op.grid.points // 4
    if count < 1 or count > limit:
        raise ValueError(f"count must be in [1, {limit}]")
    diag = op.diag.tolist()
    e2 = (op.offdiag ** 2).tolist()
    norm = op.norm_bound()
    tol = rtol * norm
    lows = [-norm] * count
    highs = [norm] * count
    values = []
    for k in range(count):
        lo, hi = lows[k], highs[k]
        for _ in range(BISECTION_BUDGET):
            mid = 0.5 * (lo + hi)
            if hi - lo <= tol or mid <= lo or mid >= hi:
                break
            c = sturm_count(diag, e2, mid)
            # a single count brackets every remaining eigenvalue at once
            for kk in range(k, count):
                if kk < c:
                    highs[kk] = min(highs[kk], mid)
                else:
                    lows[kk] = max(lows[kk], mid)
            lo, hi = lows[k], highs[k]
        else:
            raise BisectionStall(
                f"eigenvalue {k} not isolated in {BISECTION_BUDGET} steps")
        values.append(0.5 * (lo + hi))
    return OracleResult(np.array(values), op.grid)


def richardson_pair(coarse: OracleResult, fine: OracleResult) -> OracleResult:
    if coarse.grid is None or fine.grid is None:
        raise GridMismatch("Richardson pairing needs grid metadata on both results")
    if fine.grid.points != 2 * coarse.grid.points or fine.grid.domain != coarse.grid.domain \
            or fine.grid.layout != coarse.grid.layout:
        raise GridMismatch("fine grid must halve the coarse spacing on one domain")
    m = min(len(coarse.eigenvalues), len(fine.eigenvalues))
    c, f = coarse.eigenvalues[:m], fine.eigenvalues[:m]
    return OracleResult(f, fine.grid, (4.0 * f - c) / 3.0, np.abs(f - c) / 3.0)


def observed_order(coarse, middle, fine) -> np.ndarray:
    """Convergence order from three successive grid halvings."""
    return np.log2(np.abs((np.asarray(coarse) - middle) / (np.asarray(middle) - fine)))


def solve_pt(theta: float, j: int, count: int, points: int = PT_POINTS) -> OracleResult:
    """Extrapolated lowest sbar/lambda for the deformed problem at angular index j."""
    alpha = math.sqrt(theta)
    g_sin, g_cos = substitution_strengths(theta, j)
    grid = pt_grid(alpha, points)
    coarse = eigen_lowest(build_trig_operator(g_sin, g_cos, alpha, grid), count)
    fine = eigen_lowest(build_trig_operator(g_sin, g_cos, alpha, grid.refined()), count)
    return richardson_pair(coarse, fine)


def solve_radial(j: int, count: int, points: int = RADIAL_POINTS) -> OracleResult:
    """Extrapolated lowest kappa^2 (lambda = 1) for the undeformed problem."""
    grid = radial_grid(1.0, points)
    coarse = eigen_lowest(build_radial_operator_no_gup(1.0, j, grid), count)
    fine = eigen_lowest(build_radial_operator_no_gup(1.0, j, grid.refined()), count)
    return richardson_pair(coarse, fine)


def energy_from_pt_eigenvalue(r: float, theta: float, sbar: float) -> float:
    """E/(m0 c^2) from sbar/lambda via varsigma = sbar - 1/beta."""
    e_sq = 1.0 + r * (sbar - 1.0 / theta)
    return math.sqrt(e_sq) if e_sq >= 0 else float("nan")


def energy_from_kappa_sq(r: float, kappa_sq: float) -> float:
    """E/(m0 c^2) from kappa^2 lambda^2 = 2 lambda + varsigma (lambda = 1)."""
    e_sq = 1.0 + r * (kappa_sq - 2.0)
    return math.sqrt(e_sq) if e_sq >= 0 else float("nan")


@dataclass(frozen=True)
class VerifyRow:
    n: int
    j: int
    N: int
    oracle_E: float | None
    chain_E: float | None
    eq70_E: float | None
    rel_diff_chain: float | None
    rel_diff_eq70: float | None
    passed: bool
    error: str = ""


@dataclass(frozen=True)
class VerifyReport:
    mode: Mode
    variant: Variant
    r: float
    theta: float
    tolerance: float
    rows: tuple[VerifyRow, ...]
    anomalies: tuple[str, ...] = ()
    limit_offsets: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(row.passed for row in self.rows)

    def max_rel_diff(self, column: str) -> float | None:
        vals = [getattr(row, column) for row in self.rows if getattr(row, column) is not None]
        return max(vals) if vals else None


def _rel(a, b):
    if a is None or b is None:
        return None
    return abs(a - b) / abs(b)


def verify_spectrum(params: ModelParams, qn_range: tuple[int, int], mode: Mode = Mode.NOGUP,
                    variant: Variant = Variant.EQ60, tolerance: float = DEFAULT_TOLERANCE,
                    allow_extrapolation: bool = False, points: int | None = None) -> VerifyReport:
    """Oracle energies against the closed forms for every (n, j) in range.

    Pass/fail is decided on oracle versus chain only; the printed closed form
    is reported for comparison.  For the eq69 root a limit pre-check is run
    first and its failure is recorded as an anomaly.
    """
    mode, variant = Mode(mode), Variant(variant)
    n_max, j_max = qn_range
    r, theta = params.r, params.theta
    gup = mode is Mode.GUP
    pairs = level_pairs(n_max, j_max, gup, allow_extrapolation)

    anomalies = []
    offsets = {}
    limit_ok = {}
    if gup:
        for n, j in pairs:
            qn = QuantumNumbers(n, j)
            off = limit_offset(r, qn, variant) if j or allow_extrapolation else 0.0
            offsets[(n, j)] = off
            limit_ok[(n, j)] = abs(off) <= 1e-6 * (1.0 + 2.0 * r * qn.N)
        bad = [k for k, ok in limit_ok.items() if not ok]
        if bad:
            worst = max(abs(offsets[k]) for k in bad)
            anomalies.append(
                f"{variant.value} limit inconsistency: theta->{LIMIT_THETA:g} does not recover "
                f"E^2 = 1 + 2rN; E^2 offset up to {worst:.6g} (r = {r:g})")

    oracle_cache = {}
    rows = []
    for n, j in pairs:
        qn = QuantumNumbers(n, j)
        try:
            key = abs(j)
            if key not in oracle_cache:
                if gup:
                    oracle_cache[key] = solve_pt(theta, j, n_max + 1, points or PT_POINTS)
                else:
                    oracle_cache[key] = solve_radial(j, n_max + 1, points or RADIAL_POINTS)
            eig = float(oracle_cache[key].best[n])
            if gup:
                oracle_e = energy_from_pt_eigenvalue(r, theta, eig)
                chain_e = gup_energy_chain(r, theta, qn, variant, allow_extrapolation)[0]
                try:
                    eq70_e = gup_energy_eq70_printed(r, theta, qn, allow_extrapolation)[0]
                except KGOscError:
                    eq70_e = None
            else:
                oracle_e = energy_from_kappa_sq(r, eig)
                chain_e = no_gup_energy(r, qn)[0]
                eq70_e = None
        except KGOscError as exc:
            rows.append(VerifyRow(n, j, qn.N, None, None, None, None, None, False,
                                  type(exc).__name__))
            continue
        rel_chain = _rel(chain_e, oracle_e)
        passed = (rel_chain is not None and rel_chain <= tolerance
                  and limit_ok.get((n, j), True))
        rows.append(VerifyRow(n, j, qn.N, oracle_e, chain_e, eq70_e, rel_chain,
                              _rel(eq70_e, oracle_e), passed))
    return VerifyReport(mode, variant, r, theta, tolerance, tuple(rows), tuple(anomalies),
                        offsets)
