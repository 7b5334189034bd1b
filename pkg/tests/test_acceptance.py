"""Exit criteria for the package, one test per criterion, tolerances fixed."""
import csv
import io
import json
import time
from fractions import Fraction
from math import factorial

import numpy as np

import kgosc.cli as cli
from kgosc.model import Mode, QuantumNumbers, Variant, params_from_dimensionless
from kgosc.oracle import (energy_from_kappa_sq, energy_from_pt_eigenvalue, solve_pt,
                          solve_radial)
from kgosc.specfun import gauss2f1_poly, hypergeometric_exact, kummer_poly
from kgosc.spectrum import (gup_energy_chain, limit_offset, no_gup_energy, pt_eigenvalue,
                            pt_parameters)
from kgosc.wavefn import (count_radial_nodes, normalize, ode_residual, overlap_integral,
                          radial_profile, sample_grid)

N_MAX, J_MAX = 3, 3
THETAS = (0.1, 0.3, 0.5)


def _run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr().out


def test_c1_no_gup_oracle(acceptance):
    r = 0.5
    start = time.perf_counter()
    worst = 0.0
    for j in range(-J_MAX, J_MAX + 1):
        kappa_sq = solve_radial(j, N_MAX + 1).extrapolated
        for n in range(N_MAX + 1):
            exact = no_gup_energy(r, QuantumNumbers(n, j))[0]
            worst = max(worst, abs(energy_from_kappa_sq(r, kappa_sq[n]) - exact) / exact)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-5 and elapsed < 10
    acceptance("C1 no-GUP oracle vs closed form", ok,
               f"max rel diff {worst:.3e} (tol 1e-5), {elapsed:.2f} s (limit 10 s)")
    assert ok


def test_c2_gup_oracle(acceptance):
    r = 0.2
    start = time.perf_counter()
    worst_eig = worst_energy = worst_map = 0.0
    for theta in THETAS:
        for j in [k for k in range(-J_MAX, J_MAX + 1) if k]:
            pt = pt_parameters(theta, j)
            sbar = solve_pt(theta, j, N_MAX + 1).extrapolated
            for n in range(N_MAX + 1):
                qn = QuantumNumbers(n, j)
                exact = pt_eigenvalue(pt, n)
                chain = gup_energy_chain(r, theta, qn)[0]
                worst_eig = max(worst_eig, abs(sbar[n] - exact) / exact)
                worst_energy = max(worst_energy,
                                   abs(energy_from_pt_eigenvalue(r, theta, sbar[n]) - chain) / chain)
                worst_map = max(worst_map,
                                abs(energy_from_pt_eigenvalue(r, theta, exact) - chain) / chain)
    elapsed = time.perf_counter() - start
    ok = worst_eig <= 1e-5 and worst_energy <= 1e-5 and worst_map <= 1e-12 and elapsed < 60
    acceptance("C2 GUP oracle vs quantization", ok,
               f"eigenvalue {worst_eig:.3e}, energy {worst_energy:.3e} (tol 1e-5); "
               f"exact-map {worst_map:.1e} (tol 1e-12); {elapsed:.2f} s (limit 60 s)")
    assert ok


def test_c3_limit_consistency(acceptance):
    r = 0.5
    worst = 0.0
    for j in [k for k in range(-J_MAX, J_MAX + 1) if k]:
        for n in range(N_MAX + 1):
            qn = QuantumNumbers(n, j)
            ref = no_gup_energy(r, qn)[0]
            worst = max(worst, abs(gup_energy_chain(r, 1e-9, qn)[0] - ref) / ref)
    ok = worst <= 1e-6
    acceptance("C3 theta -> 0 limit", ok, f"max rel diff {worst:.3e} (tol 1e-6)")
    assert ok


def test_c4_discrepancy_documentation(acceptance, capsys):
    code60, out60 = _run(["verify", "--mode", "gup", "--r", "0.2", "--theta", "0.3",
                          "--variant", "eq60"], capsys)
    lines = [json.loads(ln) for ln in out60.splitlines()]
    eq70 = [ln["rel_diff_eq70"] for ln in lines[:-1]]
    code69, out69 = _run(["verify", "--mode", "gup", "--r", "0.2", "--theta", "0.3",
                          "--variant", "eq69"], capsys)
    summary69 = json.loads(out69.splitlines()[-1])["summary"]
    offset = summary69["max_limit_offset_E2"]
    # the offset must be a constant r across the lattice
    offsets = [limit_offset(0.2, QuantumNumbers(n, j), Variant.EQ69)
               for n in range(N_MAX + 1) for j in (1, 2, 3)]
    ok = (code60 == 0 and max(eq70) > 0 and code69 == 1 and summary69["anomalies"]
          and abs(offset - 0.2) / 0.2 < 1e-3 and np.ptp(offsets) < 1e-6)
    acceptance("C4 printed-formula and eq69-variant discrepancies", ok,
               f"eq70 rel diff {min(eq70):.3e}..{max(eq70):.3e}; eq69 E^2 offset {offset:.6g} "
               f"(r = 0.2), exit codes {code60}/{code69}")
    assert ok


def test_c5_wavefunction_residuals(acceptance):
    worst_flat = worst_gup = 0.0
    flat = params_from_dimensionless(0.5)
    for n in range(3):
        for j in range(-2, 3):
            worst_flat = max(worst_flat, ode_residual(QuantumNumbers(n, j), flat, Mode.NOGUP))
    for theta in (0.2, 0.5):
        params = params_from_dimensionless(0.2, theta)
        for n in range(3):
            for j in (-2, -1, 1, 2):
                worst_gup = max(worst_gup, ode_residual(QuantumNumbers(n, j), params, Mode.GUP))
    ok = worst_flat <= 1e-6 and worst_gup <= 1e-6
    acceptance("C5 radial ODE residuals", ok,
               f"no-GUP {worst_flat:.2e}, GUP {worst_gup:.2e} (tol 1e-6)")
    assert ok


def test_c6_nodes_and_orthogonality(acceptance):
    cases = [(params_from_dimensionless(0.5), Mode.NOGUP, range(-J_MAX, J_MAX + 1))]
    cases += [(params_from_dimensionless(0.2, t), Mode.GUP,
               [k for k in range(-J_MAX, J_MAX + 1) if k]) for t in THETAS]
    node_failures = []
    worst_overlap = 0.0
    for params, mode, js in cases:
        grid = sample_grid(params, mode, 4000)
        for j in js:
            qns = [QuantumNumbers(n, j) for n in range(N_MAX + 1)]
            for qn in qns:
                if count_radial_nodes(radial_profile(qn, params, grid, mode)) != qn.n:
                    node_failures.append((mode.value, params.theta, qn))
            for a in qns:
                for b in qns:
                    if a.n < b.n:
                        ov = (overlap_integral(a, b, params, mode) * normalize(a, params, mode)
                              * normalize(b, params, mode))
                        worst_overlap = max(worst_overlap, abs(ov))
    ok = not node_failures and worst_overlap <= 1e-7
    acceptance("C6 node counts and orthogonality", ok,
               f"node mismatches {len(node_failures)}, max |overlap| {worst_overlap:.2e} (tol 1e-7)")
    assert ok


def _laguerre(n, m, x):
    prev, cur = 1.0, 1.0 + m - x
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + m - x) * cur - (k + m) * prev) / (k + 1)
    return cur


def test_c7_special_function_identities(acceptance):
    worst_lag = worst_exact = worst_trunc = worst_sym = 0.0
    for n in range(11):
        for m in range(11):
            for x in (0.1, 1.0, 5.0):
                value = kummer_poly(n, m + 1, x)
                ref = factorial(n) * factorial(m) / factorial(n + m) * _laguerre(n, m, x)
                exact = float(hypergeometric_exact([-n], [m + 1], Fraction(x), n + 1))
                # two exact zeros on the lattice: (1, 0, 1) and (1, 4, 5)
                scale = abs(exact) if exact else 1.0
                worst_lag = max(worst_lag, abs(value - ref) / scale)
                worst_exact = max(worst_exact, abs(value - exact) / scale)
        for b in range(1, 11):
            for c in range(1, 11):
                z = 0.37
                exact = float(hypergeometric_exact([-n, b], [c], z, n + 1))
                longer = float(hypergeometric_exact([-n, b], [c], z, n + 4))
                worst_trunc = max(worst_trunc, abs(longer - exact))
                approx = gauss2f1_poly(n, b, c, z)
                worst_trunc = max(worst_trunc, abs(approx - exact) / max(1.0, abs(exact)))
                swapped, term = 0.0, 1.0
                for k in range(n + 1):
                    swapped += term
                    term *= (b + k) * (-n + k) / ((c + k) * (k + 1)) * z
                worst_sym = max(worst_sym, abs(approx - swapped) / max(1.0, abs(swapped)))
    ok = worst_lag <= 1e-12 and worst_exact <= 1e-12 and worst_trunc <= 1e-12 and worst_sym <= 1e-12
    acceptance("C7 special-function identities", ok,
               f"Laguerre {worst_lag:.1e}, exact rationals {worst_exact:.1e}, truncation {worst_trunc:.1e}, symmetry {worst_sym:.1e} "
               "(tol 1e-12)")
    assert ok


def test_c8_cli_determinism(acceptance, capsys):
    commands = {
        "spectrum": (["spectrum", "--mode", "gup", "--r", "0.2", "--theta", "0.3"],
                     "n,j,N,E_plus,E_minus,source,error_flag"),
        "wavefn": (["wavefn", "--mode", "gup", "--r", "0.2", "--theta", "0.3", "--n", "1",
                    "--j", "1"], "p,radial_value,z"),
        "verify": (["verify", "--mode", "gup", "--r", "0.2", "--theta", "0.3", "--format", "csv"],
                   ",".join(cli.VERIFY_COLUMNS)),
        "sweep": (["sweep", "--r", "0.2", "--thetas", "0,0.1,0.3"], "theta,n,j,N,E_plus"),
    }
    problems = []
    for name, (argv, header) in commands.items():
        _, first = _run(argv, capsys)
        _, second = _run(argv, capsys)
        if first != second or not first:
            problems.append(f"{name} not byte-identical")
        headers = [ln for ln in first.splitlines() if not ln.startswith("#")]
        if headers[0] != header:
            problems.append(f"{name} header {headers[0]!r}")
        rows = list(csv.reader(io.StringIO("\n".join(headers))))
        if any(len(r) != len(rows[0]) for r in rows):
            problems.append(f"{name} ragged rows")
    ok = not problems
    acceptance("C8 CLI determinism and schema", ok, "; ".join(problems) or
               "4 subcommands byte-identical, headers exact")
    assert ok
