"""Command-line front end: ``kgosc {spectrum,wavefn,verify,sweep}``.

Exit codes: 0 success, 1 verification or flagged-row failure, 2 usage or
configuration error.  Floats are written in shortest round-trip form, so
identical arguments give identical bytes.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys


from .errors import KGOscError
from .model import (Mode, QuantumNumbers, Variant, make_params, make_quantum_numbers,
                    params_from_dimensionless)
from .oracle import DEFAULT_TOLERANCE, verify_spectrum
from .spectrum import (gup_energy_chain, level_pairs, no_gup_energy, spectrum_table)
from .wavefn import map_z_of_p, radial_profile, sample_grid

SPECTRUM_COLUMNS = ("n", "j", "N", "E_plus", "E_minus", "source", "error_flag")
WAVEFN_COLUMNS = ("p", "radial_value", "z")
VERIFY_COLUMNS = ("n", "j", "N", "oracle_E", "chain_E", "eq70_E", "rel_diff_chain",
                  "rel_diff_eq70", "pass", "error")
SWEEP_COLUMNS = ("theta", "n", "j", "N", "E_plus")

DEFAULT_R = 0.5
DEFAULT_THETA_GUP = 0.3
PHYSICAL = ("m0", "omega", "hbar", "c", "beta")


class ConfigError(Exception):
    pass


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else ""
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_csv(out, columns, rows):
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(fmt(row[c]) for c in columns) + "\n")


def write_json(out, columns, rows):
    data = [{c: _json_value(row[c]) for c in columns} for row in rows]
    out.write(json.dumps(data, ensure_ascii=False, allow_nan=False) + "\n")


def read_config(path) -> list[str]:
    """Turn a flat ``key = value`` file into argv tokens."""
    tokens = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            flag = "--" + key.replace("_", "-")
            if value.lower() in ("true", "yes", "on"):
                tokens.append(flag)
            elif value.lower() in ("false", "no", "off"):
                continue
            else:
                tokens += [flag, value]
    return tokens


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.NOGUP.value)
    common.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.EQ60.value)
    common.add_argument("--r", type=float)
    common.add_argument("--theta", type=float)
    for name in PHYSICAL:
        common.add_argument(f"--{name}", type=float)
    common.add_argument("--n-max", type=int, default=3)
    common.add_argument("--j-max", type=int, default=3)
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--strict", action="store_true")
    common.add_argument("--allow-j0", action="store_true")
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    common.add_argument("--config")
    common.add_argument("--out", default="stdout")

    parser = argparse.ArgumentParser(prog="kgosc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="closed-form spectrum table")
    wf = sub.add_parser("wavefn", parents=[common], help="normalized radial profile")
    wf.add_argument("--n", type=int, default=0)
    wf.add_argument("--j", type=int, default=0)
    wf.add_argument("--samples", type=int, default=200)
    sub.add_parser("verify", parents=[common], help="oracle vs closed forms")
    sw = sub.add_parser("sweep", parents=[common], help="E_plus across deformations")
    group = sw.add_mutually_exclusive_group()
    group.add_argument("--thetas", help="comma-separated theta values in [0, 1)")
    group.add_argument("--betas", help="comma-separated beta values (needs physical params)")
    return parser


def resolve_params(args):
    physical = {k: getattr(args, k) for k in PHYSICAL if getattr(args, k) is not None}
    dimensionless = args.r is not None or args.theta is not None
    if physical and dimensionless:
        raise ConfigError("give either --r/--theta or physical parameters, not both")
    if physical:
        missing = [k for k in ("m0", "omega") if k not in physical]
        if missing:
            raise ConfigError(f"physical parameters need --{' --'.join(missing)}")
        return make_params(physical["m0"], physical["omega"], physical.get("hbar", 1.0),
                           physical.get("c", 1.0), physical.get("beta", 0.0))
    r = DEFAULT_R if args.r is None else args.r
    theta = args.theta
    if theta is None:
        theta = DEFAULT_THETA_GUP if args.mode == Mode.GUP.value else 0.0
    return params_from_dimensionless(r, theta)


def cmd_spectrum(args, params, out) -> int:
    table = spectrum_table(params, args.n_max, args.j_max, Mode(args.mode),
                           Variant(args.variant), args.allow_j0)
    rows = [{"n": r.n, "j": r.j, "N": r.N, "E_plus": r.E_plus, "E_minus": r.E_minus,
             "source": r.source.value, "error_flag": r.error_flag} for r in table.rows]
    (write_json if args.format == "json" else write_csv)(out, SPECTRUM_COLUMNS, rows)
    flagged = any(r.error_flag for r in table.rows)
    return 1 if args.strict and flagged else 0


def cmd_wavefn(args, params, out) -> int:
    if args.samples < 1:
        raise ConfigError("--samples must be >= 1")
    mode = Mode(args.mode)
    gup = mode is Mode.GUP
    qn = make_quantum_numbers(args.n, args.j, gup, args.allow_j0)
    grid = sample_grid(params, mode, args.samples)
    profile = radial_profile(qn, params, grid, mode, Variant(args.variant), args.allow_j0)
    z = map_z_of_p(grid, params) if gup else [None] * len(grid)
    rows = [{"p": float(p), "radial_value": float(v), "z": None if zz is None else float(zz)}
            for p, v, zz in zip(profile.grid, profile.values, z)]
    if args.format == "json":
        write_json(out, WAVEFN_COLUMNS, rows)
    else:
        out.write(f"# normalized=true mode={mode.value} n={qn.n} j={qn.j} "
                  f"norm_constant={fmt(profile.norm_constant)}\n")
        write_csv(out, WAVEFN_COLUMNS, rows)
    return 0


def cmd_verify(args, params, out) -> int:
    report = verify_spectrum(params, (args.n_max, args.j_max), Mode(args.mode),
                             Variant(args.variant), args.tolerance, args.allow_j0)
    rows = [{"n": r.n, "j": r.j, "N": r.N, "oracle_E": r.oracle_E, "chain_E": r.chain_E,
             "eq70_E": r.eq70_E, "rel_diff_chain": r.rel_diff_chain,
             "rel_diff_eq70": r.rel_diff_eq70, "pass": r.passed, "error": r.error}
            for r in report.rows]
    offsets = [abs(v) for v in report.limit_offsets.values()]
    summary = {
        "mode": report.mode.value,
        "variant": report.variant.value,
        "r": report.r,
        "theta": report.theta,
        "tolerance": report.tolerance,
        "rows": len(rows),
        "all_pass": report.all_pass,
        "max_rel_diff_chain": report.max_rel_diff("rel_diff_chain"),
        "max_rel_diff_eq70": report.max_rel_diff("rel_diff_eq70"),
        "max_limit_offset_E2": max(offsets) if offsets else None,
        "anomalies": list(report.anomalies),
    }
    if args.format == "csv":
        write_csv(out, VERIFY_COLUMNS, rows)
        out.write("# summary " + json.dumps(summary, allow_nan=False) + "\n")
    else:
        for row in rows:
            out.write(json.dumps({c: _json_value(row[c]) for c in VERIFY_COLUMNS},
                                 allow_nan=False) + "\n")
        out.write(json.dumps({"summary": summary}, allow_nan=False) + "\n")
    return 0 if report.all_pass else 1


def _parse_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad number list {text!r}") from exc
    if not values:
        raise ConfigError("empty deformation list")
    return values


def cmd_sweep(args, params, out) -> int:
    if args.betas is not None:
        if args.r is not None or args.theta is not None:
            raise ConfigError("--betas needs physical parameters")
        thetas = [b * params.lam for b in _parse_list(args.betas)]
    else:
        thetas = _parse_list(args.thetas) if args.thetas else [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]
    for t in thetas:
        if not 0.0 <= t < 1.0:
            raise ConfigError(f"theta = {t!r} outside [0, 1)")
    rows = []
    flagged = False
    for theta in thetas:
        gup = theta > 0
        for n, j in level_pairs(args.n_max, args.j_max, gup, args.allow_j0):
            qn = QuantumNumbers(n, j)
            try:
                if gup:
                    e = gup_energy_chain(params.r, theta, qn, Variant(args.variant),
                                         args.allow_j0)[0]
                else:
                    e = no_gup_energy(params.r, qn)[0]
            except KGOscError:
                e, flagged = None, True
            rows.append({"theta": theta, "n": n, "j": j, "N": qn.N, "E_plus": e})
    (write_json if args.format == "json" else write_csv)(out, SWEEP_COLUMNS, rows)
    return 1 if args.strict and flagged else 0


COMMANDS = {"spectrum": cmd_spectrum, "wavefn": cmd_wavefn, "verify": cmd_verify,
            "sweep": cmd_sweep}


def _with_config(argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config or not argv:
        return argv
    # config tokens go first so explicit flags override them
    return [argv[0]] + read_config(known.config) + list(argv[1:])


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _with_config(argv)
    except (OSError, ConfigError) as exc:
        print(f"kgosc: error: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format is None:
        args.format = "json" if args.command == "verify" else "csv"
    buf = io.StringIO()
    try:
        params = resolve_params(args)
        if args.mode == Mode.GUP.value and args.command != "sweep" and params.theta <= 0:
            raise ConfigError("gup mode needs theta in (0, 1)")
        status = COMMANDS[args.command](args, params, buf)
    except (ConfigError, KGOscError, ValueError) as exc:
        print(f"kgosc: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = buf.getvalue()
    if args.out in ("stdout", "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
