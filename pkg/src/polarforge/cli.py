"""Command-line entry point: construct / puncture / spectra / simulate.

Options may come from a flat ``key=value`` config file (``--config``),
with command-line flags taking precedence.  Exit codes: 0 success,
1 runtime failure, 2 configuration error.  Output files are written
atomically (temp file + rename) so a failing run leaves no partial
artifacts behind.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .construction import (
    MotherCodeParams,
    bhattacharyya_vector,
    reliability_order,
)
from .codec import DecoderConfig
from .puncturing import save_pattern
from .simkit import SWEEP_PRESETS, TrialBudget, run_sweep
from .spectra import spectra_polynomial, write_report_csv
from . import simkit


class ConfigError(Exception):
    pass


def _read_config(path: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
                key, value = line.split("=", 1)
                out[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    return out


def _merge_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    """Fill unset args from the config file; explicit flags win."""
    if not getattr(args, "config", None):
        return
    file_conf = _read_config(args.config)
    for key, value in file_conf.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise ConfigError(f"unknown config key {key!r}")
        if getattr(args, dest) is None:
            setattr(args, dest, value)


def _atomic_write(path: str, write_fn: Callable[[str], None]) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".polarforge-")
    os.close(fd)
    try:
        write_fn(tmp)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_int(value, name: str, minimum: int = 1) -> int:
    try:
        out = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if out < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {out}")
    return out


def _resolve_l(args) -> int:
    if args.l is not None:
        return _parse_int(args.l, "--l")
    if args.n is not None:
        n = _parse_int(args.n, "--n", 2)
        if n & (n - 1):
            raise ConfigError(f"--n must be a power of two, got {n}")
        return n.bit_length() - 1
    raise ConfigError("one of --l or --n is required")


def cmd_construct(args) -> int:
    l = _resolve_l(args)
    z0 = 0.5 if args.z0 is None else float(args.z0)
    try:
        params = MotherCodeParams(l=l, z0=z0)
    except ValueError as exc:
        raise ConfigError(str(exc))
    b = bhattacharyya_vector(params)
    order = reliability_order(b)
    lines = ["index z"]
    lines += [f"{i + 1} {float(v)!r}" for i, v in enumerate(b.values)]
    lines.append("order " + " ".join(str(i) for i in order.indices))
    text = "\n".join(lines) + "\n"
    if args.out:
        _atomic_write(args.out, lambda p: open(p, "w").write(text))
    else:
        sys.stdout.write(text)
    return 0


def cmd_puncture(args) -> int:
    from .puncturing import pd_pattern, rqup_pattern, cw_pattern

    l = _resolve_l(args)
    n = 1 << l
    n_prime = _parse_int(args.nprime, "--nprime")
    method = (args.method or "pd").lower()
    try:
        if method == "pd":
            order = reliability_order(bhattacharyya_vector(MotherCodeParams(l=l)))
            pattern = pd_pattern(order, n_prime)
        elif method == "rqup":
            pattern = rqup_pattern(n, n_prime)
        elif method == "cw":
            pattern = cw_pattern(n, n_prime)
        else:
            raise ConfigError(f"unknown method {method!r} (pd, rqup, cw)")
    except ValueError as exc:
        raise ConfigError(str(exc))
    if args.out:
        _atomic_write(args.out, lambda p: save_pattern(pattern, p))
    else:
        sys.stdout.write(" ".join(str(i) for i in pattern.removed) + "\n")
    return 0


def cmd_spectra(args) -> int:
    from .puncturing import pd_pattern, rqup_pattern, cw_pattern

    l = _resolve_l(args)
    n = 1 << l
    n_prime = _parse_int(args.nprime, "--nprime")
    methods = [m.strip().lower() for m in (args.methods or "pd,rqup,cw").split(",")]
    named = []
    try:
        for method in methods:
            if method == "pd":
                order = reliability_order(bhattacharyya_vector(MotherCodeParams(l=l)))
                named.append(("pd", pd_pattern(order, n_prime)))
            elif method == "rqup":
                named.append(("rqup", rqup_pattern(n, n_prime)))
            elif method == "cw":
                named.append(("cw", cw_pattern(n, n_prime)))
            else:
                raise ConfigError(f"unknown method {method!r} (pd, rqup, cw)")
    except ValueError as exc:
        raise ConfigError(str(exc))
    if args.out:
        _atomic_write(args.out, lambda p: write_report_csv(p, l, named))
    else:
        from .spectra import sdc, sdp, MOTHER_N, PUNCTURED_N_PRIME

        for name, pattern in named:
            poly = spectra_polynomial(l, pattern)
            sys.stdout.write(
                f"{name} sdc_n={sdc(poly, MOTHER_N)!r} "
                f"sdc_nprime={sdc(poly, PUNCTURED_N_PRIME)!r} "
                f"sdp_n={sdp(poly, MOTHER_N)!r}\n"
            )
    return 0


def _parse_ebn0_list(raw: Optional[str]) -> List[float]:
    if raw is None or raw.strip() == "":
        return []
    try:
        return [float(tok) for tok in raw.replace(",", " ").split()]
    except ValueError:
        raise ConfigError(f"bad ebn0 list {raw!r}")


def cmd_simulate(args) -> int:
    if args.seed is None:
        raise ConfigError("--seed is required for simulate")
    seed = _parse_int(args.seed, "--seed", 0)
    max_frames = _parse_int(args.max_frames or 1_000_000, "--max-frames")
    min_fe = _parse_int(args.min_frame_errors or 100, "--min-frame-errors", 0)
    budget = TrialBudget(max_frames=max_frames, min_frame_errors=min_fe, master_seed=seed)
    ebn0 = _parse_ebn0_list(args.ebn0)
    if not args.out:
        raise ConfigError("--out is required for simulate")

    if args.preset:
        if args.preset not in SWEEP_PRESETS:
            raise ConfigError(
                f"unknown preset {args.preset!r}; choose from {sorted(SWEEP_PRESETS)}"
            )
        _atomic_write(
            args.out,
            lambda p: run_sweep(args.preset, ebn0, budget, csv_path=p),
        )
        return 0

    # Explicit single-leg configuration.
    scenario = args.scenario
    if scenario not in simkit.SCENARIO_PRESETS:
        raise ConfigError(
            f"--scenario must be one of {sorted(simkit.SCENARIO_PRESETS)} "
            f"(or use --preset), got {scenario!r}"
        )
    method = (args.method or "pd").lower()
    if method not in ("pd", "rqup", "cw"):
        raise ConfigError(f"unknown method {method!r} (pd, rqup, cw)")
    algorithm = (args.decoder or "sc").lower()
    if algorithm not in ("sc", "scl", "ca-scl"):
        raise ConfigError(f"unknown decoder {algorithm!r} (sc, scl, ca-scl)")
    list_size = _parse_int(args.list_size or 1, "--list-size")
    crc = (args.crc or "none").lower()
    if crc not in ("none", "crc8", "crc16"):
        raise ConfigError(f"unknown crc {crc!r} (none, crc8, crc16)")
    try:
        cfg = DecoderConfig(list_size=list_size, crc=crc)
    except ValueError as exc:
        raise ConfigError(str(exc))
    legs = [(method, algorithm, cfg)]
    _atomic_write(
        args.out,
        lambda p: run_sweep(
            "custom", ebn0, budget, csv_path=p, legs=legs, scenario=scenario
        ),
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polarforge",
        description="Rate-compatible polar code construction, puncturing, "
        "spectra analysis, and Monte Carlo simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key=value config file; flags override")
        p.add_argument("--l", help="number of polarization levels")
        p.add_argument("--n", help="mother code length (power of two)")
        p.add_argument("--out", help="output file path")

    p = sub.add_parser("construct", help="polarization vector and reliability order")
    common(p)
    p.add_argument("--z0", help="initial Bhattacharyya parameter (default 0.5)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("puncture", help="compute a puncture pattern")
    common(p)
    p.add_argument("--nprime", help="punctured code length")
    p.add_argument("--method", help="pd, rqup, or cw (default pd)")
    p.set_defaults(func=cmd_puncture)

    p = sub.add_parser("spectra", help="rank puncture patterns by spectrum distance")
    common(p)
    p.add_argument("--nprime", help="punctured code length")
    p.add_argument("--methods", help="comma list of pd,rqup,cw (default all)")
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("simulate", help="Monte Carlo BER/FER sweep to CSV")
    common(p)
    p.add_argument("--preset", help=f"sweep preset: {', '.join(sorted(SWEEP_PRESETS))}")
    p.add_argument("--scenario", help="mmtc, urllc, or embb (explicit mode)")
    p.add_argument("--method", help="pd, rqup, or cw (default pd)")
    p.add_argument("--decoder", help="sc, scl, or ca-scl (default sc)")
    p.add_argument("--list-size", dest="list_size", help="SCL list size")
    p.add_argument("--crc", help="none, crc8, or crc16")
    p.add_argument("--ebn0", help="space/comma-separated Eb/N0 values in dB")
    p.add_argument("--max-frames", dest="max_frames", help="frame budget per point")
    p.add_argument(
        "--min-frame-errors", dest="min_frame_errors",
        help="early-stop frame-error target (0 disables)",
    )
    p.add_argument("--seed", help="master seed (required; recorded in the CSV)")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _merge_config(args, parser)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
