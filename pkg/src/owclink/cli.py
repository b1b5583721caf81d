"""Command line entry point: ``owclink {sweep,timeline,availability,calibrate,validate-config}``.

Exit codes: 0 success, 1 I/O failure, 2 invalid config/targets or usage,
3 calibration objective above the ceiling (the fitted config is still written).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .calibration import MEASURED_TARGETS, CalibrationSpace, fit
from .config import ConfigError, dump_config, load_config, load_targets
from .results import FORMATS, emit_results
from .scenario import AvailabilityRecord, demo_scenario, run_availability, run_sweep, run_timeline

EXIT_IO = 1
EXIT_INVALID = 2
EXIT_CALIBRATION = 3


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="scenario TOML (default: built-in demo scenario)")
    common.add_argument("--seed", type=int, help="override the config seed")
    common.add_argument("--out", metavar="PATH", default="-", help="output file (default: stdout)")
    common.add_argument("--format", choices=FORMATS, default="csv")

    p = argparse.ArgumentParser(prog="owclink", description="Optical wireless FWA link simulator")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="rate and mean SNR over distance")
    sub.add_parser("timeline", parents=[common], help="step the link through timeline events")
    av = sub.add_parser("availability", parents=[common], help="Monte Carlo weather availability")
    av.add_argument("--samples", type=int, help="override availability.n_samples")
    cal = sub.add_parser("calibrate", parents=[common], help="fit frontend parameters to measured rates")
    cal.add_argument("--targets", metavar="PATH", help="targets TOML (default: 1500/1400/1100 Mbit/s at 25/50/100 m)")
    sub.add_parser("validate-config", parents=[common], help="check a scenario file and exit")
    return p


def _load(args):
    cfg = load_config(args.config) if args.config else demo_scenario()
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("seed", "must be >= 0")
        cfg = cfg.replace(seed=args.seed)
    return cfg


def _write_text(text: str, out: str):
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _load(args)
        if args.command == "validate-config":
            print("config ok", file=sys.stderr)
            return 0
        if args.command == "sweep":
            emit_results(run_sweep(cfg), args.format, args.out)
        elif args.command == "timeline":
            emit_results(run_timeline(cfg), args.format, args.out)
        elif args.command == "availability":
            n = args.samples if args.samples is not None else cfg.availability.n_samples
            if n < 1:
                raise ConfigError("--samples", "must be >= 1")
            a = run_availability(cfg, n_samples=n)
            emit_results([AvailabilityRecord(cfg.channel.geometry.distance, n, a)], args.format, args.out)
        elif args.command == "calibrate":
            if args.targets:
                targets, space, ceiling = load_targets(args.targets)
            else:
                targets, space, ceiling = MEASURED_TARGETS, CalibrationSpace(), 0.01
            res = fit(space, targets, base_frontend=cfg.frontend, base_ofdm=cfg.ofdm,
                      tx_optics=cfg.tx_optics, rx_optics=cfg.rx_optics, ceiling=ceiling)
            for t, r in zip(res.targets, res.residuals):
                glass = " (glass)" if t.glass else ""
                print(f"{t.distance:g} m{glass}: target {t.expected_rate:g} Mbit/s, "
                      f"residual {100 * r:+.2f}%", file=sys.stderr)
            print(f"objective {res.objective:.6g} (ceiling {res.ceiling:g})", file=sys.stderr)
            _write_text(dump_config(cfg.replace(frontend=res.frontend, ofdm=res.ofdm)), args.out)
            if not res.success:
                print("calibration failed: objective above ceiling", file=sys.stderr)
                return EXIT_CALIBRATION
    except ConfigError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
