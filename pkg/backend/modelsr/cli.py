"""
Command-line entry point: `python -m modelsr [--seed N] [--out DIR] [--format F] <command> ...`

Every command goes through ModelSRTools, so the CLI and the HTTP API share one code path.
A facade error is printed to stderr and turns into exit status 1.
"""
import argparse
import logging
import re
import sys
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from . import __version__
from .config import OUTPUT_DIR, configure_logging
from .experiments import list_presets
from .importer import (
    read_config_json, read_measurement_csv, read_model_json, write_json,
    write_measurement_csv, write_signal_csv
)
from .core.grid import Measurement
from .tools import ModelSRTools

logger = logging.getLogger(__name__)

FORMATS = ["csv", "json", "svg"]


def _int_list(text: str) -> List[int]:
    """`-3,-2,0,2` or ranges like `-10:-6,-2:2,6:10` (inclusive)"""
    values = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        span = re.fullmatch(r"(-?\d+):(-?\d+)", part)
        if span:
            values.extend(range(int(span.group(1)), int(span.group(2)) + 1))
        else:
            values.append(int(part))
    return values


def _float_list(text: str) -> List[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _fail(result: Dict) -> Optional[int]:
    if "error" in result:
        print(result["error"], file=sys.stderr)
        return 1
    return None


def _out_dir(args) -> Path:
    path = Path(args.out or OUTPUT_DIR)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _print_table(rows: Dict[str, object]):
    frame = pd.DataFrame({"quantity": list(rows.keys()), "value": list(rows.values())})
    print(frame.to_string(index=False))


def cmd_simulate(args, tools: ModelSRTools) -> int:
    if args.snr_db is not None and args.sigma is not None:
        print("give at most one of --snr-db or --sigma", file=sys.stderr)
        return 2
    result = tools.simulate(read_model_json(args.model), args.k_low, snr_db_target=args.snr_db,
                            sigma=args.sigma, mask=args.mask)
    if (code := _fail(result)) is not None:
        return code
    out = _out_dir(args)
    y = Measurement.from_records(result["measurement"], k_max=args.k_low)
    write_measurement_csv(y, out / "measurement.csv")
    noise = {key: result[key] for key in ("sigma", "noise_max_abs", "realized_snr_db")}
    write_json(noise, out / "noise.json")
    print(f"measurement: {out / 'measurement.csv'}  sigma={result['sigma']:.6g}")
    return 0


def cmd_solve(args, tools: ModelSRTools) -> int:
    options = {"max_iters": args.max_iters, "tol_residual": args.tol_residual,
               "tol_grad": args.tol_grad, "seed": tools.seed}
    if args.step_size is not None:
        options["step_size"] = args.step_size
    y = read_measurement_csv(args.measurement, k_max=args.k_low)
    result = tools.solve(read_model_json(args.init), y, options=options, sigma=args.sigma)
    if (code := _fail(result)) is not None:
        return code
    report = result["report"]
    out = _out_dir(args)
    write_json(report, out / "report.json")
    write_json(report["theta_hat"], out / "theta_hat.json")
    print(f"stop={report['stop_reason']} iterations={report['iterations']} "
          f"residual={report['residual_norm']:.6g} admissible={report['admissible']}")
    return 0


def cmd_extrapolate(args, tools: ModelSRTools) -> int:
    result = tools.extrapolate(read_model_json(args.model), args.k_high, k_low=args.k_low)
    if (code := _fail(result)) is not None:
        return code
    out = _out_dir(args)
    spectrum = Measurement.from_records(result["spectrum"], k_max=args.k_high)
    write_measurement_csv(spectrum, out / "spectrum.csv")
    print(f"spectrum: {out / 'spectrum.csv'} ({spectrum.grid.size} frequencies)")
    return 0


def cmd_render(args, tools: ModelSRTools) -> int:
    if (args.model is None) == (args.measurement is None):
        print("give exactly one of --model or --measurement", file=sys.stderr)
        return 2
    if args.model is not None:
        result = tools.render(args.grid_size, model=read_model_json(args.model), k_high=args.k_high,
                              divisor=args.divisor)
    else:
        result = tools.render(args.grid_size, measurement=read_measurement_csv(args.measurement),
                              divisor=args.divisor)
    if (code := _fail(result)) is not None:
        return code
    out = _out_dir(args)
    values = [complex(a, b) for a, b in zip(result["re"], result["im"])]
    write_signal_csv(result["x"], values, out / "signal.csv")
    print(f"signal: {out / 'signal.csv'} ({len(values)} points)")
    return 0


def cmd_verify(args, tools: ModelSRTools) -> int:
    y = read_measurement_csv(args.measurement, k_max=args.k_low)
    truth = read_model_json(args.truth) if args.truth else None
    result = tools.verify(read_model_json(args.model), y, args.k_high, truth=truth, sigma=args.sigma,
                          lipschitz_samples=args.lipschitz_samples)
    if (code := _fail(result)) is not None:
        return code
    report = result["report"]
    if "json" in args.format:
        write_json(report, _out_dir(args) / "stability.json")
    _print_table({k: v for k, v in report.items() if k != "lipschitz_ratio_samples"})
    return 0


def cmd_experiment(args, tools: ModelSRTools) -> int:
    if args.target in list_presets():
        preset, config = args.target, None
    elif Path(args.target).exists():
        preset, config = None, read_config_json(args.target).model_dump()
    else:
        print(f"unknown preset or config file: {args.target}", file=sys.stderr)
        return 2
    result = tools.run_experiment(preset=preset, config=config, trials=args.trials,
                                  snr_db_levels=args.snr_db, out_dir=args.out, formats=args.format)
    if (code := _fail(result)) is not None:
        return code
    print(f"{result['scenario']}: {result['trials']} trials, {result['failed']} failed")
    medians = result["summary"].get("median_position_error_by_snr", {})
    if medians:
        _print_table({f"median position error @ {level}": value for level, value in medians.items()})
    for path in result["files"]:
        print(path)
    return 0


def cmd_presets(args, tools: ModelSRTools) -> int:
    for name, description in tools.list_presets()["presets"].items():
        print(f"{name:20s} {description}")
    return 0


def cmd_serve(args, tools: ModelSRTools) -> int:
    import uvicorn
    uvicorn.run("modelsr.main:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modelsr",
        description="Model-based super-resolution from low-frequency Fourier samples",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=0, help="Master seed for noise and initialization")
    parser.add_argument("--out", type=str, default=None, help="Output directory (default: MODELSR_OUTPUT_DIR)")
    parser.add_argument("--format", action="append", choices=FORMATS, default=None,
                        help="Artifact format; repeat for several (default: all)")
    parser.add_argument("--log-level", type=str, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Generate noisy low-resolution data from a model")
    p.add_argument("model", help="Model JSON file")
    p.add_argument("--k-low", type=int, required=True)
    p.add_argument("--snr-db", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None, help="Noise norm; 0 for noiseless data")
    p.add_argument("--mask", type=_int_list, default=None, help="Sampled frequencies; use the --mask=-10:-6,-2:2,6:10 form when the list starts with a minus sign")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("solve", help="Fit model parameters to measurement data")
    p.add_argument("init", help="Initial model JSON file")
    p.add_argument("measurement", help="Measurement CSV (k,re,im)")
    p.add_argument("--k-low", type=int, default=None, help="Grid half-width when the CSV is masked")
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("--step-size", type=float, default=None, help="Fixed step; backtracking when omitted")
    p.add_argument("--tol-residual", type=float, default=1e-7)
    p.add_argument("--tol-grad", type=float, default=1e-8)
    p.add_argument("--sigma", type=float, default=None, help="Noise norm used for admissibility")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("extrapolate", help="High-resolution spectrum of a fitted model")
    p.add_argument("model", help="Model JSON file")
    p.add_argument("--k-high", type=int, required=True)
    p.add_argument("--k-low", type=int, default=None)
    p.set_defaults(handler=cmd_extrapolate)

    p = sub.add_parser("render", help="Physical-domain signal on a fine grid")
    p.add_argument("--grid-size", type=int, required=True)
    p.add_argument("--divisor", type=int, default=None, help="Closed grid x = t/divisor")
    p.add_argument("--model", default=None, help="Model JSON file")
    p.add_argument("--k-high", type=int, default=None)
    p.add_argument("--measurement", default=None, help="Raw spectrum CSV to render instead of a model")
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser("verify", help="Stability and local-convexity report")
    p.add_argument("model", help="Fitted model JSON file")
    p.add_argument("measurement", help="Measurement CSV the model was fitted to")
    p.add_argument("--k-high", type=int, required=True)
    p.add_argument("--k-low", type=int, default=None)
    p.add_argument("--truth", default=None, help="Ground-truth model JSON for the stability check")
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--lipschitz-samples", type=int, default=2000)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("experiment", help="Run a preset or an experiment config file")
    p.add_argument("target", help="Preset name or config JSON file")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--snr-db", type=_float_list, default=None, help="Comma-separated SNR sweep")
    p.set_defaults(handler=cmd_experiment)

    p = sub.add_parser("presets", help="List experiment presets")
    p.set_defaults(handler=cmd_presets)

    p = sub.add_parser("serve", help="Run the HTTP API")
    p.add_argument("--host", default="0.0.0.0")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    args.format = args.format or list(FORMATS)
    configure_logging(args.log_level)
    tools = ModelSRTools(seed=args.seed, out_dir=args.out)
    try:
        return args.handler(args, tools)
    except (OSError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
