"""Command-line interface.

    paraframe classify  --model s1 --r 1 --point 0.3,0.7,1.1
    paraframe curvature --model s2 --r 2 --point 0.6,1.0,0.5 --format json
    paraframe verify    --model s1 --samples 100 --seed 42 --format json
    paraframe sweep     --model s1 --grid 0,0.5:1.4:10,0 --format csv

Exit codes: 0 success / verification PASS, 1 verification FAIL, 2 usage or
domain error.  All flags can also be given in a config file of
`key = value` lines (--config PATH); command-line flags take precedence.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .hypersurface import MODELS, DomainError, ModelPoint
from .report import (
    classify_report,
    curvature_report,
    format_scalar,
    render_json,
    render_sweep_csv,
    render_text,
    run_verify,
    sweep_row,
)

USAGE_ERROR = 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    model: str
    r: float = 1.0
    point: np.ndarray | None = None
    grid: list[np.ndarray] | None = None
    samples: int = 100
    seed: int = 42
    tol: float = 1e-9
    fmt: str = "text"
    parallel: bool = False


def parse_point(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--point needs 3 comma-separated values, got {text!r}")
    try:
        return np.array([float(x) for x in parts])
    except ValueError as exc:
        raise UsageError(f"bad --point value: {exc}") from exc


def parse_grid(text: str) -> list[np.ndarray]:
    """Grid spec: three comma-separated axes, each `value` or `start:stop:count`.

    Rows are the Cartesian product in row-major order (first axis slowest).
    """
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--grid needs 3 comma-separated axis specs, got {text!r}")
    axes = []
    for part in parts:
        try:
            if ":" in part:
                pieces = part.split(":")
                if len(pieces) != 3:
                    raise ValueError("range spec is start:stop:count")
                start, stop, count = float(pieces[0]), float(pieces[1]), int(pieces[2])
                if count < 0:
                    raise ValueError("count must be >= 0")
                axes.append(np.linspace(start, stop, count))
            else:
                axes.append(np.array([float(part)]))
        except ValueError as exc:
            raise UsageError(f"bad --grid axis {part!r}: {exc}") from exc
    return axes


def read_config_file(path: str) -> dict[str, str]:
    """`key = value` lines; blank lines and # comments ignored."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key = value")
                key, _, value = line.partition("=")
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    return values


_CONFIG_KEYS = ("model", "r", "point", "grid", "samples", "seed", "tol", "format", "parallel")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paraframe",
        description="Frame tensor calculus on hyperspheres: classification, "
        "curvature, verification and parameter sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("classify", "class membership and scalar parameters at a point"),
        ("curvature", "curvature tensors and scalars at a point"),
        ("verify", "check every closed-form identity at sampled points"),
        ("sweep", "evaluate a report row per grid point"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--model", choices=sorted(MODELS))
        cmd.add_argument("--r", type=float, default=None, help="radius (default 1)")
        cmd.add_argument("--point", default=None, help="u0,u1,u2")
        cmd.add_argument("--grid", default=None, help="axis specs: value or start:stop:count")
        cmd.add_argument("--samples", type=int, default=None, help="verify sample count")
        cmd.add_argument("--seed", type=int, default=None, help="sampling seed")
        cmd.add_argument("--tol", type=float, default=None, help="residual tolerance")
        cmd.add_argument("--format", choices=("json", "csv", "text"), default=None)
        cmd.add_argument("--parallel", action="store_true", default=None)
        cmd.add_argument("--config", default=None, help="key = value config file")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    file_values: dict[str, str] = {}
    if args.config:
        file_values = read_config_file(args.config)
        unknown = set(file_values) - set(_CONFIG_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")

    def pick(flag, key, cast):
        if flag is not None:
            return flag
        if key in file_values:
            raw = file_values[key]
            try:
                return cast(raw)
            except (ValueError, UsageError) as exc:
                raise UsageError(f"bad config value for {key}: {exc}") from exc
        return None

    model = pick(args.model, "model", str)
    if model is None:
        raise UsageError("--model is required (flag or config file)")
    if model not in MODELS:
        raise UsageError(f"unknown model {model!r}")

    def to_bool(raw: str) -> bool:
        if raw.lower() in ("true", "1", "yes"):
            return True
        if raw.lower() in ("false", "0", "no"):
            return False
        raise ValueError(f"expected true/false, got {raw!r}")

    cfg = RunConfig(command=args.command, model=model)
    r = pick(args.r, "r", float)
    if r is not None:
        cfg.r = r
    if not (math.isfinite(cfg.r) and cfg.r > 0):
        raise UsageError(f"radius must be positive and finite, got {cfg.r}")
    cfg.point = pick(args.point, "point", parse_point)
    if isinstance(cfg.point, str):
        cfg.point = parse_point(cfg.point)
    cfg.grid = pick(args.grid, "grid", parse_grid)
    if isinstance(cfg.grid, str):
        cfg.grid = parse_grid(cfg.grid)
    samples = pick(args.samples, "samples", int)
    if samples is not None:
        if samples < 1:
            raise UsageError("--samples must be >= 1")
        cfg.samples = samples
    seed = pick(args.seed, "seed", int)
    if seed is not None:
        cfg.seed = seed
    tol = pick(args.tol, "tol", float)
    if tol is not None:
        if not (math.isfinite(tol) and tol > 0):
            raise UsageError("--tol must be positive and finite")
        cfg.tol = tol
    fmt = pick(args.format, "format", str)
    if fmt is not None:
        if fmt not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {fmt!r}")
        cfg.fmt = fmt
    parallel = pick(args.parallel, "parallel", to_bool)
    if parallel is not None:
        cfg.parallel = bool(parallel)
    return cfg


def _flatten(obj, prefix: str = ""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            yield prefix, "[" + "; ".join(format_scalar(v) for v in obj) + "]"
        else:
            for n, v in enumerate(obj):
                yield from _flatten(v, f"{prefix}[{n}]")
    else:
        yield prefix, format_scalar(obj)


def _render_flat_csv(report: dict) -> str:
    pairs = list(_flatten(report))
    from .report import _csv_field

    header = ",".join(_csv_field(k) for k, _ in pairs)
    values = ",".join(_csv_field(v) for _, v in pairs)
    return header + "\n" + values


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(render_json(report))
    elif fmt == "csv":
        print(_render_flat_csv(report))
    else:
        print(render_text(report))


def _require_point(cfg: RunConfig) -> ModelPoint:
    if cfg.point is None:
        raise UsageError(f"{cfg.command} needs --point u0,u1,u2")
    return ModelPoint(model=cfg.model, r=cfg.r, u=cfg.point)


def cmd_classify(cfg: RunConfig) -> int:
    report = classify_report(_require_point(cfg), cfg.tol)
    _emit(report, cfg.fmt)
    return 0


def cmd_curvature(cfg: RunConfig) -> int:
    report = curvature_report(_require_point(cfg), cfg.tol)
    _emit(report, cfg.fmt)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    report = run_verify(cfg.model, cfg.r, cfg.samples, cfg.seed, cfg.tol)
    if cfg.fmt == "text":
        for check in report["checks"]:
            flag = "ok " if check["pass"] else "FAIL"
            print(f"{flag} {check['name']:35s} max residual {check['max_residual']:.3e}")
        if report["failed"]:
            print(f"FAIL: first failing identity: {report['failed'][0]}")
        else:
            print(f"PASS: {len(report['checks'])} identities within {cfg.tol:g} "
                  f"at {cfg.samples} points (seed {cfg.seed})")
    else:
        _emit(report, cfg.fmt)
    return 0 if report["status"] == "PASS" else 1


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.grid is None:
        raise UsageError("sweep needs --grid")
    points = [
        np.array([a, b, c])
        for a in cfg.grid[0]
        for b in cfg.grid[1]
        for c in cfg.grid[2]
    ]

    def one(u: np.ndarray) -> dict:
        return sweep_row(cfg.model, cfg.r, u, cfg.tol)

    if cfg.parallel and len(points) > 1:
        with ThreadPoolExecutor() as pool:
            rows = list(pool.map(one, points))
    else:
        rows = [one(u) for u in points]

    skipped = sum(1 for row in rows if row["status"] == "skipped")
    if cfg.fmt == "csv":
        print(render_sweep_csv(rows))
    elif cfg.fmt == "json":
        payload = {
            "command": "sweep",
            "model": cfg.model,
            "r": cfg.r,
            "rows": [
                {k: v for k, v in row.items() if k != "report"} for row in rows
            ],
            "skipped": skipped,
        }
        print(render_json(payload))
    else:
        for row in rows:
            slim = {k: v for k, v in row.items() if k != "report"}
            print(render_text(slim))
            print()
    if skipped:
        print(f"warning: {skipped} grid point(s) outside the domain were skipped",
              file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        handler = {
            "classify": cmd_classify,
            "curvature": cmd_curvature,
            "verify": cmd_verify,
            "sweep": cmd_sweep,
        }[cfg.command]
        return handler(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
