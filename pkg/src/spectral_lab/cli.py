"""Command-line entry point: ``spectral-lab {construct,verify,dimension,density,sweep}``.

Exit codes: 0 pass, 1 verification failure, 2 bad parameters, 3 value out of
representable range, 4 degenerate counting profile.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

from . import density as dens
from .errors import DegenerateProfileError, MalformedSpectrumError, RepresentabilityError
from .experiments import (
    DEFAULT_WINDOW,
    SWEEP_S,
    SWEEP_T,
    run_sweep,
    svg_line_chart,
    sweep_to_csv,
    tolerance_banner,
    verify_family,
    verify_points,
)
from .report import fmt, reports_to_csv
from .spectra import (
    DensityCalibrated,
    Exponential,
    Linear,
    PowerLaw,
    PowerLawScaled,
    PowerLog,
    Zero,
    read_spectrum_csv,
    spectrum_window,
    write_spectrum_csv,
)

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_RANGE, EXIT_DEGENERATE = 0, 1, 2, 3, 4

FAMILIES = (
    "zero",
    "linear",
    "power-law",
    "power-law-scaled",
    "exponential",
    "power-log",
    "density-calibrated",
)
CONFIG_KEYS = {
    "family": str,
    "t": float,
    "s": float,
    "a": float,
    "N": int,
    "h_min": float,
    "ratio": float,
    "steps": int,
    "seed": int,
    "centers": str,
    "out_path": str,
    "format": str,
}
DEFAULTS = {"N": DEFAULT_WINDOW, "seed": 0, "centers": "origin", "format": "csv"}


class ParamError(ValueError):
    pass


def read_config(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParamError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ParamError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = CONFIG_KEYS[key](value)
        except ValueError as exc:
            raise ParamError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return out


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults < config file < flags."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(read_config(args.config))
    for key in CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    return cfg


def build_family(cfg: dict):
    name = cfg.get("family")
    if name is None:
        raise ParamError("--family is required")
    t, s, a = cfg.get("t"), cfg.get("s"), cfg.get("a")

    def need(val, flag):
        if val is None:
            raise ParamError(f"family {name} needs --{flag}")
        return val

    try:
        if name == "zero":
            return Zero()
        if name == "linear":
            return Linear()
        if name == "power-law":
            t = need(t, "t")
            if t <= 0:
                raise ParamError(
                    "power-law needs t in (0, 1); dimension 0 is only realised by the "
                    "exponential family, where the density is infinite"
                )
            return PowerLaw(t)
        if name == "power-law-scaled":
            return PowerLawScaled(need(t, "t"), need(a, "a"))
        if name == "exponential":
            return Exponential(need(a, "a"))
        if name == "power-log":
            return PowerLog(need(t, "t"))
        if name == "density-calibrated":
            return DensityCalibrated(need(t, "t"), need(s, "s"))
    except ParamError:
        raise
    except ValueError as exc:
        raise ParamError(str(exc)) from exc
    raise ParamError(f"unknown family {name!r}")


def build_schedule(cfg: dict, family) -> dens.RadiusSchedule:
    base = dens.default_schedule(family)
    try:
        return dens.RadiusSchedule(
            cfg.get("h_min", base.h_min),
            cfg.get("ratio", base.ratio),
            cfg.get("steps", base.steps),
        )
    except ValueError as exc:
        raise ParamError(str(exc)) from exc


def build_centers(cfg: dict) -> dens.CenterPolicy:
    try:
        return dens.CenterPolicy(kind=cfg["centers"], seed=cfg["seed"])
    except ValueError as exc:
        raise ParamError(str(exc)) from exc


def emit(text: str, cfg: dict) -> None:
    path = cfg.get("out_path")
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _table(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_construct(args) -> int:
    cfg = resolve(args)
    family = build_family(cfg)
    if cfg["N"] < 0:
        raise ParamError("window must be non-negative")
    emit(write_spectrum_csv(spectrum_window(family, cfg["N"])), cfg)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = resolve(args)
    print(tolerance_banner(), file=sys.stderr)
    if args.spectrum_file:
        pts = read_spectrum_csv(Path(args.spectrum_file).read_text(encoding="utf-8"))
        reports = verify_points(pts)
    else:
        family = build_family(cfg)
        if cfg["N"] < 2:
            raise ParamError("window must be at least 2")
        reports = verify_family(family, cfg["N"], args.q_terms)
    emit(reports_to_csv(reports), cfg)
    for r in reports:
        print(r.summary(), file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _write_profile(args, profile) -> None:
    if args.profile:
        Path(args.profile).write_text(profile.to_csv(), encoding="utf-8")


def cmd_dimension(args) -> int:
    cfg = resolve(args)
    family = build_family(cfg)
    sched = build_schedule(cfg, family)
    if sched.steps < 8:
        raise ParamError("dimension estimates need --steps >= 8")
    centers = build_centers(cfg)
    sup = dens.sup_profile(family, sched, centers)
    origin = sup if centers.kind == "origin" else dens.counting_profile(family, sched)
    be = dens.dimension_from_profile(sup)
    ba = dens.dimension_from_profile(origin)
    _write_profile(args, origin)
    rows = [
        [family.describe(), "beurling", *be.csv_row()],
        [family.describe(), "banach", *ba.csv_row()],
    ]
    emit(_table(["family", "kind", *dens.DIMENSION_HEADER], rows), cfg)
    return EXIT_OK


def cmd_density(args) -> int:
    cfg = resolve(args)
    family = build_family(cfg)
    sched = build_schedule(cfg, family)
    centers = build_centers(cfg)
    if args.r is None or args.r < 0:
        raise ParamError("--r must be given and non-negative")
    sup = dens.sup_profile(family, sched, centers)
    origin = sup if centers.kind == "origin" else dens.counting_profile(family, sched)
    _write_profile(args, origin)
    rows = [
        [family.describe(), "beurling", *dens.density_from_profile(sup, args.r).csv_row()],
        [family.describe(), "banach", *dens.density_from_profile(origin, args.r).csv_row()],
    ]
    emit(_table(["family", "kind", *dens.DENSITY_HEADER], rows), cfg)
    return EXIT_OK


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ParamError(f"bad list {text!r}") from exc


def cmd_sweep(args) -> int:
    cfg = resolve(args)
    ts = _float_list(args.t_grid) if args.t_grid else SWEEP_T
    ss = _float_list(args.s_grid) if args.s_grid else SWEEP_S
    if any(not 0 < t <= 1 for t in ts):
        raise ParamError("t values must lie in (0, 1]")
    if any(not s > 0 for s in ss):
        raise ParamError("s values must be > 0 (s = 0 is the power-log family; use `density`)")
    if cfg["format"] not in ("csv", "svg"):
        raise ParamError("format must be csv or svg")
    steps = cfg.get("steps", 20)
    if steps < 8:
        raise ParamError("the sweep needs --steps >= 8 for the dimension fit")
    sched = None
    if "h_min" in cfg or "ratio" in cfg:
        sched = build_schedule(cfg, DensityCalibrated(ts[0], ss[0]))
    print(tolerance_banner(), file=sys.stderr)
    cells = run_sweep(ts, ss, sched, cfg["N"], args.q_terms, steps=steps)
    emit(sweep_to_csv(cells), cfg)
    if args.plot_dir:
        out = Path(args.plot_dir)
        out.mkdir(parents=True, exist_ok=True)
        for c in cells:
            stem = f"cell_t{fmt(c.t)}_s{fmt(c.s)}"
            (out / f"{stem}.dat").write_text(c.plot_csv(), encoding="utf-8")
            if cfg["format"] == "svg":
                xs = [math.log(h) for h in c.profile.h]
                ys = [math.log(n) for n in c.profile.counts]
                (out / f"{stem}.svg").write_text(
                    svg_line_chart(xs, ys, f"t={c.t:g}, s={c.s:g}: log N vs log h"), encoding="utf-8"
                )
    for c in cells:
        if not c.passed:
            print(f"[FAIL] t={c.t:g} s={c.s:g} dim={c.dim_est:.4f} density={c.density_est:.4f}", file=sys.stderr)
    return EXIT_OK if all(c.passed for c in cells) else EXIT_FAIL


def _family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--t", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--window", "--N", dest="N", type=int, help="half-width N of the window |n| <= N")
    p.add_argument("--out", dest="out_path", help="output path (default stdout)")


def _schedule_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--h-min", dest="h_min", type=float)
    p.add_argument("--ratio", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--centers", choices=("origin", "random", "lattice"))
    p.add_argument("--profile", help="also write the origin counting profile CSV here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spectral-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write the n,beta window of a spectrum")
    _family_flags(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="orthogonality, Gram and completeness checks")
    _family_flags(p)
    p.add_argument("--spectrum-file", help="verify an explicit n,beta CSV instead of a family")
    p.add_argument("--q-terms", type=int, default=10_000, help="truncation of the Q series")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dimension", help="Beurling and Banach dimension estimates")
    _family_flags(p)
    _schedule_flags(p)
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("density", help="upper r-Beurling and r-Banach density estimates")
    _family_flags(p)
    _schedule_flags(p)
    p.add_argument("--r", type=float)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("sweep", help="(t, s) grid of density-calibrated spectra")
    _family_flags(p)
    _schedule_flags(p)
    p.add_argument("--t-grid", help="comma-separated t values")
    p.add_argument("--s-grid", help="comma-separated s values")
    p.add_argument("--plot-dir", help="directory for per-cell log_h,log_count files")
    p.add_argument("--format", choices=("csv", "svg"))
    p.add_argument("--q-terms", type=int, default=10_000)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParamError, MalformedSpectrumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL if isinstance(exc, MalformedSpectrumError) else EXIT_PARAMS
    except RepresentabilityError as exc:
        print(f"range error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except DegenerateProfileError as exc:
        print(f"degenerate profile: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
