"""Command-line driver: parameter sweeps, single-point dumps, figure presets,
and the validation harness.  Owns the CSV and JSON file formats.

CSV schema: exactly the SweepRecord field names in order, scientific notation
with 12 significant digits, comma delimiter, LF newlines.  Sweeps are
deterministic: identical spec and build produce byte-identical files.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass, field, fields

import numpy as np

from .amplitudes import amplitude_set
from .errors import GuardWindowError, TwoAtomError
from .params import DEFAULT_CUTOFF_RATIO, DEFAULT_DTILDE, PhysParams
from .quantum import report

SWEEP_COLUMNS = [
    "z", "x", "re_a", "im_a", "re_b", "im_b", "u2", "v2", "re_l", "im_l",
    "f2", "g2", "re_fg", "im_fg", "conc0", "ent0", "conc1", "ent1",
    "conc2", "ent2", "conc_mix", "mutual_info", "norm_N",
]

PRESETS = {
    # caption-faithful defaults: three separations, 500 uniform steps;
    # fig1 adds a log-dense satellite block toward the light cone so the
    # near-peak rise is actually sampled, fig3 reaches down to x = 0.01 for
    # the small-x concurrence inset.
    "fig1": dict(x_min=0.05, x_max=3.0, x_steps=500, refine_pole=True,
                 guard_half_width=1e-11),
    "fig2": dict(x_min=0.05, x_max=3.0, x_steps=500, refine_pole=False,
                 guard_half_width=1e-3),
    "fig3": dict(x_min=0.01, x_max=3.0, x_steps=500, refine_pole=False,
                 guard_half_width=1e-3),
}


@dataclass(frozen=True)
class SweepSpec:
    z_values: tuple = (5.0, 10.0, 15.0)
    x_min: float = 0.05
    x_max: float = 3.0
    x_steps: int = 500
    guard_half_width: float = 1e-3
    dtilde: float = DEFAULT_DTILDE
    cutoff_ratio: float = DEFAULT_CUTOFF_RATIO
    output_path: str = None
    fmt: str = "csv"
    refine_pole: bool = False

    def __post_init__(self):
        if not self.x_min > 0:
            raise ValueError("x_min must be > 0")
        if self.x_steps < 2:
            raise ValueError("x_steps must be >= 2")
        if self.guard_half_width < 0:
            raise ValueError("guard_half_width must be >= 0")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.fmt}")

    def x_grid(self):
        xs = np.linspace(self.x_min, self.x_max, self.x_steps)
        if self.refine_pole:
            side = np.logspace(-11, math.log10(0.04), 60)
            xs = np.concatenate([xs, 1.0 - side, 1.0 + side])
        xs = np.unique(xs)
        return [float(v) for v in xs if v > 0]


@dataclass
class SweepRecord:
    z: float
    x: float
    re_a: float
    im_a: float
    re_b: float
    im_b: float
    u2: float
    v2: float
    re_l: float
    im_l: float
    f2: float
    g2: float
    re_fg: float
    im_fg: float
    conc0: float
    ent0: float
    conc1: float
    ent1: float
    conc2: float
    ent2: float
    conc_mix: float
    mutual_info: float
    norm_N: float

    def row(self):
        return [getattr(self, c) for c in SWEEP_COLUMNS]


def _fmt(v):
    return f"{v:.11e}"


def evaluate_point(p: PhysParams, guard_half_width=1e-3):
    """(AmplitudeSet, EntanglementReport) at one parameter point."""
    s = amplitude_set(p, guard_half_width=guard_half_width)
    return s, report(s)


def _record(p, s, r):
    return SweepRecord(
        z=p.z, x=p.x,
        re_a=s.a.real, im_a=s.a.imag,
        re_b=s.b.real, im_b=s.b.imag,
        u2=s.u2, v2=s.v2,
        re_l=s.l.real, im_l=s.l.imag,
        f2=s.f2, g2=s.g2,
        re_fg=s.fg.real, im_fg=s.fg.imag,
        conc0=r.conc_n0, ent0=r.ent_n0,
        conc1=r.conc_n1, ent1=r.ent_n1,
        conc2=r.conc_n2, ent2=r.ent_n2,
        conc_mix=r.conc_mixed, mutual_info=r.mutual_info,
        norm_N=r.norm_N,
    )


def run_sweep(spec: SweepSpec, log=None):
    """One record per grid point outside guard windows, z then x ascending.

    Points inside a guard window, or whose sector states lose perturbative
    validity (the light-cone strip where |l|^2 > u2 v2), are skipped with the
    reason logged.  Returns (records, skipped) and writes the file when
    output_path is set.
    """
    log = log if log is not None else (lambda msg: None)
    records, skipped = [], []
    xs = spec.x_grid()
    for z in sorted(spec.z_values):
        for x in xs:
            p = PhysParams(z=z, x=x, dtilde=spec.dtilde,
                           cutoff_ratio=spec.cutoff_ratio)
            try:
                s, r = evaluate_point(p, spec.guard_half_width)
            except TwoAtomError as exc:
                skipped.append((z, x, f"{type(exc).__name__}: {exc}"))
                log(f"skip z={z:g} x={x:.12g}: {type(exc).__name__}: {exc}")
                continue
            records.append(_record(p, s, r))
    if spec.output_path:
        payload = render_sweep(records, skipped, spec.fmt)
        with open(spec.output_path, "w", newline="") as fh:
            fh.write(payload)
    return records, skipped


def render_sweep(records, skipped, fmt="csv"):
    if fmt == "csv":
        lines = [",".join(SWEEP_COLUMNS)]
        for rec in records:
            lines.append(",".join(_fmt(v) for v in rec.row()))
        return "\n".join(lines) + "\n"
    doc = {
        "columns": SWEEP_COLUMNS,
        "records": [
            {c: float(_fmt(v)) for c, v in zip(SWEEP_COLUMNS, rec.row())}
            for rec in records
        ],
        "skipped": [
            {"z": z, "x": x, "reason": reason} for (z, x, reason) in skipped
        ],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def emit_point(p: PhysParams, guard_half_width=1e-3):
    """Single-point JSON document: params, amplitudes, measures."""
    s, r = evaluate_point(p, guard_half_width)
    def c(v):
        return {"re": float(_fmt(v.real)), "im": float(_fmt(v.imag))}
    doc = {
        "params": {
            "z": float(_fmt(p.z)), "x": float(_fmt(p.x)),
            "tau": float(_fmt(p.tau)),
            "dtilde": float(_fmt(p.dtilde)), "alpha": float(_fmt(p.alpha)),
            "cutoff_ratio": float(_fmt(p.cutoff_ratio)),
        },
        "amplitudes": {
            "a": c(s.a), "b": c(s.b),
            "u2": float(_fmt(s.u2)), "v2": float(_fmt(s.v2)),
            "l": c(s.l), "vu": c(s.vu), "vv": c(s.vv), "uu": c(s.uu),
            "f2": float(_fmt(s.f2)), "g2": float(_fmt(s.g2)), "fg": c(s.fg),
        },
        "measures": {
            "conc_n0": float(_fmt(r.conc_n0)),
            "conc_n1": float(_fmt(r.conc_n1)),
            "conc_n2": float(_fmt(r.conc_n2)),
            "conc_mixed": float(_fmt(r.conc_mixed)),
            "ent_n0": float(_fmt(r.ent_n0)),
            "ent_n1": float(_fmt(r.ent_n1)),
            "ent_n2": float(_fmt(r.ent_n2)),
            "mutual_info": float(_fmt(r.mutual_info)),
            "norm_N": float(_fmt(r.norm_N)),
        },
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _sweep_spec_from_args(args):
    base = {}
    if args.preset:
        base.update(PRESETS[args.preset])
    if args.z is not None:
        base["z_values"] = tuple(float(v) for v in args.z.split(","))
    for name, key in [("x_min", "x_min"), ("x_max", "x_max"),
                      ("x_steps", "x_steps"), ("guard", "guard_half_width"),
                      ("dtilde", "dtilde"), ("cutoff_ratio", "cutoff_ratio")]:
        val = getattr(args, name)
        if val is not None:
            base[key] = val
    base["output_path"] = args.output
    base["fmt"] = args.format
    return SweepSpec(**base)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="twoatom",
        description="Vacuum-mediated two-atom correlations: sweeps, "
                    "single points, and the numerical validation harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="grid sweep over (z, x)")
    sw.add_argument("--z", help="comma-separated z values", default=None)
    sw.add_argument("--x-min", type=float, default=None)
    sw.add_argument("--x-max", type=float, default=None)
    sw.add_argument("--x-steps", type=int, default=None)
    sw.add_argument("--guard", type=float, default=None)
    sw.add_argument("--dtilde", type=float, default=None)
    sw.add_argument("--cutoff-ratio", type=float, default=None)
    sw.add_argument("--output", required=True)
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    sw.add_argument("--preset", choices=tuple(PRESETS), default=None)

    pt = sub.add_parser("point", help="single-point structured dump")
    pt.add_argument("--z", type=float, required=True)
    pt.add_argument("--x", type=float, required=True)
    pt.add_argument("--dtilde", type=float, default=DEFAULT_DTILDE)
    pt.add_argument("--cutoff-ratio", type=float, default=DEFAULT_CUTOFF_RATIO)
    pt.add_argument("--guard", type=float, default=1e-3)
    pt.add_argument("--output", default=None)

    va = sub.add_parser("validate", help="run every oracle/invariant check")
    va.add_argument("--tolerance-profile", choices=("default", "strict"),
                    default="default")

    args = parser.parse_args(argv)

    if args.command == "sweep":
        spec = _sweep_spec_from_args(args)
        records, skipped = run_sweep(spec, log=lambda m: print(m, file=sys.stderr))
        print(f"wrote {len(records)} records "
              f"({len(skipped)} skipped) to {spec.output_path}",
              file=sys.stderr)
        return 0

    if args.command == "point":
        p = PhysParams(z=args.z, x=args.x, dtilde=args.dtilde,
                       cutoff_ratio=args.cutoff_ratio)
        try:
            doc = emit_point(p, guard_half_width=args.guard)
        except GuardWindowError as exc:
            print(f"error: {exc} (quantity: {exc.quantity})", file=sys.stderr)
            return 1
        if args.output:
            with open(args.output, "w", newline="") as fh:
                fh.write(doc)
        else:
            sys.stdout.write(doc)
        return 0

    if args.command == "validate":
        from .validation import run_validation
        rep = run_validation(profile=args.tolerance_profile,
                             log=lambda m: print(m))
        return 0 if rep.passed else 1

    return 2


if __name__ == "__main__":
    sys.exit(main())
