"""Command-line front end: emits plot-ready CSV/JSON, never plots."""
import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import model
from . import sweep as sweeps
from .measures import evaluate
from .sweep import ALL_MEASURES, SweepConfig, SweepRecord

CSV_HEADER = ("t_kelvin", "b_tesla", "negativity", "min", "coherence_l1")
SUBCOMMANDS = ("spectrum", "state", "measures", "sweep-t", "sweep-b", "grid", "thresholds")
ORACLE_TOL = 1e-9


@dataclass
class CliConfig:
    subcommand: str
    params: model.ModelParams = field(default_factory=model.ModelParams)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    t_values: list = field(default_factory=list)
    b_values: list = field(default_factory=list)
    output_path: str = "-"
    format: str = "csv"
    oracle: bool = False
    threshold: float = sweeps.DEFAULT_THRESHOLD
    t_hi: float = 1000.0
    b_hi: float = 1000.0


def _floats(text):
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _bool(text):
    if isinstance(text, bool):
        return text
    v = str(text).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _measures(text):
    items = tuple(v.strip() for v in str(text).split(",") if v.strip())
    bad = set(items) - set(ALL_MEASURES)
    if bad or not items:
        raise argparse.ArgumentTypeError(
            f"measures must be a subset of {','.join(ALL_MEASURES)}, got {text!r}"
        )
    return items


# per-subcommand axis flags and their defaults
_AXIS_DEFAULTS = {
    "spectrum": dict(t="300", b="0"),
    "state": dict(t="300", b="0"),
    "measures": dict(t="300", b="0"),
    "sweep-t": dict(b="0,45,90,150", t_min="5", t_max="600", t_steps="120"),
    "sweep-b": dict(t="5,10,100,300", b_min="0", b_max="450", b_steps="46"),
    "grid": dict(t_min="5", t_max="600", t_steps="60", b_min="0", b_max="450", b_steps="45"),
    "thresholds": dict(t="5", b="0"),
}


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("model")
    g.add_argument("--j", dest="j", type=float, default=model.PAPER_PARAMS.j_over_kb,
                   help="exchange J/k_B in K")
    g.add_argument("--g-rad", dest="g_rad", type=float, default=model.PAPER_PARAMS.g_rad)
    g.add_argument("--g-ni", dest="g_ni", type=float, default=model.PAPER_PARAMS.g_ni)
    g.add_argument("--d", dest="d", type=float, default=0.0, help="single-ion anisotropy D/k_B in K")
    g.add_argument("--field-unit", dest="field_unit", type=float, default=1.0,
                   help=f"Zeeman K per T per unit g (physical: {model.MU_B_OVER_KB})")
    o = common.add_argument_group("output")
    o.add_argument("--config", dest="config", default=None, help="key = value file")
    o.add_argument("--format", dest="format", choices=("csv", "json"), default="csv")
    o.add_argument("--output", dest="output", default="-")
    o.add_argument("--oracle", dest="oracle", nargs="?", const=True, default=False, type=_bool,
                   help="use exp(-H/T) by diagonalisation and audit it against the closed form")
    o.add_argument("--measures", dest="measures", type=_measures, default=",".join(ALL_MEASURES))

    parser = argparse.ArgumentParser(prog="nidimer", description=__doc__)
    subs = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sp = subs.add_parser(name, parents=[common])
        axes = _AXIS_DEFAULTS[name]
        if "t" in axes:
            sp.add_argument("--t", dest="t", type=_floats, default=axes["t"], help="temperature(s) in K")
        if "b" in axes:
            sp.add_argument("--b", dest="b", type=_floats, default=axes["b"], help="field(s) in T")
        for ax, typ in (("t", float), ("b", float)):
            if f"{ax}_min" in axes:
                sp.add_argument(f"--{ax}-min", dest=f"{ax}_min", type=typ, default=axes[f"{ax}_min"])
                sp.add_argument(f"--{ax}-max", dest=f"{ax}_max", type=typ, default=axes[f"{ax}_max"])
                sp.add_argument(f"--{ax}-steps", dest=f"{ax}_steps", type=int, default=axes[f"{ax}_steps"])
        if name == "thresholds":
            sp.add_argument("--threshold", type=float, default=sweeps.DEFAULT_THRESHOLD)
            sp.add_argument("--t-hi", dest="t_hi", type=float, default=1000.0)
            sp.add_argument("--b-hi", dest="b_hi", type=float, default=1000.0)
    return parser, subs


def _read_config(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.lstrip("-")] = value
    return values


def parse_args(argv) -> CliConfig:
    """Parse ``argv`` into a validated CliConfig; exits with status 2 on misuse."""
    parser, subs = _build_parser()
    ns = parser.parse_args(argv)
    sp = subs.choices[ns.subcommand]

    if ns.config:
        try:
            entries = _read_config(ns.config)
        except (OSError, ValueError) as exc:
            sp.error(f"cannot read config: {exc}")
        flags = {}
        for action in sp._actions:
            for opt in action.option_strings:
                flags[opt.lstrip("-")] = action
        defaults = {}
        for key, value in entries.items():
            if key not in flags or key in ("config", "h", "help"):
                sp.error(f"unknown config key {key!r}")
            defaults[flags[key].dest] = value
        # string defaults go through each argument's type converter,
        # and explicit flags still win
        sp.set_defaults(**defaults)
        ns = parser.parse_args(argv)

    try:
        params = model.ModelParams(
            j_over_kb=ns.j, g_rad=ns.g_rad, g_ni=ns.g_ni,
            d_over_kb=ns.d, field_unit=ns.field_unit,
        )
    except ValueError as exc:
        sp.error(str(exc))

    cfg = SweepConfig(measures=ns.measures)
    for name in ("t_min", "t_max", "t_steps", "b_min", "b_max", "b_steps"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    try:
        cfg.validate(t_axis=hasattr(ns, "t_min"), b_axis=hasattr(ns, "b_min"))
    except ValueError as exc:
        sp.error(str(exc))

    t_values = list(getattr(ns, "t", []))
    b_values = list(getattr(ns, "b", []))
    if any(not t > 0 for t in t_values):
        sp.error("temperatures must be > 0 K")
    if any(not math.isfinite(b) for b in b_values):
        sp.error("fields must be finite")
    if ns.subcommand in ("spectrum", "state") and (len(t_values) != 1 or len(b_values) != 1):
        sp.error(f"{ns.subcommand} takes a single --t and a single --b")
    if ns.subcommand in ("sweep-t", "sweep-b", "measures", "thresholds"):
        if (hasattr(ns, "b") and not b_values) or (hasattr(ns, "t") and not t_values):
            sp.error("empty value list")
    cfg.fixed_values = b_values if ns.subcommand == "sweep-t" else t_values

    return CliConfig(
        subcommand=ns.subcommand,
        params=params,
        sweep=cfg,
        t_values=t_values,
        b_values=b_values,
        output_path=ns.output,
        format=ns.format,
        oracle=ns.oracle,
        threshold=getattr(ns, "threshold", sweeps.DEFAULT_THRESHOLD),
        t_hi=getattr(ns, "t_hi", 1000.0),
        b_hi=getattr(ns, "b_hi", 1000.0),
    )


def _num(x):
    return repr(float(x))


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([_num(r.t), _num(r.b), _num(r.negativity), _num(r.min_value), _num(r.coherence_l1)])
    return buf.getvalue()


def records_from_csv(text) -> list:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError("unexpected CSV header")
    return [SweepRecord(*(float(v) for v in row)) for row in rows[1:]]


def _json_num(x):
    x = float(x)
    return x if math.isfinite(x) else None


def records_to_json(params, records) -> str:
    doc = {
        "params": dataclasses.asdict(params),
        "records": [
            dict(zip(CSV_HEADER, map(_json_num, (r.t, r.b, r.negativity, r.min_value, r.coherence_l1))))
            for r in records
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _table_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table_json(params, key, header, rows):
    doc = {"params": dataclasses.asdict(params), key: [dict(zip(header, row)) for row in rows]}
    return json.dumps(doc, indent=2) + "\n"


def _emit(cfg, text):
    if cfg.output_path in ("-", ""):
        sys.stdout.write(text)
    else:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _summary(records):
    parts = [f"points={len(records)}"]
    for label, attr in (("negativity", "negativity"), ("min", "min_value"), ("coherence_l1", "coherence_l1")):
        vals = [getattr(r, attr) for r in records if math.isfinite(getattr(r, attr))]
        if vals:
            parts.append(f"{label}=[{min(vals):.6g}, {max(vals):.6g}]")
    return " ".join(parts)


class OracleMismatch(RuntimeError):
    pass


def _audit(params, points):
    worst = 0.0
    for t, b in points:
        diff = np.max(np.abs(
            model.thermal_state_closed(params, b, t) - model.thermal_state_numeric(params, b, t)
        ))
        worst = max(worst, float(diff))
        if diff > ORACLE_TOL:
            raise OracleMismatch(f"closed vs numeric thermal state differ by {diff:.3e} at t={t}, b={b}")
    return worst


def _run_records(cfg: CliConfig):
    p, sc = cfg.params, cfg.sweep
    if cfg.subcommand == "measures":
        return [sweeps.measure_point(p, b, t, sc.measures, cfg.oracle) for t in cfg.t_values for b in cfg.b_values]
    if cfg.subcommand == "sweep-t":
        return sweeps.sweep_temperature(p, cfg.b_values, sc, cfg.oracle)
    if cfg.subcommand == "sweep-b":
        return sweeps.sweep_field(p, cfg.t_values, sc, cfg.oracle)
    return sweeps.density_grid(p, sc, cfg.oracle)


def _run_thresholds(cfg: CliConfig):
    header = ("quantity", "fixed_kelvin_or_tesla", "value")
    rows = []
    for b in cfg.b_values:
        try:
            v = sweeps.find_vanishing_temperature(cfg.params, b, cfg.threshold, cfg.t_hi)
            print(f"T* ≈ {v:.4g} K (b={b:g} T)", file=sys.stderr)
        except ValueError as exc:
            v = None
            print(f"T*: {exc} (b={b:g} T)", file=sys.stderr)
        rows.append(("vanishing_temperature", b, v))
    for t in cfg.t_values:
        try:
            v = sweeps.find_critical_field(cfg.params, t, cfg.threshold, cfg.b_hi)
            print(f"B_c ≈ {v:.4g} T (t={t:g} K)", file=sys.stderr)
        except ValueError as exc:
            v = None
            print(f"B_c: {exc} (t={t:g} K)", file=sys.stderr)
        rows.append(("critical_field", t, v))
    b_x = model.level_crossing_field(cfg.params)
    print(f"level crossing delta_1 = delta_3 at B = {b_x:.6g} T", file=sys.stderr)
    rows.append(("level_crossing_field", 0.0, b_x))
    if cfg.format == "json":
        return _table_json(cfg.params, "thresholds", header, rows)
    return _table_csv(header, [(q, _num(f), "" if v is None else _num(v)) for q, f, v in rows])


def run(cfg: CliConfig) -> int:
    p = cfg.params
    try:
        if cfg.subcommand == "spectrum":
            t, b = cfg.t_values[0], cfg.b_values[0]
            spec = model.closed_form_spectrum(p, b)
            e = spec.energies
            w = np.exp(-(e - e.min()) / t)
            w /= w.sum()
            header = ("level", "energy_kelvin", "occupation")
            rows = [(k + 1, _num(e[k]), _num(w[k])) for k in range(6)]
            text = (_table_json(p, "levels", header, [(k + 1, float(e[k]), float(w[k])) for k in range(6)])
                    if cfg.format == "json" else _table_csv(header, rows))
            print(f"spectrum at t={t:g} K, b={b:g} T: ground level delta_{int(np.argmin(e)) + 1}",
                  file=sys.stderr)
        elif cfg.subcommand == "state":
            t, b = cfg.t_values[0], cfg.b_values[0]
            if cfg.oracle:
                _audit(p, [(t, b)])
            rho = sweeps.thermal_state(p, b, t, cfg.oracle)
            header = ("row", "col", "re", "im")
            rows = [(i + 1, j + 1, float(rho[i, j].real), float(rho[i, j].imag))
                    for i in range(6) for j in range(6)]
            text = (_table_json(p, "entries", header, rows) if cfg.format == "json"
                    else _table_csv(header, [(i, j, _num(re), _num(im)) for i, j, re, im in rows]))
            res = evaluate(rho)
            print(f"state at t={t:g} K, b={b:g} T: trace={np.trace(rho).real:.12g} "
                  f"negativity={res.negativity:.6g}", file=sys.stderr)
        elif cfg.subcommand == "thresholds":
            text = _run_thresholds(cfg)
        else:
            records = _run_records(cfg)
            if cfg.oracle:
                worst = _audit(p, [(r.t, r.b) for r in records])
                print(f"oracle audit passed, max deviation {worst:.3e}", file=sys.stderr)
            text = records_to_json(p, records) if cfg.format == "json" else records_to_csv(records)
            print(_summary(records), file=sys.stderr)
    except OracleMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        _emit(cfg, text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
