"""Command-line front end: sweeps over (M, r, state) and deterministic tables.

Configuration files are TOML with these top-level keys::

    mode = "bare"                   # bare | zeeman | stark | semiclassical
    mass_grid = [1.989e33]          # g, >= 0
    radius_grid = [6.957e10]        # cm, > 0
    states = [[2, 1, "all"]]        # [n, l, m_l], [n, l, "all"], [n, "all"]
    b0 = 0.0                        # G
    e0 = 0.0                        # statV/cm
    curvature_mode = "leading_orthonormal"
    axis_permutation = [1, 2, 3]

    [output]
    format = "csv"                  # csv | json
    path = "table.csv"              # stdout when absent

``states = "all"`` together with ``n = 2`` (or a list of n) expands to every
(l, m_l) of those shells.
"""

from __future__ import annotations

import argparse
import csv
import difflib
import io
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import tomli

from curvedatom.constants import HorizonError, make_context, validity_report
from curvedatom.curvature import CurvatureMode, check_axes, schwarzschild_curvature
from curvedatom.hydrogenic import AtomState
from curvedatom.perturbation import TERM_ORDER, first_order_levels
from curvedatom.semiclassical import RootSelectionError, orbit_radius

OUT_ENV = "CURVEDATOM_OUT"
MODES = ("bare", "zeeman", "stark", "semiclassical")
FORMATS = ("csv", "json")

COLUMNS = (
    "case", "M_g", "r_cm", "n", "l", "m_l", "E_flat_erg",
    *(f"dE_{tag.value}_erg" for tag in TERM_ORDER),
    "dE_total_erg", "weak_field_param", "warnings",
)
SEMICLASSICAL_COLUMNS = (
    "case", "M_g", "r_cm", "n", "rho_cm", "v_cm_s", "r_a_cm", "residual",
    "weak_field_param", "warnings",
)

TOP_KEYS = ("mode", "mass_grid", "radius_grid", "states", "n", "b0", "e0",
            "curvature_mode", "axis_permutation", "output")
OUTPUT_KEYS = ("format", "path")
ALIASES = {
    "bfield": "b0", "b_field": "b0", "B0": "b0", "magnetic_field": "b0",
    "efield": "e0", "e_field": "e0", "E0": "e0", "electric_field": "e0",
    "masses": "mass_grid", "mass": "mass_grid", "M": "mass_grid",
    "radii": "radius_grid", "radius": "radius_grid", "r": "radius_grid",
    "state": "states", "axes": "axis_permutation", "curvature": "curvature_mode",
}


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class OutputSpec:
    format: str = "csv"
    path: str | None = None


@dataclass(frozen=True)
class SweepConfig:
    mode: str
    mass_grid: tuple[float, ...]
    radius_grid: tuple[float, ...]
    states: tuple[tuple, ...]  # (n, l | "all", m_l | "all")
    b0: float = 0.0
    e0: float = 0.0
    curvature_mode: str = CurvatureMode.LEADING_ORTHONORMAL.value
    axis_permutation: tuple[int, int, int] = (1, 2, 3)
    output: OutputSpec = field(default_factory=OutputSpec)

    def expanded_states(self) -> list[AtomState]:
        out = set()
        for n, l, m in self.states:
            ls = range(n) if l == "all" else [l]
            for ll in ls:
                ms = range(-ll, ll + 1) if m == "all" else [m]
                out.update(AtomState(n, ll, mm) for mm in ms)
        return sorted(out)


# parsing ----------------------------------------------------------------------

def _locate(text: str, key: str, section: str | None = None) -> tuple[int | None, int | None]:
    current = None
    pattern = re.compile(rf'^(\s*)("?){re.escape(key)}\2\s*=')
    for lineno, line in enumerate(text.splitlines(), start=1):
        header = re.match(r"^\s*\[([^\]]+)\]", line)
        if header:
            current = header.group(1).strip()
            continue
        m = pattern.match(line)
        if m and current == section:
            return lineno, len(m.group(1)) + 1
    return None, None


def _suggest(key: str, valid) -> str:
    if key in ALIASES and ALIASES[key] in valid:
        return ALIASES[key]
    close = difflib.get_close_matches(key, valid, n=1, cutoff=0.0)
    return close[0] if close else ""


def _number(value, key, text, section=None) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key!r} must be a number, got {value!r}", *_locate(text, key, section))
    return float(value)


def _grid(raw, key, text, *, allow_zero: bool) -> tuple[float, ...]:
    if key not in raw:
        raise ConfigError(f"missing required grid {key!r}")
    values = raw[key]
    if not isinstance(values, list):
        values = [values]
    if not values:
        raise ConfigError(f"{key!r} must not be empty", *_locate(text, key))
    out = []
    for v in values:
        v = _number(v, key, text)
        if not math.isfinite(v) or v < 0 or (v == 0 and not allow_zero):
            bound = "non-negative" if allow_zero else "positive"
            raise ConfigError(f"{key!r} entries must be finite and {bound}, got {v!r}",
                              *_locate(text, key))
        out.append(v)
    return tuple(out)


def _int(value, key, text) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key!r}: expected an integer, got {value!r}", *_locate(text, key))
    return value


def _states(raw, text) -> tuple[tuple, ...]:
    if "states" not in raw:
        raise ConfigError("missing required key 'states'")
    states = raw["states"]
    where = _locate(text, "states")
    if states == "all":
        if "n" not in raw:
            raise ConfigError("states = \"all\" needs an 'n' key (integer or list)", *where)
        ns = raw["n"] if isinstance(raw["n"], list) else [raw["n"]]
        states = [[_int(n, "n", text), "all"] for n in ns]
    if not isinstance(states, list) or not states:
        raise ConfigError("'states' must be a non-empty list or \"all\"", *where)
    out = []
    for entry in states:
        if not isinstance(entry, list) or len(entry) not in (2, 3):
            raise ConfigError(f"state entry {entry!r} must be [n, l, m_l], [n, l, \"all\"] "
                              "or [n, \"all\"]", *where)
        if len(entry) == 2:
            if entry[1] != "all":
                raise ConfigError(f"two-element state {entry!r} must be [n, \"all\"]", *where)
            entry = [entry[0], "all", "all"]
        n = _int(entry[0], "states", text)
        l = entry[1] if entry[1] == "all" else _int(entry[1], "states", text)
        m = entry[2] if entry[2] == "all" else _int(entry[2], "states", text)
        if l == "all" and m != "all":
            raise ConfigError(f"state {entry!r}: m_l must be \"all\" when l is", *where)
        try:
            AtomState(n, 0 if l == "all" else l, 0 if m == "all" else m)
        except ValueError as exc:
            raise ConfigError(f"state {entry!r}: {exc}", *where) from None
        out.append((n, l, m))
    return tuple(out)


def parse_config(text: str) -> SweepConfig:
    """Parse and validate a sweep configuration; defaults are filled in."""
    try:
        raw = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"syntax error: {exc}") from None

    for key in raw:
        if key not in TOP_KEYS:
            hint = _suggest(key, TOP_KEYS)
            raise ConfigError(f"unknown key {key!r}" + (f"; did you mean {hint!r}?" if hint else ""),
                              *_locate(text, key))
    output_raw = raw.get("output", {})
    if not isinstance(output_raw, dict):
        raise ConfigError("'output' must be a table", *_locate(text, "output"))
    for key in output_raw:
        if key not in OUTPUT_KEYS:
            hint = _suggest(key, OUTPUT_KEYS)
            raise ConfigError(f"unknown key 'output.{key}'" + (f"; did you mean {hint!r}?" if hint else ""),
                              *_locate(text, key, "output"))

    mode = raw.get("mode")
    if mode not in MODES:
        raise ConfigError(f"'mode' must be one of {', '.join(MODES)}, got {mode!r}",
                          *_locate(text, "mode"))
    b0 = _number(raw.get("b0", 0.0), "b0", text)
    e0 = _number(raw.get("e0", 0.0), "e0", text)
    for key, v in (("b0", b0), ("e0", e0)):
        if v < 0 or not math.isfinite(v):
            raise ConfigError(f"{key!r} must be finite and non-negative, got {v!r}", *_locate(text, key))

    curvature_mode = raw.get("curvature_mode", CurvatureMode.LEADING_ORTHONORMAL.value)
    if curvature_mode not in [m.value for m in CurvatureMode]:
        raise ConfigError(f"unknown curvature_mode {curvature_mode!r}", *_locate(text, "curvature_mode"))
    try:
        axes = check_axes(raw.get("axis_permutation", (1, 2, 3)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), *_locate(text, "axis_permutation")) from None

    fmt = output_raw.get("format", "csv")
    if fmt not in FORMATS:
        raise ConfigError(f"output format must be csv or json, got {fmt!r}",
                          *_locate(text, "format", "output"))
    path = output_raw.get("path")
    if path is not None and not isinstance(path, str):
        raise ConfigError("output path must be a string", *_locate(text, "path", "output"))

    return SweepConfig(
        mode=mode,
        mass_grid=_grid(raw, "mass_grid", text, allow_zero=True),
        radius_grid=_grid(raw, "radius_grid", text, allow_zero=False),
        states=_states(raw, text),
        b0=b0,
        e0=e0,
        curvature_mode=curvature_mode,
        axis_permutation=axes,
        output=OutputSpec(fmt, path),
    )


# evaluation -------------------------------------------------------------------

def _row_error(M, r, exc) -> PreconditionError:
    return PreconditionError(f"row M_g={M!r}, r_cm={r!r}: {exc}")


def _level_rows(ctx, config, M, r, curv) -> list[dict]:
    wanted = config.expanded_states()
    rows = []
    if config.mode == "stark":
        groups = sorted({(s.n, None) for s in wanted})
    else:
        groups = sorted({(s.n, s.l) for s in wanted})
    for n, l in groups:
        levels = first_order_levels(ctx, curv, config.mode, n, l, B0=config.b0, E0=config.e0,
                                    axes=config.axis_permutation)
        for level in levels:
            if level.state not in wanted:
                continue
            row = {"M_g": M, "r_cm": r, "n": level.state.n, "l": level.state.l,
                   "m_l": level.state.m_l, "E_flat_erg": level.flat_energy}
            for tag in TERM_ORDER:
                row[f"dE_{tag.value}_erg"] = level.terms[tag]
            row["dE_total_erg"] = level.shift
            row["weak_field_param"] = level.validity.weak_field_parameter
            row["warnings"] = "; ".join(level.validity.warnings)
            rows.append(row)
    return rows


def _semiclassical_rows(ctx, config, M, r, curv) -> list[dict]:
    validity = validity_report(ctx, M, r, config.b0)
    rows = []
    for n in sorted({s.n for s in config.expanded_states()}):
        res = orbit_radius(ctx, curv, config.b0, n, config.axis_permutation)
        rows.append({"M_g": M, "r_cm": r, "n": n, "rho_cm": res.rho, "v_cm_s": res.v,
                     "r_a_cm": res.r_a, "residual": res.residual,
                     "weak_field_param": validity.weak_field_parameter,
                     "warnings": "; ".join(validity.warnings)})
    return rows


def compute_rows(config: SweepConfig, ctx=None) -> list[dict]:
    """Every table row of a sweep, sorted by (M, r, n, l, m_l), with case ids."""
    ctx = ctx or make_context()
    rows = []
    for M in config.mass_grid:
        for r in config.radius_grid:
            try:
                curv = schwarzschild_curvature(ctx, M, r, config.curvature_mode)
                if config.mode == "semiclassical":
                    rows.extend(_semiclassical_rows(ctx, config, M, r, curv))
                else:
                    rows.extend(_level_rows(ctx, config, M, r, curv))
            except (HorizonError, RootSelectionError, ValueError) as exc:
                raise _row_error(M, r, exc) from None
    rows.sort(key=lambda row: (row["M_g"], row["r_cm"], row["n"], row.get("l", 0), row.get("m_l", 0)))
    for i, row in enumerate(rows, start=1):
        row["case"] = f"{config.mode}-{i:04d}"
    return rows


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render(rows: list[dict], columns, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
        return buf.getvalue()
    items = []
    for row in rows:
        fields = []
        for c in columns:
            v = row[c]
            if isinstance(v, float):
                text = _fmt(v) if math.isfinite(v) else "null"
            elif isinstance(v, int):
                text = str(v)
            else:
                text = json.dumps(v)
            fields.append(f"{json.dumps(c)}: {text}")
        items.append("  {" + ", ".join(fields) + "}")
    return "[\n" + ",\n".join(items) + "\n]\n" if items else "[]\n"


def run_sweep(config: SweepConfig, ctx=None, out=None, path: str | None = None) -> int:
    """Evaluate and emit a sweep.  Returns 0 on success, 2 on a precondition failure.

    The destination is ``out`` (a text stream) if given, else ``path``, else
    the environment override, else the configured path, else stdout.
    """
    try:
        rows = compute_rows(config, ctx)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    columns = SEMICLASSICAL_COLUMNS if config.mode == "semiclassical" else COLUMNS
    text = render(rows, columns, config.output.format)
    path = path or os.environ.get(OUT_ENV) or config.output.path
    if out is not None:
        out.write(text)
    elif path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


# command line -----------------------------------------------------------------

def _load_constants(path: str | None):
    if path is None:
        return make_context()
    try:
        raw = tomli.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, tomli.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read constants file {path!r}: {exc}") from None
    system = raw.pop("unit_system", "gaussian_cgs")
    try:
        return make_context(system, raw)
    except ValueError as exc:
        raise ConfigError(f"constants file {path!r}: {exc}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, help="output format (default csv)")
    p.add_argument("--out", help=f"output file (overrides ${OUT_ENV} and the config)")
    p.add_argument("--curvature-mode", choices=[m.value for m in CurvatureMode])
    p.add_argument("--constants", help="TOML file overriding G, c, hbar, e_charge, m_electron, Z")


def _single(p: argparse.ArgumentParser, *, need_l: bool) -> None:
    p.add_argument("--mass", type=float, required=True, help="central mass in g")
    p.add_argument("--radius", type=float, required=True, help="distance from the centre in cm")
    p.add_argument("--n", type=int, required=True)
    if need_l:
        p.add_argument("--l", type=int, required=True)
        p.add_argument("--m", type=int, help="m_l (default: all)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvedatom",
        description="First-order curvature corrections to hydrogenic levels near a mass.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("bare", help="mass-quadrupole and nuclear-curvature shifts")
    _single(p, need_l=True)
    _common(p)
    p = sub.add_parser("zeeman", help="normal Zeeman shift and its curvature correction")
    _single(p, need_l=True)
    p.add_argument("--b0", type=float, required=True, help="field strength in G")
    _common(p)
    p = sub.add_parser("stark", help="Stark shifts over a whole n-shell")
    _single(p, need_l=False)
    p.add_argument("--e0", type=float, required=True, help="field strength in statV/cm")
    _common(p)
    p = sub.add_parser("semiclassical", help="Bohr orbit radius and curvature radius")
    _single(p, need_l=False)
    p.add_argument("--b0", type=float, default=0.0, help="field strength in G")
    _common(p)
    p = sub.add_parser("sweep", help="run a TOML sweep configuration")
    p.add_argument("--config", required=True)
    _common(p)
    return parser


def _config_from_args(args) -> SweepConfig:
    if args.verb == "sweep":
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read {args.config!r}: {exc}") from None
        config = parse_config(text)
    else:
        if args.verb in ("bare", "zeeman"):
            state = (args.n, args.l, "all" if args.m is None else args.m)
        else:
            state = (args.n, "all", "all")
        lines = [f'mode = "{args.verb}"', f"mass_grid = [{args.mass!r}]",
                 f"radius_grid = [{args.radius!r}]",
                 "states = [" + json.dumps(list(state)) + "]"]
        for key in ("b0", "e0"):
            if getattr(args, key, None) is not None:
                lines.append(f"{key} = {getattr(args, key)!r}")
        config = parse_config("\n".join(lines) + "\n")
    changes = {}
    if args.curvature_mode:
        changes["curvature_mode"] = args.curvature_mode
    if args.format:
        changes["output"] = replace(config.output, format=args.format)
    return replace(config, **changes)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        ctx = _load_constants(args.constants)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    return run_sweep(config, ctx, path=args.out)


if __name__ == "__main__":
    sys.exit(main())
