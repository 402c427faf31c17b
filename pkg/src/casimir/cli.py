"""Command-line driver: single evaluations, parameter sweeps and presets.

::

    casimir single  <config> [--format json|csv]
    casimir sweep   <config> --out <path> [--format csv|json] [--jobs N]
    casimir validate <config>
    casimir presets list

Exit status: 0 success, 2 configuration error, 3 convergence error,
4 I/O error, 1 any other computation error.
"""

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .config import (AXES, AXIS_UNITS, MODELS, QUANTITIES, ConfigError, load_config,
                     with_values)
from .errors import CasimirError, ConvergenceError, LoadError
from .geometry import SphereGeometry, plane_sphere_force_pfa
from .mirrors import (PRESETS, Drude, Perfect, Plasma, Scalar, load_tabulated_permittivity,
                      plasma_frequency)
from .motional import (MotionalSpec, casimir_inertia_correction, chi_thermal, chi_vacuum)
from .radiometry import blackbody_energy_density
from .scattering import CavityGeometry, QuadratureSpec, casimir_force_scattering
from .thermal import ThermalSpec, casimir_force_thermal, casimir_free_energy_thermal

EXIT_OK, EXIT_COMPUTE, EXIT_CONFIG, EXIT_CONVERGENCE, EXIT_IO = 0, 1, 2, 3, 4

UNITS = {
    "force": "N",
    "energy": "J",
    "eta": "1",
    "thermal_ratio": "1",
    "sphere_force": "N",
    "chi_vac": "N_per_m",
    "chi_bbr": "N_per_m",
    "mu": "kg",
    "bbr_density": "J_per_m3",
}


def value_column(quantity):
    name = f"{quantity}_imag" if quantity.startswith("chi_") else quantity
    return f"{name}_{UNITS[quantity]}"


# -- building inputs -------------------------------------------------------

def _require(cfg, key):
    if key not in cfg:
        raise ConfigError(key, "required")
    return cfg.get(key)


def _positive(cfg, key, default=None):
    value = cfg.get(key, default) if default is not None else _require(cfg, key)
    if not value > 0:
        raise ConfigError(key, "must be positive")
    return value


def _non_negative(cfg, key, default=None):
    value = cfg.get(key, default) if default is not None else _require(cfg, key)
    if not value >= 0:
        raise ConfigError(key, "must be non-negative")
    return value


def _has_mirror2(cfg):
    return any(k.startswith("mirror2.") for k in cfg.values)


def _mirror(cfg, prefix):
    if prefix == "mirror2" and not _has_mirror2(cfg):
        prefix = "mirror1"
    model = _require(cfg, f"{prefix}.model")
    try:
        if model == "perfect":
            return Perfect()
        if model == "scalar":
            return Scalar(_require(cfg, f"{prefix}.r0"))
        if model == "preset":
            name = _require(cfg, f"{prefix}.preset")
            if name not in PRESETS:
                raise ConfigError(f"{prefix}.preset",
                                  f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
            return PRESETS[name]
        if model in ("plasma", "drude"):
            wp_key, lp_key = f"{prefix}.omega_p_rad_per_s", f"{prefix}.lambda_p_m"
            if wp_key in cfg:
                omega_p = _positive(cfg, wp_key)
            elif lp_key in cfg:
                omega_p = plasma_frequency(_positive(cfg, lp_key))
            else:
                raise ConfigError(wp_key, f"required (or {lp_key})")
            if model == "plasma":
                return Plasma(omega_p)
            return Drude(omega_p, _non_negative(cfg, f"{prefix}.gamma_rad_per_s"))
        if model == "tabulated":
            path = _require(cfg, f"{prefix}.path")
            return load_tabulated_permittivity(path, bool(cfg.get(f"{prefix}.extrapolate",
                                                                  False)))
    except ValueError as exc:
        if isinstance(exc, (ConfigError, LoadError)):
            raise
        raise ConfigError(prefix, str(exc)) from None
    raise ConfigError(f"{prefix}.model", f"unknown model {model!r}; choose from {MODELS}")


def _quadrature(cfg):
    try:
        return QuadratureSpec(rel_tol=cfg.get("quadrature.rel_tol", 1e-8),
                              max_subdivisions=cfg.get("quadrature.max_subdivisions", 200),
                              xi_max=cfg.get("quadrature.xi_max_rad_per_s"))
    except ValueError as exc:
        raise ConfigError("quadrature", str(exc)) from None


def _thermal(cfg, required=False):
    if required:
        T = _positive(cfg, "thermal.T_K")
    else:
        T = _non_negative(cfg, "thermal.T_K", 0.0)
    try:
        return ThermalSpec(T, cfg.get("thermal.n_max"), cfg.get("thermal.tail_tol", 1e-10))
    except ValueError as exc:
        raise ConfigError("thermal", str(exc)) from None


def _plane(cfg, area_required=True):
    L = _positive(cfg, "geometry.L_m")
    A = _positive(cfg, "geometry.A_m2") if area_required else _positive(
        cfg, "geometry.A_m2", 1.0)
    return CavityGeometry(A, L)


def _quantity(cfg):
    quantity = _require(cfg, "quantity")
    if quantity not in QUANTITIES:
        raise ConfigError("quantity", f"unknown quantity {quantity!r}; choose from {QUANTITIES}")
    return quantity


def _prepare(cfg):
    """Validate ``cfg`` and return ``(quantity, thunk)``; the thunk computes the record body."""
    quantity = _quantity(cfg)

    if quantity in ("force", "energy", "eta", "thermal_ratio", "sphere_force"):
        m1, m2 = _mirror(cfg, "mirror1"), _mirror(cfg, "mirror2")
        q = _quadrature(cfg)
        th = _thermal(cfg, required=quantity == "thermal_ratio")

    if quantity in ("force", "eta"):
        g = _plane(cfg, area_required=quantity == "force")

        def run():
            r = casimir_force_thermal(m1, m2, g, th, q)
            value = r.force if quantity == "force" else r.eta
            return value, r.err_est, list(r.flags)
    elif quantity == "energy":
        g = _plane(cfg)

        def run():
            e, rel = casimir_free_energy_thermal(m1, m2, g, th, q, full_output=True)
            return e, rel, list(g.flags)
    elif quantity == "thermal_ratio":
        g = _plane(cfg, area_required=False)

        def run():
            r_t = casimir_force_thermal(m1, m2, g, th, q)
            r_0 = casimir_force_scattering(m1, m2, g, q)
            ratio = (r_t.force - r_0.force) / r_0.force
            err = (r_t.force / r_0.force) * (r_t.err_est + r_0.err_est)
            return ratio, err, list(g.flags)
    elif quantity == "sphere_force":
        sg = SphereGeometry(_positive(cfg, "geometry.R_m"), _positive(cfg, "geometry.L_m"))

        def run():
            r = plane_sphere_force_pfa(m1, m2, sg, th, q)
            return r.force, r.err_est, list(r.flags)
    elif quantity in ("chi_vac", "chi_bbr"):
        A = _positive(cfg, "geometry.A_m2")
        omega = _non_negative(cfg, "motion.Omega_rad_per_s")
        if quantity == "chi_bbr":
            T = _positive(cfg, "thermal.T_K")
        else:
            T = _non_negative(cfg, "thermal.T_K", 0.0)
        spec = MotionalSpec(A, omega, T)

        def run():
            if quantity == "chi_vac":
                chi, regime = chi_vacuum(omega, A), "vacuum"
            else:
                chi, regime = chi_thermal(omega, A, T), "thermal"
            return float(np.imag(chi)), 0.0, list(spec.regime_flags(regime))
    elif quantity == "mu":
        g = _plane(cfg)

        def run():
            return casimir_inertia_correction(g).mu, 0.0, list(g.flags)
    else:  # bbr_density
        T = _non_negative(cfg, "thermal.T_K")

        def run():
            return blackbody_energy_density(T), 0.0, []

    return quantity, run


def _axis_updates(cfg, axis, value):
    keys = AXES[axis]
    if axis == "omega_p" and not _has_mirror2(cfg):
        # mirror2 inherits mirror1 and must not gain keys of its own
        keys = tuple(k for k in keys if not k.startswith("mirror2."))
    return {k: value for k in keys}


def validate(cfg):
    """Check every field a run would use, including the sweep block if present."""
    if any(k.startswith("sweep.") for k in cfg.values):
        axis, values = sweep_axis(cfg)
        _prepare(with_values(cfg, _axis_updates(cfg, axis, values[0])))
    else:
        _prepare(cfg)


# -- running ---------------------------------------------------------------

def run_single(cfg):
    """Evaluate one configuration and return a record dictionary."""
    quantity, run = _prepare(cfg)
    value, err, flags = run()
    return {
        "quantity": quantity,
        "unit": UNITS[quantity],
        "inputs": dict(sorted(cfg.values.items())),
        "value": value,
        "err_est": err,
        "flags": flags,
    }


def sweep_axis(cfg):
    """Return ``(axis, values)`` from the ``sweep.*`` keys."""
    axis = _require(cfg, "sweep.axis")
    if axis not in AXES:
        raise ConfigError("sweep.axis", f"unknown axis {axis!r}; choose from {sorted(AXES)}")
    start = _require(cfg, "sweep.start")
    stop = _require(cfg, "sweep.stop")
    points = _require(cfg, "sweep.points")
    scale = cfg.get("sweep.scale", "linear")
    if points < 2:
        raise ConfigError("sweep.points", "must be at least 2")
    if start > stop:
        raise ConfigError("sweep.stop", "must not be below sweep.start")
    if scale == "linear":
        values = np.linspace(start, stop, points)
    elif scale == "log":
        if not start > 0:
            raise ConfigError("sweep.start", "log sweeps need a positive start")
        values = np.geomspace(start, stop, points)
    else:
        raise ConfigError("sweep.scale", f"expected 'linear' or 'log', got {scale!r}")
    if axis == "omega_p":
        for prefix in ("mirror1", "mirror2"):
            model = cfg.get(f"{prefix}.model", cfg.get("mirror1.model"))
            if model not in ("plasma", "drude"):
                raise ConfigError(f"{prefix}.model",
                                  "an omega_p sweep needs plasma or drude mirrors")
    return axis, [float(v) for v in values]


def run_sweep(cfg, jobs=1):
    """Evaluate a sweep. Per-point failures land in the ``error`` column.

    Returns a dict with ``columns``, ``rows`` (dicts in axis order), ``axis``
    and ``quantity``.
    """
    axis, values = sweep_axis(cfg)
    quantity = _quantity(cfg)
    axis_col = f"{axis}_{AXIS_UNITS[axis]}"
    columns = [axis_col, value_column(quantity), "err_est", "flags", "error"]
    # Configuration problems abort the whole sweep before any work.
    validate(cfg)

    def point(v):
        point_cfg = with_values(cfg, _axis_updates(cfg, axis, v))
        row = {axis_col: v, columns[1]: None, "err_est": None, "flags": [], "error": ""}
        try:
            rec = run_single(point_cfg)
        except (CasimirError, ValueError, ArithmeticError) as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
            return row
        row[columns[1]] = rec["value"]
        row["err_est"] = rec["err_est"]
        row["flags"] = rec["flags"]
        return row

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(point, values))  # map preserves input order
    else:
        rows = [point(v) for v in values]
    return {"axis": axis, "quantity": quantity, "columns": columns, "rows": rows}


# -- output ----------------------------------------------------------------

def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, list):
        return ";".join(value)
    if isinstance(value, float):
        return f"{value:.8e}"
    return str(value)


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_json_safe(v) for v in value]
    return value


def _csv_text(columns, rows, cfg):
    buf = io.StringIO()
    buf.write(f"# casimir {__version__}\n")
    buf.write(f"# config_sha256 {cfg.digest}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def table_to_csv(table, cfg):
    """CSV text with ``#`` provenance lines, a header naming units and fixed formatting."""
    return _csv_text(table["columns"], table["rows"], cfg)


def table_to_json(table, cfg):
    doc = {
        "inputs": dict(sorted(cfg.values.items())),
        "rows": table["rows"],
        "meta": {
            "tool": "casimir",
            "version": __version__,
            "config_sha256": cfg.digest,
            "quantity": table["quantity"],
            "axis": table["axis"],
            "columns": table["columns"],
        },
    }
    return json.dumps(_json_safe(doc), indent=2, sort_keys=True) + "\n"


def record_to_csv(record, cfg):
    col = value_column(record["quantity"])
    row = {"quantity": record["quantity"], col: record["value"],
           "err_est": record["err_est"], "flags": record["flags"]}
    return _csv_text(["quantity", col, "err_est", "flags"], [row], cfg)


def _presets_text():
    lines = ["name        model   omega_p_rad_per_s  lambda_p_m    gamma_rad_per_s"]
    for name, m in sorted(PRESETS.items()):
        gamma = f"{m.gamma:.4e}" if isinstance(m, Drude) else "-"
        lines.append(f"{name:<11} {type(m).__name__.lower():<7} {m.omega_p:.6e}       "
                     f"{m.plasma_wavelength:.4e}    {gamma}")
    return "\n".join(lines) + "\n"


# -- entry point -----------------------------------------------------------

def _parser():
    p = argparse.ArgumentParser(prog="casimir",
                                description="Casimir forces between real mirrors.")
    p.add_argument("--version", action="version", version=f"casimir {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("single", help="evaluate one configuration")
    s.add_argument("config")
    s.add_argument("--format", choices=("json", "csv"), default="json")

    w = sub.add_parser("sweep", help="evaluate a parameter sweep")
    w.add_argument("config")
    w.add_argument("--out", required=True, help="output file, or - for stdout")
    w.add_argument("--format", choices=("csv", "json"), default="csv")
    w.add_argument("--jobs", type=int, default=1)

    v = sub.add_parser("validate", help="check a configuration without computing")
    v.add_argument("config")

    pr = sub.add_parser("presets", help="built-in mirror presets")
    pr.add_argument("action", choices=("list",))
    return p


def _write(text, path):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        if args.command == "presets":
            sys.stdout.write(_presets_text())
            return EXIT_OK
        cfg = load_config(args.config)
        if args.command == "validate":
            validate(cfg)
            sys.stdout.write("ok\n")
        elif args.command == "single":
            record = run_single(cfg)
            if args.format == "json":
                sys.stdout.write(json.dumps(_json_safe(record), indent=2, sort_keys=True) + "\n")
            else:
                sys.stdout.write(record_to_csv(record, cfg))
        else:
            table = run_sweep(cfg, jobs=args.jobs)
            text = table_to_csv(table, cfg) if args.format == "csv" else table_to_json(table, cfg)
            _write(text, args.out)
    except (ConfigError, LoadError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CasimirError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
