"""Flat ``key = value`` configuration files.

One assignment per line, dotted keys group related settings and units are part
of the key name::

    # plane-plane force between gold plates
    quantity = force
    geometry.L_m = 1e-6
    geometry.A_m2 = 1e-4
    mirror1.model = preset
    mirror1.preset = gold

``#`` starts a comment line. ``mirror2.*`` defaults to ``mirror1.*`` when no
``mirror2`` key is given.
"""

import hashlib
import math
import re
from dataclasses import dataclass

QUANTITIES = ("force", "energy", "eta", "thermal_ratio", "sphere_force",
              "chi_vac", "chi_bbr", "mu", "bbr_density")
AXES = {
    "L": ("geometry.L_m",),
    "T": ("thermal.T_K",),
    "Omega": ("motion.Omega_rad_per_s",),
    "omega_p": ("mirror1.omega_p_rad_per_s", "mirror2.omega_p_rad_per_s"),
}
AXIS_UNITS = {"L": "m", "T": "K", "Omega": "rad_per_s", "omega_p": "rad_per_s"}
MODELS = ("perfect", "scalar", "plasma", "drude", "tabulated", "preset")

_FLOAT, _INT, _BOOL, _STR = "float", "int", "bool", "str"

_SCHEMA = {
    "quantity": _STR,
    "geometry.L_m": _FLOAT,
    "geometry.A_m2": _FLOAT,
    "geometry.R_m": _FLOAT,
    "thermal.T_K": _FLOAT,
    "thermal.n_max": _INT,
    "thermal.tail_tol": _FLOAT,
    "motion.Omega_rad_per_s": _FLOAT,
    "quadrature.rel_tol": _FLOAT,
    "quadrature.max_subdivisions": _INT,
    "quadrature.xi_max_rad_per_s": _FLOAT,
    "sweep.axis": _STR,
    "sweep.start": _FLOAT,
    "sweep.stop": _FLOAT,
    "sweep.points": _INT,
    "sweep.scale": _STR,
}
_MIRROR_FIELDS = {
    "model": _STR,
    "preset": _STR,
    "r0": _FLOAT,
    "omega_p_rad_per_s": _FLOAT,
    "lambda_p_m": _FLOAT,
    "gamma_rad_per_s": _FLOAT,
    "path": _STR,
    "extrapolate": _BOOL,
}
for _m in ("mirror1", "mirror2"):
    for _f, _t in _MIRROR_FIELDS.items():
        _SCHEMA[f"{_m}.{_f}"] = _t

_KEY_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(\.[A-Za-z_][A-Za-z0-9_]*)*$")


class ConfigError(ValueError):
    """Invalid configuration; ``field`` names the dotted key at fault."""

    def __init__(self, field, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{field}: {message}")
        self.field = field
        self.line = line


@dataclass(frozen=True)
class Config:
    values: dict
    text: str

    @property
    def digest(self):
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()

    def get(self, key, default=None):
        return self.values.get(key, default)

    def __contains__(self, key):
        return key in self.values


def _convert(key, raw, kind, line):
    if kind == _STR:
        return raw
    if kind == _BOOL:
        low = raw.lower()
        if low in ("true", "yes", "1"):
            return True
        if low in ("false", "no", "0"):
            return False
        raise ConfigError(key, f"expected a boolean, got {raw!r}", line)
    try:
        value = int(raw) if kind == _INT else float(raw)
    except ValueError:
        raise ConfigError(key, f"expected {'an integer' if kind == _INT else 'a number'}, "
                          f"got {raw!r}", line) from None
    if kind == _FLOAT and not math.isfinite(value):
        raise ConfigError(key, "must be finite", line)
    return value


def parse_config(text):
    """Parse configuration text into a :class:`Config`; raises :class:`ConfigError`."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError("<syntax>", f"expected 'key = value', got {stripped!r}", lineno)
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if not _KEY_RE.match(key):
            raise ConfigError(key or "<syntax>", "malformed key", lineno)
        if key not in _SCHEMA:
            raise ConfigError(key, "unknown key", lineno)
        if key in values:
            raise ConfigError(key, "duplicate key", lineno)
        if raw == "":
            raise ConfigError(key, "missing value", lineno)
        values[key] = _convert(key, raw, _SCHEMA[key], lineno)
    return Config(values, text)


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def with_values(cfg, updates):
    """A copy of ``cfg`` with some keys replaced (used for sweep points)."""
    values = dict(cfg.values)
    values.update(updates)
    return Config(values, cfg.text)
