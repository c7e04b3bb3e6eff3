"""JSON procedure configs.

A config is a JSON object::

    {
      "psi": [[re, im], [re, im]],
      "c1": [[[re, im], [re, im]], [[re, im], [re, im]]],
      "c2": ..., "h1": ...,                 # 2x2, row-major, basis (R, L)
      "h2_tilde": ...,                      # 3x3, rows/cols ordered (2, 0, -2)
      "phi": [[re, im], [re, im]],          # optional target
      "comment": "..."                      # optional, ignored
    }
"""

import json
from importlib import resources

import numpy as np

from .teleport import Procedure

FIELDS = {"psi": (2,), "c1": (2, 2), "c2": (2, 2), "h1": (2, 2), "h2_tilde": (3, 3)}
OPTIONAL = {"phi": (2,), "comment": None}


class ConfigError(ValueError):
    """Invalid config; ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def _complex_array(field, raw, shape):
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError):
        raise ConfigError(field, "entries must be [re, im] number pairs") from None
    if arr.shape != shape + (2,):
        raise ConfigError(field, f"expected shape {list(shape)} of [re, im] pairs, "
                                 f"got array of shape {list(arr.shape)}")
    if not np.all(np.isfinite(arr)):
        raise ConfigError(field, "entries must be finite")
    return arr[..., 0] + 1j * arr[..., 1]


def _to_pairs(arr):
    arr = np.asarray(arr, dtype=complex)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def parse_config(data):
    """Return ``(procedure, phi_or_None)`` from a decoded JSON object."""
    if not isinstance(data, dict):
        raise ConfigError("<root>", "config must be a JSON object")
    unknown = set(data) - set(FIELDS) - set(OPTIONAL)
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key")
    values = {}
    for field, shape in FIELDS.items():
        if field not in data:
            raise ConfigError(field, "missing")
        values[field] = _complex_array(field, data[field], shape)
    phi = None
    if "phi" in data:
        phi = _complex_array("phi", data["phi"], (2,))
        if abs(np.linalg.norm(phi) - 1) > 1e-10:
            raise ConfigError("phi", "not normalized")
    try:
        proc = Procedure(**values)
    except ValueError as exc:
        field = str(exc).split(":", 1)[0]
        raise ConfigError(field, str(exc).split(":", 1)[-1].strip()) from None
    return proc, phi


def procedure_to_dict(proc, phi=None, comment=None):
    out = {f: _to_pairs(getattr(proc, f)) for f in FIELDS}
    if phi is not None:
        out["phi"] = _to_pairs(phi)
    if comment is not None:
        out["comment"] = comment
    return out


def format_config(data):
    """Serialize a config dict with one vector or matrix row per line."""
    parts = []
    for key, value in data.items():
        if key == "comment" or np.asarray(value).ndim == 2:
            parts.append(f"  {json.dumps(key)}: {json.dumps(value)}")
        else:
            rows = ",\n    ".join(json.dumps(row) for row in value)
            parts.append(f"  {json.dumps(key)}: [\n    {rows}\n  ]")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"invalid JSON ({exc})") from None
    return parse_config(data)


def dump_config(path, proc, phi=None, comment=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_config(procedure_to_dict(proc, phi, comment)))


def example_config_path(number):
    """Path of a bundled example config (1, 2 or 3)."""
    if number not in (1, 2, 3):
        raise ValueError("bundled examples are numbered 1, 2, 3")
    return resources.files("qwteleport") / "data" / f"example{number}.json"


def load_example(number):
    return load_config(example_config_path(number))
