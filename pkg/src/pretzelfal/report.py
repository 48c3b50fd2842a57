"""Report documents and the trace-field cache used by the command line."""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__, hypgeom
from .classify import PretzelFal, classify
from .exactfield import CycloElement, format_rational
from .tracefield import SCHEMA_VERSION as FIELD_SCHEMA_VERSION
from .tracefield import TraceFieldDescriptor, build_trace_field

REPORT_SCHEMA_VERSION = 1
CACHE_SCHEMA_VERSION = 1
CACHE_ENV = "PRETZELFAL_CACHE"


class CacheError(RuntimeError):
    """A cache entry failed re-verification or the file is unreadable."""


def digits_for(prec):
    """Significant decimal digits printed for a value carried at ``prec`` bits."""
    return max(5, int(prec * math.log10(2)) - 3)


def num(x, prec):
    d = digits_for(prec)
    return {"value": mpmath.nstr(x, d, strip_zeros=False), "digits": d, "prec_bits": prec}


def cnum(z, prec):
    d = digits_for(prec)
    return {"re": mpmath.nstr(z.real, d, strip_zeros=False), "im": mpmath.nstr(z.imag, d, strip_zeros=False),
            "digits": d, "prec_bits": prec}


def exact(x):
    if isinstance(x, (Fraction, int)):
        return {"rational": format_rational(x)}
    if isinstance(x, CycloElement):
        return {"cyclotomic": x.to_json()}
    raise TypeError(f"no exact rendering for {type(x).__name__}")


# cache


class TraceFieldCache:
    """Map ``n -> TraceFieldDescriptor`` persisted as JSON.

    Every entry read from disk is re-verified exactly before use.  Only the
    owning process writes, once, via :meth:`save`.
    """

    def __init__(self, path=None):
        self.path = None if path is None else Path(path)
        self._fields = {}
        self._dirty = False
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self):
        try:
            data = json.loads(self.path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CacheError(f"unreadable cache {self.path}: {exc}") from None
        if data.get("schema_version") != CACHE_SCHEMA_VERSION or data.get("field_schema") != FIELD_SCHEMA_VERSION:
            raise CacheError(f"cache {self.path} has an unsupported schema")
        for key, blob in sorted(data.get("fields", {}).items(), key=lambda kv: int(kv[0])):
            try:
                desc = TraceFieldDescriptor.from_json(blob)
                if desc.n != int(key):
                    raise ArithmeticError(f"entry {key} describes n={desc.n}")
                desc.verify()
            except (ArithmeticError, ValueError, KeyError, TypeError) as exc:
                raise CacheError(f"cache entry n={key} failed re-verification: {exc}") from None
            self._fields[desc.n] = desc

    def __contains__(self, n):
        return n in self._fields

    def __len__(self):
        return len(self._fields)

    def get(self, n):
        if n not in self._fields:
            self._fields[n] = build_trace_field(n)
            self._dirty = True
        return self._fields[n]

    def put(self, desc):
        if desc.n not in self._fields:
            self._fields[desc.n] = desc
            self._dirty = True

    def to_json(self):
        return {
            "schema_version": CACHE_SCHEMA_VERSION,
            "field_schema": FIELD_SCHEMA_VERSION,
            "fields": {str(n): self._fields[n].to_json() for n in sorted(self._fields)},
        }

    def save(self):
        if self.path is None or not self._dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".cache-", suffix=".json")
        with os.fdopen(fd, "w") as fh:
            json.dump(self.to_json(), fh, sort_keys=True)
            fh.write("\n")
        os.chmod(tmp, 0o644)
        os.replace(tmp, self.path)
        self._dirty = False


def default_cache_path():
    return os.environ.get(CACHE_ENV) or None


def field_for(n, cache=None):
    return build_trace_field(n) if cache is None else cache.get(n)


# report document


@dataclass(frozen=True)
class ReportDocument:
    """JSON-shaped manifold report.  ``data`` holds only strings, ints, bools, lists and dicts."""

    data: dict

    def render_json(self):
        return json.dumps(self.data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def parse(cls, text):
        data = json.loads(text)
        if data.get("schema_version") != REPORT_SCHEMA_VERSION:
            raise ValueError("unsupported report schema")
        return cls(data)

    def render_text(self):
        return "\n".join(_text_lines(self.data)) + "\n"

    def __getitem__(self, key):
        return self.data[key]


def _text_lines(obj, indent=0):
    pad = "  " * indent
    out = []
    for key in sorted(obj):
        val = obj[key]
        if isinstance(val, dict) and "value" in val and "prec_bits" in val:
            out.append(f"{pad}{key}: {val['value']}")
        elif isinstance(val, dict) and "re" in val and "prec_bits" in val:
            out.append(f"{pad}{key}: {val['re']} + {val['im']}i")
        elif isinstance(val, dict):
            out.append(f"{pad}{key}:")
            out.extend(_text_lines(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            out.append(f"{pad}{key}:")
            for item in val:
                sub = _text_lines(item, indent + 2)
                sub[0] = f"{pad}  - " + sub[0].lstrip()
                out.extend(sub)
        elif isinstance(val, list):
            out.append(f"{pad}{key}: {', '.join(str(v) for v in val)}")
        else:
            out.append(f"{pad}{key}: {val}")
    return out


def _cusp_entries(m, prec):
    kinds = []
    if 0 in m.twists:
        kinds.append(hypgeom.UNTWISTED)
    if 1 in m.twists:
        kinds += [hypgeom.TWISTED_PLUS, hypgeom.TWISTED_MINUS]
    out = []
    for kind in kinds:
        cs = hypgeom.cusp_shape(m.n, kind, prec)
        out.append({"kind": kind, "exact": exact(cs.exact), "numeric": cnum(cs.numeric, prec),
                    "crossing_circles": m.twists.count(0 if kind == hypgeom.UNTWISTED else 1)})
    if m.is_prime_family:
        kc = hypgeom.cusp_shape(m.n, hypgeom.KNOT_CIRCLE, prec)
        out.append({"kind": kc.kind, "meridian": kc.meridian, "longitude_at_least": kc.longitude_lower_bound})
    return out


def build_report(m, prec=hypgeom.DEFAULT_PREC, cache=None, nr_table=None, v0=None):
    if not isinstance(m, PretzelFal):
        m = PretzelFal(int(m))
    n = m.n
    desc = field_for(n, cache)
    cl = classify(m, nr_table, prec)
    geo = hypgeom.geodesic_data(n, prec)
    integral, witness = hypgeom.vinberg_entry_is_integral(n)
    pack = hypgeom.packing_radii(n, prec)
    data = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "tool_version": __version__,
        "precision_bits": prec,
        "manifold": {"n": n, "twists": m.twist_string, "kind": m.kind, "label": m.label},
        "cusp_shapes": _cusp_entries(m, prec),
        "tile_shape": cnum(hypgeom.tile_shape(n, prec), prec),
        "packing": {
            "white_outer": num(pack.white_outer, prec),
            "white_inner": num(pack.white_inner, prec),
            "unit_circles": pack.unit_circle_count,
            "shaded_small": num(pack.shaded_small, prec),
            "shaded_large": num(pack.shaded_large, prec),
        },
        "trace_field": {
            "min_poly": str(desc.min_poly),
            "degree": desc.degree,
            "conductor": desc.conductor,
            "stabilizer_order": desc.stabilizer.order,
        },
        "volume": num(cl.volume, prec),
        "f": num(cl.f, prec),
        "geodesic": {
            "perpendicular_length": num(geo.perpendicular_length, prec),
            "closed_length": num(geo.closed_length, prec),
            "gram_entry": exact(geo.gram_entry),
            "gram_entry_numeric": num(geo.gram_numeric, prec),
            "gram_entry_min_poly": str(witness),
            "gram_entry_integral": integral,
        },
        "arithmeticity": cl.verdict.to_json(),
        "commensurability_key": cl.commensurability_key,
        "symmetry": cl.symmetry.to_json(digits_for(prec)),
    }
    if v0 is not None:
        from .classify import max_hidden_symmetries

        data["max_hidden_symmetries"] = num(max_hidden_symmetries(cl.volume, v0, prec), prec)
    return ReportDocument(data)
