"""Report documents: one JSON document per run, CSV for density profiles.

Documents are dumped with sorted keys and fixed indentation, so two runs with
the same configuration differ only under "timings".
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import logging
import math
import time
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np

from closed_range.config import REPORT_SCHEMA
from closed_range.models import DensityVerdict, SpaceSpec
from closed_range.symbols.expr import (
    BlaschkeProduct,
    Const,
    Polynomial,
    Power,
    Product,
    Rational,
    Scale,
    Sum,
)
from closed_range.symbols.schema import symbol_to_dict

logger = logging.getLogger(__name__)

_SYMBOL_TYPES = (Polynomial, BlaschkeProduct, Rational, Sum, Product, Scale, Const, Power)


def to_jsonable(obj: Any) -> Any:
    """Convert results into plain JSON values.

    Complex numbers become [re, im]; density profiles are left to the CSV
    export and replaced by their size.
    """
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Path):
        return str(obj)
    if isinstance(obj, np.generic):
        return to_jsonable(obj.item())
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, _SYMBOL_TYPES):
        return symbol_to_dict(obj)
    if isinstance(obj, SpaceSpec):
        return {"space": obj.space.value, "p": obj.p, "gamma": obj.gamma,
                "aperture": obj.aperture, "label": obj.label}
    if isinstance(obj, DensityVerdict):
        out = {f.name: to_jsonable(getattr(obj, f.name))
               for f in dataclasses.fields(obj) if f.name != "profile"}
        out["profile_size"] = len(obj.profile)
        return out
    if dataclasses.is_dataclass(obj):
        out = {f.name: to_jsonable(getattr(obj, f.name))
               for f in dataclasses.fields(obj) if not f.name.startswith("_")}
        for name in _exported_properties(type(obj)):
            out[name] = to_jsonable(getattr(obj, name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _exported_properties(cls) -> list[str]:
    return sorted(name for name in dir(cls)
                  if not name.startswith("_") and isinstance(getattr(cls, name), property))


def build_document(
    command: str,
    config: dict,
    inputs: dict,
    results: Any,
    timings: dict[str, float],
) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "command": command,
        "config": to_jsonable(config),
        "inputs": to_jsonable(inputs),
        "results": to_jsonable(results),
        "timings": {k: round(v, 6) for k, v in timings.items()},
    }


def dumps(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def profile_csv(profile: list[tuple[complex, float]]) -> str:
    """Density profile as CSV with columns a_re, a_im, ratio."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["a_re", "a_im", "ratio"])
    for a, ratio in profile:
        a = complex(a)
        writer.writerow([repr(a.real), repr(a.imag), repr(float(ratio))])
    return buf.getvalue()


def write_text(text: str, path: str | Path | None) -> None:
    """Write to `path`, or to stdout when no path is given."""
    if path is None:
        print(text, end="")
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info(f"wrote {path} ({len(text)} bytes)")


class Timings(dict):
    """Wall-clock seconds per named phase."""

    @contextmanager
    def phase(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self[name] = self.get(name, 0.0) + time.perf_counter() - start
