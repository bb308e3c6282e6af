"""Loading of the committed reference data (printed polynomials and series).

The directory defaults to the ``data`` folder shipped with the package; the
environment variable ``K3CHOW_FIXTURES`` or an explicit argument overrides it.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from pathlib import Path

from .ring_core import GradedPoly, PowerSeries, from_json_obj, series_expand, series_parse

ENV_VAR = "K3CHOW_FIXTURES"
DEFAULT_DIR = Path(__file__).with_name("data")


class FixtureError(RuntimeError):
    pass


def fixture_dir(override: str | os.PathLike | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else DEFAULT_DIR


@lru_cache(maxsize=None)
def _load(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise FixtureError(f"missing fixture file {path}") from exc
    if data.get("schema") != 1:
        raise FixtureError(f"{path}: unsupported schema {data.get('schema')!r}")
    return data


def load(name: str, directory=None) -> dict:
    return _load(fixture_dir(directory) / f"{name}.json")


def poly(entry: dict) -> GradedPoly:
    return from_json_obj(entry["poly"])


def relations(directory=None) -> dict:
    """Printed relation polynomials keyed by family; CTP entries keyed by (i, j)."""
    d = load("relations", directory)

    def keyed(block):
        return {tuple(int(x) for x in k.split(",")): poly(v) for k, v in block.items()}
    return {
        "multiple_lines": [poly(e) for e in d["multiple_lines"]],
        "quadruple_points": [poly(e) for e in d["quadruple_points"]],
        "ctp_main_terms": keyed(d["ctp_main_terms"]),
        "ctp_corrections": keyed(d["ctp_corrections"]),
        "kernel_class": poly(d["kernel_class"]),
        "P_N": poly(d["P_N"]),
    }


def series(entry, order: int) -> PowerSeries:
    """A series given as polynomial text, or as {"num": text, "den": [k, ...]}."""
    if isinstance(entry, str):
        return series_parse(entry, order)
    if "terms" in entry:
        out = PowerSeries([], order)
        for t in entry["terms"]:
            out = out + series(t, order)
        return out
    return series_expand(series_parse(entry["num"], order), entry["den"], order)
