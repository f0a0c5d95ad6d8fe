"""Comparison of measured mixture sound speeds with the static models."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

from .mixture import MixtureState, equilibrium_speed, wood_speed, wood_speed_isothermal_gas


class MalformedSeriesError(ValueError):
    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


@dataclass(frozen=True)
class ExperimentalSeries:
    abscissa: tuple[float, ...]
    speed: tuple[float, ...]
    uncertainty: tuple[float | None, ...]
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not (len(self.abscissa) == len(self.speed) == len(self.uncertainty)):
            raise ValueError("columns must have equal length")
        if any(s <= 0 for s in self.speed):
            raise ValueError("speeds must be positive")
        if any(b <= a for a, b in zip(self.abscissa, self.abscissa[1:])):
            raise ValueError("abscissa must be strictly increasing")


def parse_series(text: str) -> ExperimentalSeries:
    """Read ``alpha,speed[,uncertainty]`` rows; ``#`` lines hold ``key: value`` metadata.

    A header row whose first cell is not numeric is skipped.
    """
    xs, ys, us = [], [], []
    meta: dict[str, str] = {}
    reader = csv.reader(text.splitlines())
    seen_data = False
    for lineno, row in enumerate(reader, start=1):
        if not row or not "".join(row).strip():
            continue
        first = row[0].strip()
        if first.startswith("#"):
            body = ",".join(row).lstrip("#").strip()
            if ":" in body:
                key, value = body.split(":", 1)
                meta[key.strip()] = value.strip()
            continue
        if not seen_data:
            try:
                float(first)
            except ValueError:
                seen_data = True
                continue
        seen_data = True
        if len(row) not in (2, 3):
            raise MalformedSeriesError(lineno, f"expected 2 or 3 columns, got {len(row)}")
        try:
            x, y = float(row[0]), float(row[1])
            u = float(row[2]) if len(row) == 3 and row[2].strip() else None
        except ValueError as exc:
            raise MalformedSeriesError(lineno, str(exc)) from exc
        if not (math.isfinite(x) and math.isfinite(y)) or y <= 0:
            raise MalformedSeriesError(lineno, "speed must be positive and finite")
        if xs and x <= xs[-1]:
            raise MalformedSeriesError(lineno, "abscissa must be strictly increasing")
        xs.append(x)
        ys.append(y)
        us.append(u)
    if not xs:
        raise MalformedSeriesError(0, "no data rows")
    return ExperimentalSeries(tuple(xs), tuple(ys), tuple(us), meta)


def read_series(path: str | Path) -> ExperimentalSeries:
    return parse_series(Path(path).read_text(encoding="utf-8"))


COMPARE_COLUMNS = ("abscissa", "measured", "c_w", "c_w_isothermal", "c_eq",
                   "dev_w", "dev_wT", "dev_eq")


def compare(mix: MixtureState, series: ExperimentalSeries, gas_fraction: bool = True):
    """Rows of model predictions and relative deviations, plus per-model RMS.

    The abscissa is the gas ("-") volume fraction unless ``gas_fraction`` is false.
    """
    rows = []
    sq = {"c_w": 0.0, "c_w_isothermal": 0.0, "c_eq": 0.0}
    for x, measured in zip(series.abscissa, series.speed):
        m = mix.at(1.0 - x if gas_fraction else x)
        cw, cwt, ceq = wood_speed(m), wood_speed_isothermal_gas(m), equilibrium_speed(m)[1]
        devs = [(measured - c) / c for c in (cw, cwt, ceq)]
        for key, d in zip(sq, devs):
            sq[key] += d * d
        rows.append((x, measured, cw, cwt, ceq, *devs))
    rms = {key: math.sqrt(v / len(rows)) for key, v in sq.items()}
    return rows, rms
