"""Orbit CSV, drift report, projection CSV and plot-script writers.

Rationals are written as ``p/q`` strings and floats with 17 significant
digits, so every file round-trips without loss.
"""
from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

from .scalars import Backend, is_exact
from .states import ChainState
from .transfer import IntegralReport


def format_scalar(value) -> str:
    if is_exact(value):
        return str(Fraction(value))
    return format(float(value), ".17g")


def parse_scalar(text: str, backend: Backend):
    return Backend(backend).coerce(text.strip())


def jsonable(value):
    """Scalars to JSON: rationals as strings, floats as numbers."""
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if is_exact(value):
        return str(Fraction(value))
    return float(value)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


def orbit_header(n: int) -> list:
    return ["step"] + [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]


class OrbitRecorder:
    """Observer for ``transfer.iterate`` that keeps states and integral reports."""

    def __init__(self):
        self.steps = []
        self.states = []
        self.reports = []

    def __call__(self, step: int, state: ChainState, report: IntegralReport):
        self.steps.append(step)
        self.states.append(state)
        self.reports.append(report)


def write_orbit_csv(path, steps, states):
    n = states[0].n
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(orbit_header(n))
        for step, s in zip(steps, states):
            writer.writerow([step] + [format_scalar(v) for v in s.as_vector()])


def read_orbit_csv(path, backend: Backend):
    """Returns (steps, states)."""
    steps, states = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        n = (len(header) - 1) // 2
        for row in reader:
            steps.append(int(row[0]))
            vals = [parse_scalar(v, backend) for v in row[1:]]
            states.append(ChainState(vals[:n], vals[n:]))
    return steps, states


def coordinate_index(name: str, n: int) -> int:
    block, idx = name[0], int(name[1:])
    if block not in "xy" or not 1 <= idx <= n:
        raise ValueError(f"unknown coordinate {name!r} for n={n}")
    return idx - 1 if block == "x" else n + idx - 1


def write_projection_csv(path, states, coords):
    n = states[0].n
    idx = [coordinate_index(c, n) for c in coords]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(coords)
        for s in states:
            vec = s.as_vector()
            writer.writerow([format_scalar(vec[i]) for i in idx])


def read_projection_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(Fraction(v)) for v in row] for row in reader]
    return header, rows


def max_relative_drift(reports) -> dict:
    """Per integral, max over the orbit of |I_k - I_0| / |I_0| (absolute if I_0 = 0)."""
    first = reports[0].as_dict()
    out = {}
    for key, ref in first.items():
        worst = ref * 0
        for rep in reports[1:]:
            diff = abs(rep.as_dict()[key] - ref)
            if ref != 0:
                diff = diff / abs(ref)
            if diff > worst:
                worst = diff
        out[key] = worst
    return out


def drift_report(recorder: OrbitRecorder, backend: Backend, params, drift_tol: float) -> dict:
    drift = max_relative_drift(recorder.reports)
    exact = Backend(backend).exact
    within = all((d == 0) if exact else (float(d) <= drift_tol) for d in drift.values())
    return {
        "backend": Backend(backend).value,
        "n": recorder.states[0].n,
        "alpha": list(params.alpha),
        "beta": list(params.beta),
        "steps": recorder.steps[-1],
        "recorded": len(recorder.steps),
        "initial": recorder.reports[0].as_dict(),
        "final": recorder.reports[-1].as_dict(),
        "max_relative_drift": drift,
        "drift_tol": drift_tol,
        "within_tolerance": within,
    }


def plot_script(projection_csv: str, coords, title: str) -> str:
    """gnuplot commands that draw the projection CSV as a 3D point cloud."""
    a, b, c = coords
    return "\n".join([
        f"# projection of an orbit onto ({a}, {b}, {c})",
        "set datafile separator ','",
        f"set title '{title}'",
        f"set xlabel '{a}'",
        f"set ylabel '{b}'",
        f"set zlabel '{c}'",
        "set ticslevel 0",
        f"splot '{projection_csv}' skip 1 using 1:2:3 with dots notitle",
        "pause -1",
        "",
    ])


def write_text(path, text: str):
    Path(path).write_text(text)
