#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Run configuration and file formats of the command line: JSON specs and
reports, CSV/JSON/netCDF trajectories.
"""

import json
import sys
from dataclasses import dataclass, field, fields

import numpy as np
from ContactMechanics.IO.NetCDF import NetCDFContainer

from GeomInt.Integrators.Runs import INTEGRATOR_NAMES
from GeomInt.Systems.Factory import SCHEMA, SpecificationError

FORMATS = ("csv", "json", "nc")


@dataclass(frozen=True)
class RunConfig:
    """
    Parameters:
    -----------
    integrator: str
        one of GeomInt.Integrators.Runs.INTEGRATOR_NAMES
    h: float
        positive step size
    steps: int
        number of steps, at least one
    seed: int
        seed of the random states drawn by diagnose
    initial: dict
        named initial vectors overriding those of the system spec
    newton: dict
        NewtonConfig overrides
    out: str or None
        output path; standard output if None
    format: str
        "csv", "json" or "nc"
    """
    integrator: str = "symplectic_euler"
    h: float = 0.01
    steps: int = 100
    seed: int = 0
    initial: dict = field(default_factory=dict)
    newton: dict = field(default_factory=dict)
    out: str = None
    format: str = "csv"

    def __post_init__(self):
        if self.integrator not in INTEGRATOR_NAMES:
            raise SpecificationError("integrator", "unknown integrator '{}', known: {}".format(
                self.integrator, ", ".join(INTEGRATOR_NAMES)))
        if isinstance(self.h, bool) or not isinstance(self.h, (int, float)) or not np.isfinite(self.h) \
                or not self.h > 0:
            raise SpecificationError("h", "step size must be a positive number, got {!r}".format(self.h))
        if isinstance(self.steps, bool) or not isinstance(self.steps, int) or self.steps < 1:
            raise SpecificationError("steps", "expected an integer ≥ 1, got {!r}".format(self.steps))
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise SpecificationError("seed", "expected an integer, got {!r}".format(self.seed))
        if self.format not in FORMATS:
            raise SpecificationError("format", "expected one of {}, got {!r}".format(", ".join(FORMATS),
                                                                                     self.format))
        if self.format == "nc" and self.out is None:
            raise SpecificationError("out", "netCDF output needs a file path")

    @classmethod
    def from_dict(cls, d):
        """Build from a JSON document; an "output" object may carry path and format."""
        if not isinstance(d, dict):
            raise SpecificationError("config", "expected a JSON object")
        d = dict(d)
        schema = d.pop("schema", SCHEMA)
        if schema != SCHEMA:
            raise SpecificationError("schema", "unsupported schema {!r}, expected {}".format(schema, SCHEMA))
        output = d.pop("output", {})
        if not isinstance(output, dict):
            raise SpecificationError("output", "expected an object with path and format")
        if "path" in output:
            d.setdefault("out", output["path"])
        if "format" in output:
            d.setdefault("format", output["format"])
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise SpecificationError(sorted(unknown)[0], "unknown run configuration field")
        return cls(**d)


def load_json(path):
    """
    Read a JSON document. OSError propagates; malformed JSON becomes a
    SpecificationError citing line and column.
    """
    with open(path) as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SpecificationError(path, "invalid JSON at line {}, column {}: {}".format(
            err.lineno, err.colno, err.msg)) from err


def header(traj):
    """Column titles: t, then one title per scalar entry, e.g. q1 … qn"""
    titles = ["t"]
    for name, width in traj.widths().items():
        if name in ("H", "constraint_residual") and width == 1:
            titles.append(name)
        else:
            titles += ["{}{}".format(name, i + 1) for i in range(width)]
    return titles


def jsonable(obj):
    """Plain Python structure of dicts, lists, floats for json.dump"""
    if isinstance(obj, dict):
        return {str(key): jsonable(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(val) for val in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _open(path):
    return sys.stdout if path is None else open(path, "w")


def write_json(document, path=None):
    fh = _open(path)
    try:
        json.dump(jsonable(dict(document, schema=SCHEMA)), fh, indent=2, sort_keys=True, allow_nan=True)
        fh.write("\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def write_trajectory(traj, path=None, format="csv", failure=None, metadata=None):
    """
    Write a trajectory. A failed run is flushed with a footer record
    ("# failure: ..." in CSV, a "failure" entry in JSON, an attribute in
    netCDF).

    Parameters:
    -----------
    traj: Trajectory
    path: str, optional
        standard output if None (not for netCDF)
    format: str
        "csv", "json" or "nc"
    failure: str, optional
        message of the error that stopped the run
    metadata: dict, optional
        system, integrator, h, ...
    """
    metadata = dict(metadata or {})
    titles = header(traj)
    rows = np.array(traj.rows(), dtype=float).reshape(len(traj), len(titles))
    if format == "csv":
        fh = _open(path)
        try:
            np.savetxt(fh, rows, fmt="%.17g", delimiter=",", header=",".join(titles), comments="",
                       footer="" if failure is None else "# failure: {}".format(failure))
        finally:
            if fh is not sys.stdout:
                fh.close()
    elif format == "json":
        write_json(dict(metadata, columns=titles, rows=rows, status="ok" if failure is None else "failed",
                        failure=failure), path)
    elif format == "nc":
        _write_netcdf(traj, path, failure, metadata)
    else:
        raise ValueError("unknown trajectory format '{}'".format(format))


def _write_netcdf(traj, path, failure, metadata):
    """
    One ContactMechanics frame per sample. Vector columns become numbered
    scalar variables q1, q2, ...; H and constraint_residual keep their names.
    """
    columns = {name: traj.column(name) for name, width in traj.widths().items() if width}
    container = NetCDFContainer(path, mode="w", double=True)
    for index, t in enumerate(traj.times):
        frame = container.get_next_frame()
        frame.t = float(t)
        for name, column in columns.items():
            row = column[index]
            if len(row) == 1 and name in ("H", "constraint_residual"):
                setattr(frame, name, float(row[0]))
                continue
            for i, value in enumerate(row):
                setattr(frame, "{}{}".format(name, i + 1), float(value))
    container.schema = SCHEMA
    container.status = "ok" if failure is None else "failed"
    if failure is not None:
        container.failure = failure
    for key, val in metadata.items():
        setattr(container, key, val if isinstance(val, (int, float)) else str(val))
    container.close()
