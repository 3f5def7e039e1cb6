#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
geomint simulate|compare|diagnose

Exit codes: 0 success, 1 invalid spec or configuration, 2 numerical
failure, 3 input/output error.
"""

import argparse
import sys

import numpy as np
from ContactMechanics.Tools.Logger import Logger, screen

from GeomInt.CommandLineInterface.IO import FORMATS, RunConfig, load_json, write_json, write_trajectory
from GeomInt.Comparison.CommonSolutions import common_solution_scan, discrete_common_solution_check
from GeomInt.Comparison.Curvature import curvature
from GeomInt.Core.States import PhaseState
from GeomInt.Diagnostics.Diagnostics import run_diagnostics
from GeomInt.Integrators.Newton import NewtonConfig
from GeomInt.Integrators.Runs import INTEGRATOR_NAMES, RunFailure, linear_constraint_system, run
from GeomInt.Systems.Catalog import catalog_names
from GeomInt.Systems.Factory import SpecificationError, initial_data, make_system

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, "{}: error: {}\n".format(self.prog, message))


def make_parser():
    parser = _ArgumentParser(prog="geomint", description="Nonholonomic and vakonomic mechanics, "
                                                         "symplectic integrators and their diagnostics")
    parser.add_argument("command", choices=["simulate", "compare", "diagnose"])
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--spec", help="system spec (JSON)")
    source.add_argument("--catalog", choices=catalog_names(), help="built-in system")
    parser.add_argument("--beta", type=float, help="β of the martinet catalog entry")
    parser.add_argument("--config", help="run configuration (JSON)")
    parser.add_argument("--integrator", choices=INTEGRATOR_NAMES)
    parser.add_argument("--h", type=float, help="step size")
    parser.add_argument("--steps", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out", help="output file; standard output if omitted")
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--q", type=float, nargs="+", help="initial configuration")
    parser.add_argument("--p", type=float, nargs="+", help="initial momenta")
    parser.add_argument("--v", type=float, nargs="+", help="initial velocity (nonholonomic runs)")
    parser.add_argument("--log", help="write a per-step log to this file")
    parser.add_argument("--verbose", action="store_true", help="report progress on screen")
    return parser


def load_spec(args):
    if args.spec is not None:
        if args.beta is not None:
            raise SpecificationError("beta", "--beta only applies to --catalog martinet")
        return load_json(args.spec)
    if args.beta is not None:
        return {"catalog": {args.catalog: {"beta": args.beta}}}
    return {"catalog": args.catalog}


def load_config(args):
    d = load_json(args.config) if args.config is not None else {}
    if not isinstance(d, dict):
        raise SpecificationError("config", "expected a JSON object")
    d = dict(d)
    for key in ("integrator", "h", "steps", "seed", "out", "format"):
        val = getattr(args, key)
        if val is not None:
            d[key] = val
    if args.command == "diagnose" and args.out is None and args.format is None:
        d.setdefault("format", "json")
    return RunConfig.from_dict(d)


def load_initial(spec, config, args, n):
    initial = initial_data(spec)
    for name, vector in config.initial.items():
        initial[name] = np.array(vector, dtype=float, ndmin=1)
    for name in ("q", "p", "v"):
        if getattr(args, name) is not None:
            initial[name] = np.array(getattr(args, name), dtype=float)
    for name, vector in initial.items():
        if len(vector) != n or not np.all(np.isfinite(vector)):
            raise SpecificationError("initial.{}".format(name), "expected {} finite numbers".format(n))
    if "q" not in initial:
        raise SpecificationError("initial.q", "initial configuration missing")
    return initial


def make_logger(args):
    if args.log is not None:
        return Logger(args.log)
    if args.verbose:
        return screen
    return None


def simulate(system, config, initial, cfg, logger):
    metadata = {"system": system.name, "integrator": config.integrator, "h": config.h, "steps": config.steps}
    try:
        traj = run(system, config.integrator, config.h, config.steps, initial["q"], initial.get("p"),
                   v0=initial.get("v"), cfg=cfg, logger=logger)
    except RunFailure as failure:
        write_trajectory(failure.trajectory, config.out, config.format, failure=str(failure.cause),
                         metadata=metadata)
        raise
    write_trajectory(traj, config.out, config.format, metadata=metadata)


def compare(system, config, initial, cfg, logger):
    linear = linear_constraint_system(system)
    if linear.k == 0:
        raise SpecificationError("constraints", "compare requires constraints")
    q0, p0, v0 = initial["q"], initial.get("p"), initial.get("v")
    if v0 is None:
        if p0 is None:
            raise SpecificationError("initial", "compare needs an initial velocity v or momenta p")
        v0 = system.hamiltonian_gradient(PhaseState(q0, p0))[1]
    traj = run(system, "nonholonomic", config.h, config.steps, q0, v0=v0, cfg=cfg, logger=logger)
    scan = common_solution_scan(linear, traj, logger=logger)
    discrete = None
    if config.steps >= 2:
        check = discrete_common_solution_check(linear, q0, q0 + config.h * v0, config.h, cfg=cfg)
        discrete = {key: check[key] for key in ("qnext", "nonholonomic_multiplier", "lambdas", "residual",
                                                "common", "tolerance")}
    write_json({
        "system": system.name,
        "h": config.h,
        "steps": config.steps,
        "verdict": scan.verdict,
        "curvature": {"initial": curvature(linear, q0).R, "max_abs": np.max(scan.curvature_norm)},
        "continuous": {key: scan[key] for key in ("verdict", "fit_residual", "curvature_residual", "tolerance",
                                                  "mu_fit", "mu0", "times", "residuals", "mu")},
        "discrete": discrete,
    }, config.out)


def diagnose(system, config, initial, cfg, logger):
    q0 = initial["q"]
    p0 = initial.get("p", np.zeros_like(q0))
    reports = run_diagnostics(system, config.integrator, PhaseState(q0, p0), config.h, steps=config.steps,
                              seed=config.seed, cfg=cfg, logger=logger, v0=initial.get("v"))
    write_json({"system": system.name, "integrator": config.integrator, "seed": config.seed,
                "reports": [report.as_dict() for report in reports]}, config.out)


COMMANDS = {"simulate": simulate, "compare": compare, "diagnose": diagnose}


def _fail(code, err):
    sys.stderr.write("geomint: {}\n".format(err))
    return code


def main(argv=None):
    args = make_parser().parse_args(argv)
    logger = None
    try:
        spec = load_spec(args)
        system = make_system(spec)
        config = load_config(args)
        cfg = NewtonConfig.from_environment(**config.newton)
        initial = load_initial(spec, config, args, system.n)
        logger = make_logger(args)
    except OSError as err:
        return _fail(EXIT_IO, err)
    except (ValueError, TypeError, KeyError) as err:
        return _fail(EXIT_VALIDATION, err)
    try:
        COMMANDS[args.command](system, config, initial, cfg, logger)
    except OSError as err:
        return _fail(EXIT_IO, err)
    except RunFailure as err:
        return _fail(EXIT_NUMERICAL, err)
    except ArithmeticError as err:
        return _fail(EXIT_NUMERICAL, err)
    except (ValueError, KeyError) as err:
        return _fail(EXIT_VALIDATION, err)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
