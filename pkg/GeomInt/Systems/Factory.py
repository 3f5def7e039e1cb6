#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Construction of systems from JSON system specs (schema 1).
"""

import copy

import numpy as np

from GeomInt.Core.States import IndexSplit
from GeomInt.Expressions.Parser import ExpressionError, default_varnames, parse_expr
from GeomInt.Systems.Catalog import CATALOG
from GeomInt.Systems.Systems import LinearConstraintSystem

SCHEMA = 1


class SpecificationError(ValueError):
    def __init__(self, field, message):
        self.field = field
        super().__init__("{}: {}".format(field, message))


def resolve_spec(spec):
    """
    Expand catalog references into the full spec dictionary.

    `{"catalog": "heisenberg"}` and `{"catalog": {"martinet": {"beta": 0.5}}}`
    are both accepted; a plain string names a catalog entry.
    """
    if isinstance(spec, str):
        spec = {"catalog": spec}
    if not isinstance(spec, dict):
        raise SpecificationError("spec", "expected a JSON object")
    schema = spec.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise SpecificationError("schema", "unsupported schema {!r}, expected {}".format(schema, SCHEMA))
    if "catalog" not in spec:
        return spec
    entry = spec["catalog"]
    parameters = {}
    if isinstance(entry, dict):
        if len(entry) != 1:
            raise SpecificationError("catalog", "expected exactly one catalog entry")
        (entry, parameters), = entry.items()
    if entry not in CATALOG:
        raise SpecificationError("catalog", "unknown system '{}', known: {}".format(entry, ", ".join(sorted(CATALOG))))
    resolved = copy.deepcopy(CATALOG[entry])
    unknown = set(parameters or {}) - set(resolved.get("parameters", {}))
    if unknown:
        raise SpecificationError("catalog", "unknown parameters {} for '{}'".format(sorted(unknown), entry))
    resolved.setdefault("parameters", {}).update(parameters or {})
    if "initial" in spec:
        resolved["initial"] = spec["initial"]
    return resolved


def make_system(spec):
    """
    Build the system described by `spec`.

    Parameters:
    -----------
    spec: dict or str
        system spec (see docs/usage.rst) or catalog name

    Returns:
    --------
    HamiltonianSystem: LinearConstraintSystem, or MartinetSystem for the
    "martinet" catalog entry
    """
    spec = resolve_spec(spec)
    if spec.get("name") == "martinet" and "parameters" in spec:
        from GeomInt.ReferenceSolutions.Martinet import MartinetSystem
        beta = _real(spec["parameters"].get("beta", 0.), "parameters.beta")
        return MartinetSystem(beta)
    return _linear_system(spec)


def _real(x, field):
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not np.isfinite(x):
        raise SpecificationError(field, "expected a finite number, got {!r}".format(x))
    return float(x)


def _linear_system(spec):
    n = spec.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SpecificationError("n", "expected a positive integer, got {!r}".format(n))
    names = default_varnames(n)
    varnames = spec.get("varnames")
    if varnames is not None:
        if not isinstance(varnames, list) or len(varnames) != n or len(set(varnames)) != n:
            raise SpecificationError("varnames", "expected {} distinct names".format(n))
        names.update({name: i for i, name in enumerate(varnames)})
    else:
        varnames = [min((a for a, i in names.items() if i == j), key=len) for j in range(n)]

    def expression(text, field):
        if isinstance(text, (int, float)) and not isinstance(text, bool):
            text = repr(float(text))
        if not isinstance(text, str):
            raise SpecificationError(field, "expected an expression string")
        try:
            return parse_expr(text, names)
        except ExpressionError as err:
            raise SpecificationError(field, str(err)) from err

    constraints = spec.get("constraints", [])
    if not isinstance(constraints, list):
        raise SpecificationError("constraints", "expected a list")
    constrained = []
    for c, constraint in enumerate(constraints):
        field = "constraints[{}].alpha_index".format(c)
        alpha = constraint.get("alpha_index") if isinstance(constraint, dict) else None
        if isinstance(alpha, str):
            if alpha not in names:
                raise SpecificationError(field, "unknown variable '{}'".format(alpha))
            alpha = names[alpha] + 1
        if isinstance(alpha, bool) or not isinstance(alpha, int) or not 1 <= alpha <= n:
            raise SpecificationError(field, "expected a 1-based index in [1, {}]".format(n))
        if alpha - 1 in constrained:
            raise SpecificationError(field, "variable {} constrained twice".format(alpha))
        constrained.append(alpha - 1)
    split = IndexSplit.from_constrained(n, constrained)

    # rows of Γ follow the ascending order of the constrained indices
    by_index = dict(zip(constrained, constraints))
    gamma = []
    for alpha in split.constrained:
        c = constraints.index(by_index[alpha])
        coeffs = by_index[alpha].get("coeffs")
        field = "constraints[{}].coeffs".format(c)
        if not isinstance(coeffs, list) or len(coeffs) != n - split.k:
            raise SpecificationError(field, "expected {} coefficients, one per free variable".format(n - split.k))
        gamma.append([expression(text, "{}[{}]".format(field, a)) for a, text in enumerate(coeffs)])

    metric = spec.get("metric", "identity")
    if metric == "identity":
        metric = None
    elif isinstance(metric, list) and len(metric) == n and all(isinstance(r, list) and len(r) == n for r in metric):
        metric = [[expression(text, "metric[{}][{}]".format(i, j)) for j, text in enumerate(row)]
                  for i, row in enumerate(metric)]
    else:
        raise SpecificationError("metric", "expected \"identity\" or a {}×{} matrix of expressions".format(n, n))

    potential = spec.get("potential", "0")
    potential = None if potential in ("0", 0) else expression(potential, "potential")

    try:
        return LinearConstraintSystem(split, gamma, metric=metric, potential=potential,
                                      name=spec.get("name", "custom"), varnames=varnames)
    except ValueError as err:
        raise SpecificationError("metric" if "metric" in str(err) else "spec", str(err)) from err


def initial_data(spec):
    """Named initial vectors of a spec (or catalog entry), as float arrays."""
    spec = resolve_spec(spec)
    initial = spec.get("initial", {})
    if not isinstance(initial, dict):
        raise SpecificationError("initial", "expected an object of named vectors")
    data = {}
    for name, vector in initial.items():
        try:
            data[name] = np.array(vector, dtype=float, ndmin=1)
        except (TypeError, ValueError):
            raise SpecificationError("initial.{}".format(name), "expected a vector of numbers")
    return data
