#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

"""
Built-in systems, written in the same JSON form users write, plus default
initial data for each of them.
"""

CATALOG = {
    "free": {
        "schema": 1,
        "name": "free",
        "n": 2,
        "metric": "identity",
        "potential": "0",
        "constraints": [],
        "initial": {"q": [0., 0.], "p": [1., 0.5]},
    },
    "oscillator": {
        "schema": 1,
        "name": "oscillator",
        "n": 1,
        "metric": "identity",
        "potential": "q1^2/2",
        "constraints": [],
        "initial": {"q": [1.], "p": [0.]},
    },
    "heisenberg": {
        "schema": 1,
        "name": "heisenberg",
        "n": 3,
        "varnames": ["x", "y", "z"],
        "metric": "identity",
        "potential": "0",
        "constraints": [{"alpha_index": 3, "coeffs": ["y", "0"]}],
        "initial": {"q": [0., 0., 0.], "p": [1., 0.5, 0.3]},
    },
    "martinet_distribution": {
        "schema": 1,
        "name": "martinet_distribution",
        "n": 3,
        "varnames": ["x", "y", "z"],
        "metric": "identity",
        "potential": "0",
        "constraints": [{"alpha_index": 3, "coeffs": ["y^2/2", "0"]}],
        "initial": {"q": [0., 1., 0.], "p": [1., 0., 2.]},
    },
    "holonomic_demo": {
        "schema": 1,
        "name": "holonomic_demo",
        "n": 3,
        "varnames": ["x", "y", "z"],
        "metric": "identity",
        "potential": "0",
        "constraints": [{"alpha_index": 3, "coeffs": ["x", "0"]}],
        "initial": {"q": [0.5, 0., 0.], "p": [1., 0.5, 0.]},
    },
    "martinet": {
        "schema": 1,
        "name": "martinet",
        "parameters": {"beta": 0.},
        "initial": {"q": [0., 1., 0.], "p": [1., 0., 1.]},
    },
}


def catalog_names():
    return sorted(CATALOG)
