#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

import numpy as np
import pytest

from runtests.mpi.tester import WorldTooSmall, create_comm

import NuMPI
from NuMPI import MPI

from GeomInt.Expressions.Parser import parse_expr
from GeomInt.Systems.Factory import make_system
from GeomInt.Systems.Systems import LinearConstraintSystem, make_split


def MPICommunicatorFixture(sizes, scope="function"):
    """
    Fixture over communicators of the given sizes; falls back to the NuMPI
    stub communicator without mpi4py.
    """

    @pytest.fixture(params=sizes, scope=scope)
    def fixture(request):
        MPI.COMM_WORLD.barrier()
        if not NuMPI._has_mpi4py:
            return MPI.COMM_SELF
        try:
            comm, color = create_comm(request.param)
        except WorldTooSmall:
            pytest.skip("Not using communicator {}.".format(request.param))
        if color != 0:
            pytest.skip("Not using communicator {}.".format(request.param))
        return MPI.COMM_SELF if comm is None else comm

    return fixture


comm = MPICommunicatorFixture([1, 4], scope="session")
comm_self = MPICommunicatorFixture([1], scope="session")


def planar_system(gamma="0"):
    """n = 2, y constrained by ẏ = Γ ẋ, identity metric, no potential"""
    names = ["x", "y"]
    return LinearConstraintSystem(make_split(2, [1]), [[parse_expr(gamma, names)]], name="planar",
                                  varnames=names)


@pytest.fixture
def straight_line():
    return planar_system("0")


@pytest.fixture
def martinet_distribution():
    return make_system("martinet_distribution")


@pytest.fixture
def heisenberg():
    return make_system("heisenberg")


@pytest.fixture
def holonomic():
    return make_system("holonomic_demo")


@pytest.fixture
def oscillator():
    return make_system("oscillator")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def planar():
    return planar_system
