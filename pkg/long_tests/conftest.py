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


def MPICommunicatorFixture(sizes, scope="function"):
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


maxcomm = MPICommunicatorFixture([MPI.COMM_WORLD.Get_size()], scope="session")


@pytest.fixture
def rng():
    return np.random.default_rng(2026)
