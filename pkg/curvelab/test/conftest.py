import os

import numpy as np
import pytest

from curvelab.common.util import THREADS_ENV, getConfig


@pytest.fixture(scope="module")
def tconf():
    return getConfig()


@pytest.fixture(scope="module")
def tdir(tmp_path_factory):
    return str(tmp_path_factory.mktemp("curvelab"))


@pytest.fixture(scope="module")
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="module", autouse=True)
def fewThreads():
    old = os.environ.get(THREADS_ENV)
    os.environ[THREADS_ENV] = "2"
    yield
    if old is None:
        os.environ.pop(THREADS_ENV, None)
    else:
        os.environ[THREADS_ENV] = old
