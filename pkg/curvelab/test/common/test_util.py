import math

import pytest

from curvelab.common.exceptions import DomainError
from curvelab.common.util import THREADS_ENV, factorMargin, getConfig, \
    logGrid, orderedMap, threadCount, withinFactor


def testDefaultsWithoutOverrideFile(tmp_path):
    config = getConfig(str(tmp_path))
    assert config.radiusGridSize == 512
    assert config.logLevel == "INFO"


def testOverrideFileWins(tmp_path):
    configDir = tmp_path / ".curvelab"
    configDir.mkdir()
    (configDir / "curvelab_config.py").write_text(
        "radiusGridSize = 64\nlogLevel = 'DEBUG'\n")
    config = getConfig(str(tmp_path))
    assert config.radiusGridSize == 64
    assert config.logLevel == "DEBUG"
    assert config.identityTolerance == 1e-8


def testThreadCountFromEnvironment(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert threadCount() == 3
    monkeypatch.setenv(THREADS_ENV, "0")
    assert threadCount() == 1
    monkeypatch.setenv(THREADS_ENV, "many")
    assert threadCount(2) == 2


def testOrderedMapKeepsInputOrder(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "4")
    assert orderedMap(lambda x: x * x, range(50)) == \
        [x * x for x in range(50)]
    assert orderedMap(abs, []) == []


def testLogGrid():
    grid = logGrid(0.01, 1.0, 3)
    assert list(grid) == pytest.approx([0.01, 0.1, 1.0])
    with pytest.raises(DomainError):
        logGrid(0.0, 1.0, 10)
    with pytest.raises(DomainError):
        logGrid(0.1, 1.0, 1)


def testFactorMarginMatchesWithinFactor():
    assert withinFactor(1.0, 3.9, 4.0, 1e-12)
    assert factorMargin(1.0, 3.9, 4.0, 1e-12) == \
        pytest.approx(math.log(4.0 / 3.9))
    assert not withinFactor(-1.0, 4.1, 4.0, 1e-12)
    assert factorMargin(-1.0, 4.1, 4.0, 1e-12) < 0
    # both below the floor count as equal
    assert factorMargin(0.0, 1e-15, 2.0, 1e-12) == \
        pytest.approx(math.log(2.0))
