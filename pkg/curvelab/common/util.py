import importlib
import importlib.util
import math
import os
import types
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List

import numpy as np

from curvelab.common.exceptions import DomainError

THREADS_ENV = "CURVELAB_THREADS"


def getInstalledConfig(installDir, configFile):
    configPath = os.path.join(installDir, configFile)
    if os.path.exists(configPath):
        spec = importlib.util.spec_from_file_location(configFile, configPath)
        config = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(config)
        return config
    else:
        raise FileNotFoundError("No file found at location {}".
                                format(configPath))


def getConfig(homeDir=None):
    """
    Package defaults from `curvelab.config`, overridden by entries of
    `~/.curvelab/curvelab_config.py` when that file exists.
    """
    defaults = importlib.import_module("curvelab.config")
    refConfig = types.SimpleNamespace(**{
        k: v for k, v in defaults.__dict__.items() if not k.startswith("_")})
    try:
        homeDir = os.path.expanduser(homeDir or "~")
        configDir = os.path.join(homeDir, ".curvelab")
        config = getInstalledConfig(configDir, "curvelab_config.py")
        refConfig.__dict__.update({k: v for k, v in config.__dict__.items()
                                   if not k.startswith("_")})
    except FileNotFoundError:
        pass
    refConfig.baseDir = os.path.expanduser(refConfig.baseDir)
    return refConfig


def threadCount(default=None) -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    if default is None:
        default = getConfig().threads
    return max(1, int(default))


def orderedMap(fn: Callable, items: Iterable) -> List:
    """
    Apply `fn` to every item using up to `threadCount()` workers; results
    come back in input order.
    """
    items = list(items)
    workers = min(threadCount(), len(items)) or 1
    if workers == 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def logGrid(rmin: float, rmax: float, count: int) -> np.ndarray:
    if not 0 < rmin < rmax:
        raise DomainError("need 0 < rmin < rmax, got {} and {}".
                          format(rmin, rmax))
    if count < 2:
        raise DomainError("a grid needs at least two radii")
    return np.geomspace(rmin, rmax, int(count))


def withinFactor(a: float, b: float, factor: float, floor: float) -> bool:
    """
    True when a and b agree within `factor`, treating anything below
    `floor` as `floor`.
    """
    hi = max(abs(a), abs(b), floor)
    lo = max(min(abs(a), abs(b)), floor)
    return hi <= factor * lo


def factorMargin(a: float, b: float, factor: float, floor: float) -> float:
    """
    log(factor) - log(hi/lo) with the same flooring as `withinFactor`;
    nonnegative exactly when the two agree within `factor`.
    """
    hi = max(abs(a), abs(b), floor)
    lo = max(min(abs(a), abs(b)), floor)
    return math.log(factor) - math.log(hi / lo)
