import math
import os

import numpy as np


def relErr(actual, expected):
    actual = np.asarray(actual, dtype=float)
    expected = np.asarray(expected, dtype=float)
    return float(np.max(np.abs(actual - expected) / np.abs(expected)))


def assertRelClose(actual, expected, tol):
    err = relErr(actual, expected)
    assert err <= tol, "relative error {} above {}".format(err, tol)


def flatPlaneMass(l: int, r):
    """q of r^l cos(l theta) in the plane; 2 pi r for the constant."""
    r = np.asarray(r, dtype=float)
    return (2 if l == 0 else 1) * math.pi * r ** (2 * l + 1)


def writeConfig(directory: str, name: str, **values) -> str:
    path = os.path.join(directory, name)
    with open(path, "w", encoding="utf-8") as f:
        for key, value in values.items():
            if isinstance(value, (list, tuple)):
                value = ", ".join(str(v) for v in value)
            f.write("{} = {}\n".format(key, value))
    return path
