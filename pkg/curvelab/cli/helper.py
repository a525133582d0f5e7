import math
import os
import re
from typing import Dict, List, NamedTuple, Sequence

from curvelab.cli import constants as c
from curvelab.common import fields as f
from curvelab.common.exceptions import ConfigError, DomainError, ReportError
from curvelab.common.util import getConfig
from curvelab.geometry.modelspace import ModelSpace, isUnbounded
from curvelab.persistence.report_store import ReportStore

_LINE = re.compile(c.CONFIG_LINE_REG_EX, re.VERBOSE)
_BLANK = re.compile(c.BLANK_LINE_REG_EX, re.VERBOSE)


class ExperimentConfig:
    """
    One suite run. Keys a config leaves out take the suite's defaults;
    `seed` is always required.
    """

    def __init__(self, suite: str, seed: int = None, n: int = None,
                 curvatures: Sequence[float] = None, lmin: int = None,
                 lmax: int = None, rmin: float = None, rmax: float = None,
                 rcount: int = None, r0: float = None, tol: float = None,
                 fields: int = None, density: float = None, out: str = None):
        if suite not in f.SUITES:
            raise ConfigError("unknown suite {!r}, expected one of {}".
                              format(suite, ", ".join(f.SUITES)))
        if seed is None:
            raise ConfigError("seed is required")
        defaults = c.SUITE_DEFAULTS[suite]

        def pick(key, value):
            return defaults.get(key) if value is None else value

        self.suite = suite
        self.seed = int(seed)
        self.n = pick(c.N_KEY, n)
        self.curvatures = tuple(float(k) for k in
                                pick(c.CURVATURES_KEY, curvatures) or ())
        self.lmin = pick(c.LMIN_KEY, lmin)
        self.lmax = pick(c.LMAX_KEY, lmax)
        self.rmin = pick(c.RMIN_KEY, rmin)
        self.rmax = pick(c.RMAX_KEY, rmax)
        self.rcount = pick(c.RCOUNT_KEY, rcount)
        self.r0 = pick(c.R0_KEY, r0)
        self.tol = getConfig().inequalityTolerance if tol is None else tol
        self.fields = pick(c.FIELDS_KEY, fields)
        self.density = density
        self.out = out
        self.validate()

    def validate(self):
        if not self.tol > 0:
            raise ConfigError("tol must be positive, got {}".format(self.tol))
        if self.density is not None and self.density < 8:
            raise ConfigError("density must be at least 8")
        if self.lmin is not None and self.lmax is not None and \
                not 0 <= self.lmin <= self.lmax:
            raise ConfigError("need 0 <= lmin <= lmax, got {}..{}".format(
                self.lmin, self.lmax))
        for key in (c.RCOUNT_KEY, c.FIELDS_KEY):
            value = getattr(self, key)
            if value is not None and value < 1:
                raise ConfigError("{} must be positive".format(key))
        for key in (c.RMIN_KEY, c.RMAX_KEY, c.R0_KEY):
            value = getattr(self, key)
            if value is not None and not value > 0:
                raise ConfigError("{} must be positive".format(key))
        if self.rmin is not None and self.rmax is not None and \
                self.rmin >= self.rmax:
            raise ConfigError("need rmin < rmax")
        if self.suite in (f.CONVEXITY, f.DOUBLING_SUITE):
            if not self.curvatures:
                raise ConfigError("no curvatures given")
            for K in self.curvatures:
                self._checkRadiusFor(K)
        if self.suite == f.DOUBLING_SUITE and \
                max(abs(K) for K in self.curvatures) > 1:
            raise ConfigError("doubling runs with the bound K = 1, so "
                              "|K| <= 1 is required")

    def _checkRadiusFor(self, K):
        try:
            space = ModelSpace(self.n, K)
        except DomainError as ex:
            raise ConfigError(str(ex)) from ex
        R = space.admissibleRadius
        if self.rmax is not None and not isUnbounded(R) and self.rmax >= R:
            raise ConfigError("rmax={} reaches the admissible radius {} at "
                              "K={}".format(self.rmax, R, K))

    def space(self, K: float) -> ModelSpace:
        return ModelSpace(self.n, K)

    def toDict(self) -> Dict:
        return {key: getattr(self, key) for key in c.CONFIG_KEYS
                if key != c.OUT_KEY}

    def __repr__(self):
        return "ExperimentConfig({})".format(self.toDict())


def _convert(key, value):
    try:
        if key == c.CURVATURES_KEY:
            return tuple(float(v) for v in value.split(c.LIST_SEPARATOR)
                         if v.strip())
        if key in c.INT_KEYS:
            return int(value)
        if key in c.FLOAT_KEYS:
            number = float(value)
            if not math.isfinite(number):
                raise ValueError("not finite")
            return number
    except ValueError as ex:
        raise ConfigError("bad value {!r} for {}: {}".format(
            value, key, ex)) from ex
    return value


def parseConfig(text: str) -> ExperimentConfig:
    values = {}
    for number, line in enumerate(text.splitlines(), 1):
        if _BLANK.match(line):
            continue
        match = _LINE.match(line)
        if not match:
            raise ConfigError("line {}: expected key = value, got {!r}".
                              format(number, line))
        key, value = match.group("key"), match.group("value")
        if key not in c.CONFIG_KEYS:
            raise ConfigError("line {}: unknown key {!r}".format(number, key))
        if key in values:
            raise ConfigError("line {}: {} given twice".format(number, key))
        values[key] = _convert(key, value)
    if c.SUITE_KEY not in values:
        raise ConfigError("suite is required")
    return ExperimentConfig(**values)


def loadConfig(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as ex:
        raise ConfigError("cannot read {}: {}".format(path, ex)) from ex
    return parseConfig(text)


class SuiteResult(NamedTuple):
    name: str
    seed: int
    cases: List[Dict]
    worstMargin: float
    passed: bool

    def report(self, params: Dict, **extra) -> Dict:
        out = {
            f.SUITE: self.name,
            f.SEED: self.seed,
            f.PARAMS: params,
            f.CASES: self.cases,
            f.WORST_MARGIN: self.worstMargin,
            f.PASSED: self.passed
        }
        out.update(extra)
        return out


def suiteResult(name: str, seed: int, cases: List[Dict],
                tolerance: float) -> SuiteResult:
    """
    Cases carry their own `worst_margin` and `passed`; the suite passes
    when all of them do and no margin falls below -tolerance.
    """
    margins = [case[f.WORST_MARGIN] for case in cases]
    worst = min(margins) if margins else 0.0
    passed = all(case[f.PASSED] for case in cases) and \
        worst >= -tolerance
    return SuiteResult(name, seed, cases, float(worst), bool(passed))


def summaryRows(store: ReportStore) -> List[Dict]:
    """One row per report in the store, ordered by suite name."""
    names = store.suites
    if not names:
        raise ReportError("no reports in {}".format(
            getattr(store, "dataDir", store)))
    rows = []
    for name in names:
        report = store.getReport(name)
        rows.append({"name": report.get(f.SUITE, name),
                     "seed": report.get(f.SEED),
                     "cases": len(report.get(f.CASES, [])),
                     "worst_margin": report.get(f.WORST_MARGIN),
                     "pass": bool(report.get(f.PASSED))})
    return rows


def formatTable(rows: List[Dict], columns=f.SUMMARY_COLUMNS) -> str:
    cells = [[str(col) for col in columns]]
    for row in rows:
        cells.append(["{:.3g}".format(row[col])
                      if isinstance(row[col], float) else str(row[col])
                      for col in columns])
    widths = [max(len(line[i]) for line in cells)
              for i in range(len(columns))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in
                               zip(line, widths)).rstrip()
                     for line in cells)


def outputDir(config: ExperimentConfig, override: str = None) -> str:
    return os.path.abspath(override or config.out or c.DEFAULT_OUT)
