import pytest

from curvelab.cli import constants as c
from curvelab.cli.helper import ExperimentConfig, formatTable, loadConfig, \
    parseConfig, suiteResult, summaryRows
from curvelab.common import fields
from curvelab.common.exceptions import ConfigError, ReportError
from curvelab.common.util import getConfig
from curvelab.persistence.report_store_file import ReportStoreFile


def testParseWithCommentsAndDefaults():
    config = parseConfig("""
        # flat check
        suite = convexity   # the suite
        seed = 7
        curvatures = -1, 0 ,1

        lmax = 4
    """)
    assert config.suite == fields.CONVEXITY
    assert config.seed == 7
    assert config.curvatures == (-1.0, 0.0, 1.0)
    assert config.lmax == 4
    assert config.n == 2
    assert config.rcount == 64
    assert config.rmin == 0.05
    assert config.tol == getConfig().inequalityTolerance


def testToDictLeavesOutTheOutputDirectory():
    config = ExperimentConfig(fields.LEMMA54, 1, out="somewhere")
    d = config.toDict()
    assert c.OUT_KEY not in d
    assert d[c.RCOUNT_KEY] == 10000
    assert set(d) == set(c.CONFIG_KEYS) - {c.OUT_KEY}


@pytest.mark.parametrize("text", [
    "seed = 1",
    "suite = convexity\nseed = 1\nseed = 2",
    "suite = convexity\nseed = 1\ncolour = red",
    "suite = convexity\nseed = one",
    "suite = convexity\nseed = 1\nrmax = inf",
    "suite = convexity\nseed = 1\nthis is not a pair",
    "suite = somethingelse\nseed = 1",
    "suite = convexity",
])
def testMalformedConfigs(text):
    with pytest.raises(ConfigError):
        parseConfig(text)


@pytest.mark.parametrize("values", [
    dict(tol=0.0),
    dict(tol=-1e-6),
    dict(lmin=5, lmax=2),
    dict(rmin=0.5, rmax=0.2),
    dict(rcount=0),
    dict(density=4.0),
    dict(n=1),
    dict(curvatures=(1.0,), rmax=1.6),
    dict(curvatures=()),
])
def testInvalidValues(values):
    with pytest.raises(ConfigError):
        ExperimentConfig(fields.CONVEXITY, 1, **values)


def testDoublingNeedsUnitCurvatures():
    with pytest.raises(ConfigError):
        ExperimentConfig(fields.DOUBLING_SUITE, 1, curvatures=(2.0,))
    ExperimentConfig(fields.DOUBLING_SUITE, 1, curvatures=(-1.0, 1.0))


def testMissingConfigFile(tmp_path):
    with pytest.raises(ConfigError):
        loadConfig(str(tmp_path / "absent.cfg"))


def case(margin, passed=True):
    return {fields.WORST_MARGIN: margin, fields.PASSED: passed}


def testSuitePassRule():
    assert suiteResult("x", 1, [case(0.1), case(-1e-9)], 1e-6).passed
    assert not suiteResult("x", 1, [case(0.1), case(-1e-3)], 1e-6).passed
    assert not suiteResult("x", 1, [case(0.1, False)], 1e-6).passed
    result = suiteResult("x", 1, [case(0.3), case(0.2)], 1e-6)
    assert result.worstMargin == 0.2
    report = result.report({"n": 2}, extra=5)
    assert report[fields.SUITE] == "x"
    assert report[fields.PARAMS] == {"n": 2}
    assert report["extra"] == 5


def testSummaryOfAnEmptyStore(tmp_path):
    with pytest.raises(ReportError):
        summaryRows(ReportStoreFile(str(tmp_path)))


def testSummaryRowsAndTable(tmp_path):
    store = ReportStoreFile(str(tmp_path))
    store.putReport("nodal", suiteResult("nodal", 3, [case(0.02)],
                                         1e-6).report({}))
    store.putReport("df", suiteResult("df", 3, [case(-0.5), case(1.0)],
                                      1e-6).report({}))
    rows = summaryRows(store)
    assert [r["name"] for r in rows] == ["df", "nodal"]
    assert rows[0]["cases"] == 2
    assert rows[0]["pass"] is False
    table = formatTable(rows).splitlines()
    assert table[0].split() == list(fields.SUMMARY_COLUMNS)
    assert table[1].split() == ["df", "3", "2", "-0.5", "False"]
    assert table[2].split() == ["nodal", "3", "1", "0.02", "True"]
