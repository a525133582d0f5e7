import os

import pytest

from curvelab.common.exceptions import ReportError
from curvelab.persistence.report_store_file import ReportStoreFile


@pytest.fixture()
def store(tmp_path):
    return ReportStoreFile(str(tmp_path / "reports"))


def testReportRoundTrip(store):
    report = {"seed": 7, "worst_margin": 0.25, "b": [1, 2], "a": {"x": 1}}
    store.putReport("convexity", report)
    assert store.getReport("convexity") == report
    assert store.suites == ["convexity"]


def testReportsAreDeterministic(store):
    report = {"z": 1.0, "a": [0.1, float("nan")], "m": {"q": 2, "b": 3}}
    store.putReport("one", report)
    store.putReport("two", dict(reversed(list(report.items()))))
    with open(os.path.join(store.dataDir, "one.json"), "rb") as f:
        one = f.read()
    with open(os.path.join(store.dataDir, "two.json"), "rb") as f:
        two = f.read()
    assert one == two
    assert b"\r\n" not in one
    assert b"NaN" not in one
    assert store.getReport("one")["a"] == [0.1, None]


def testTables(store):
    store.putTable("t.csv", ("l", "value"),
                   [{"l": 1, "value": 0.1, "extra": 3}, {"l": 2}])
    with open(os.path.join(store.dataDir, "t.csv"), "rb") as f:
        data = f.read()
    assert data == b"l,value\n1,0.1\n2,\n"


def testMissingReport(store):
    with pytest.raises(ReportError):
        store.getReport("growth")


def testCorruptReport(store):
    store.putText("broken.json", "{not json")
    with pytest.raises(ReportError):
        store.getReport("broken")


def testMissingDirectoryHasNoSuites(tmp_path):
    store = ReportStoreFile(str(tmp_path / "absent"), create=False)
    assert store.suites == []
    assert not os.path.exists(store.dataDir)
