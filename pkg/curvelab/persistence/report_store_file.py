import csv
import json
import math
import os
from typing import Dict, List, Sequence

from curvelab.common.exceptions import ReportError
from curvelab.persistence.report_store import ReportStore

REPORT_SUFFIX = ".json"


def _clean(value):
    """JSON-safe copy: numpy scalars to floats, non-finite floats to None."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if hasattr(value, "tolist"):
        return _clean(value.tolist())
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


class ReportStoreFile(ReportStore):
    """
    One JSON report per suite and CSV tables in a directory. Files are
    UTF-8 with LF line endings and sorted keys, so equal inputs give
    byte-identical files.
    """

    def __init__(self, dataDir: str, create: bool = True):
        self.dataDir = dataDir
        if create:
            os.makedirs(dataDir, exist_ok=True)

    def _path(self, name):
        return os.path.join(self.dataDir, name)

    def putReport(self, suite: str, report: Dict):
        text = json.dumps(_clean(report), sort_keys=True, indent=2)
        self.putText(suite + REPORT_SUFFIX, text + "\n")

    def getReport(self, suite: str) -> Dict:
        path = self._path(suite + REPORT_SUFFIX)
        try:
            with open(path, encoding="utf-8") as f:
                return json.load(f)
        except (OSError, ValueError) as ex:
            raise ReportError("cannot read {}: {}".format(path, ex)) from ex

    def putTable(self, name: str, columns: Sequence[str], rows: List[Dict]):
        with open(self._path(name), "w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=list(columns),
                                    lineterminator="\n",
                                    extrasaction="ignore")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: _cell(row.get(k)) for k in columns})

    def putText(self, name: str, text: str):
        with open(self._path(name), "w", encoding="utf-8", newline="\n") as f:
            f.write(text)

    @property
    def suites(self) -> List[str]:
        if not os.path.isdir(self.dataDir):
            return []
        return sorted(f[:-len(REPORT_SUFFIX)]
                      for f in os.listdir(self.dataDir)
                      if f.endswith(REPORT_SUFFIX))


def _cell(value):
    if isinstance(value, float):
        return repr(value)
    return value
