from abc import abstractmethod
from typing import Dict, List, Sequence


class ReportStore:
    @abstractmethod
    def putReport(self, suite: str, report: Dict):
        pass

    @abstractmethod
    def getReport(self, suite: str) -> Dict:
        pass

    @abstractmethod
    def putTable(self, name: str, columns: Sequence[str], rows: List[Dict]):
        pass

    @abstractmethod
    def putText(self, name: str, text: str):
        pass

    @property
    @abstractmethod
    def suites(self) -> List[str]:
        pass
