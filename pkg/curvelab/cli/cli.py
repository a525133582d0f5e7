import argparse
import sys
from typing import Dict, List

from curvelab.cli import constants as c
from curvelab.cli.helper import ExperimentConfig, formatTable, loadConfig, \
    outputDir, summaryRows
from curvelab.cli.suites import SUITES
from curvelab.common.exceptions import ConfigError, CurvelabError, \
    ReportError, SolverError
from curvelab.common.log import getlogger, setupLogging
from curvelab.common.util import getConfig
from curvelab.persistence.report_store_file import ReportStoreFile

logger = getlogger()


class CurvelabCli:
    """
    Runs one suite per invocation and turns its outcome into an exit
    status; reports go to the output directory.
    """
    name = 'curvelab'

    def __init__(self, out: str = None, plots: bool = False, stream=None):
        self.out = out
        self.plots = plots
        self.stream = stream or sys.stdout

    @property
    def actions(self) -> Dict:
        return SUITES

    def print(self, msg: str):
        self.stream.write(msg + "\n")

    def _plotter(self, directory):
        if not self.plots:
            return None
        try:
            from curvelab.cli.plots import Plotter
            return Plotter(directory)
        except ImportError:
            logger.warning("matplotlib is not installed, skipping plots")
            return None

    def runSuite(self, config: ExperimentConfig) -> int:
        directory = outputDir(config, self.out)
        store = ReportStoreFile(directory)
        logger.info("running suite {} with seed {}".format(config.suite,
                                                            config.seed))
        result, report = self.actions[config.suite](
            config, store, self._plotter(directory))
        store.putReport(config.suite, report)
        if result.passed:
            logger.info("suite {} passed, worst margin {}".format(
                result.name, result.worstMargin))
            return c.EXIT_OK
        logger.warning("suite {} failed, worst margin {}".format(
            result.name, result.worstMargin))
        return c.EXIT_MARGIN

    def run(self, configPath: str) -> int:
        try:
            return self.runSuite(loadConfig(configPath))
        except SolverError as ex:
            logger.error("{}: {}".format(ex.reason, ex))
            return c.EXIT_SOLVER
        except CurvelabError as ex:
            logger.error("{}: {}".format(ex.reason, ex))
            return c.EXIT_CONFIG

    def summary(self, directory: str) -> int:
        try:
            rows = reportSummary(directory)
        except (ReportError, ConfigError) as ex:
            logger.error("{}: {}".format(ex.reason, ex))
            return c.EXIT_CONFIG
        self.print(formatTable(rows))
        return c.EXIT_OK


def run(config: ExperimentConfig, out: str = None,
        plots: bool = False) -> int:
    """Runs a parsed config and returns the exit status."""
    cli = CurvelabCli(out, plots)
    try:
        return cli.runSuite(config)
    except SolverError:
        return c.EXIT_SOLVER
    except CurvelabError:
        return c.EXIT_CONFIG


def reportSummary(directory: str) -> List[Dict]:
    return summaryRows(ReportStoreFile(directory, create=False))


def argParser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=CurvelabCli.name,
        description="Numerical checks of growth and convexity estimates "
                    "for harmonic functions and eigenfunctions",
        epilog=c.USAGE_TEXT,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    commands = parser.add_subparsers(dest="command")
    commands.required = True
    runCmd = commands.add_parser("run", help="run the suite of a config")
    runCmd.add_argument("--config", required=True,
                        help="key = value experiment config")
    runCmd.add_argument("--plots", action="store_true",
                        help="also write SVG figures")
    runCmd.add_argument("--out", default=None,
                        help="report directory, overrides `out`")
    summaryCmd = commands.add_parser("summary",
                                     help="one row per stored report")
    summaryCmd.add_argument("directory")
    return parser


def main(argv=None) -> int:
    args = argParser().parse_args(argv)
    config = getConfig()
    setupLogging(config.logLevel, config.logFilePath)
    cli = CurvelabCli(getattr(args, "out", None),
                      getattr(args, "plots", False))
    if args.command == "run":
        return cli.run(args.config)
    return cli.summary(args.directory)
