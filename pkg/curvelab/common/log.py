import logging
import sys

ROOT = "curvelab"

_FORMAT = "%(asctime)s | %(levelname)-7s | %(name)s | %(message)s"


def getlogger(name=None):
    """
    Return the logger for the calling module, nested under the package
    logger so that one handler configuration covers everything.
    """
    if name is None:
        frame = sys._getframe(1)
        name = frame.f_globals.get("__name__", ROOT)
    if not name.startswith(ROOT):
        name = "{}.{}".format(ROOT, name)
    return logging.getLogger(name)


def setupLogging(level="INFO", filePath=None):
    root = logging.getLogger(ROOT)
    for h in list(root.handlers):
        root.removeHandler(h)
    handler = logging.FileHandler(filePath, encoding="utf-8") if filePath \
        else logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(_FORMAT))
    root.addHandler(handler)
    root.setLevel(getattr(logging, str(level).upper(), logging.INFO))
    root.propagate = False
    return root
