import io

import pytest

from curvelab.cli.cli import CurvelabCli


@pytest.fixture()
def out():
    return io.StringIO()


@pytest.fixture()
def cli(tmp_path, out):
    return CurvelabCli(str(tmp_path / "reports"), stream=out)
