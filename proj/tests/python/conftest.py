import os
import shutil

import pytest


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("OKVALID_CLI") or shutil.which("okvalid")
    if not path:
        pytest.skip("okvalid executable not found (set OKVALID_CLI)")
    return path
