import os

import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("FATPLANE_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="extended tier; set FATPLANE_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
