import re

import pytest

_LINES: dict = {}


@pytest.fixture
def criterion(request):
    """Record the outcome line of one acceptance criterion, then assert it."""
    k = int(re.search(r"criterion_(\d+)", request.node.name).group(1))

    def record(checks: dict, detail: str = ""):
        failed = [name for name, ok in checks.items() if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {k:>2} {status}: {detail}"
        if failed:
            line += f" [failed: {', '.join(failed)}]"
        _LINES[k] = line
        print(line)
        assert not failed, line

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.search(r"criterion_(\d+)", item.name)
    if m and rep.failed:
        k = int(m.group(1))
        _LINES.setdefault(k, f"criterion {k:>2} FAIL: {rep.when} error ({call.excinfo.typename})")


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_LINES):
        terminalreporter.write_line(_LINES[k])
