import pytest

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and item.name.startswith("test_criterion_"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        prev = _CRITERIA.get(item.nodeid, (True, doc))[0]
        _CRITERIA[item.nodeid] = (prev and not rep.failed, doc)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for ok, doc in sorted(_CRITERIA.values(), key=lambda v: v[1]):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {doc}")
