import pytest

# filled by the acceptance tests: (number, title, passed, detail)
CRITERIA = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test outcome decides pass or fail."""
    entry = {"number": None, "title": "", "detail": ""}

    def record(number, title):
        entry["number"], entry["title"] = number, title
        return entry

    yield record
    if entry["number"] is not None:
        call = getattr(request.node, "rep_call", None)
        passed = call is not None and call.passed
        CRITERIA.append((entry["number"], entry["title"], passed, entry["detail"]))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(CRITERIA):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  {detail}".rstrip())
