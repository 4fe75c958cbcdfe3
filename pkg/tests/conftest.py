import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    number, title = mark.args
    detail = getattr(item, "criterion_detail", "")
    _results[number] = (title, report.passed, report.duration, detail)


@pytest.fixture
def detail(request):
    """Lets an acceptance test attach a one-line measurement to its summary."""

    def note(text):
        request.node.criterion_detail = text

    return note


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        title, passed, duration, detail = _results[number]
        verdict = "PASS" if passed else "FAIL"
        line = f"criterion {number:>2} {verdict}  {title} ({duration:.2f} s)"
        if detail:
            line += f"  [{detail}]"
        tr.write_line(line)

