import pytest

from tdelpezzo import kernels

BACKENDS = ["python"] + (["cython"] if kernels.compiled is not None else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run a test once per available kernel backend."""
    if request.param == "python":
        monkeypatch.setattr(kernels, "compiled", None)
    return request.param


def pytest_report_header(config):
    return f"tdelpezzo kernel backend: {kernels.BACKEND}"


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when not in ("setup", "call"):
        return
    n, label = mark.args
    if report.when == "call" or report.failed:
        _CRITERIA[n] = (label, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        label, verdict = _CRITERIA[n]
        terminalreporter.write_line(f"ACCEPTANCE {n} {verdict}  {label}")
