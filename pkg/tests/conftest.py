import pytest

CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.fixture
def note(request):
    """Attach a diagnostic line to the acceptance criterion of the calling test."""
    mark = request.node.get_closest_marker("criterion")

    def add(text: str):
        if mark is not None:
            CRITERIA.setdefault(mark.args[0], {"title": mark.args[1], "ok": True, "notes": []})["notes"].append(text)

    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    entry = CRITERIA.setdefault(mark.args[0], {"title": mark.args[1], "ok": True, "notes": []})
    if rep.when == "call" or rep.failed:
        entry["ok"] = entry["ok"] and rep.passed


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        c = CRITERIA[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if c['ok'] else 'FAIL'}  {c['title']}")
        for n in c["notes"]:
            terminalreporter.write_line(f"    {n}")
