_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by the test")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, text = marker.args
    outcome = "PASS" if call.excinfo is None else "FAIL"
    previous = _criteria.get(number)
    if previous and previous[1] == "FAIL":
        outcome = "FAIL"
    _criteria[number] = (text, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, outcome = _criteria[number]
        terminalreporter.write_line(f"[{outcome}] criterion {number:2d}: {text}")
