"""Per-criterion pass/fail summary for the acceptance suite."""

from collections import OrderedDict

_criteria = OrderedDict()  # number -> {"title", "passed", "failed"}
_by_node = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(session, config, items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is None:
            continue
        number, title = mark.args
        _by_node[item.nodeid] = number
        entry = _criteria.setdefault(number, {"title": title, "passed": 0, "failed": []})
        entry["title"] = title


def pytest_runtest_logreport(report):
    number = _by_node.get(report.nodeid)
    if number is None:
        return
    entry = _criteria[number]
    if report.failed:
        name = report.nodeid.split("::")[-1]
        if name not in entry["failed"]:
            entry["failed"].append(name)
    elif report.when == "call" and report.passed:
        entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    ran = {k: v for k, v in _criteria.items() if v["passed"] or v["failed"]}
    if not ran:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(ran):
        entry = ran[number]
        status = "FAIL" if entry["failed"] else "PASS"
        total = entry["passed"] + len(entry["failed"])
        line = f"criterion {number:2d}  {status}  {entry['title']} ({entry['passed']}/{total} checks)"
        tr.write_line(line)
        for name in entry["failed"]:
            tr.write_line(f"    failed: {name}")
