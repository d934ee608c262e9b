import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_criteria = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    key = props["criterion"]
    entry = _criteria.setdefault(key, {"title": props.get("title", ""), "passed": True, "measured": ""})
    if props.get("measured"):
        entry["measured"] = props["measured"]
    if report.failed:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        entry = _criteria[key]
        status = "PASS" if entry["passed"] else "FAIL"
        line = f"criterion {key:>2} {status}  {entry['title']}"
        if entry["measured"]:
            line += f"  [{entry['measured']}]"
        terminalreporter.write_line(line)
