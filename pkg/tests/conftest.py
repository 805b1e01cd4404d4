from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_criteria: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion check")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if marker:
        number, title = marker
        previous = _criteria.get(number, ("passed", title))[0]
        outcome = "passed" if report.outcome == "passed" and previous == "passed" else "failed"
        _criteria[number] = (outcome, title)


@pytest.fixture(autouse=True)
def _record_criterion(request):
    marker = request.node.get_closest_marker("criterion")
    if marker:
        request.node.user_properties.append(("criterion", marker.args))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria, key=int):
        outcome, title = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'} criterion {number}: {title}")


@pytest.fixture
def phone_model_bytes() -> bytes:
    return (DATA / "phone_model.uvl").read_bytes()


@pytest.fixture
def phone_model_text(phone_model_bytes) -> str:
    return phone_model_bytes.decode("utf-8")


def write_tree(root: Path, files: dict) -> Path:
    for rel, content in files.items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(content if isinstance(content, bytes) else content.encode("utf-8"))
    return root
