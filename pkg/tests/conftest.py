import pytest

# filled by test_acceptance.py; printed once at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for one numbered acceptance criterion."""
    state = {}

    def record(number: int, title: str):
        state["number"], state["title"] = number, title
        ACCEPTANCE_LINES[number] = f"criterion {number:>2}  FAIL  {title}"

    yield record
    if "number" in state:
        rep = getattr(request.node, "rep_call", None)
        if rep is not None and rep.passed:
            ACCEPTANCE_LINES[state["number"]] = f"criterion {state['number']:>2}  PASS  " \
                                                f"{state['title']}"
        line = ACCEPTANCE_LINES[state["number"]]
        print("\n" + line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
