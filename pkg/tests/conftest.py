from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

CRITERIA = {
    1: "closed-form vs stepwise mass, k=3..200",
    2: "E8 mass anchor",
    3: "N(k) constant enclosure",
    4: "genus existence and mutations, k=3..200",
    5: "L symbol table, k=3..200",
    6: "embedding, complement and gluing pipeline",
    7: "O(L) action on the discriminant form",
    8: "prenilpotency word search envelope",
    9: "zeta_d(4) lower bound, k=3..200",
}

_outcomes = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    n = int(name.split("_")[2])
    if report.when == "call" or report.outcome != "passed":
        _outcomes[n] = _outcomes.get(n, True) and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        if n in _outcomes:
            status = "PASS" if _outcomes[n] else "FAIL"
            terminalreporter.write_line(f"criterion {n}: {status}  {title}")
