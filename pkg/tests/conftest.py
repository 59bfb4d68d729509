import pytest

from wha_lab.builders import from_expression

BASE = ["pair(2)", "pair(3)", "grp(Z2)", "grp(Z3)", "grp(S3)", "gpd(2,Z2)"]
ALL_EXAMPLES = BASE + [f"dual({x})" for x in BASE] + ["ds(grp(Z2),grp(Z2))", "ds(pair(2),grp(Z3))"]
# examples whose trivial module is irreducible (fusion data exists)
CONNECTED = ["pair(2)", "pair(3)", "grp(Z2)", "grp(Z3)", "grp(S3)", "gpd(2,Z2)",
             "dual(grp(Z2))", "dual(grp(Z3))", "dual(grp(S3))"]
BICONNECTED = ["grp(Z2)", "grp(Z3)", "grp(S3)", "dual(grp(Z2))", "dual(grp(Z3))", "dual(grp(S3))"]

CRITERIA = {
    1: "axiom suite on all builder outputs",
    2: "semisimplicity equivalences",
    3: "dimension identities",
    4: "inclusion matrix eigen-identities",
    5: "first trace formula",
    6: "second trace formula",
    7: "class equation",
    8: "Radford S^4 identity",
    9: "positivity criterion",
    10: "radical stability",
    11: "orbit theorem",
    12: "determinism of check-all",
}

_cache = {}


def example(expr):
    """Shared instance per expression (verifiers cache derived data on it)."""
    if expr not in _cache:
        _cache[expr] = from_expression(expr)
    return _cache[expr]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")
    config._criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    store = _config._criteria
    store.setdefault(crit, []).append(report.passed)


def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", m.args[0]))


def pytest_sessionstart(session):
    global _config
    _config = session.config


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = getattr(config, "_criteria", {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n, desc in CRITERIA.items():
        results = store.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n:>2} ({desc}): {status}")


@pytest.fixture
def ex():
    return example
