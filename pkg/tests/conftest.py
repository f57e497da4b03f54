import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.call_report = rep


@pytest.fixture
def criterion(request):
    """Print one PASS/FAIL line for an acceptance criterion, whatever the capture mode."""
    label = {}
    yield label
    rep = getattr(request.node, "call_report", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    capman = request.config.pluginmanager.getplugin("capturemanager")
    detail = f" ({label['detail']})" if "detail" in label else ""
    with capman.global_and_fixture_disabled():
        print(f"\n[{status}] {label.get('name', request.node.name)}{detail}", flush=True)
