import functools
import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

import signcert  # noqa: E402
from signcert import certifier, geometry, separation  # noqa: E402
from signcert.signomial import signed_support  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# --------------------------------------------------------------- witnesses
# Every witness produced anywhere in the session is logged here and
# re-verified by the last acceptance check.

# A second import of this file (running the acceptance module as a script)
# must share the log held by the wrappers already installed.
WITNESS_LOG: list[tuple[str, object, object]] = getattr(certifier.certify, "witness_log", [])


def _record(kind, support_of):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            out = fn(*args, **kwargs)
            if out is not None:
                WITNESS_LOG.append((kind, support_of(*args, **kwargs), out))
            return out

        wrapper.__wrapped_original__ = fn
        wrapper.witness_log = WITNESS_LOG
        return wrapper

    return deco


def _first(*args, **kwargs):
    return args[0] if args else next(iter(kwargs.values()))


def _second(*args, **kwargs):
    return args[1] if len(args) > 1 else kwargs["s"]


def _f_and_target(*args, **kwargs):
    f = args[0]
    target = args[1] if len(args) > 1 else kwargs.get("target", "negative")
    return f if target == "negative" else -f


_PATCHES = {
    (separation, "find_separating_vector"): ("separating", _first),
    (separation, "find_enclosing_vector"): ("enclosing", _first),
    (separation, "very_strict_basis"): ("very_strict_basis", _second),
    (geometry, "simplex_from_very_strict"): ("simplex", lambda *a, **k: signed_support(a[0])),
    (geometry, "simplex_from_nonstrict_family"): ("simplex", lambda *a, **k: signed_support(a[0])),
    (certifier, "certify"): ("certificate", _f_and_target),
}


def _install():
    mods = [m for name, m in list(sys.modules.items()) if name == "signcert" or name.startswith("signcert.")]
    for (mod, name), (kind, support_of) in _PATCHES.items():
        original = getattr(mod, name)
        if hasattr(original, "__wrapped_original__"):
            continue
        wrapped = _record(kind, support_of)(original)
        for m in mods:
            if getattr(m, name, None) is original:
                setattr(m, name, wrapped)


_install()


def pytest_collection_modifyitems(session, config, items):
    # acceptance checks run last so criterion 10 sees every witness
    items.sort(key=lambda it: "test_acceptance" in it.nodeid)


# --------------------------------------------------------------- summary

ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        crit = getattr(report, "criterion", None)
        if crit is not None:
            ACCEPTANCE_RESULTS[crit[0]] = (report.outcome.upper(), crit[1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        rep.criterion = marker.args


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        status, title = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if status == 'PASSED' else 'FAIL'}  {title}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
