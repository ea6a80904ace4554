from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings

from superqg.rootdata import alternate_theta, build_datum, parse_parity

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

GL_PARITIES = ["01", "00", "011", "0110", "0011", "01101"]
OSP_PARITIES = ["101", "0110", "11011", "010010"]


def _osp_cases() -> list[tuple[str, str, str | None]]:
    out = []
    for p in OSP_PARITIES:
        out.append(("osp", p, None))
        alt = alternate_theta(parse_parity(p))
        if alt is not None:
            out.append(("osp", p, "".join("+" if t > 0 else "-" for t in alt)))
    return out


GL_CASES = [("gl", p, None) for p in GL_PARITIES]
OSP_CASES = _osp_cases()
ALL_CASES = GL_CASES + OSP_CASES
SMALL_CASES = [("gl", "01", None), ("gl", "011", None), ("osp", "101", None), ("osp", "0110", None)]


def case_id(case: tuple[str, str, str | None]) -> str:
    mode, parity, theta = case
    return f"{mode}-{parity}" + (f"-{theta}" if theta else "")


def datum_of(case):
    mode, parity, theta = case
    return build_datum(mode, parity, theta)


_CRITERIA: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one of the ten acceptance criteria")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    name = item.name
    if name.startswith("test_criterion_") and (rep.when == "call" or rep.failed):
        if rep.failed or name not in _CRITERIA:
            _CRITERIA[name] = "FAIL" if rep.failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        num, _, title = name.removeprefix("test_criterion_").partition("_")
        terminalreporter.write_line(f"criterion {int(num):>2} {title.replace('_', ' '):<28} {_CRITERIA[name]}")


@pytest.fixture(params=SMALL_CASES, ids=case_id)
def small_datum(request):
    return datum_of(request.param)
