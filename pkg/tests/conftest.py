import time

import pytest

from cl2tower.tables import survey_range

SURVEY_MIN = -99999


@pytest.fixture(scope="session")
def full_survey():
    """Every (2,2,2) field with -10^5 < d < 0, plus the time it took."""
    t = time.perf_counter()
    recs = survey_range(SURVEY_MIN, -3)
    return recs, time.perf_counter() - t


@pytest.fixture(scope="session")
def survey_by_label(full_survey):
    out = {}
    for r in full_survey[0]:
        out.setdefault(r.hall_senior, []).append(r)
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k])
