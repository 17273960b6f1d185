import json

import pytest

from powerweight import engine

FIXTURE_DOCS = [
    (1, "the cat sat on the mat"),
    (2, "the dog chased the cat around the yard twice"),
    (3, "cat cat cat"),
]


@pytest.fixture
def small_index():
    return engine.build_index(FIXTURE_DOCS)


@pytest.fixture
def corpus_file(tmp_path):
    path = tmp_path / "corpus.jsonl"
    path.write_text("".join(json.dumps({"id": i, "text": t}) + "\n" for i, t in FIXTURE_DOCS))
    return path


# one summary line per acceptance criterion
ACCEPTANCE_RESULTS: dict[str, tuple[str, str]] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    label, title = marker.args
    ok = call.excinfo is None
    prev = ACCEPTANCE_RESULTS.get(label)
    if prev is not None and prev[0] == "FAIL":
        return
    ACCEPTANCE_RESULTS[label] = ("PASS" if ok else "FAIL", title)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split(".")[0])):
        status, title = ACCEPTANCE_RESULTS[label]
        terminalreporter.write_line(f"[{status}] criterion {label}: {title}")
