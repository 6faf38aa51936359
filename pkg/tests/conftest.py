import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _acceptance.append((marker.args[0], item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for crit, name, outcome in sorted(_acceptance, key=lambda r: r[0]):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {crit:>2}: {name}")


@pytest.fixture
def toy_files(tmp_path):
    """Small hand-made lexica and stop-word list."""
    emotions = tmp_path / "emotions.tsv"
    emotions.write_text(
        "# word\temotion\tflag\n"
        "paura\tfear\t1\n"
        "paura\tnegative\t1\n"
        "pace\ttrust\t1\n"
        "pace\tjoy\t1\n"
        "pace\tpositive\t1\n"
        "guerra\tfear\t1\n"
        "guerra\tanger\t1\n"
        "futuro\tanticipation\t1\n"
        "speranza\ttrust\t1\n"
        "speranza\tanticipation\t1\n"
        "tavolo\tjoy\t0\n",
        encoding="utf-8",
    )
    norms = tmp_path / "norms.tsv"
    norms.write_text(
        "paura\t2.0\t7.0\npace\t8.0\t3.0\nguerra\t1.5\t8.0\nfuturo\t6.0\t5.0\ntavolo\t5.0\t3.0\n",
        encoding="utf-8",
    )
    antonyms = tmp_path / "antonyms.tsv"
    antonyms.write_text("pace\tguerra\nguerra\tpace\n", encoding="utf-8")
    stop = tmp_path / "stop.txt"
    stop.write_text("# stop\nma\nla\nil\ndi\n", encoding="utf-8")
    return {"emotions": emotions, "norms": norms, "antonyms": antonyms, "stopwords": stop}
