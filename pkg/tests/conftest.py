import numpy as np
import pytest

from vna import synth


class MetaStub:
    """Lightweight stand-in for probed media metadata in config-level tests."""

    def __init__(self, duration_s=10.0, fps=25.0, sample_rate=16000, width=640, height=480, channels=1):
        self.duration_s = duration_s
        self.fps = fps
        self.sample_rate = sample_rate
        self.width = width
        self.height = height
        self.channels = channels


@pytest.fixture
def meta10s():
    return MetaStub()


@pytest.fixture(scope="session")
def small_clip(tmp_path_factory):
    """A 2 s, 10 fps, 32x24, 8 kHz mono synthetic clip (kept small for speed)."""
    path = tmp_path_factory.mktemp("media") / "clip.vnr"
    synth.make_test_clip(path, duration_s=2.0, fps=10.0, width=32, height=24, sample_rate=8000)
    return path


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion."""
    rows = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" in report.nodeid and report.when == "call":
                name = report.nodeid.split("::")[-1].replace("test_criterion_", "")
                rows.append((name, outcome, report.duration))
    if rows:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name, outcome, duration in rows:
            flag = "PASS" if outcome == "passed" else "FAIL"
            terminalreporter.write_line(f"[{flag}] {name} ({duration:.1f}s)")
