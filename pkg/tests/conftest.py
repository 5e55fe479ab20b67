import pytest


@pytest.fixture
def report(capsys):
    """Print one verdict line straight to the terminal, then assert it."""

    def _report(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, f"criterion {number} failed: {title} {detail}"

    return _report
