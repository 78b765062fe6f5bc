import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> list of (ok, note); filled by test_acceptance
CRITERIA: dict[int, list[tuple[bool, str]]] = {}


def criterion_line(num: int) -> str:
    parts = CRITERIA.get(num)
    if not parts:
        return f"criterion {num:>2}: NOT RUN"
    ok = all(p for p, _ in parts)
    notes = "; ".join(note for _, note in parts)
    return f"criterion {num:>2}: {'PASS' if ok else 'FAIL'} - {notes}"


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in range(1, 11):
        terminalreporter.write_line(criterion_line(num))
