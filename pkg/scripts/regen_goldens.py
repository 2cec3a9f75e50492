#!/usr/bin/env python3
"""Regenerate the golden CLI outputs under tests/golden/.

Run after any deliberate change to CLI output and eyeball the diff.
"""

import io
import sys
from contextlib import redirect_stdout
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from golden_cases import CASES  # noqa: E402

from treerow.cli import main  # noqa: E402


def regen() -> None:
    golden = ROOT / "tests" / "golden"
    golden.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(argv)
        if code != 0:
            raise SystemExit(f"{name}: exit code {code} for {argv}")
        (golden / name).write_text(buf.getvalue())
        print(f"wrote {name} ({len(buf.getvalue())} bytes)")


if __name__ == "__main__":
    regen()
