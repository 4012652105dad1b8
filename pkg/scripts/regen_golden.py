"""Rewrite the CLI golden files from tests/fixtures/golden/invocations.json."""

import json
from pathlib import Path

from kacmoody.cli import run

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "golden"


def main():
    invocations = json.loads((GOLDEN / "invocations.json").read_text())
    for name, argv in sorted(invocations.items()):
        code, text = run(argv, environ={})
        if code:
            raise SystemExit(f"{name}: exit {code}\n{text}")
        (GOLDEN / name).write_text(text)
        print(f"wrote {name} ({len(text)} bytes)")


if __name__ == "__main__":
    main()
