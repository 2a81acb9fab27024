"""Regenerate the CLI golden outputs listed in tests/golden/manifest.json."""
import contextlib
import io
import json
from pathlib import Path

from ncdef.cli import main
from ncdef.workspace import bundled_path

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def resolve(args):
    return [str(bundled_path(a[1:])) if a.startswith("@") else a for a in args]


def run(args):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main(resolve(args) + ["--format", "json"])
    return code, buf.getvalue()


def main_():
    for entry in json.loads((GOLDEN / "manifest.json").read_text()):
        code, out = run(entry["args"])
        if code != entry["exit"]:
            raise SystemExit(f"{entry['name']}: exit {code}, manifest says {entry['exit']}")
        (GOLDEN / f"{entry['name']}.json").write_text(out)
        print(f"{entry['name']}: exit {code}")


if __name__ == "__main__":
    main_()
