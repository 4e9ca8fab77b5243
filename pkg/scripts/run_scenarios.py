#!/usr/bin/env python3
"""Run every scenario in a directory twice and confirm byte-identical JSON.

Usage: python scripts/run_scenarios.py [scenario_dir] [--out DIR]
Prints one line per scenario: name, exit code, deterministic yes/no.
Expected exit codes may be listed in ``expected_exit.json`` in the directory.
"""

import argparse
import json
import sys
from pathlib import Path

from invbanach.cli import dumps_json, run_scenario


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("directory", nargs="?", default=str(Path(__file__).resolve().parent.parent / "scenarios"))
    ap.add_argument("--out", default=None, help="write each JSON report here")
    args = ap.parse_args()
    root = Path(args.directory)
    expected = json.loads((root / "expected_exit.json").read_text()) if (root / "expected_exit.json").exists() else {}
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    bad = 0
    for path in sorted(root.glob("*.json")):
        if path.name == "expected_exit.json":
            continue
        scn = json.loads(path.read_text())
        code, rep, _ = run_scenario(scn)
        code2, rep2, _ = run_scenario(scn)
        a, b = dumps_json(rep), dumps_json(rep2)
        same = a == b and code == code2
        want = expected.get(path.stem, code)
        ok = same and code == want
        bad += not ok
        print(f"{path.stem:32s} exit={code} expected={want} deterministic={'yes' if same else 'NO'}")
        if out_dir:
            (out_dir / path.name).write_text(a)
    print(f"{'ALL OK' if not bad else f'{bad} FAILED'}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
