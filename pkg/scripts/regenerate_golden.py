"""Rebuild the committed golden annotations from the rule analyzer.

Run after an intentional analyzer change, then review the diff:

    python3 scripts/regenerate_golden.py            # rewrite the packaged file
    python3 scripts/regenerate_golden.py --check    # exit 1 if it would change
"""

import argparse
import sys
from pathlib import Path

from reqanaphora.fixtures import GOLDEN_FILENAME, regenerate_golden

TARGET = Path(__file__).resolve().parents[1] / "src" / "reqanaphora" / "data" / GOLDEN_FILENAME


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    ap.add_argument("--output", type=Path, default=TARGET)
    args = ap.parse_args()
    data = regenerate_golden().dumps()
    if args.check:
        same = args.output.exists() and args.output.read_text(encoding="utf-8") == data
        print("golden file up to date" if same else "golden file is stale")
        return 0 if same else 1
    args.output.write_text(data, encoding="utf-8")
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
