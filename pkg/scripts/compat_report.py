#!/usr/bin/env python3
"""Regenerate the bundled-fixture compatibility report.

Writes the markdown table to stdout (or --out), and optionally the raw
JSON next to it.  Exits 2 if any Tier A cell fails to match.
"""

import argparse
import json
import sys

from mayerpath.report import run_compat_report


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=None, help="markdown output path")
    parser.add_argument("--json-out", default=None, help="JSON output path")
    args = parser.parse_args()

    report = run_compat_report()
    md = report.render_markdown()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(md + "\n")
    else:
        print(md)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            json.dump(report.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    bad = report.tier_a_failures
    if bad:
        print(f"{len(bad)} tier-A mismatches", file=sys.stderr)
        return 2
    flagged = sum(1 for c in report.cells if c.status == "reference-inconsistent")
    print(f"# {len(report.cells)} cells, {flagged} reference-inconsistent, 0 tier-A mismatches",
          file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
