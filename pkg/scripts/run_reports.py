#!/usr/bin/env python3
"""Run every verification report in sequence, as one demo command.

Equivalent to calling the four CLI subcommands one after another; exits
nonzero if any report fails.
"""

import argparse
import sys

from sunada_lab.cli import main as cli_main


def run(json_mode: bool) -> int:
    worst = 0
    for argv in (
        ["sunada-verify"],
        ["theorem1"],
        ["transplant"],
        ["theorem2"],
    ):
        if json_mode:
            argv = ["--json", *argv]
        print(f"$ sunada-lab {' '.join(argv)}", flush=True)
        code = cli_main(argv)
        worst = max(worst, code)
        print(flush=True)
    return worst


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true", help="emit JSON reports")
    args = parser.parse_args()
    sys.exit(run(args.json))
