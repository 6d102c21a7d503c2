#!/usr/bin/env python3
"""Re-derive every number in the certificate for the bundled lattice
data, with oracle verification switched on, and run the negative
controls. Exits nonzero if anything disagrees."""

import pathlib
import sys

from latcert.cli import main

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

EXPECTED = {
    "gizatullin.json": 0,
    "hyperbolic_plane.json": 1,
    "minus_two_class.json": 1,
    "low_degree_control.json": 1,
}


def run() -> int:
    failures = 0
    for name, expected in EXPECTED.items():
        path = str(DATA / name)
        print(f"=== check --verify {name} (expect exit {expected}) ===")
        code = main(["check", path, "--verify"])
        if code != expected:
            print(f"!!! unexpected exit code {code}", file=sys.stderr)
            failures += 1
        print()
    for extra in (
        ["pell", "24"],
        ["disc", str(DATA / "gizatullin.json")],
        ["orbit", str(DATA / "gizatullin.json"), "--k-max", "5"],
        ["enumerate", str(DATA / "gizatullin.json")],
    ):
        print(f"=== {' '.join(extra)} ===")
        if main(extra) != 0:
            failures += 1
        print()
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(run())
