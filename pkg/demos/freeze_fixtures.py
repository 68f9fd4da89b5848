#!/usr/bin/env python3
"""Regenerate tests/frozen_fixtures.py.

Every regression constant in that file is computed here by a brute-force
oracle and written out together with the exact producing call, so the
provenance of each frozen number stays auditable.  Run from the repo root:

    python3 demos/freeze_fixtures.py
"""

from __future__ import annotations

import pathlib

from balcut.graph import Graph
from balcut.oracle import brute_bisection, brute_maxcut

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "frozen_fixtures.py"


def petersen() -> Graph:
    outer = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6, 8), (8, 10), (10, 7), (7, 9), (9, 6)]
    return Graph(10, outer + spokes + inner)


def main() -> None:
    lines = [
        '"""Frozen regression constants.',
        "",
        "GENERATED by demos/freeze_fixtures.py -- edit that script, not this file.",
        "Each constant records the oracle call that produced it.",
        '"""',
        "",
    ]

    pet = petersen()
    b = brute_bisection(pet)
    lines += [
        "# brute_bisection(petersen()) over all C(10,5) candidate sides",
        f"PETERSEN_BISECTION = {b.optimum}",
        f"PETERSEN_BISECTION_SIDE_A = {tuple(sorted(b.witness.a))!r}",
        "",
    ]
    mc = brute_maxcut(pet)
    lines += [
        "# brute_maxcut(petersen()), 2^9 candidate sides",
        f"PETERSEN_MAXCUT = {mc.optimum}",
        "",
    ]

    OUT.write_text("\n".join(lines))
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
