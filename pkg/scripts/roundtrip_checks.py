#!/usr/bin/env python3
"""Sweep realization round trips: build a game and board for a target complex,
replay them through the engine, and demand exact recovery.

Exhaustive mode enumerates every labeled complex on up to --max-vertices
vertices and checks the table-game realization in both directions.  Random
mode draws complexes and additionally exercises the distance-game
constructions within their budget.  Exit status 1 if any case fails.

Usage: roundtrip_checks.py [--max-vertices 3] [--samples 25] [--seed 0]
"""
from __future__ import annotations

import argparse
import itertools
import random
import string
import sys
import time

from spg.complexes import empty_face_complex, from_facets, void_complex
from spg.construct import verify_roundtrip


def labeled_complexes(names):
    """Every facet antichain over the name pool, crossed with every
    bipartition of the vertices it uses."""
    yield void_complex()
    yield empty_face_complex()
    subs = [
        frozenset(c)
        for r in range(1, len(names) + 1)
        for c in itertools.combinations(names, r)
    ]

    def antichains(i, chosen):
        if i == len(subs):
            yield chosen
            return
        yield from antichains(i + 1, chosen)
        if not any(subs[i] <= t or t <= subs[i] for t in chosen):
            yield from antichains(i + 1, chosen + (subs[i],))

    for fam in antichains(0, ()):
        if not fam:
            continue
        used = sorted(set().union(*fam))
        for bits in range(2 ** len(used)):
            part = {v: "RL"[bits >> i & 1] for i, v in enumerate(used)}
            yield from_facets(fam, part)


def random_complex(rng, max_vertices):
    n = rng.randint(1, max_vertices)
    vs = list(string.ascii_lowercase[:n])
    part = {v: rng.choice("LR") for v in vs}
    fams = [rng.sample(vs, rng.randint(1, n)) for _ in range(rng.randint(1, 2 * n))]
    return from_facets(fams, part)


def run_case(kind, delta, failures):
    report = verify_roundtrip(kind, delta)
    if report.status == "FAIL":
        failures.append((kind, delta, report.detail))
        print(f"FAIL  {kind:7s} {delta!r}: {report.detail}")
    return report.status


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vertices", type=int, default=3,
                    help="vertex pool size for the exhaustive sweep")
    ap.add_argument("--samples", type=int, default=25,
                    help="random complexes to push through the distance games")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    t0 = time.perf_counter()
    failures: list = []
    counts = {"PASS": 0, "FAIL": 0, "INCONCLUSIVE": 0}

    names = string.ascii_lowercase[: args.max_vertices]
    exhaustive = 0
    for delta in labeled_complexes(names):
        counts[run_case("both", delta, failures)] += 1
        exhaustive += 1
    print(f"exhaustive table-game sweep: {exhaustive} complexes on <= {len(names)} vertices")

    rng = random.Random(args.seed)
    for _ in range(args.samples):
        delta = random_complex(rng, max_vertices=4)
        for kind in ("legal", "illegal"):
            if kind == "illegal" and any(len(f) < 2 for f in delta.facets):
                continue  # isolated vertices have no distance-game realization
            counts[run_case(kind, delta, failures)] += 1

    print(f"totals: {counts['PASS']} pass, {counts['FAIL']} fail, "
          f"{counts['INCONCLUSIVE']} inconclusive (over budget) "
          f"in {time.perf_counter() - t0:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
