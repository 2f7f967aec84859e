#!/usr/bin/env python3
"""Point-count census over small fields.

For each q, walk the normal-form curves, histogram N, and compare the set of
observed traces with the admissible ones.  Also reports which q have a maximal
curve and what find_maximal_curve picks.
"""
from __future__ import annotations

import argparse
import json
import math
from collections import Counter
from dataclasses import dataclass, field

from eclrc.curve import admissible_trace, find_maximal_curve, iter_curves
from eclrc.errors import NoMaximalCurveFound
from eclrc.gf import field_of_order


@dataclass
class Config:
    orders: list[int] = field(default_factory=lambda: [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32])
    family: str = "normal"


def census(q: int, family: str) -> dict:
    F = field_of_order(q)
    hist = Counter(E.N for E in iter_curves(F, family))
    bound = math.isqrt(4 * q)
    admissible = sorted(q + 1 - t for t in range(-bound, bound + 1) if admissible_trace(q, t))
    try:
        mc = list(find_maximal_curve(q).coeffs)
    except NoMaximalCurveFound:
        mc = None
    return {
        "q": q,
        "curves": sum(hist.values()),
        "counts": dict(sorted(hist.items())),
        "admissible_counts": admissible,
        "agree": sorted(hist) == admissible,
        "maximal_curve": mc,
    }


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("orders", nargs="*", type=int)
    ap.add_argument("--family", default="normal", choices=["normal", "all"])
    a = ap.parse_args()
    cfg = Config(orders=a.orders or Config().orders, family=a.family)
    for q in cfg.orders:
        print(json.dumps(census(q, cfg.family), sort_keys=True))
