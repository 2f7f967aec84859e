#!/usr/bin/env python3
"""Largest abelian <tau_Q, sigma> (sigma a non-identity automorphism fixing O) per curve.

Scans every normal-form curve over each field and reports the maximum order
found, plus a histogram of the per-curve maxima.
"""
from __future__ import annotations

import argparse
import json
from collections import Counter
from dataclasses import dataclass, field

from eclrc import autgroup as ag
from eclrc.curve import iter_curves
from eclrc.gf import field_of_order


@dataclass
class Config:
    orders: list[int] = field(default_factory=lambda: [4, 5, 7, 8, 9, 16])


def scan(q: int) -> dict:
    F = field_of_order(q)
    hist = Counter()
    best, where = 0, None
    for E in iter_curves(F, "normal"):
        n, arg = ag.max_abelian_scan(E)
        hist[n] += 1
        if n > best:
            best, where = n, {"coeffs": list(E.coeffs), "Q": arg[0].to_json(), "sigma": arg[1].to_json()}
    return {"q": q, "max_order": best, "witness": where, "histogram": dict(sorted(hist.items()))}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("orders", nargs="*", type=int)
    cfg = Config(orders=ap.parse_args().orders or Config().orders)
    for q in cfg.orders:
        print(json.dumps(scan(q), sort_keys=True))
