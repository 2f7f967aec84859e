"""Command-line front end.

Every subcommand prints one JSON document on stdout (``--pretty`` switches to
a readable text rendering).  Exit codes: 0 success, 1 domain error (JSON
object on stderr), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from pathlib import Path

import numpy as np

from . import autgroup as ag
from . import lrc
from .curve import O, Curve, Point, find_maximal_curve, is_maximal, iter_curves, parse_equation
from .errors import EclrcError, ParameterViolation, PointNotOnCurve
from .gf import DEFAULT_MAX_Q, field_of_order

DEFAULT_CLI_MAX_Q = 4096


class UsageError(Exception):
    pass


# -- helpers -----------------------------------------------------------------------------


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    return int(os.environ.get("ECLRC_SEED", "0"))


def _field(args):
    if args.q is None:
        raise UsageError("--q is required")
    return field_of_order(args.q, max_q=max(args.max_q, DEFAULT_MAX_Q))


def _curve(args) -> Curve:
    F = _field(args)
    if args.curve in (None, "maximal"):
        return find_maximal_curve(F.q)
    if "=" in args.curve:
        return parse_equation(F, args.curve)
    try:
        coeffs = [int(c) for c in args.curve.split(",")]
    except ValueError:
        raise UsageError(f"cannot read curve {args.curve!r}") from None
    if len(coeffs) != 5:
        raise UsageError("curve coefficients need five values a1,a2,a3,a4,a6")
    return Curve(F, *coeffs)


def _parse_gen(curve: Curve, text: str) -> ag.CurveAut:
    """``PX,PY:u,r,s,t`` or ``O:u,r,s,t``; either half may be omitted (``PX,PY`` or ``:u,r,s,t``)."""
    pt, _, st = text.partition(":")
    if pt in ("", "O", "o"):
        Q = O
    else:
        try:
            x, y = (int(v) for v in pt.split(","))
        except ValueError:
            raise UsageError(f"cannot read point {pt!r}") from None
        Q = Point(x, y)
        if not curve.contains(Q):
            raise PointNotOnCurve(f"{Q!r} is not on the curve")
    params = (1, 0, 0, 0)
    if st:
        try:
            params = tuple(int(v) for v in st.split(","))
        except ValueError:
            raise UsageError(f"cannot read stabilizer {st!r}") from None
        if len(params) != 4:
            raise UsageError("stabilizer needs four values u,r,s,t")
        if not ag.is_stabilizer(curve, *params):
            raise ParameterViolation(f"{params} does not preserve the curve")
    return ag.CurveAut(Q, ag.StabAut(*params, curve=curve))


def _group(args, curve: Curve) -> ag.Subgroup:
    if args.gen:
        return ag.closure([_parse_gen(curve, g) for g in args.gen], curve)
    if args.group == "order9":
        return lrc.order9_group(curve)
    if args.group == "involution":
        return lrc.involution_group(curve)
    raise UsageError("give --group or at least one --gen")


def _pole_fiber(args, curve: Curve):
    if not getattr(args, "pole_fiber", None):
        return None
    pts = []
    for tok in args.pole_fiber.split(";"):
        x, y = (int(v) for v in tok.split(","))
        pts.append(Point(x, y))
    return tuple(pts)


def _symbol_dtype(q: int):
    return np.dtype("u1") if q <= 256 else np.dtype("<u2")


def _read_symbols(path, q: int) -> np.ndarray:
    data = np.fromfile(path, dtype=_symbol_dtype(q)).astype(np.int64)
    if data.size and data.max() >= q:
        raise ParameterViolation(f"symbol {int(data.max())} out of range for q = {q}")
    return data


def _write_symbols(path, values, q: int):
    np.asarray(values, dtype=np.int64).astype(_symbol_dtype(q)).tofile(path)


def _read_bitmap(path, n: int) -> np.ndarray:
    raw = np.fromfile(path, dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little")
    if bits.size < n:
        raise ParameterViolation("erasure bitmap is shorter than the symbol stream")
    return bits[:n].astype(bool)


def write_bitmap(path, mask):
    np.packbits(np.asarray(mask, dtype=np.uint8), bitorder="little").tofile(path)


def _load_code(args) -> lrc.LrcCode:
    spec = json.loads(Path(args.spec).read_text())
    return lrc.code_from_spec(spec)


# -- subcommands --------------------------------------------------------------------------


def cmd_field_info(args):
    F = _field(args)
    return {"p": F.p, "a": F.a, "q": F.q, "modulus": list(F.modulus), "generator": F.generator}


def cmd_curve_scan(args):
    F = _field(args)
    census: Counter = Counter()
    maximal = []
    count = 0
    for E in iter_curves(F, args.family):
        count += 1
        census[E.N] += 1
        if is_maximal(E) and len(maximal) < args.limit:
            maximal.append(list(E.coeffs))
    return {
        "q": F.q,
        "family": args.family,
        "curves": count,
        "point_counts": {str(k): v for k, v in sorted(census.items())},
        "maximal_examples": maximal,
    }


def cmd_curve_info(args):
    E = _curve(args)
    out = {
        "q": E.q,
        "coeffs": list(E.coeffs),
        "N": E.N,
        "structure": list(E.structure),
        "j": E.j,
        "maximal": is_maximal(E),
    }
    if args.points:
        out["points"] = [P.to_json() for P in E.points]
    return out


def cmd_aut_list(args):
    E = _curve(args)
    stab = ag.enumerate_stabilizer(E, method=args.method, max_q=args.max_q)
    return {"q": E.q, "coeffs": list(E.coeffs), "order": len(stab), "stabilizers": [a.to_json() for a in stab]}


def cmd_aut_subgroups(args):
    E = _curve(args)
    stab = ag.enumerate_stabilizer(E, max_q=args.max_q)
    subs = ag.all_subgroups([ag.from_stab(a) for a in stab])
    report = {
        "q": E.q,
        "coeffs": list(E.coeffs),
        "stabilizer_order": len(stab),
        "stabilizer_subgroups": [
            {"order": S.order, "generators": [g.stab.to_json() for g in S.generators]} for S in subs
        ],
    }
    if args.translations:
        if E.N > 200:
            raise ParameterViolation("translation subgroup enumeration is limited to N <= 200")
        Ts = ag.all_subgroups(ag.translation_group(E))
        pairs = 0
        for T in Ts:
            for A in subs:
                try:
                    ag.ta_subgroup(T.elements, A.elements)
                    pairs += 1
                except ag.NotASubgroup:
                    pass
        report["translation_subgroup_orders"] = sorted(T.order for T in Ts)
        report["ta_pairs"] = pairs
    return report


def cmd_aut_orbits(args):
    E = _curve(args)
    G = _group(args, E)
    summary = ag.orbit_summary(G)
    summary["q"] = E.q
    summary["coeffs"] = list(E.coeffs)
    summary["abelian"] = ag.is_abelian(G)
    if args.list:
        summary["orbit_list"] = [[P.to_json() for P in o] for o in ag.orbits(G)]
    return summary


def _code_report(code: lrc.LrcCode) -> dict:
    return {
        "n": code.n,
        "k": code.k,
        "d": code.d_design,
        "r": code.r,
        "t": code.t,
        "m": code.m,
        "q": code.q,
        "include_pole_fiber": code.include_pole_fiber,
        "groups": [list(g) for g in code.groups],
    }


def cmd_code_build(args):
    E = _curve(args)
    G = _group(args, E)
    code = lrc.build_code(E, G, args.t, args.m, args.include_pole_fiber, _pole_fiber(args, E))
    if args.out:
        Path(args.out).write_text(json.dumps(lrc.code_spec(code), sort_keys=True) + "\n")
    if args.matrix:
        with open(args.matrix, "w") as fh:
            fh.write(json.dumps(lrc.generator_header(code), sort_keys=True) + "\n")
            for row in code.generator.tolist():
                fh.write(" ".join(str(v) for v in row) + "\n")
    return _code_report(code)


def cmd_code_encode(args):
    code = _load_code(args)
    data = _read_symbols(args.input, code.q)
    pad = (-data.size) % code.k
    msgs = np.concatenate([data, np.zeros(pad, dtype=np.int64)]).reshape(-1, code.k)
    words = lrc.encode_many(code, msgs) if msgs.size else np.zeros((0, code.n), dtype=np.int64)
    _write_symbols(args.output, words.reshape(-1), code.q)
    return {"blocks": int(msgs.shape[0]), "symbols_in": int(data.size), "padding": int(pad), "symbols_out": int(words.size)}


def _blocks(args, code):
    data = _read_symbols(args.input, code.q)
    if data.size % code.n:
        raise ParameterViolation(f"stream length {data.size} is not a multiple of n = {code.n}")
    mask = _read_bitmap(args.erasures, data.size)
    return data.reshape(-1, code.n), mask.reshape(-1, code.n)


def cmd_code_repair(args):
    code = _load_code(args)
    words, mask = _blocks(args, code)
    out = words.copy()
    repaired = 0
    for b in range(words.shape[0]):
        rec = [None if mask[b, i] else int(words[b, i]) for i in range(code.n)]
        for i in np.flatnonzero(mask[b]):
            out[b, i] = lrc.repair(code, rec, int(i))
            repaired += 1
    _write_symbols(args.output, out.reshape(-1), code.q)
    return {"blocks": int(words.shape[0]), "repaired": repaired}


def cmd_code_decode(args):
    code = _load_code(args)
    words, mask = _blocks(args, code)
    msgs = []
    for b in range(words.shape[0]):
        rec = [None if mask[b, i] else int(words[b, i]) for i in range(code.n)]
        msgs.append(lrc.erasure_decode(code, rec))
    flat = np.asarray(msgs, dtype=np.int64).reshape(-1)
    if args.length is not None:
        flat = flat[: args.length]
    _write_symbols(args.output, flat, code.q)
    return {"blocks": int(words.shape[0]), "symbols_out": int(flat.size), "erasures": int(mask.sum())}


def cmd_code_verify(args):
    code = _load_code(args)
    rng = np.random.default_rng(_seed(args))
    rep = lrc.verify_optimal(code)
    rep["minors_ok"] = all(lrc.check_minors(code))
    rep["sampled_min_weight"] = lrc.sampled_min_weight(code, args.samples, rng)
    bad = 0
    for _ in range(args.repair_trials):
        c = lrc.encode(code, rng.integers(0, code.q, code.k))
        for i in range(code.n):
            rc = list(c)
            rc[i] = None
            bad += lrc.repair(code, rc, i) != c[i]
    rep["repair_failures"] = bad
    rep["q"] = code.q
    return rep


def cmd_code_table(args):
    rows = lrc.parameter_table(args.q)
    if args.source:
        rows = [r for r in rows if r["source"] == args.source]
    return {"q": args.q, "rows": rows}


def cmd_selftest(args):
    from . import acceptance

    results = []
    for n, _, _ in acceptance.CRITERIA:
        if args.only and n not in args.only:
            continue
        res = acceptance.run_criterion(n)
        results.append(res)
        if args.pretty:
            print(res.line(), file=sys.stderr)
    report = {"passed": all(r.passed for r in results), "criteria": [r.to_json() for r in results]}
    return report


COMMANDS = {
    "field-info": cmd_field_info,
    "curve-scan": cmd_curve_scan,
    "curve-info": cmd_curve_info,
    "aut-list": cmd_aut_list,
    "aut-subgroups": cmd_aut_subgroups,
    "aut-orbits": cmd_aut_orbits,
    "code-build": cmd_code_build,
    "code-encode": cmd_code_encode,
    "code-repair": cmd_code_repair,
    "code-decode": cmd_code_decode,
    "code-verify": cmd_code_verify,
    "code-table": cmd_code_table,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--max-q", type=int, default=DEFAULT_CLI_MAX_Q, help="cap for the stabilizer scan")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default: $ECLRC_SEED or 0)")

    fld = argparse.ArgumentParser(add_help=False)
    fld.add_argument("--q", type=int, help="field order")

    crv = argparse.ArgumentParser(add_help=False, parents=[fld])
    crv.add_argument("--curve", help="equation such as y2+y=x3, 'a1,a2,a3,a4,a6', or 'maximal' (default)")

    grp = argparse.ArgumentParser(add_help=False)
    grp.add_argument("--group", choices=["order9", "involution"])
    grp.add_argument("--gen", action="append", default=[], help="generator 'x,y:u,r,s,t' (repeatable)")

    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("--spec", required=True, help="code spec JSON written by code-build")

    p = argparse.ArgumentParser(prog="eclrc", description="Elliptic-curve locally repairable codes")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("field-info", parents=[common, fld])
    s = sub.add_parser("curve-scan", parents=[common, fld])
    s.add_argument("--family", choices=["all", "normal"], default="normal")
    s.add_argument("--limit", type=int, default=5, help="maximal curves to list")
    s = sub.add_parser("curve-info", parents=[common, crv])
    s.add_argument("--points", action="store_true")
    s = sub.add_parser("aut-list", parents=[common, crv])
    s.add_argument("--method", choices=["auto", "scan", "family"], default="auto")
    s = sub.add_parser("aut-subgroups", parents=[common, crv])
    s.add_argument("--translations", action="store_true", help="also count compatible (T, A) pairs")
    s = sub.add_parser("aut-orbits", parents=[common, crv, grp])
    s.add_argument("--list", action="store_true")
    s = sub.add_parser("code-build", parents=[common, crv, grp])
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--include-pole-fiber", action="store_true")
    s.add_argument("--pole-fiber", help="points 'x,y;x,y;...' (default: first free orbit)")
    s.add_argument("--out", help="write the code spec JSON here")
    s.add_argument("--matrix", help="write the generator matrix here")
    for name in ("code-encode", "code-repair", "code-decode"):
        s = sub.add_parser(name, parents=[common, spec])
        s.add_argument("--in", dest="input", required=True)
        s.add_argument("--out", dest="output", required=True)
        if name != "code-encode":
            s.add_argument("--erasures", required=True, help="bitmap file, one bit per symbol, LSB first")
        if name == "code-decode":
            s.add_argument("--length", type=int, help="drop padding: keep this many message symbols")
    s = sub.add_parser("code-verify", parents=[common, spec])
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--repair-trials", type=int, default=10)
    s = sub.add_parser("code-table", parents=[common])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--source", choices=["involution", "stabilizer_subgroup", "order9_abelian"])
    s = sub.add_parser("selftest", parents=[common])
    s.add_argument("--only", type=int, action="append", help="run only these criteria")
    return p


def _render(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str)) for x in v):
                lines.append(f"{pad}{k}:")
                lines.append(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_render(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in obj)
    return f"{pad}{obj}"


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        out = COMMANDS[args.command](args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"eclrc: error: {e}", file=sys.stderr)
        return 2
    except (EclrcError, ValueError, ZeroDivisionError, OSError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return 1
    if args.pretty:
        print(_render(out))
    else:
        print(json.dumps(out, sort_keys=True))
    if args.command == "selftest" and not out["passed"]:
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
