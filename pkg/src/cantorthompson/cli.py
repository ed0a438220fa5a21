"""Command-line front end.

Every verb is a thin wrapper over one library operation; no math lives here.
Exit codes: 0 success, 1 malformed input, 2 horizon failure (a computation
that cannot be certified at the requested depth/horizon — rerun larger).
Output is a human/CSV table by default, machine JSON with --json; both are
byte-stable for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import cantor, geometry
from .dyadic import Dyadic
from .errors import HorizonError, InputError
from .theta import CombinatorialMappingClass, kernel_test, realize, theta
from .treepair import TreePair, parse_word, word_eval


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _frac(x) -> str:
    return str(Fraction(x))


def _element_payload(pair: TreePair) -> dict:
    pl = pair.to_pl_map()
    return {
        "domain": pair.domain.to_string(),
        "range": pair.range.to_string(),
        "perm": [j + 1 for j in pair.perm],
        "class": pair.classify(),
        "pieces": [
            {"lo": _frac(lo.as_fraction()), "hi": _frac(hi.as_fraction()),
             "slope_log2": m, "offset": _frac(o.as_fraction())}
            for lo, hi, m, o in pl.pieces
        ],
    }


def _print_element(pair: TreePair, out) -> None:
    payload = _element_payload(pair)
    print(f"element: domain={payload['domain']} range={payload['range']} "
          f"perm={payload['perm']}", file=out)
    print(f"class: {payload['class']}", file=out)
    for p in payload["pieces"]:
        print(f"piece: [{p['lo']}, {p['hi']}) -> 2^{p['slope_log2']} x + {p['offset']}", file=out)


def _cmd_word(args, out) -> int:
    pair = word_eval(parse_word(args.word))
    if args.json:
        print(json.dumps(_element_payload(pair), sort_keys=True), file=out)
    else:
        _print_element(pair, out)
    return 0


def _cmd_eval(args, out) -> int:
    pair = word_eval(parse_word(args.word))
    value = pair.eval(Dyadic.parse(args.point))
    if args.json:
        print(json.dumps({"x": args.point, "fx": _frac(value.as_fraction())}), file=out)
    else:
        print(_frac(value.as_fraction()), file=out)
    return 0


def _cmd_cantor(args, out) -> int:
    w = cantor.CantorParams.parse(args.omega)
    intervals, gaps, circles = [], [], []
    for k in range(0, args.depth + 1):
        for j in range(1, 2**k + 1):
            iv = cantor.interval(w, k, j)
            intervals.append({"depth": k, "index": j, "lo": _frac(iv.lo), "hi": _frac(iv.hi)})
            if k >= 1:
                c, r = cantor.circle(w, k, j)
                circles.append({"depth": k, "index": j, "center": _frac(c), "radius": _frac(r)})
        if k >= 1:
            for j in range(1, 2 ** (k - 1) + 1):
                lo, hi = cantor.gap(w, k, j)
                gaps.append({"depth": k, "parent": j, "lo": _frac(lo), "hi": _frac(hi)})
    if args.json:
        print(json.dumps({"omega": str(w), "intervals": intervals, "gaps": gaps,
                          "circles": circles}, sort_keys=True), file=out)
        return 0
    print("kind,depth,index,a,b", file=out)
    for r in intervals:
        print(f"interval,{r['depth']},{r['index']},{r['lo']},{r['hi']}", file=out)
    for r in gaps:
        print(f"gap,{r['depth']},{r['parent']},{r['lo']},{r['hi']}", file=out)
    for r in circles:
        print(f"circle,{r['depth']},{r['index']},{r['center']},{r['radius']}", file=out)
    return 0


def _cmd_brd_check(args, out) -> int:
    w = cantor.CantorParams.parse(args.omega)
    res = cantor.brd_check(w, args.horizon, Fraction(args.M))
    if args.json:
        print(json.dumps({"status": res.status, "horizon": res.horizon,
                          "M": _frac(res.M), "witness": res.witness}, sort_keys=True), file=out)
    else:
        tail = "" if res.witness is None else f" witness_n={res.witness}"
        print(f"status={res.status} horizon={res.horizon} M={_frac(res.M)}{tail}", file=out)
    return 0


def _parse_class(text: str) -> CombinatorialMappingClass:
    try:
        return CombinatorialMappingClass.from_json(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad mapping-class JSON: {exc}") from exc


def _cmd_theta(args, out) -> int:
    pair = theta(_parse_class(args.mapping_class))
    if args.json:
        print(json.dumps(_element_payload(pair), sort_keys=True), file=out)
    else:
        _print_element(pair, out)
    return 0


def _cmd_realize(args, out) -> int:
    pair = word_eval(parse_word(args.word))
    mc = realize(pair)
    payload = mc.to_json()
    payload["tag"] = mc.tag
    print(json.dumps(payload, sort_keys=True), file=out)
    return 0


def _cmd_kernel_test(args, out) -> int:
    result = kernel_test(_parse_class(args.mapping_class))
    if args.json:
        print(json.dumps({"kernel": result}), file=out)
    else:
        print("true" if result else "false", file=out)
    return 0


def _parse_int_list(text: str) -> list:
    return [int(t) for t in text.split(",") if t]


def _cmd_length_table(args, out) -> int:
    w = cantor.CantorParams.parse(args.omega)
    rows = []
    for d in _parse_int_list(args.depths):
        bound = geometry.length_upper_bound(w, d)
        q_d = float(w.q(d))
        two_c = 2.0 * math.pi**2 / math.log1p(2.0 * q_d / (1.0 - q_d)) if q_d < 1 else 0.0
        rows.append({"d": d, "length_bound": bound, "two_c_qd": two_c})
    if args.json:
        print(json.dumps({"omega": str(w), "c_delta": geometry.c_delta(w),
                          "rows": [{k: (v if isinstance(v, int) else _fmt(v))
                                    for k, v in r.items()} for r in rows]},
                         sort_keys=True), file=out)
        return 0
    print("d,length_bound,two_c_qd", file=out)
    for r in rows:
        print(f"{r['d']},{_fmt(r['length_bound'])},{_fmt(r['two_c_qd'])}", file=out)
    return 0


def _cmd_nk_count(args, out) -> int:
    w = cantor.CantorParams.parse(args.omega)
    d_K = geometry.d_of_K(w, args.K, args.horizon)
    count = geometry.count_NK(w, args.K, args.horizon)
    proxy = geometry.length_upper_bound(w, d_K)
    if args.json:
        print(json.dumps({"K": args.K, "d_K": d_K, "proxy_at_d_K": _fmt(proxy),
                          "N_K": count, "horizon": args.horizon}, sort_keys=True), file=out)
    else:
        print("K,d_K,proxy_at_d_K,N_K", file=out)
        print(f"{_fmt(args.K)},{d_K},{_fmt(proxy)},{count}", file=out)
    return 0


def _cmd_twist_table(args, out) -> int:
    w = cantor.CantorParams.parse(args.omega)
    rows = geometry.twist_table(w, _parse_int_list(args.n), args.grid)
    if args.json:
        print(json.dumps({"grid": args.grid, "rows": [
            {"n": n, "K_psi0": _fmt(k0), "K_psi1": _fmt(k1),
             "mod_U0": _fmt(m0), "mod_U1": _fmt(m1)} for n, k0, k1, m0, m1 in rows
        ]}, sort_keys=True), file=out)
        return 0
    print("n,K_psi0,K_psi1,mod_U0,mod_U1", file=out)
    for n, k0, k1, m0, m1 in rows:
        print(f"{n},{k0:.4f},{k1:.4f},{m0:.4f},{m1:.4f}", file=out)
    return 0


def _cmd_omega_ratio(args, out) -> int:
    k, kp = args.k, args.kprime
    if not 1 <= k < kp:
        raise InputError("need 1 <= k < kprime")
    rows = []
    for n in _parse_int_list(args.n):
        ratio = cantor.iterated_log(kp + 1, float(n)) / cantor.iterated_log(k + 1, float(n))
        q_k = cantor.CantorParams.omega_k(k).q(n)
        q_kp = cantor.CantorParams.omega_k(kp).q(n)
        raw = math.log(1.0 - q_kp) / math.log(1.0 - q_k)
        rows.append({"n": n, "ratio_iterlog": ratio, "ratio_raw": raw})
    if args.json:
        print(json.dumps({"k": k, "kprime": kp, "rows": [
            {"n": r["n"], "ratio_iterlog": _fmt(r["ratio_iterlog"]),
             "ratio_raw": _fmt(r["ratio_raw"])} for r in rows
        ]}, sort_keys=True), file=out)
        return 0
    print("n,ratio_iterlog,ratio_raw", file=out)
    for r in rows:
        print(f"{r['n']},{_fmt(r['ratio_iterlog'])},{_fmt(r['ratio_raw'])}", file=out)
    return 0


# published schemas for the --json output of every verb (validated in tests)
_PIECES_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["lo", "hi", "slope_log2", "offset"],
        "properties": {
            "lo": {"type": "string"},
            "hi": {"type": "string"},
            "slope_log2": {"type": "integer"},
            "offset": {"type": "string"},
        },
    },
}
_ELEMENT_SCHEMA = {
    "type": "object",
    "required": ["domain", "range", "perm", "class", "pieces"],
    "properties": {
        "domain": {"type": "string", "pattern": "^[cl]+$"},
        "range": {"type": "string", "pattern": "^[cl]+$"},
        "perm": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "class": {"enum": ["F", "T", "V"]},
        "pieces": _PIECES_SCHEMA,
    },
}
SCHEMAS = {
    "word": _ELEMENT_SCHEMA,
    "theta": _ELEMENT_SCHEMA,
    "eval": {"type": "object", "required": ["x", "fx"],
             "properties": {"x": {"type": "string"}, "fx": {"type": "string"}}},
    "cantor": {
        "type": "object",
        "required": ["omega", "intervals", "gaps", "circles"],
        "properties": {
            "omega": {"type": "string"},
            "intervals": {"type": "array", "items": {
                "type": "object", "required": ["depth", "index", "lo", "hi"]}},
            "gaps": {"type": "array", "items": {
                "type": "object", "required": ["depth", "parent", "lo", "hi"]}},
            "circles": {"type": "array", "items": {
                "type": "object", "required": ["depth", "index", "center", "radius"]}},
        },
    },
    "brd-check": {
        "type": "object",
        "required": ["status", "horizon", "M", "witness"],
        "properties": {
            "status": {"enum": ["holds_up_to_horizon", "fails", "not_tending_to_1"]},
            "horizon": {"type": "integer"},
            "M": {"type": "string"},
            "witness": {"type": ["integer", "null"]},
        },
    },
    "realize": {
        "type": "object",
        "required": ["depth", "domain_leaves", "range_leaves", "perm", "tag"],
        "properties": {
            "depth": {"type": "integer", "minimum": 1},
            "domain_leaves": {"type": "array", "items": {"type": "string", "pattern": "^g:"}},
            "range_leaves": {"type": "array", "items": {"type": "string", "pattern": "^g:"}},
            "perm": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            "tag": {"enum": ["OP", "PO", "POP"]},
        },
    },
    "kernel-test": {"type": "object", "required": ["kernel"],
                    "properties": {"kernel": {"type": "boolean"}}},
    "length-table": {
        "type": "object",
        "required": ["omega", "c_delta", "rows"],
        "properties": {"rows": {"type": "array", "items": {
            "type": "object", "required": ["d", "length_bound", "two_c_qd"]}}},
    },
    "nk-count": {
        "type": "object",
        "required": ["K", "d_K", "proxy_at_d_K", "N_K", "horizon"],
        "properties": {"N_K": {"type": "integer", "minimum": 0}},
    },
    "twist-table": {
        "type": "object",
        "required": ["grid", "rows"],
        "properties": {"rows": {"type": "array", "items": {
            "type": "object", "required": ["n", "K_psi0", "K_psi1", "mod_U0", "mod_U1"]}}},
    },
    "omega-ratio": {
        "type": "object",
        "required": ["k", "kprime", "rows"],
        "properties": {"rows": {"type": "array", "items": {
            "type": "object", "required": ["n", "ratio_iterlog", "ratio_raw"]}}},
    },
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cantorthompson",
        description="Thompson's groups on Cantor set complements: exact diagrams and geometry tables.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("word", _cmd_word, help="reduce a word in f0..f3, print diagram/class/pieces")
    p.add_argument("word")

    p = add("eval", _cmd_eval, help="evaluate a word at a dyadic point of [0,1)")
    p.add_argument("word")
    p.add_argument("point")

    p = add("cantor", _cmd_cantor, help="emit intervals, gaps and circles to a depth")
    p.add_argument("--omega", required=True)
    p.add_argument("--depth", type=int, default=3)

    p = add("brd-check", _cmd_brd_check, help="bounded-rate-divergence check on a horizon")
    p.add_argument("--omega", required=True)
    p.add_argument("--horizon", type=int, default=10000)
    p.add_argument("--M", default="1")

    p = add("theta", _cmd_theta, help="Thompson element of a mapping-class JSON")
    p.add_argument("mapping_class")

    p = add("realize", _cmd_realize, help="combinatorial mapping class of a word")
    p.add_argument("word")

    p = add("kernel-test", _cmd_kernel_test, help="is the mapping class combinatorially trivial?")
    p.add_argument("mapping_class")

    p = add("length-table", _cmd_length_table, help="depth -> proxy length bound table")
    p.add_argument("--omega", required=True)
    p.add_argument("--depths", default="10,100,1000,10000")

    p = add("nk-count", _cmd_nk_count, help="d(K) and the band count N(K) under the proxy")
    p.add_argument("--omega", required=True)
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--horizon", type=int, default=40)

    p = add("twist-table", _cmd_twist_table, help="dilatation estimates of the twist maps")
    p.add_argument("--omega", required=True)
    p.add_argument("--n", default="5,10,20,40")
    p.add_argument("--grid", type=int, default=128)

    p = add("omega-ratio", _cmd_omega_ratio, help="iterated-log ratio table for omega_k families")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--kprime", type=int, default=2)
    p.add_argument("--n", default="100,1000,10000")

    return parser


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.fn(args, out)
    except HorizonError as exc:
        print(f"horizon-failure: {exc}", file=out)
        return 2
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
