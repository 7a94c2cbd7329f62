"""Command-line interface: ``pfz <command> [flags]``.

Every command builds one report dict ``{"command", "params", "result",
"diagnostics"}``; ``--format json`` prints it as JSON and ``--format text``
prints the same values as indented ``key: value`` lines. Exit status is 0 on
success, 1 when a check or oracle comparison fails and 2 on usage, input or
budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import jetalg, oracle, strata, zeta
from .exact import PolyFrac
from .oracle import BudgetExceeded


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return "TOP" if x == strata.TOP else x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, PolyFrac):
        return x.format()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return str(x)


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(e, (dict, list)) for e in (v.values() if isinstance(v, dict) else v)):
                out.append(f"{pad}{k}:")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                out.append(f"{pad}- " + ", ".join(f"{k}={_inline(w)}" for k, w in v.items()))
            else:
                out.append(f"{pad}- {_inline(v)}")
    else:
        out.append(f"{pad}{_inline(obj)}")
    return out


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(e) for e in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(w)}" for k, w in v.items()) + "}"
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


def _n(args) -> int:
    if args.m < 2:
        raise UsageError("--m must be at least 2")
    return args.m // 2


def _lams(lams, l=None) -> list[str]:
    return [strata.format_lambda(x, l) for x in lams]


# ---------------------------------------------------------------------------
# command handlers: each returns (params, result, diagnostics, ok)


def cmd_strata(args):
    _need(args, "m", "m0", "p")
    n = _n(args)
    if args.l is None:
        _need(args, "cap")
        items = strata.enum_strata(n, args.m0, args.p, cap=args.cap)
        shown = _lams(items)
    else:
        items = strata.enum_strata(n, args.m0, args.p, l=args.l)
        shown = _lams(items, args.l)
    params = {"m": args.m, "m0": args.m0, "p": args.p, "l": args.l, "cap": args.cap}
    return params, {"count": len(items), "strata": shown}, {}, True


def cmd_components(args):
    _need(args, "m", "m0", "p")
    n = _n(args)
    comps = strata.components(n, args.m0, args.p)
    lit = strata.closed_family(n, args.m0, args.p)
    literal = sorted({r["lambda"] for r in lit if r["valid"]})
    diag = {
        "closed_family": _lams(literal),
        "closed_family_agrees": set(literal) == set(comps),
    }
    return {"m": args.m, "m0": args.m0, "p": args.p}, {"components": _lams(comps)}, diag, True


def cmd_hasse(args):
    _need(args, "m", "m0", "p", "cap")
    edges = strata.hasse(_n(args), args.m0, args.p, args.cap)
    res = {"edges": [{"lower": strata.format_lambda(a), "upper": strata.format_lambda(b)} for a, b in edges]}
    return {"m": args.m, "m0": args.m0, "p": args.p, "cap": args.cap}, res, {}, True


def cmd_zeta_vp(args):
    _need(args, "m", "m0")
    P = 4 if args.order is None else args.order
    if P < 0:
        raise UsageError("--order must be non-negative")
    series = zeta.zvp_closed_form(args.m, args.m0).expand(P)
    coeffs = [{"p": p, "coefficient": series[p].format("L")} for p in range(P + 1)]
    return {"m": args.m, "m0": args.m0, "order": P}, {"coefficients": coeffs}, {}, True


def cmd_zeta_top(args):
    _need(args, "m", "m0")
    z = zeta.ztop(args.m, args.m0)
    consts = zeta.ztop_constants(args.m)
    res = {"ztop": z.format("s"), "poles": sorted(z.poles())}
    diag = {
        "constant_computed": consts["computed"],
        "constant m!/((m-2n)! 2^n)": consts["closed_form"],
        "constant m!/2^(2n)": consts["over_4_pow_n"],
        "m!/2^(2n) matches": consts["over_4_pow_n"] == consts["computed"],
    }
    return {"m": args.m, "m0": args.m0}, res, diag, True


def cmd_poles(args):
    _need(args, "m", "m0")
    computed = zeta.ztop(args.m, args.m0).poles()
    expected = zeta.resolution_poles(args.m, args.m0)
    res = {"poles": sorted(computed)}
    diag = {"resolution_poles": sorted(expected), "agree": computed == expected}
    return {"m": args.m, "m0": args.m0}, res, diag, computed == expected


def cmd_eigenvalues(args):
    _need(args, "m", "m0")
    eigs = zeta.eigenvalues(args.m, args.m0)
    return {"m": args.m, "m0": args.m0}, {"eigenvalues": sorted(eigs)}, {"encoding": "j/d means exp(2 pi i j/d)"}, True


def cmd_check_mc(args):
    _need(args, "m", "m0")
    r = zeta.check_mc(args.m, args.m0)
    params = {"m": r.pop("m"), "m0": r.pop("m0")}
    return params, r, {}, bool(r["verdict"])


def cmd_check_hc(args):
    _need(args, "m", "m0", "d0")
    r = zeta.check_hc(args.m, args.m0, args.d0)
    params = {"m": r.pop("m"), "m0": r.pop("m0"), "d0": r.pop("d0")}
    return params, r, {}, True


def _oracle_kw(args):
    return {"budget": args.budget, "allow_char2": args.allow_char2}


def cmd_oracle_census(args):
    _need(args, "m", "l", "q")
    rep = oracle.census(args.m, args.l, args.q, threads=args.threads, **_oracle_kw(args))
    d = rep.to_dict()
    params = d.pop("params")
    diag = {"elapsed": d.pop("elapsed")}
    return params, d, diag, rep.ok


def cmd_oracle_contact(args):
    _need(args, "m", "m0", "p", "l", "q")
    direct, predicted = oracle.contact_count(
        args.m, args.m0, args.p, args.l, args.q, threads=args.threads, **_oracle_kw(args)
    )
    params = {"m": args.m, "m0": args.m0, "p": args.p, "l": args.l, "q": args.q}
    return params, {"direct": direct, "predicted": predicted, "agree": direct == predicted}, {}, direct == predicted


def cmd_oracle_stabilizer(args):
    _need(args, "m", "lam", "l", "q")
    lam = strata.parse_lambda(args.lam, args.l)
    got = oracle.stabilizer_census(args.m, lam, args.l, args.q, **_oracle_kw(args))
    exp = oracle.stabilizer_expected(args.m, lam, args.l, args.q)
    params = {"m": args.m, "lambda": strata.format_lambda(lam, args.l), "l": args.l, "q": args.q}
    return params, {"count": got, "expected": exp, "agree": got == exp}, {}, got == exp


def cmd_pfaffian(args):
    _need(args, "input")
    try:
        with open(args.input) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from exc
    A = jetalg.parse_matrix(text)
    res = {}
    if A.m % 2 == 0:
        res["pfaffian"] = jetalg.pfaffian(A).format()
    res["lambda"] = strata.format_lambda(jetalg.smith_lambda(A), A.l)
    res["pfaffian_orders"] = [
        {"k": k, "order": str(jetalg.ord_pfaffian_ideal(A, k))} for k in range(1, A.m // 2 + 1)
    ]
    params = {"input": args.input, "m": A.m, "l": A.l, "field": str(A.field)}
    return params, res, {}, True


COMMANDS = {
    ("strata",): cmd_strata,
    ("components",): cmd_components,
    ("hasse",): cmd_hasse,
    ("zeta", "vp"): cmd_zeta_vp,
    ("zeta", "top"): cmd_zeta_top,
    ("poles",): cmd_poles,
    ("eigenvalues",): cmd_eigenvalues,
    ("check", "mc"): cmd_check_mc,
    ("check", "hc"): cmd_check_hc,
    ("oracle", "census"): cmd_oracle_census,
    ("oracle", "contact"): cmd_oracle_contact,
    ("oracle", "stabilizer"): cmd_oracle_stabilizer,
    ("pfaffian",): cmd_pfaffian,
}


def _add_flags(p: argparse.ArgumentParser):
    p.add_argument("--m", type=int)
    p.add_argument("--m0", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--d0", type=int)
    p.add_argument("--order", type=int, help="series truncation order for zeta vp")
    p.add_argument("--cap", type=int, help="entry cap for arc-level enumeration")
    p.add_argument("--lam", help="lambda tuple, e.g. '(1,TOP)'")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--input", help="matrix file ('m l field' header, then 'i j poly' lines)")
    p.add_argument("--allow-char2", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfz", description="Jet and arc invariants of Pfaffian ideals.")
    sub = parser.add_subparsers(dest="cmd", required=True)
    groups: dict[str, argparse._SubParsersAction] = {}
    for key in COMMANDS:
        if len(key) == 1:
            _add_flags(sub.add_parser(key[0]))
        else:
            if key[0] not in groups:
                gp = sub.add_parser(key[0])
                groups[key[0]] = gp.add_subparsers(dest="sub", required=True)
            _add_flags(groups[key[0]].add_parser(key[1]))
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.threads is None:
        args.threads = oracle.default_threads()
    key = (args.cmd, args.sub) if getattr(args, "sub", None) else (args.cmd,)
    try:
        params, result, diag, ok = COMMANDS[key](args)
    except (UsageError, ValueError) as exc:
        print(f"pfz {' '.join(key)}: error: {exc}", file=err)
        return 2
    except BudgetExceeded as exc:
        print(f"pfz {' '.join(key)}: budget exceeded: {exc} (pass --budget {exc.required})", file=err)
        return 2
    report = _jsonable({"command": " ".join(key), "params": params, "result": result, "diagnostics": diag})
    if args.format == "json":
        print(json.dumps(report, indent=2), file=out)
    else:
        print("\n".join(_text(report)), file=out)
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
