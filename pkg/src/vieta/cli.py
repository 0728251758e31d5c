"""Command-line front end.

Every command emits one record.  With ``--json`` the record is a single JSON
line whose integers are decimal strings; otherwise a short human-readable
listing is printed.  Exit status: 0 success (an unsolvable verdict is a
success), 2 invalid input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields, is_dataclass
from enum import Enum
from fractions import Fraction

from . import conic_core, oracle, pell, qfield, rational_param
from .conic_core import Conic
from .errors import InputError, InvariantViolation
from .qfield import QuadElt, RdFamily

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


def jsonable(obj):
    """Convert results to JSON-ready values with integers as decimal strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if obj is rational_param.INFINITY:
        return "inf"
    if isinstance(obj, QuadElt):
        return {"u": str(obj.u), "v": str(obj.v), "m": str(obj.m), "d": str(obj.d)}
    if isinstance(obj, tuple) and hasattr(obj, "_fields"):
        return [jsonable(v) for v in obj]
    if is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def make_record(command: str, params: dict, result, errata=()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": jsonable(params),
        "result": jsonable(result),
        "errata": list(errata),
    }


def serialize(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def _human(record: dict) -> str:
    lines = [f"{record['command']}  " + " ".join(f"{k}={v}" for k, v in record["params"].items())]

    def emit(key, value, indent):
        pad = "  " * indent
        if isinstance(value, dict) and set(value) != {"u", "v", "m", "d"}:
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], (list, dict)):
            lines.append(f"{pad}{key}: ({len(value)})")
            for v in value:
                if isinstance(v, dict):
                    lines.append(pad + "  - " + ", ".join(f"{k}={_flat(x)}" for k, x in v.items()))
                else:
                    lines.append(pad + "  - " + _flat(v))
        else:
            lines.append(f"{pad}{key}: {_flat(value)}")

    result = record["result"]
    if isinstance(result, dict):
        for k, v in result.items():
            emit(k, v, 1)
    else:
        emit("result", result, 1)
    for e in record["errata"]:
        lines.append(f"  erratum: {e}")
    return "\n".join(lines)


def _flat(value) -> str:
    if isinstance(value, list):
        return "(" + ", ".join(_flat(v) for v in value) + ")"
    if isinstance(value, dict):
        if set(value) == {"u", "v", "m", "d"}:
            v = value["v"]
            op, v = ("-", v[1:]) if v.startswith("-") else ("+", v)
            body = f"{value['u']} {op} {v}*sqrt({value['m']})"
            return f"({body})/2" if value["d"] == "2" else body
        return "{" + ", ".join(f"{k}={_flat(v)}" for k, v in value.items()) + "}"
    return str(value)


# -- commands ---------------------------------------------------------------

def _certificate(cert: conic_core.DescentCertificate) -> dict:
    return {
        "conic": {"p": cert.conic.p, "q": cert.conic.q},
        "start": cert.start,
        "steps": [{"step": tag, "point": pt} for tag, pt in cert.steps],
        "terminal": cert.terminal,
        "axis_root": cert.axis_root,
    }


def cmd_classify(a):
    v = conic_core.classify(a.p, a.q)
    return {"p": a.p, "q": a.q}, {
        "verdict": v.tag, "theorem_id": v.theorem_id, "witnesses": list(v.witnesses),
        "notes": v.notes,
    }, ()


def cmd_descend(a):
    cert = conic_core.descend(Conic(a.p, a.q), (a.x, a.y))
    cert.replay()
    return {"p": a.p, "q": a.q, "x": a.x, "y": a.y}, _certificate(cert), ()


def cmd_chain(a):
    pts = conic_core.chain(Conic(a.p, a.q), (a.x, a.y), a.back, a.fwd)
    return ({"p": a.p, "q": a.q, "x": a.x, "y": a.y, "back": a.back, "fwd": a.fwd},
            {"points": pts}, ())


def cmd_imo(a):
    params = {"a": a.a, "b": a.b}
    k = conic_core.imo_quotient(a.a, a.b)
    if k is None:
        return params, {"k": None, "certificate": None, "root": None}, ()
    cert, root = conic_core.imo_certify(a.a, a.b)
    return params, {"k": k, "certificate": _certificate(cert), "root": root}, ()


def cmd_param(a):
    t = rational_param.parse_slope(a.t)
    if a.pell:
        if t is rational_param.INFINITY:
            raise InputError("the Pell parametrization takes a finite t")
        return {"t": t, "pell": True}, {"point": rational_param.pell_point_from_t(t)}, ()
    if a.m is None:
        raise InputError("param needs -m unless --pell is given")
    pt = rational_param.point_from_t(a.m, t)
    return {"m": a.m, "t": t}, {"point": pt}, ()


def cmd_pell_act(a):
    pt = pell.act(a.k, (a.x, a.y), a.j)
    return {"k": a.k, "x": a.x, "y": a.y, "j": a.j}, {"point": pt}, ()


def cmd_reduce(a):
    xi = QuadElt(a.u, a.v, a.m, a.d)
    params = {"m": a.m, "u": a.u, "v": a.v, "d": a.d}
    if a.plus2:
        f = qfield.rd_family_of(a.m)
        if f is None or f.kind is not qfield.RdKind.NSQ_PLUS_2:
            raise InputError(f"{a.m} is not of the form n^2 + 2")
        r = qfield.reduce_plus2(xi, f.n)
        return params, {"exponent": r.exponent, "used_delta": r.used_delta,
                        "reduced": r.reduced, "norm": r.reduced.norm(),
                        "b_bound_holds": r.b_bound_holds()}, ()
    unit = qfield.find_unit(a.m, integral=False)
    r = qfield.reduce_by_unit(xi, unit)
    return params, {"unit": unit, "exponent": r.exponent, "reduced": r.reduced,
                    "nu": r.nu, "bound_squared": r.bound_squared,
                    "within_bounds": r.within_bounds(strict=False),
                    "strict": r.within_bounds(strict=True)}, ()


def cmd_norm_classify(a):
    f = RdFamily(a.family, a.n)
    v = qfield.small_norm_classify(f, a.nu)
    return {"family": a.family, "n": a.n, "nu": a.nu}, {
        "verdict": v.kind, "radicand": f.radicand, "threshold": v.threshold,
        "exceptional": v.exceptional, "square_classes": list(v.square_classes),
        "admits": v.admits(),
    }, ()


def cmd_davenport(a):
    d = qfield.davenport_min_norms(a.t)
    return {"t": a.t}, d, ()


def cmd_table1(a):
    rows = pell.regen_table1()
    out = [{"exponent": r.exponent, "sign": r.sign, "element": r.element, "point": r.point,
            "on_conic": r.on_conic, "printed": r.printed, "erratum": r.erratum}
           for r in rows]
    return {}, {"rows": out}, pell.table1_errata(rows)


def _report(report: oracle.ScanReport) -> dict:
    return {"hits": list(report.hits), "count": len(report.hits), "note": report.note,
            "counterexamples": list(report.counterexamples)}


def cmd_scan(a):
    w = a.threads
    if a.kind == "box":
        if a.p is None or a.q is None:
            raise InputError("scan box needs -p and -q")
        rep = oracle.box_search(Conic(a.p, a.q), a.bound, workers=w)
        return {"kind": "box", "p": a.p, "q": a.q, "bound": a.bound}, _report(rep), ()
    if a.kind == "imo":
        rep = oracle.imo_scan(a.bound, workers=w)
        return {"kind": "imo", "bound": a.bound}, _report(rep), ()
    if a.kind == "norm":
        if a.m is None:
            raise InputError("scan norm needs -m")
        rep = oracle.norm_scan(a.m, a.bound, half=a.half, workers=w)
        return {"kind": "norm", "m": a.m, "bound": a.bound, "half": a.half}, _report(rep), ()
    rep = oracle.verify_final_prop(a.bound, workers=w)
    return {"kind": "final-prop", "bound": a.bound}, _report(rep), ()


# -- parser -----------------------------------------------------------------

def _global_flags(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="emit JSON lines")
    parser.add_argument("--threads", type=int, default=default,
                        help="worker processes for scans (default: all CPUs)")
    parser.add_argument("--out", default=default, help="also write output to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vieta", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        _global_flags(sp, suppress=True)
        sp.set_defaults(func=func)
        return sp

    sp = add("classify", cmd_classify, "theorem-backed solvability of x^2 - pxy + y^2 = q")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-q", type=int, required=True)

    for name, func, help_text in (("descend", cmd_descend, "descent certificate"),
                                  ("chain", cmd_chain, "alternating jump chain")):
        sp = add(name, func, help_text)
        sp.add_argument("-p", type=int, required=True)
        sp.add_argument("-q", type=int, required=True)
        sp.add_argument("-x", type=int, required=True)
        sp.add_argument("-y", type=int, required=True)
        if name == "chain":
            sp.add_argument("--back", type=int, default=0)
            sp.add_argument("--fwd", type=int, default=3)

    sp = add("imo", cmd_imo, "quotient (a^2+b^2)/(ab+1) with square certificate")
    sp.add_argument("-a", type=int, required=True)
    sp.add_argument("-b", type=int, required=True)

    sp = add("param", cmd_param, "rational point from slope t")
    sp.add_argument("-m", type=int)
    sp.add_argument("-t", required=True, help="rational such as 3/4, or inf")
    sp.add_argument("--pell", action="store_true", help="use x^2 - 2xy - y^2 = 1")

    sp = add("pell-act", cmd_pell_act, "apply the unit action j times on C_k")
    for flag in ("-k", "-x", "-y", "-j"):
        sp.add_argument(flag, type=int, required=True)

    sp = add("reduce", cmd_reduce, "reduce (u + v sqrt m)/d by a unit")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-u", type=int, required=True)
    sp.add_argument("-v", type=int, required=True)
    sp.add_argument("--d", type=int, default=1, choices=(1, 2))
    sp.add_argument("--plus2", action="store_true", help="two-window reduction for m = n^2 + 2")

    sp = add("norm-classify", cmd_norm_classify, "small-norm shape for a family")
    sp.add_argument("--family", required=True, choices=[k.value for k in qfield.RdKind])
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--nu", type=int, required=True)

    sp = add("davenport", cmd_davenport, "norm bounds 2t+2 and 2t-2 for m = t^2 - 1")
    sp.add_argument("-t", type=int, required=True)

    add("table1", cmd_table1, "regenerate the integral points of C_4")

    sp = add("scan", cmd_scan, "brute-force scans")
    sp.add_argument("kind", choices=("box", "imo", "norm", "final-prop"))
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("-p", type=int)
    sp.add_argument("-q", type=int)
    sp.add_argument("-m", type=int)
    sp.add_argument("--half", action="store_true", help="norm scan over (x + y sqrt m)/2")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        params, result, errata = args.func(args)
    except InputError as exc:
        print(f"vieta: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"vieta: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    record = make_record(args.command, params, result, errata)
    text = serialize(record) if args.json else _human(record)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
