"""Command-line front end.

Every subcommand reads JSON documents (inline, ``@path`` or ``-`` for stdin),
writes one JSON document to stdout and exits with

    0  Proved / valid        1  Refuted / invalid
    2  window evidence only  3  usage error or malformed input
    4  budget or horizon exhausted
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import __version__
from . import asymorder as ao
from . import dvralg as dv
from . import ideals as idl
from . import latspec as ls
from . import seqcore as sc
from . import witness as wt
from .errors import (BudgetExhausted, DvrSpecError, HorizonExceeded, LatticeError, MalformedInput, NotAMorphism)

EXIT_OK, EXIT_NO, EXIT_WINDOW, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3, 4
_STATUS_EXIT = {ao.PROVED: EXIT_OK, ao.REFUTED: EXIT_NO, ao.WINDOW: EXIT_WINDOW}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- input helpers


def _load(text: str, what: str, stdin=None):
    if text == "-":
        text = (stdin or sys.stdin).read()
    elif text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"{what}: cannot read {text[1:]}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJSON(what, exc) from None


def _load_path(path: str, what: str, stdin=None):
    return _load(path if path in ("-",) or path.startswith("@") or path.lstrip().startswith(("{", "[")) else "@" + path,
                 what, stdin)


class MalformedJSON(Exception):
    def __init__(self, what, exc: json.JSONDecodeError):
        super().__init__(f"{what}: {exc.msg} at line {exc.lineno} column {exc.colno}")
        self.what, self.line, self.column, self.pos = what, exc.lineno, exc.colno, exc.pos


def _seq(args, name):
    return sc.from_dict(_load(getattr(args, name), f"--{name}", args.stdin))


def _complex(args, name):
    return dv.complex_from_dict(_load(getattr(args, name), f"--{name}", args.stdin))


def _range(args) -> range:
    if args.n is not None:
        return range(args.n, args.n + 1)
    try:
        lo, hi = (int(x) for x in args.range.split(":"))
    except ValueError:
        raise UsageError("--range expects LO:HI") from None
    if lo < 0 or hi < lo:
        raise UsageError("--range expects 0 <= LO <= HI")
    return range(lo, hi)


def _budget(args) -> ao.SearchBudget:
    b = ao.DEFAULT_BUDGET
    kw = {}
    for name in ("amax", "kmax", "horizon"):
        v = getattr(args, name, None)
        if v is not None:
            if v < 0:
                raise UsageError(f"--{name} must be non-negative")
            kw[name] = v
    return replace(b, **kw)


def _grid(args):
    if getattr(args, "grid", None) is None:
        return None
    try:
        a, k = (int(x) for x in args.grid.split(","))
    except ValueError:
        raise UsageError("--grid expects A_max,k_max (A_max as a power-of-two exponent)") from None
    if a < 0 or k < 0:
        raise UsageError("--grid values must be non-negative")
    return a, k


def _verdict_out(args, v: ao.Verdict):
    g = _grid(args)
    if g is not None:
        v = v.with_grid(*g)
    return v.to_dict(), _STATUS_EXIT[v.status]


# ---------------------------------------------------------------- subcommands


def cmd_seq_eval(args):
    f = _seq(args, "f")
    return {"values": [f(n) for n in _range(args)], "start": _range(args).start}, EXIT_OK


def cmd_seq_convolve(args):
    f, g = _seq(args, "f"), _seq(args, "g")
    r = _range(args)
    return {"values": [sc.convolve_at(f, g, n, args.method) for n in r], "start": r.start}, EXIT_OK


def cmd_seq_compare(args):
    v = ao.compare(_seq(args, "lhs"), _seq(args, "rhs"), ao.Relation.parse(args.rel), _budget(args))
    return _verdict_out(args, v)


def cmd_seq_stable(args):
    return _verdict_out(args, ao.is_stable(_seq(args, "f"), ao.Relation.parse(args.mode), _budget(args)))


def _modules(x, r, fn):
    return {"start": r.start, "homology": [fn(x, n).to_dict() for n in r]}


def cmd_complex_homology(args):
    return _modules(_complex(args, "x"), _range(args), dv.homology_at), EXIT_OK


def cmd_complex_tensor(args):
    x, y = _complex(args, "x"), _complex(args, "y")
    r = _range(args)
    return {"start": r.start, "homology": [dv.homology_tensor(x, y, n).to_dict() for n in r]}, EXIT_OK


def cmd_complex_loewy(args):
    x = _complex(args, "x")
    f = dv.loewy_seq_raw(x) if args.raw else dv.loewy_seq(x)
    r = _range(args)
    return {"start": r.start, "inf": dv.inf_degree(x), "values": [f(n) for n in r]}, EXIT_OK


def cmd_ideal_member(args):
    b = _budget(args)
    if args.complex is not None:
        v = idl.ideal_membership_mu_stable(_complex(args, "complex"), _seq(args, "g"), b)
    elif args.kind == "thick":
        v = idl.thick_membership_principal(_seq(args, "f"), _seq(args, "g"), b)
    else:
        v = idl.radical_membership_principal(_seq(args, "f"), _seq(args, "g"), b)
    return _verdict_out(args, v)


def cmd_ideal_radical(args):
    b = _budget(args)
    if args.x is not None:
        return _verdict_out(args, idl.radical_membership(_complex(args, "e"), _complex(args, "x"), b))
    if args.f is None:
        raise UsageError("give --f, or --e together with --x")
    return _verdict_out(args, idl.is_radical_principal(_seq(args, "f"), b))


def cmd_ideal_prime(args):
    return _verdict_out(args, idl.is_prime_principal(_seq(args, "f"), _budget(args)))


def cmd_ideal_mt(args):
    f, b = _seq(args, "f"), _budget(args)
    fn = {"1": idl.mt1, "2": idl.mt2}[args.which]
    return _verdict_out(args, fn(f, b))


def _lattice(args, name="input"):
    return ls.lattice_from_dict(_load_path(getattr(args, name), f"--{name.replace('_', '-')}", args.stdin))


def cmd_lattice_validate(args):
    lat = _lattice(args)
    return {"valid": True, "size": len(lat.elements), "bottom": lat.bottom, "top": lat.top,
            "prime_elements": ls.prime_elements(lat)}, EXIT_OK


def _spectrum_out(args, s: ls.SpectralSpaceModel):
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(s.to_dot() + "\n")
    return s.to_dict(), EXIT_OK


def cmd_lattice_spec(args):
    lat = _lattice(args)
    if args.adjoin_top:
        lat = ls.adjoin_top(lat)
    return _spectrum_out(args, ls.spec(lat))


def cmd_lattice_dual(args):
    return _spectrum_out(args, ls.hochster_dual(ls.spec(_lattice(args))))


def cmd_lattice_map(args):
    a, b = _lattice(args, "source"), _lattice(args, "target")
    h = _load(args.map, "--map", args.stdin)
    if not isinstance(h, dict):
        raise MalformedInput("--map: expected an object from source to target elements")
    m = ls.induced_spec_map(h, a, b)
    rows = sorted([sorted(p), sorted(q)] for p, q in m.items())
    return {"map": [{"prime": p, "preimage": q} for p, q in rows],
            "injective": len(set(m.values())) == len(m)}, EXIT_OK


def _index_json(r: wt.RefutationIndex, a, k):
    return {"A": str(a), "k": str(k), "i": str(r.i), "n": str(r.n), "lhs": wt.value_json(r.lhs), "rhs": wt.value_json(r.rhs)}


def cmd_witness_nonprime(args):
    horizon = args.horizon if args.horizon is not None else 512
    f0 = _seq(args, "f0")
    ks, _ = wt.breakpoints_mu(f0, horizon)
    fe, fo = wt.nonprime_pair(f0, horizon)
    n_start = args.start if args.start is not None else 0
    cert = wt.meet_equiv_certificate((fe, fo), f0, horizon, n_start)
    amax, kmax = _grid(args) or (4, 4)
    table = [_index_json(wt.mu_refutation_index(fe, f0, 1 << e, k), 1 << e, k)
             for k in range(kmax + 1) for e in range(amax + 1)]
    return {"f_even": sc.to_dict(fe), "f_odd": sc.to_dict(fo), "breakpoints": [str(k) for k in ks],
            "meet": cert.to_dict(), "refutation": table}, EXIT_OK


def cmd_witness_refute(args):
    f0 = _seq(args, "f0")
    fe, fo = wt.nonprime_pair(f0, 0)
    fs = fe if args.set == "evens" else fo
    r = wt.mu_refutation_index(fs, f0, args.a, args.k)
    return _index_json(r, args.a, args.k), EXIT_OK


def cmd_version(args):
    return {"version": __version__}, EXIT_OK


# ---------------------------------------------------------------- parser


def _budget_flags(p):
    p.add_argument("--amax", type=int, help="largest exponent e tried for A = 2**e")
    p.add_argument("--kmax", type=int, help="largest shift or dilation exponent")
    p.add_argument("--horizon", type=int, help="window length for bounded searches")
    p.add_argument("--grid", help="replay certificates on A = 2**0..2**A_max, k = 0..k_max")


def _range_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=int)
    g.add_argument("--range", default="0:16", help="LO:HI, half open")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="dvrspec", description="Growth-rate orders, DVR complexes, tensor ideals and lattice spectra.")
    sub = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def group(name, help_):
        g = sub.add_parser(name, help=help_)
        return g.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    seq = group("seq", "sequence expressions")
    p = seq.add_parser("eval")
    p.add_argument("--f", required=True)
    _range_flags(p)
    p.set_defaults(fn=cmd_seq_eval)
    p = seq.add_parser("convolve")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--method", choices=["auto", "naive", "crossing"], default="auto")
    _range_flags(p)
    p.set_defaults(fn=cmd_seq_convolve)
    p = seq.add_parser("compare")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--rel", default="plain", choices=["plain", "sigma", "mu"])
    _budget_flags(p)
    p.set_defaults(fn=cmd_seq_compare)
    p = seq.add_parser("stable")
    p.add_argument("--f", required=True)
    p.add_argument("--mode", default="sigma", choices=["sigma", "mu"])
    _budget_flags(p)
    p.set_defaults(fn=cmd_seq_stable)

    cx = group("complex", "split complexes over the DVR")
    p = cx.add_parser("homology")
    p.add_argument("--x", required=True)
    _range_flags(p)
    p.set_defaults(fn=cmd_complex_homology)
    p = cx.add_parser("tensor")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    _range_flags(p)
    p.set_defaults(fn=cmd_complex_tensor)
    p = cx.add_parser("loewy")
    p.add_argument("--x", required=True)
    p.add_argument("--raw", action="store_true", help="index by homological degree instead of from the first nonzero one")
    _range_flags(p)
    p.set_defaults(fn=cmd_complex_loewy)

    il = group("ideal", "thick and radical tensor ideals")
    p = il.add_parser("member")
    p.add_argument("--f")
    p.add_argument("--g", required=True)
    p.add_argument("--complex", help="a complex E; decides E in <R/x^g> for mu-stable g")
    p.add_argument("--kind", default="thick", choices=["thick", "radical"])
    _budget_flags(p)
    p.set_defaults(fn=cmd_ideal_member)
    p = il.add_parser("radical")
    p.add_argument("--f", help="is the principal ideal of R/x^f radical")
    p.add_argument("--e", help="complex tested for membership")
    p.add_argument("--x", help="generating complex")
    _budget_flags(p)
    p.set_defaults(fn=cmd_ideal_radical)
    p = il.add_parser("prime")
    p.add_argument("--f", required=True)
    _budget_flags(p)
    p.set_defaults(fn=cmd_ideal_prime)
    p = il.add_parser("mt")
    p.add_argument("--f", required=True)
    p.add_argument("--which", default="1", choices=["1", "2"])
    _budget_flags(p)
    p.set_defaults(fn=cmd_ideal_mt)

    lt = group("lattice", "finite distributive lattices")
    for name, fn in (("validate", cmd_lattice_validate), ("spec", cmd_lattice_spec), ("dual", cmd_lattice_dual)):
        p = lt.add_parser(name)
        p.add_argument("--in", dest="input", required=True, help="path, @path, - or inline JSON")
        if name != "validate":
            p.add_argument("--dot", help="also write the specialization Hasse diagram here")
        if name == "spec":
            p.add_argument("--adjoin-top", action="store_true")
        p.set_defaults(fn=fn)
    p = lt.add_parser("map")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--map", required=True, help="JSON object sending source elements to target elements")
    p.set_defaults(fn=cmd_lattice_map)

    w = group("witness", "non-primality constructions")
    p = w.add_parser("nonprime")
    p.add_argument("--f0", required=True)
    p.add_argument("--start", type=int, help="first index of the meet certificate window")
    _budget_flags(p)
    p.set_defaults(fn=cmd_witness_nonprime)
    p = w.add_parser("refute")
    p.add_argument("--f0", required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--set", choices=["evens", "odds"], default="evens")
    p.set_defaults(fn=cmd_witness_refute)

    p = sub.add_parser("version")
    p.set_defaults(fn=cmd_version)
    return top


def _emit(stream, doc):
    stream.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def run(argv=None, stdout=None, stderr=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _emit(stderr, {"error": "usage", "message": str(exc)})
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    args.stdin = stdin
    try:
        doc, code = args.fn(args)
    except MalformedJSON as exc:
        _emit(stderr, {"error": "malformed_json", "argument": exc.what, "message": str(exc),
                       "line": exc.line, "column": exc.column, "position": exc.pos})
        return EXIT_USAGE
    except (UsageError, MalformedInput) as exc:
        _emit(stderr, {"error": "usage", "message": str(exc)})
        return EXIT_USAGE
    except (BudgetExhausted, HorizonExceeded) as exc:
        _emit(stderr, {"error": type(exc).__name__, "message": str(exc)})
        return EXIT_BUDGET
    except (LatticeError, NotAMorphism) as exc:
        code = getattr(exc, "code", "not_a_morphism")
        _emit(stdout, {"valid": False, "error": code, "message": str(exc), "witness": exc.witness})
        return EXIT_NO
    except DvrSpecError as exc:
        _emit(stdout, {"valid": False, "error": type(exc).__name__, "message": str(exc)})
        return EXIT_NO
    _emit(stdout, doc)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
