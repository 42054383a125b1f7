"""Command-line interface.

Inputs are JSON files holding a datum and optionally its parameters:

    {"group": "Z/11", "g": [[1]], "chi": ["1"], "cartan": [[2]],
     "lambda": {"1,2": "1"}, "mu": {"1": "5"}}

Exit codes: 0 success or decided, 2 inadmissible input, 3 undecided,
1 internal error or failed verification, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .braided import Braiding, mapphi_check, twist_cocycle
from .datum import datum_to_json, enumerate_data, load_triple_file, params_to_json
from .errors import AdmissibilityError, DegreeCapExceeded, InternalCheckError, QGError
from .groups import GroupAlgElem, format_char, format_group, parse_group
from .isomorphy import IsoTriple, Undecided, decide, soundness, triple_to_json
from .kalgebra import KAlgebra, UCache
from .scalars import format_scalar
from .uqgroup import build_u, cauchy_check, describe, verify_hopf

EXIT_OK, EXIT_INTERNAL, EXIT_ADMISSIBILITY, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 3, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def default_cap() -> Optional[int]:
    v = os.environ.get("QF_DEGREE_CAP")
    if not v:
        return None
    try:
        return int(v)
    except ValueError:
        raise SystemExit(f"QF_DEGREE_CAP must be an integer, got {v!r}")


def format_group_alg(u: GroupAlgElem) -> str:
    if not u.terms:
        return "0"
    parts = []
    for g, c in sorted(u.terms.items()):
        body = "1" if not any(g) else "g" + str(list(g))
        parts.append(f"({format_scalar(c)})*{body}")
    return " + ".join(parts)


def _root_str(a) -> str:
    return ",".join(str(k) for k in a)


def _emit(args, text_lines: list[str], obj) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")
    else:
        for line in text_lines:
            sys.stdout.write(line + "\n")


# subcommands

def cmd_validate(args) -> int:
    d, lam, mu = load_triple_file(args.datum)
    lines = [f"valid: {d.cartan.label()} over {format_group(d.group)}, theta = {d.theta}, N = {d.N}"]
    lines += [f"warning: {w}" for w in d.warnings]
    free_l = [f"{i + 1},{j + 1}" for i, j in d.free_linking_pairs()]
    free_m = [_root_str(a) for a in d.free_mu_roots()]
    lines.append("linkable pairs: " + (" ".join(free_l) or "none"))
    lines.append("free mu roots: " + (" ".join(free_m) or "none"))
    obj = {"valid": True, "datum": datum_to_json(d), "params": params_to_json(lam, mu), "warnings": d.warnings, "linkable": free_l, "free_mu": free_m}
    _emit(args, lines, obj)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    G = parse_group(args.group).group
    data = list(enumerate_data(G, args.theta_max, canonicalize=args.canonical))
    lines = []
    for d in data:
        gs = " ".join(str(list(g)) for g in d.g)
        cs = " ".join(format_char(c) for c in d.chi)
        lines.append(f"{d.cartan.label()}  g: {gs}  chi: {cs}")
    lines.append(f"{len(data)} data listed")
    _emit(args, lines, {"count": len(data), "data": [datum_to_json(d) for d in data]})
    return EXIT_OK


def cmd_build(args) -> int:
    d, lam, mu = load_triple_file(args.datum)
    A = build_u(d, lam, mu, args.cap)
    info = describe(A)
    lines = [
        f"dim = {A.dim}",
        f"basis size = {A.dimension_formula()} ({len(A.N)} root vector{'s' if len(A.N) != 1 else ''}, exponent bounds {A.N}, |Gamma| = {A.G.order})",
        f"type {info['cartan']} over {info['group']}",
    ]
    _emit(args, lines, info)
    return EXIT_OK


def cmd_ualpha(args) -> int:
    d, lam, mu = load_triple_file(args.datum)
    cache = UCache(d, args.cap)
    roots = [tuple(int(t) for t in args.root.split(","))] if args.root else d.roots.order
    lines, obj = [], {}
    for alpha in roots:
        if alpha not in d.roots.index:
            raise AdmissibilityError(f"{alpha} is not a positive root")
        l = d.roots.index[alpha]
        c = d.roots.position_component[l]
        fam = cache.family(c, mu)
        u = fam.u_root(fam.K.global_pos.index(l))
        lines.append(f"u_({_root_str(alpha)}) = {format_group_alg(u)}")
        obj[_root_str(alpha)] = [[list(g), format_scalar(v)] for g, v in sorted(u.terms.items())]
    _emit(args, lines, obj)
    return EXIT_OK


def cmd_constants(args) -> int:
    d, _lam, _mu = load_triple_file(args.datum)
    c = args.component - 1
    if not 0 <= c < len(d.components):
        raise AdmissibilityError(f"component {args.component} does not exist")
    if args.exponent:
        exps = [tuple(int(t) for t in args.exponent.split(","))]
        need = sum(k * sum(b) for k, b in zip(exps[0], d.roots.order))
    else:
        exps = None
        need = args.height
    cap = args.cap
    if cap is None:
        # the request itself fixes the degree needed: N times the height
        N = d.N_component[c]
        cap = max(2 * N + 10, N * need)
    K = KAlgebra(d, c, cap)
    if exps is None:
        exps = K.exponents_up_to(args.height)
    lines, obj = [], {}
    for a in exps:
        t = K.coproduct_constants(a)
        key = _root_str(a)
        obj[key] = [[list(b), list(cc), format_scalar(v)] for (b, cc), v in sorted(t.items())]
        if not t:
            lines.append(f"t^({key}): none")
        for (b, cc), v in sorted(t.items()):
            lines.append(f"t^({key})_({_root_str(b)}),({_root_str(cc)}) = {format_scalar(v)}")
    _emit(args, lines, obj)
    return EXIT_OK


def cmd_iso(args) -> int:
    src = load_triple_file(args.src)
    dst = load_triple_file(args.dst)
    verdict, res = decide(src, dst, args.cap, args.i5)
    lines, items = [], []
    for r in res:
        obj = triple_to_json(r)
        if isinstance(r, IsoTriple) and args.check:
            bad = soundness(src, dst, r, args.cap)
            obj["soundness"] = bad or "ok"
            if bad and r.s is not None:
                raise InternalCheckError(f"soundness check failed: {bad}")
        items.append(obj)
        if isinstance(r, Undecided):
            lines.append(f"undecided: phi={obj['phi']} sigma={obj['sigma']} component {obj['component']}: {r.reason}")
        else:
            s = obj["s"] if isinstance(obj["s"], str) else "[" + ", ".join(obj["s"]) + "]"
            extra = f" ({obj['field']})" if "field" in obj else ""
            lines.append(f"isomorphism: phi={obj['phi']} sigma={obj['sigma']} s={s}{extra}")
    lines.append({"isomorphic": "isomorphic", "not isomorphic": "no isomorphism", "undecided": "undecided"}[verdict])
    _emit(args, lines, {"verdict": verdict, "results": items})
    return EXIT_UNDECIDED if verdict == "undecided" else EXIT_OK


def cmd_verify(args) -> int:
    d, lam, mu = load_triple_file(args.datum)
    A = build_u(d, lam, mu, args.cap)
    rep = verify_hopf(A, samples=args.samples, seed=args.seed)
    _emit(args, rep.lines() + [f"{'ALL PASS' if rep.ok else 'FAILED'} (dim = {A.dim})"], rep.to_json())
    return EXIT_OK if rep.ok else EXIT_INTERNAL


def cmd_twist(args) -> int:
    d1, _l1, _m1 = load_triple_file(args.src)
    d2, _l2, _m2 = load_triple_file(args.dst)
    b1, b2 = Braiding.from_datum(d1), Braiding.from_datum(d2)
    sig = twist_cocycle(b1, b2)
    bad = mapphi_check(b1, b2, args.degree)
    lines = [f"sigma(alpha_{i + 1}, alpha_{j + 1}) = zeta_{sig.m}^{sig.S[i][j]}" for i in range(d1.theta) for j in range(d1.theta)]
    lines += [f"FAIL {b}" for b in bad]
    lines.append(f"{'ALL PASS' if not bad else 'FAILED'} (monomials of degree <= {args.degree})")
    _emit(args, lines, {"m": sig.m, "S": [list(r) for r in sig.S], "failures": bad})
    return EXIT_OK if not bad else EXIT_INTERNAL


def cmd_cauchy(args) -> int:
    d, lam, mu = load_triple_file(args.datum)
    A = build_u(d, lam, mu, args.cap)
    rep = cauchy_check(A)
    _emit(args, rep.lines() + [f"dim = {A.dim}"], rep.to_json())
    return EXIT_OK if rep.ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="smallqg", description="Generalized small quantum groups u(D, lambda, mu).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None, help="degree cap (default: $QF_DEGREE_CAP or automatic)")
    common.add_argument("--format", choices=["text", "json"], default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check a datum with lambda and mu")
    s.add_argument("--datum", required=True)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("enumerate", parents=[common], help="list the data over a group")
    s.add_argument("--group", required=True, help="e.g. Z/11 or Z/2xZ/6")
    s.add_argument("--theta-max", type=int, required=True)
    s.add_argument("--canonical", action="store_true", help="one datum per reordering class")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("build", parents=[common], help="construct u(D, lambda, mu)")
    s.add_argument("--datum", required=True)
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("ualpha", parents=[common], help="print u_alpha(mu)")
    s.add_argument("--datum", required=True)
    s.add_argument("--root", help="a positive root such as 1,1; default all")
    s.set_defaults(func=cmd_ualpha)

    s = sub.add_parser("constants", parents=[common], help="coproduct constants t^a_{b,c}")
    s.add_argument("--datum", required=True)
    s.add_argument("--component", type=int, default=1)
    s.add_argument("--exponent", help="a single exponent vector such as 2,0,1")
    s.add_argument("--height", type=int, default=2)
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("iso", parents=[common], help="decide isomorphism of two triples")
    s.add_argument("--src", required=True)
    s.add_argument("--dst", required=True)
    s.add_argument("--i5", choices=["auto", "direct"], default="auto")
    s.add_argument("--check", action="store_true", help="run the soundness check on each witness")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("verify", parents=[common], help="check the Hopf algebra axioms")
    s.add_argument("--datum", required=True)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("twist", parents=[common], help="twist between the braidings of two data")
    s.add_argument("--src", required=True)
    s.add_argument("--dst", required=True)
    s.add_argument("--degree", type=int, default=4)
    s.set_defaults(func=cmd_twist)

    s = sub.add_parser("cauchy", parents=[common], help="group-likes for each prime divisor of dim")
    s.add_argument("--datum", required=True)
    s.set_defaults(func=cmd_cauchy)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap is None:
        args.cap = default_cap()
    try:
        return args.func(args)
    except AdmissibilityError as exc:
        print(f"inadmissible: {exc}", file=sys.stderr)
        return EXIT_ADMISSIBILITY
    except DegreeCapExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QGError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
