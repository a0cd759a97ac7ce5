"""Command-line interface: ``python -m cyclicsubspace <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import construct as cons
from .construct import ConstructionError, CyclicCode
from .verify import VerifyConfig, verify_code


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _emit_code(code: CyclicCode, args) -> None:
    text = code.dumps()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}: n={code.tower.n}, k={code.k}, {len(code.orbits)} orbit(s), size {code.size}", file=sys.stderr)
    else:
        print(text)


def _read_code(path: str) -> CyclicCode:
    if path == "-":
        return CyclicCode.loads(sys.stdin.read())
    with open(path) as fh:
        return CyclicCode.loads(fh.read())


def cmd_construct(args) -> int:
    cfg = _load_config(args.config)
    kind = args.kind
    if kind == "trinomial":
        code = cons.trinomial_code(args.q, args.k)
    elif kind == "irreducible":
        code = cons.irreducible_trinomial_code(args.q, args.k, args.t)
    elif kind == "multiorbit":
        nmax = args.nmax if args.nmax is not None else cfg.get("nmax", cons.DEFAULT_NMAX)
        code = cons.multi_orbit_code(args.q, args.n, args.k, nmax=nmax)
    elif kind == "subfield":
        code = cons.subfield_code(args.q, args.n, args.k, args.d)
    else:
        code = cons.union_subfield_code(args.q, args.n, args.k, args.divisors)
    _emit_code(code, args)
    return 0


def cmd_embed(args) -> int:
    _emit_code(cons.embed_code(_read_code(args.input), args.d), args)
    return 0


def cmd_verify(args) -> int:
    code = _read_code(args.input)
    cfg = VerifyConfig.from_file(args.config) if args.config else VerifyConfig()
    report = verify_code(code, mode=args.mode, shifts=args.shifts, config=cfg)
    print(json.dumps(report.to_dict(), indent=2) if args.json else report.render())
    return 0 if report.passed else 1


def cmd_census(args) -> int:
    cap = _load_config(args.config).get("census_cap", cons.CENSUS_CAP)
    res = cons.orbit_census(args.q, args.n, args.k, cap=cap)
    if args.json:
        print(json.dumps(res.to_dict(), indent=2))
    else:
        print(f"G_{res.q}({res.n},{res.k}): {res.total} subspaces, gaussian {res.gaussian}")
        for d in sorted(res.orbit_counts):
            print(
                f"  d={d}: {res.orbit_counts[d]} orbit(s) x {res.orbit_sizes[d]}"
                f"  (M_{res.q ** d}({res.n // d},{res.k // d}) = {res.full_orbit_counts[d]})"
            )
        print(f"degenerate orbits in C_d: {'PASS' if res.degenerate_images_ok else 'FAIL'}")
        print(f"identity: {'PASS' if res.identity_ok else 'FAIL'}")
    return 0 if res.identity_ok and res.degenerate_images_ok else 1


def cmd_search(args) -> int:
    table = cons.search_trinomials(args.q, args.kmax)
    if args.json:
        print(json.dumps({str(k): v for k, v in table.items()}))
    else:
        for k, irr in table.items():
            print(f"k={k}: x^{args.q ** k - 1} + x^{args.q - 1} + 1 {'irreducible' if irr else 'reducible'}")
    return 0


def cmd_gaussian(args) -> int:
    value = cons.gaussian(args.n, args.k, args.q)
    print(json.dumps({"n": args.n, "k": args.k, "q": args.q, "value": value}) if args.json else value)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--config", help="JSON file with caps (nmax, pair_budget, shift_budget, census_cap)")

    parser = argparse.ArgumentParser(prog="cyclicsubspace", description="Cyclic subspace codes from subspace polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("construct", help="build a code and write its code file")
    csub = pc.add_subparsers(dest="kind", required=True)
    specs = {
        "trinomial": ["q", "k"],
        "irreducible": ["q", "k", "t"],
        "multiorbit": ["q", "n", "k"],
        "subfield": ["q", "n", "k", "d"],
        "union": ["q", "n", "k"],
    }
    for kind, opts in specs.items():
        p = csub.add_parser(kind, parents=[common])
        for o in opts:
            p.add_argument(f"--{o}", type=int, required=o != "t", default=1 if o == "t" else None)
        if kind == "multiorbit":
            p.add_argument("--nmax", type=int, default=None)
        if kind == "union":
            p.add_argument("--divisors", type=int, nargs="+", required=True)
        p.add_argument("--out", help="output path (default: stdout)")
        p.set_defaults(func=cmd_construct)

    pe = sub.add_parser("embed", parents=[common], help="embed a code over F_{q^d} into G_q(n,k)")
    pe.add_argument("--in", dest="input", required=True)
    pe.add_argument("--d", type=int, required=True)
    pe.add_argument("--out")
    pe.set_defaults(func=cmd_embed)

    pv = sub.add_parser("verify", parents=[common], help="verify a code file")
    pv.add_argument("--in", dest="input", required=True)
    pv.add_argument("--mode", choices=["auto", "exhaustive", "orbit", "sample"], default="auto")
    pv.add_argument("--shifts", choices=["auto", "all", "ratio"], default="auto")
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("census", parents=[common], help="orbit census of G_q(n,k)")
    for o in ("q", "n", "k"):
        ps.add_argument(f"--{o}", type=int, required=True)
    ps.set_defaults(func=cmd_census)

    pr = sub.add_parser("search", help="searches")
    rsub = pr.add_subparsers(dest="what", required=True)
    pt = rsub.add_parser("trinomial", parents=[common], help="irreducibility of x^{q^k-1}+x^{q-1}+1")
    pt.add_argument("--q", type=int, required=True)
    pt.add_argument("--kmax", type=int, required=True)
    pt.set_defaults(func=cmd_search)

    pg = sub.add_parser("gaussian", parents=[common], help="Gaussian binomial coefficient")
    for o in ("n", "k", "q"):
        pg.add_argument(f"--{o}", type=int, required=True)
    pg.set_defaults(func=cmd_gaussian)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConstructionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
