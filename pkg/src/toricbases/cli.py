"""Command-line interface: generate graphs, compute bases, run experiments.

Exit codes: 0 when everything passes, 1 when a check or engine comparison fails,
2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import experiments, families
from .graph import Graph, GraphError
from .lattice import NotPointedError, VectorConfig
from .nonpointed import bases_of_line_config, markov_from_coprimes, verify_markov
from .report import BASIS_KINDS, SCHEMA_VERSION, _dumps, compute_bases, emit

FAMILY_NAMES = {"ladder": "ladder", "triangle-tree": "triangle_tree", "triangle_tree": "triangle_tree",
                "complete": "complete"}


class InputError(Exception):
    pass


def _family_args(p: argparse.ArgumentParser):
    p.add_argument("--family", choices=sorted(FAMILY_NAMES))
    p.add_argument("-n", "--n", type=int)
    p.add_argument("-r", "--r", type=int, default=None)
    p.add_argument("-k", "--k", "--subdivide", dest="k", type=int, default=None,
                   help="replace every edge by a path of k edges")


def _output_args(p: argparse.ArgumentParser, default_format: str = "text"):
    p.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
    p.add_argument("--out", type=Path, help="write here instead of stdout")


def _graph_from_family(args) -> Graph:
    kind = FAMILY_NAMES[args.family]
    spec = families.FamilySpec(kind, args.n, args.r if kind == "triangle_tree" else None, None)
    g = families.build(spec)
    if args.k is not None:
        g = families.subdivide(g, args.k)
    return g


def _load_source(args):
    given = [x for x in (args.input, getattr(args, "matrix", None), args.family) if x]
    if len(given) != 1:
        raise InputError("give exactly one of --input, --matrix, --family")
    if args.input:
        return Graph.from_edge_list(_read(args.input))
    if getattr(args, "matrix", None):
        return VectorConfig.from_text(_read(args.matrix))
    return _graph_from_family(args)


def _read(path: Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(args, text: str):
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def _kinds(raw: str) -> tuple[str, ...]:
    kinds = tuple(k.strip() for k in raw.split(",") if k.strip())
    bad = [k for k in kinds if k not in BASIS_KINDS]
    if bad or not kinds:
        raise InputError(f"unknown basis kind(s) {', '.join(bad) or '(none)'}; choose from {', '.join(BASIS_KINDS)}")
    return kinds


def cmd_generate(args) -> int:
    if not args.family:
        raise InputError("generate needs --family")
    _write(args, _graph_from_family(args).to_edge_list())
    return 0


def _run_bases(args, engine: str) -> int:
    source = _load_source(args)
    reports = compute_bases(source, _kinds(args.kinds), engine, args.degree_cap)
    _write(args, emit(reports, args.format, include_timing=args.timing))
    return 1 if any(r.agreement is False for r in reports) else 0


def cmd_bases(args) -> int:
    return _run_bases(args, args.engine)


def cmd_compare(args) -> int:
    return _run_bases(args, "both")


def cmd_reproduce(args) -> int:
    ids = list(experiments.EXPERIMENTS) if not args.experiments or args.experiments == ["all"] else args.experiments
    for e in ids:
        try:
            experiments.resolve(e)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    verdicts = experiments.reproduce_many(ids, threads=args.threads, budget_secs=args.budget)
    _write(args, emit(verdicts, args.format))
    return 0 if all(v.passed for v in verdicts) else 1


def cmd_nonpointed(args) -> int:
    try:
        q = [int(x) for x in args.primes.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--primes must be comma-separated integers, got {args.primes!r}") from None
    basis = markov_from_coprimes(q)
    cert = verify_markov(basis)
    line = bases_of_line_config()
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "q": q,
            "markov": {"exponents": list(basis.exponents), "degrees": list(basis.degrees),
                       "size": len(basis), "max_degree": basis.max_degree, "binomials": basis.text()},
            "certificate": {"generates": cert.generates, "minimal": cert.minimal, "gcd_all": cert.gcd_all,
                            "gcd_without": list(cert.gcd_without)},
            "fixed_bases": {"circuits": [b.text() for b in line.circuits], "ugb": [b.text() for b in line.ugb],
                            "graver": [b.text() for b in line.graver], "pointed": line.pointed},
        }
        text = _dumps(doc)
    elif args.format == "csv":
        text = "basis,size,max_degree\n"
        text += f"markov,{len(basis)},{basis.max_degree}\n"
        for name, elems in (("circuits", line.circuits), ("ugb", line.ugb), ("graver", line.graver)):
            text += f"{name},{len(elems)},{max(b.degree for b in elems)}\n"
    else:
        lines = [f"Markov basis of (1, -1) from q = {', '.join(map(str, q))}:"]
        lines += [f"  {t}" for t in basis.text()]
        lines.append(f"size {len(basis)}, max degree {basis.max_degree}")
        lines.append(f"gcd of all exponents {cert.gcd_all}; with one removed {list(cert.gcd_without)}")
        lines.append(f"verified: {'yes' if cert.ok else 'NO'}")
        lines.append("circuits = UGB = Graver = {x*y - 1}, degree 2; configuration not pointed")
        text = "\n".join(lines) + "\n"
    _write(args, text)
    return 0 if cert.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricbases", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a family graph as an edge list")
    _family_args(p)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_generate)

    for name, func, helptext in (("bases", cmd_bases, "compute bases of a graph or matrix"),
                                 ("compare", cmd_compare, "compute bases with both engines and compare")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--input", type=Path, help="edge-list file")
        p.add_argument("--matrix", type=Path, help="integer matrix file (rows cols, then entries)")
        _family_args(p)
        p.add_argument("--kinds", default=",".join(BASIS_KINDS))
        if name == "bases":
            p.add_argument("--engine", choices=("graph", "oracle", "both"), default="both")
        p.add_argument("--degree-cap", type=int, default=None)
        p.add_argument("--timing", action="store_true", help="include wall-clock timings in the output")
        _output_args(p)
        p.set_defaults(func=func)

    p = sub.add_parser("reproduce", help="run named experiments")
    p.add_argument("experiments", nargs="*", help=f"ids: {', '.join(experiments.EXPERIMENTS)} (default all)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget", type=float, default=experiments.DEFAULT_BUDGET_SECS,
                   help="seconds per instance; TORIC_BUDGET_SECS overrides")
    _output_args(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("nonpointed", help="Markov basis of (1, -1) from pairwise coprime integers")
    p.add_argument("--primes", default="2,3")
    _output_args(p)
    p.set_defaults(func=cmd_nonpointed)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GraphError, NotPointedError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
