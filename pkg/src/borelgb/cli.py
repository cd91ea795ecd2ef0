"""Command-line interface: inspect closures, sorted factorizations, fibers,
quadric sets, and run the Gröbner certificates from the shell.

Exit codes: 0 success (and verification passes), 1 a verification or
staircase check failed, 2 malformed input, 3 a resource budget was exceeded.
All output is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import sys

from .borel import borel_closure
from .families import (incidence_matrix, find_lfree_column_order,
                       is_chordal_bipartite, lfree_witness, parse_family,
                       reduce_family, serialize_family)
from .monomials import AmbientMismatch, ParseError, parse_monomial, parse_power_product
from .quadrics import quadrics_bs_form, quadrics_multi, quadrics_single
from .sorting import borel_sort
from .toric import (FiberSetup, Limits, ResourceLimitError, certify,
                    fiber_graph, spair_certificate, t_min, to_dot,
                    verify_groebner_by_fibers)


def _read_family(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_family(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read family file {path}: {exc.strerror}")


def _parse_support(text, n, base):
    out = set()
    for tok in text.split(","):
        tok = tok.strip()
        if not tok.startswith("x") or not tok[1:].isdigit():
            raise ParseError(f"malformed support variable {tok!r}")
        p = int(tok[1:]) - base + 1
        if not 1 <= p <= n:
            raise ParseError(f"support variable {tok} outside the ambient ring")
        out.add(p)
    return out


def _parse_beta(text, r):
    return parse_power_product(text, "t", r, base=1)


def _limits(args):
    return Limits(max_vertices=args.max_vertices, max_checks=args.max_checks,
                  max_steps=args.max_steps)


def _single_setup(args):
    M = parse_monomial(args.single, args.n, args.base)
    return FiberSetup.single(M, args.base)


def _family_setup(path):
    family = _read_family(path)
    if not family.is_reduced():
        raise ParseError("family is not reduced (run 'borelgb reduce' first)")
    return family, FiberSetup.for_family(family)


def _single_quadrics(M, form):
    return quadrics_single(M) if form == "exchange" else quadrics_bs_form(M)


def cmd_closure(args):
    M = parse_monomial(args.monomial, args.n, args.base)
    support = None
    if args.support is not None:
        support = _parse_support(args.support, args.n, args.base)
    for m in borel_closure(M, support=support):
        print(m.text(args.base))
    return 0


def cmd_sort(args):
    M = parse_monomial(args.generator, args.n, args.base)
    mu = parse_monomial(args.product, args.n, args.base)
    try:
        factors = borel_sort(M, mu, args.k)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for f in factors:
        print(f.text(args.base))
    return 0


def cmd_tmin(args):
    family, _ = _family_setup(args.family)
    mu = parse_monomial(args.image, family.n, family.base)
    beta = _parse_beta(args.tdegrees, family.r)
    point = t_min(family, mu, beta)
    if point is None:
        print("UNDEFINED")
    else:
        print(point.label(family.base))
    return 0


def cmd_fiber_graph(args):
    if args.single is not None:
        if args.mu is None or args.k is None:
            raise ParseError("single mode needs --mu and -k")
        setup = _single_setup(args)
        mu = parse_monomial(args.mu, args.n, args.base)
        beta = args.k
        quads = _single_quadrics(setup.blocks[0].pivot, args.form)
        base, tagged = args.base, False
    else:
        if args.family is None or args.mu_arg is None or args.tdegrees is None:
            raise ParseError("need FAMILY IMAGE TDEGREES, or --single with --mu/-k")
        family, setup = _family_setup(args.family)
        mu = parse_monomial(args.mu_arg, family.n, family.base)
        beta = _parse_beta(args.tdegrees, family.r)
        quads = quadrics_multi(family).all()
        base, tagged = family.base, True
    graph = fiber_graph(setup, mu, beta, quads, limits=_limits(args))
    if args.dot:
        sys.stdout.write(to_dot(graph, base, tagged))
        return 0
    for i, v in enumerate(graph.vertices):
        print(f"v{i}: {v.label(base, tagged)}")
    for u, v, qi in graph.edges:
        print(f"v{u} -> v{v} [q{qi}]")
    _, sinks = certify(graph)
    sink_ids = [i for i, v in enumerate(graph.vertices) if v in set(sinks)]
    print("sinks: " + " ".join(f"v{i}" for i in sink_ids))
    return 0


def cmd_verify(args):
    if args.single is not None:
        setup = _single_setup(args)
        quads = _single_quadrics(setup.blocks[0].pivot, args.form)
        base, tagged = args.base, False
    else:
        if args.family is None:
            raise ParseError("need a family file or --single")
        family, setup = _family_setup(args.family)
        quads = quadrics_multi(family).all()
        base, tagged = family.base, True
    if args.method == "fibers":
        report = verify_groebner_by_fibers(setup, quads, args.bound,
                                           limits=_limits(args), jobs=args.jobs)
    else:
        report = spair_certificate(quads, setup.order, limits=_limits(args))
    for line in report.lines(base, tagged):
        print(line)
    return 0 if report.passed else 1


def cmd_lfree(args):
    family = _read_family(args.family)
    matrix = incidence_matrix(family)
    for line in matrix.to_lines(family.base):
        print(line)
    witness = lfree_witness(matrix)
    if witness is None:
        print("LFREE")
    else:
        h, j, u, v = witness
        print(f"NOT-LFREE rows {family.var_name(h)},{family.var_name(j)} "
              f"cols {matrix.col_names[u - 1]},{matrix.col_names[v - 1]}")
    if args.find_order:
        order = find_lfree_column_order(matrix)
        if order is None:
            print("no-order")
        else:
            print("order: " + ",".join(matrix.col_names[j] for j in order))
        failed = order is None
    else:
        failed = witness is not None
    if args.chordal:
        if is_chordal_bipartite(matrix):
            print("CHORDAL-BIPARTITE")
        else:
            print("NOT-CHORDAL-BIPARTITE")
            failed = True
    return 1 if failed else 0


def cmd_reduce(args):
    family = _read_family(args.family)
    reduced, stripped = reduce_family(family)
    sys.stdout.write(serialize_family(reduced))
    for e, m in zip(family.entries, stripped):
        print(f"# stripped {e.name}: {m.text(family.base)}")
    return 0


def cmd_quadrics(args):
    if args.single is not None:
        M = parse_monomial(args.single, args.n, args.base)
        for b in _single_quadrics(M, args.form):
            print(b.text(args.base, tagged=False))
        return 0
    if args.family is None:
        raise ParseError("need a family file or --single")
    family, _ = _family_setup(args.family)
    quads = quadrics_multi(family)
    for shape in ("symmetric", "fiber_principal", "fiber_biprincipal"):
        for b in getattr(quads, shape):
            print(f"{shape} {b.text(family.base)}")
    return 0


def _add_single_flags(sub, with_form=True):
    sub.add_argument("--single", metavar="MONOMIAL",
                     help="single-closure mode: the principal generator")
    sub.add_argument("-n", type=int, help="ambient variable count (single mode)")
    sub.add_argument("--base", type=int, choices=(0, 1), default=1,
                     help="first variable name is x{base} (single mode; default 1)")
    if with_form:
        sub.add_argument("--form", choices=("exchange", "sorted"),
                         default="exchange",
                         help="single-mode quadric set (default: exchange)")


def _add_limit_flags(sub):
    sub.add_argument("--max-vertices", type=int, default=100_000,
                     help="per-fiber vertex budget (default 100000)")
    sub.add_argument("--max-checks", type=int, default=10_000_000,
                     help="divisibility-check budget (default 10^7)")
    sub.add_argument("--max-steps", type=int, default=100_000,
                     help="rewrite-step budget (default 100000)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="borelgb",
        description="Borel closures, sorted factorizations, and quadratic "
                    "Gröbner certificates for their toric rings.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("closure", help="list a (support-restricted) Borel closure")
    p.add_argument("monomial")
    p.add_argument("-n", type=int, required=True, help="ambient variable count")
    p.add_argument("--base", type=int, choices=(0, 1), default=1)
    p.add_argument("--support", help="comma-separated variables, e.g. x3,x4")
    p.set_defaults(func=cmd_closure)

    p = subs.add_parser("sort", help="sorted factorization into k closure members")
    p.add_argument("generator", help="the principal generator M")
    p.add_argument("product", help="the monomial to factor")
    p.add_argument("k", type=int, help="number of factors")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--base", type=int, choices=(0, 1), default=1)
    p.set_defaults(func=cmd_sort)

    p = subs.add_parser("tmin", help="least fiber point of a reduced family")
    p.add_argument("family", help="family file")
    p.add_argument("image", help="the x-monomial image")
    p.add_argument("tdegrees", help="block T-degrees, e.g. t1*t2^2 (or 1)")
    p.set_defaults(func=cmd_tmin)

    p = subs.add_parser("fiber-graph", help="print one fiber's rewriting graph")
    p.add_argument("family", nargs="?", help="family file (multi mode)")
    p.add_argument("mu_arg", nargs="?", metavar="image",
                   help="x-monomial image (multi mode)")
    p.add_argument("tdegrees", nargs="?", help="block T-degrees (multi mode)")
    _add_single_flags(p)
    p.add_argument("--mu", help="image monomial (single mode)")
    p.add_argument("-k", type=int, help="number of factors (single mode)")
    p.add_argument("--dot", action="store_true", help="emit Graphviz text")
    _add_limit_flags(p)
    p.set_defaults(func=cmd_fiber_graph)

    p = subs.add_parser("verify", help="run a Gröbner certificate")
    p.add_argument("family", nargs="?", help="family file (multi mode)")
    _add_single_flags(p)
    p.add_argument("--method", choices=("fibers", "spairs"), default="fibers")
    p.add_argument("--bound", type=int, default=3,
                   help="total T-degree bound for the fiber sweep (default 3)")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for the fiber sweep (default 1)")
    _add_limit_flags(p)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("lfree", help="staircase checks on the incidence matrix")
    p.add_argument("family", help="family file")
    p.add_argument("--find-order", action="store_true",
                   help="search for an L-free column order")
    p.add_argument("--chordal", action="store_true",
                   help="also decide chordal bipartiteness")
    p.set_defaults(func=cmd_lfree)

    p = subs.add_parser("reduce", help="strip inert variable mass from a family")
    p.add_argument("family", help="family file")
    p.set_defaults(func=cmd_reduce)

    p = subs.add_parser("quadrics", help="list the quadric generating set")
    p.add_argument("family", nargs="?", help="family file (multi mode)")
    _add_single_flags(p)
    p.set_defaults(func=cmd_quadrics)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "single", None) is not None and args.n is None:
            raise ParseError("--single requires -n")
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AmbientMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
