"""Command-line entry point.

Subcommands
-----------
build      build a graph and export it (Matrix Market, edge list or JSON labels)
certify    exact lower-bound certificate for the spectrum of X(S_n, T_n)
spectrum   numeric spectrum with integrality verdict, or exact nullity at one lambda
maps       emit and verify the isomorphism / coset projection / covering projection
verify     check a single eigenvector claim exactly

Exit codes: 0 success, 1 failed mathematical verification, 2 invalid
arguments or capacity, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import contextmanager

from . import __version__
from .certify import DEFAULT_NULLITY_LIMIT, certify_spectrum_lower_bounds
from .errors import CertificationError, InvalidArgument, NotBipartiteError
from .exact import exact_nullity, verify_eigenvector
from .export import (
    SCHEMA_VERSION,
    dumps,
    graph_header,
    graph_payload,
    map_payload,
    write_edge_list,
    write_matrix_market,
)
from .graphs import (
    FAMILIES,
    bipartition,
    build_cayley_star,
    build_graph,
    build_k2,
    build_partial_permutation,
    build_schreier,
    covering_projection,
    dense_memory_bytes,
    iso_partial_to_cayley,
    schreier_projection,
    verify_cover,
    verify_isomorphism,
)
from .numeric import INTEGRALITY_TOL, dense_symmetric_eigenvalues, integrality_check

EXIT_OK, EXIT_VERIFY, EXIT_ARGS, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("starcayley")


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _note(msg):
    print(msg, file=sys.stderr)


def _max_vertices(args):
    mv = getattr(args, "max_vertices", None)
    if mv is not None:
        _note(f"max-vertices={mv}: dense adjacency up to ~{dense_memory_bytes(mv) / 2**20:.1f} MiB")
    return mv


def _graph(args):
    return build_graph(args.graph, args.n, d=args.d, k=args.k, max_vertices=_max_vertices(args))


def cmd_build(args):
    g = _graph(args)
    with _output(args.out) as fh:
        if args.format == "mtx":
            write_matrix_market(g, fh)
        elif args.format == "edges":
            write_edge_list(g, fh)
        else:
            fh.write(dumps(graph_payload(g)))
    summary = (f"{g.name}: {g.vertex_count} vertices, {g.edge_count} edges, "
               f"{g.loop_total} loops")
    print(summary, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_certify(args):
    report = certify_spectrum_lower_bounds(
        args.n,
        nullity_limit=args.nullity_limit,
        numeric=args.numeric,
        strict=False,
        max_vertices=_max_vertices(args),
    )
    with _output(args.out) as fh:
        fh.write(dumps(report.to_payload()))
    if args.out not in (None, "-"):
        with open(args.out + ".meta.json", "w", encoding="utf-8") as fh:
            fh.write(dumps(report.metadata()))
    for e in report.entries:
        _note(f"lambda={e.lam:>3}  bound={e.paper_bound:>4}  rank={e.certified_rank:>4}  "
              f"nullity={'-' if e.exact_nullity is None else e.exact_nullity:>4}  "
              f"{'ok' if e.verified else 'FAILED'}")
    _note(f"status: {report.status}")
    if report.status != "certified":
        for e in report.failures():
            _note(f"failed at lambda={e.lam}: {e.failure}")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_spectrum(args):
    g = _graph(args)
    if args.method == "numeric":
        spec = integrality_check(dense_symmetric_eigenvalues(g, args.max_vertices),
                                 args.tolerance)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "report": "spectrum",
            "tool_version": __version__,
            "graph": graph_header(g),
            "method": "numeric",
            "eigenvalues": spec.eigenvalues,
            **spec.to_dict(),
        }
        _note(f"{g.name}: integral={spec.integral}")
    else:
        if args.lam is None:
            raise InvalidArgument("--method nullity needs an integer --lambda")
        nullity = exact_nullity(g, args.lam, max_vertices=args.max_vertices)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "report": "nullity",
            "tool_version": __version__,
            "graph": graph_header(g),
            "method": "nullity",
            "lambda": args.lam,
            "nullity": nullity,
        }
        _note(f"{g.name}: dim ker(A - ({args.lam}) I) = {nullity}")
    with _output(args.out) as fh:
        fh.write(dumps(payload))
    return EXIT_OK


def cmd_maps(args):
    mv = _max_vertices(args)
    n = args.n
    cayley = build_cayley_star(n, mv)
    if args.kind == "iso":
        vmap = iso_partial_to_cayley(n, mv)
        domain, codomain = build_partial_permutation(n - 1, n, mv), cayley
    elif args.kind == "schreier":
        if args.k is None:
            raise InvalidArgument("--kind schreier needs --k")
        vmap = schreier_projection(args.k, n, mv)
        domain, codomain = cayley, build_schreier(args.k, n, mv)
    else:
        vmap = covering_projection(n, mv)
        domain, codomain = cayley, build_k2(n, mv)
    if args.swap:
        u, v = (x - 1 for x in args.swap)
        if not (0 <= u < vmap.domain_size and 0 <= v < vmap.domain_size):
            raise InvalidArgument("--swap indices out of range")
        vmap = vmap.with_swap(u, v)
        _note(f"swapped the images of vertices {u + 1} and {v + 1}")
    if vmap.kind == "isomorphism":
        check_name = "edge-preservation"
        result = verify_isomorphism(vmap, domain, codomain)
    else:
        check_name = "local-bijection"
        result = verify_cover(vmap, domain, codomain)
    with _output(args.out) as fh:
        fh.write(dumps(map_payload(vmap, domain, codomain, check_name, result.ok,
                                   result.detail)))
    sizes = ", ".join(f"{c} fibres of size {s}" for s, c in sorted(vmap.fiber_sizes().items()))
    _note(f"{vmap.kind} {domain.name} -> {codomain.name}: {sizes}; "
          f"{check_name} {'pass' if result else 'FAIL'}")
    if not result:
        _note(result.detail)
        return EXIT_VERIFY
    return EXIT_OK


def _load_vector(spec, g):
    if spec == "ones":
        return [1] * g.vertex_count
    if spec == "parity":
        return list(bipartition(g))
    with open(spec, encoding="utf-8") as fh:
        data = json.load(fh)
    values = data["values"] if isinstance(data, dict) else data
    if len(values) != g.vertex_count or any(int(x) != x for x in values):
        raise InvalidArgument(f"vector must hold {g.vertex_count} integers")
    return [int(x) for x in values]


def cmd_verify(args):
    g = _graph(args)
    values = _load_vector(args.vector, g)
    check = verify_eigenvector(g, values, args.lam)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "report": "eigen-check",
        "tool_version": __version__,
        "graph": graph_header(g),
        "lambda": args.lam,
        "passed": check.ok,
        "coordinate": None if check.coordinate is None else check.coordinate + 1,
    }
    with _output(args.out) as fh:
        fh.write(dumps(payload))
    if not check:
        _note(f"A v != {args.lam} v at vertex {check.coordinate + 1}: "
              f"{check.got} vs {check.expected}")
        return EXIT_VERIFY
    _note(f"A v = {args.lam} v holds exactly on {g.name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="starcayley", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_args(p):
        p.add_argument("--graph", choices=FAMILIES, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--d", type=int)
        p.add_argument("--k", type=int)

    def common(p):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--max-vertices", type=int, dest="max_vertices",
                       help="override the default vertex capacity")

    p = sub.add_parser("build", help="build and export a graph")
    graph_args(p)
    p.add_argument("--format", choices=("mtx", "edges", "json"), default="mtx")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("certify", help="certify the spectral lower bounds for X(S_n, T_n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nullity-limit", type=int, default=DEFAULT_NULLITY_LIMIT,
                   help="compute exact nullities when the graph has at most this many "
                        "vertices (0 disables)")
    p.add_argument("--numeric", action="store_true", help="attach the numeric spectrum check")
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("spectrum", help="numeric spectrum or exact multiplicity")
    graph_args(p)
    p.add_argument("--method", choices=("numeric", "nullity"), default="numeric")
    p.add_argument("--lambda", type=int, dest="lam")
    p.add_argument("--tolerance", type=float, default=INTEGRALITY_TOL)
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("maps", help="emit and verify a vertex map")
    p.add_argument("--kind", choices=("iso", "schreier", "cover"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--swap", type=int, nargs=2, metavar=("U", "V"),
                   help="exchange the images of two 1-based domain vertices (mutation testing)")
    common(p)
    p.set_defaults(func=cmd_maps)

    p = sub.add_parser("verify", help="check A v = lambda v exactly")
    graph_args(p)
    p.add_argument("--vector", required=True,
                   help="'ones', 'parity', or a JSON file holding a list of integers")
    p.add_argument("--lambda", type=int, dest="lam", required=True)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidArgument, NotBipartiteError) as exc:
        _note(f"error: {exc}")
        return EXIT_ARGS
    except CertificationError as exc:
        _note(f"verification failed: {exc}")
        return EXIT_VERIFY
    except OSError as exc:
        _note(f"I/O error: {exc}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
