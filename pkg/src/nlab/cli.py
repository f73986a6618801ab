"""Command-line entry point.

Subcommands:
    algebra star|coprod|antipode|bracket|cobracket
    verify  hopf|limits|diagram
    trace, moyal-classical, weyl, rho
    ribbon  enum|boundary|homology|cochain
    ainf    check|cycle

Exit codes: 0 success, 1 verification failure, 2 usage error.  Output is
deterministic for a fixed seed; the cache directory defaults to the
NLAB_CACHE environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .grammar import format_element, format_tensor, parse_element
from .moyal import MoyalHopf
from .necklace import NecklaceAlgebra
from .quiver import Quiver, QuiverError, adjacency, double
from .ribbon.graph import RibbonGraph, RibbonError


def _add_common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("text", "json", "tsv"), default="text")
    p.add_argument("--cache-dir", default=os.environ.get("NLAB_CACHE"))


def build_parser():
    ap = argparse.ArgumentParser(prog="nlab")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("algebra", help="necklace algebra and Hopf operations")
    p.add_argument("op", choices=("star", "coprod", "antipode", "bracket", "cobracket"))
    p.add_argument("-q", "--quiver", required=True)
    p.add_argument("-l", "--lhs", required=True)
    p.add_argument("-r", "--rhs")
    _add_common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("hopf", "limits", "diagram"))
    p.add_argument("-q", "--quiver", required=True)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--random-cases", type=int, default=0)
    p.add_argument("--random-len", type=int, default=6)
    p.add_argument("--dims", default="1,2")
    _add_common(p)

    for name in ("trace", "moyal-classical", "weyl", "rho"):
        p = sub.add_parser(name)
        p.add_argument("-q", "--quiver", required=True)
        p.add_argument("-l", "--lhs", required=True)
        if name == "moyal-classical":
            p.add_argument("-r", "--rhs", required=True)
        p.add_argument("--dims", default="1")
        if name == "rho":
            p.add_argument("--heights", help="comma-separated heights per letter "
                                             "in reading order (default identity)")
        _add_common(p)

    p = sub.add_parser("ribbon")
    p.add_argument("op", choices=("enum", "boundary", "homology", "cochain"))
    p.add_argument("--genus", type=int)
    p.add_argument("--faces", type=int)
    p.add_argument("--min-valence", type=int, default=3)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--graph", help="adjacency graph as a quiver JSON file")
    p.add_argument("--labels", help="comma-separated face label multiset")
    p.add_argument("--ribbon", help="ribbon graph JSON file (cochain)")
    p.add_argument("-q", "--quiver", help="base quiver (cochain)")
    p.add_argument("--mult", type=int, default=1, help="edge multiplicity N (cochain)")
    p.add_argument("--necklaces", help="semicolon-separated necklace expressions (cochain)")
    _add_common(p)

    p = sub.add_parser("ainf")
    p.add_argument("op", choices=("check", "cycle"))
    p.add_argument("--data", required=True)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--genus", type=int)
    p.add_argument("--faces", type=int)
    p.add_argument("--labels")
    p.add_argument("--min-valence", type=int, default=3)
    p.add_argument("--max-edges", type=int)
    _add_common(p)
    return ap


def _load_alg(path):
    q = Quiver.load(path)
    return NecklaceAlgebra(double(q))


def _parse_dims(alg, text):
    """'1' or '2' applies to all vertices; 'v=1,w=2' is per vertex."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" in chunk:
            dims = {}
            for part in chunk.split(","):
                k, v = part.split("=")
                dims[k.strip()] = int(v)
        else:
            dims = {v: int(chunk) for v in alg.dq.vertices}
        out.append(dims)
    return out


def cmd_algebra(args):
    alg = _load_alg(args.quiver)
    H = MoyalHopf(alg)
    P = parse_element(alg, args.lhs)
    if args.op in ("star", "bracket") and not args.rhs:
        raise QuiverError("%s needs -r/--rhs" % args.op)
    if args.op == "star":
        R = parse_element(alg, args.rhs)
        print(format_element(H.star(P, R)))
    elif args.op == "bracket":
        R = parse_element(alg, args.rhs)
        print(format_element(alg.bracket_sym(P, R)))
    elif args.op == "coprod":
        print(format_tensor(H.coproduct(P)))
    elif args.op == "cobracket":
        print(format_tensor(alg.cobracket_sym(P)))
    elif args.op == "antipode":
        print(format_element(H.antipode(P)))
    return 0


def cmd_verify(args):
    from . import sweeps
    alg = _load_alg(args.quiver)
    if args.suite == "hopf":
        checks = sweeps.hopf_checks(alg, max_len=args.max_len,
                                    random_cases=args.random_cases,
                                    random_len=args.random_len, seed=args.seed,
                                    quiver_path=args.quiver)
    elif args.suite == "limits":
        checks = sweeps.limit_checks(alg, max_len=args.max_len,
                                     random_cases=args.random_cases,
                                     random_len=args.random_len, seed=args.seed,
                                     quiver_path=args.quiver)
    else:
        dims_list = _parse_dims(alg, args.dims.replace(",", ";")
                                if "=" not in args.dims else args.dims)
        checks = sweeps.diagram_checks(alg, dims_list, max_len=args.max_len,
                                       quiver_path=args.quiver)
    if args.format == "json":
        print(json.dumps({
            "rng": "%s(seed=%d)" % (sweeps.RNG_NAME, args.seed),
            "checks": [{"name": c.name, "ok": c.ok, "cases": c.cases,
                        "counterexample": c.failure} for c in checks],
        }, indent=2))
    else:
        print("rng: %s(seed=%d)" % (sweeps.RNG_NAME, args.seed))
        for c in checks:
            print(c.report_line())
        if all(c.cases == 0 for c in checks):
            print("note: 0 cases (vacuous pass)")
    return 0 if all(c.ok for c in checks) else 1


def cmd_rep(args, which):
    from .repspace import RepSpace
    alg = _load_alg(args.quiver)
    H = MoyalHopf(alg)
    dims = _parse_dims(alg, args.dims)[0]
    rs = RepSpace(alg, dims)
    P = parse_element(alg, args.lhs)
    if which == "trace":
        print(repr(rs.trace_rep(P)))
    elif which == "moyal-classical":
        R = parse_element(alg, args.rhs)
        print(repr(rs.moyal_star_classical(rs.trace_rep(P), rs.trace_rep(R))))
    elif which == "weyl":
        print(repr(rs.weyl_symmetrize(rs.trace_rep(P))))
    elif which == "rho":
        terms = list(P.terms)
        if len(terms) != 1:
            raise QuiverError("rho needs a single multiset term")
        ms = terms[0]
        positions = [(i, j) for i, n in enumerate(ms) for j in range(len(n.word))]
        if args.heights:
            hs = [int(x) for x in args.heights.split(",")]
        else:
            hs = list(range(1, len(positions) + 1))
        if len(hs) != len(positions):
            raise QuiverError("need %d heights" % len(positions))
        print(repr(rs.rho(ms, dict(zip(positions, hs)))))
    return 0


def _ribbon_complex(args):
    from .ribbon.complexes import RibbonComplex
    G = X = None
    if args.graph or args.labels:
        if not (args.graph and args.labels):
            raise QuiverError("labeled complexes need both --graph and --labels")
        G = adjacency(Quiver.load(args.graph))
        X = tuple(x.strip() for x in args.labels.split(","))
    if args.genus is None or args.faces is None:
        raise QuiverError("need --genus and --faces")
    return RibbonComplex(args.genus, args.faces, args.min_valence, G=G, X=X,
                         max_edges=args.max_edges, cache_dir=args.cache_dir,
                         jobs=args.jobs)


def cmd_ribbon(args):
    if args.op == "cochain":
        return cmd_ribbon_cochain(args)
    if args.op == "enum":
        # every connected iso class, including nonorientable ones
        from .ribbon.census import labeled_classes, unlabeled_as_classes
        from .ribbon.complexes import bottom_degree, top_degree
        if args.genus is None or args.faces is None:
            raise QuiverError("need --genus and --faces")
        kmax = top_degree(args.genus, args.faces, args.min_valence)
        if kmax is None:
            if args.max_edges is None:
                raise QuiverError("valence-2 enumeration needs --max-edges")
            kmax = args.max_edges
        elif args.max_edges is not None:
            kmax = min(kmax, args.max_edges)
        kmin = bottom_degree(args.genus, args.faces)
        G = X = None
        if args.graph or args.labels:
            if not (args.graph and args.labels):
                raise QuiverError("labeled enumeration needs --graph and --labels")
            G = adjacency(Quiver.load(args.graph))
            X = tuple(x.strip() for x in args.labels.split(","))
        out = []
        for k in range(kmin, kmax + 1):
            if G is not None:
                classes = labeled_classes(k, args.min_valence, G, X,
                                          genus=args.genus)
            else:
                classes = unlabeled_as_classes(k, args.min_valence,
                                               genus=args.genus, faces=args.faces)
            for lg in classes:
                g = lg.graph
                out.append({
                    "edges": k, "vertices": g.num_vertices, "faces": g.num_faces,
                    "genus": g.genus(), "valences": list(g.valences()),
                    "aut_order": len(lg.auts), "orientable": lg.is_orientable(),
                    "gamma": [list(c) for c in g.vertices],
                    "iota": [list(e) for e in g.edges],
                    "labels": list(lg.face_labels),
                })
        if args.format == "json":
            print(json.dumps(out, indent=2))
        else:
            for item in out:
                print("edges=%d vertices=%d valences=%s |Aut|=%d orientable=%s labels=%s" % (
                    item["edges"], item["vertices"], item["valences"],
                    item["aut_order"], item["orientable"], item["labels"]))
        return 0
    cx = _ribbon_complex(args)
    if args.op == "boundary":
        for k in sorted(cx.matrices):
            print("# d: degree %d -> %d  (%d x %d)" % (
                k, k - 1, len(cx.basis.get(k - 1, ())), len(cx.basis.get(k, ()))))
            for row in cx.matrices[k]:
                print("\t".join(str(v) for v in row))
    elif args.op == "homology":
        cx.check_d_squared()
        table = cx.betti()
        if args.format == "json":
            print(json.dumps({str(k): {"dim": d, "betti": b}
                              for k, (d, b) in sorted(table.items())}, indent=2))
        else:
            print("degree\tdim\tbetti")
            for k, (d, b) in sorted(table.items()):
                print("%d\t%d\t%d" % (k, d, b))
    return 0


def cmd_ribbon_cochain(args):
    from .ribbon.census import canonical_labeled, unlabeled_as_classes
    from .ribbon.cochain import GraphCochain
    if not (args.ribbon and args.quiver and args.necklaces):
        raise QuiverError("cochain needs --ribbon, -q and --necklaces")
    with open(args.ribbon) as f:
        graph, labels = RibbonGraph.from_json(f.read())
    q = Quiver.load(args.quiver).multiply(args.mult)
    alg = NecklaceAlgebra(double(q))
    if labels is None:
        code, perms = graph.canonical()
        cg = RibbonGraph.from_code(code)
        p0 = perms[0]
        inv0 = [0] * graph.n
        for d, img in enumerate(p0):
            inv0[img] = d
        auts = [tuple(p[inv0[d]] for d in range(graph.n)) for p in perms]
        from .ribbon.census import LabeledRibbonGraph
        lg = LabeledRibbonGraph(cg, (None,) * cg.num_faces, code, auts)
    else:
        key = {v: i + 1 for i, v in enumerate(sorted(set(labels)))}
        lg = canonical_labeled(graph, labels, key)
    coch = GraphCochain(lg, alg)
    necks = []
    for chunk in args.necklaces.split(";"):
        el = parse_element(alg, chunk.strip())
        terms = list(el.terms)
        if len(terms) != 1 or len(terms[0]) != 1:
            raise QuiverError("each cochain argument must be a single necklace")
        necks.append(terms[0][0])
    print(coch.evaluate_wedge(necks))
    return 0


def cmd_ainf(args):
    from .ainf import build_cycle, check_ainf, cyclicity_check, load_data
    with open(args.data) as f:
        data = load_data(f.read())
    if args.op == "check":
        bad = check_ainf(data, args.n_max)
        cyc = cyclicity_check(data)
        if args.format == "json":
            print(json.dumps({
                "ainf_violations": [[n, list(seq), list(idx)] for n, seq, idx in bad],
                "cyclicity_violations": [[list(c), list(i)] for c, i in cyc],
            }, indent=2))
        else:
            print("A-infinity identities: %s (n <= %d)" %
                  ("pass" if not bad else "FAIL %d cases" % len(bad), args.n_max))
            print("cyclic symmetry:       %s" %
                  ("pass" if not cyc else "FAIL %d cases" % len(cyc)))
        return 0 if not (bad or cyc) else 1
    if args.genus is None or args.faces is None or not args.labels:
        raise QuiverError("cycle needs --genus, --faces, --labels")
    X = tuple(x.strip() for x in args.labels.split(","))
    with open(args.data) as f:
        blob = f.read()
    cx, chains, boundaries = build_cycle(data, args.genus, args.faces, X,
                                         min_valence=args.min_valence,
                                         max_edges=args.max_edges,
                                         cache_dir=args.cache_dir,
                                         jobs=args.jobs, data_blob=blob)
    ok = all(not any(v) for v in boundaries.values())
    if args.format == "json":
        print(json.dumps({
            "dims": {str(k): len(b) for k, b in cx.basis.items()},
            "chains": {str(k): [str(c) for c in v] for k, v in chains.items()},
            "boundary_zero": ok,
        }, indent=2))
    else:
        for k in sorted(chains):
            print("degree %d: %s" % (k, " ".join(str(c) for c in chains[k]) or "(empty)"))
        print("boundary of every chain is zero: %s" % ok)
    return 0 if ok else 1


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.cmd == "algebra":
            return cmd_algebra(args)
        if args.cmd == "verify":
            return cmd_verify(args)
        if args.cmd in ("trace", "moyal-classical", "weyl", "rho"):
            return cmd_rep(args, args.cmd)
        if args.cmd == "ribbon":
            return cmd_ribbon(args)
        if args.cmd == "ainf":
            return cmd_ainf(args)
        raise QuiverError("unknown command")
    except (QuiverError, RibbonError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
