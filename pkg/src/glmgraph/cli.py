"""Command-line interface.

Exit codes: 0 all requested verdicts decided, 1 input/parse/validation error,
2 at least one verdict undecided, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .classifier import (
    Config,
    analyze,
    certificate_from_dict,
    image_generators,
    matrix_strings,
    render_text,
)
from .errors import CapExceeded, GLMError, InternalInconsistency, ParseError, ValidationError
from .exact import rat_str
from .graph import load, reduce, serialize, spanning_tree, standard_presentation, tree_ball
from .matgroups import verify_certificate
from .modular import delta_affine, verify_presentation
from .randgraph import random_graph

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDED, EXIT_INTERNAL = 0, 1, 2, 3


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--max-closure", type=int, default=None)
    p.add_argument("--max-lattice-iters", type=int, default=64)
    p.add_argument("--witness-depth", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quiet", action="store_true")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="glmgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="full classification report")
    p.add_argument("files", nargs="+")
    p.add_argument("--write-certificates", metavar="DIR",
                   help="write each certificate to DIR/<stem>.<kind>.json")
    p = sub.add_parser("reduce", parents=[common], help="emit the reduced graph document")
    p.add_argument("file")
    p = sub.add_parser("delta", parents=[common], help="modular generators and affine rep")
    p.add_argument("file")
    p = sub.add_parser("tree", parents=[common], help="ball in the Bass-Serre tree")
    p.add_argument("file")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    p = sub.add_parser("certify", parents=[common], help="re-verify a certificate")
    p.add_argument("file")
    p.add_argument("--certificate", required=True)
    p = sub.add_parser("selfcheck", parents=[common],
                       help="random presentation and consistency checks")
    p.add_argument("--count", type=int, default=50)
    return parser


def _config(args):
    return Config(max_closure=args.max_closure, max_lattice_iters=args.max_lattice_iters,
                  witness_depth=args.witness_depth,
                  output_format="json" if args.json else "text")


def _emit(args, text):
    if not args.quiet:
        print(text)


def cmd_analyze(args):
    cfg = _config(args)
    reports = []
    for path in args.files:
        g = load(path)
        reports.append((path, analyze(g, cfg)))
    if args.write_certificates:
        os.makedirs(args.write_certificates, exist_ok=True)
        for path, rep in reports:
            stem = os.path.splitext(os.path.basename(path))[0]
            for kind, cert in rep.certificates.items():
                out = os.path.join(args.write_certificates, f"{stem}.{kind}.json")
                with open(out, "w") as fh:
                    json.dump(cert, fh, indent=2)
    if args.json:
        docs = [rep.to_dict() for _, rep in reports]
        _emit(args, json.dumps(docs[0] if len(docs) == 1 else docs, indent=2))
    else:
        _emit(args, "\n\n".join(f"== {path}\n{render_text(rep)}" if len(reports) > 1
                                else render_text(rep) for path, rep in reports))
    return EXIT_UNDECIDED if any(rep.undecided() for _, rep in reports) else EXIT_OK


def cmd_reduce(args):
    _emit(args, serialize(reduce(load(args.file))))
    return EXIT_OK


def cmd_delta(args):
    g = reduce(load(args.file))
    tree = spanning_tree(g)
    edge_ids, group, rep = image_generators(g, tree)
    delta = delta_affine(g, tree, rep)
    doc = {
        "base_vertex": rep.base_vertex,
        "tree_edges": sorted(tree.edges),
        "modular_generators": [{"edge": e, "matrix": matrix_strings(m)}
                               for e, m in zip(edge_ids, group.gens)],
        "affine": {k: {"translation": [rat_str(x) for x in v.translation],
                       "linear": matrix_strings(v.linear)}
                   for k, v in sorted(delta.images.items())},
    }
    if args.json:
        _emit(args, json.dumps(doc, indent=2))
    else:
        lines = [f"base vertex {rep.base_vertex}"]
        for gen in doc["modular_generators"]:
            lines.append(f"Delta(t[{gen['edge']}]) = {gen['matrix']}")
        for k, v in doc["affine"].items():
            lines.append(f"delta({k}) = (translation {v['translation']}, linear {v['linear']})")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_tree(args):
    g = load(args.file)
    ball = tree_ball(g, args.radius)
    if args.dot:
        _emit(args, ball.to_dot())
        return EXIT_OK
    per_depth = [sum(1 for nd in ball.nodes if nd.depth == d) for d in range(args.radius + 1)]
    doc = {"radius": args.radius, "center_type": ball.center.vertex_type,
           "center_degree": ball.center.degree, "vertices": len(ball.nodes),
           "vertices_per_depth": per_depth}
    if args.json:
        doc["nodes"] = [{"type": nd.vertex_type, "depth": nd.depth, "degree": nd.degree,
                         "path": [list(p) for p in nd.path]} for nd in ball.nodes]
        _emit(args, json.dumps(doc, indent=2))
    else:
        _emit(args, "\n".join(f"{k}: {v}" for k, v in doc.items()))
    return EXIT_OK


def cmd_certify(args):
    g = reduce(load(args.file))
    _, group, _ = image_generators(g)
    try:
        with open(args.certificate) as fh:
            cert = certificate_from_dict(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"unreadable certificate: {exc}", args.certificate) from None
    ok = verify_certificate(group, cert)
    _emit(args, json.dumps({"kind": cert.kind, "valid": ok}) if args.json
          else f"{cert.kind} certificate: {'valid' if ok else 'INVALID'}")
    return EXIT_OK if ok else EXIT_INPUT


def cmd_selfcheck(args):
    rng = random.Random(args.seed)
    cfg = _config(args)
    undecided = 0
    for _ in range(args.count):
        g = random_graph(rng)
        tree = spanning_tree(g)
        if not verify_presentation(delta_affine(g, tree), standard_presentation(g, tree)):
            raise InternalInconsistency("affine representation violates a relator")
        rep = analyze(g, cfg)
        if rep.verdict_triple() != analyze(reduce(g), cfg).verdict_triple():
            raise InternalInconsistency("verdicts changed under reduction")
        undecided += bool(rep.undecided())
    _emit(args, f"{args.count} random graphs checked, {undecided} with undecided verdicts")
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "reduce": cmd_reduce, "delta": cmd_delta,
            "tree": cmd_tree, "certify": cmd_certify, "selfcheck": cmd_selfcheck}


def cli_main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ParseError, ValidationError, CapExceeded, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GLMError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
