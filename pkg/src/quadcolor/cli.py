"""Command-line front end.

Exit codes are the machine contract: 0 = Yes, 1 = No, 2 = heuristic
verdict, 3 = error (with a diagnostic line `error: <category>: <detail>` on
stderr).  Report text on stdout is human-oriented but line-stable so golden
tests can pin it.
"""

from __future__ import annotations

import argparse
import os
import sys

from .coloring import verify_coloring, winding_report
from .errors import BadParameters, QuadcolorError
from .files import parse_col, parse_emb, serialize_col, serialize_emb
from .generators import GeneratorSpec, generate
from .oracle import oracle_solve
from .solver import SolverConfig, solve
from .surgery import find_essential


class _Parser(argparse.ArgumentParser):
    # usage mistakes must exit 3, not argparse's default 2 (taken by
    # heuristic verdicts)
    def error(self, message):
        raise BadParameters(message)


def _build_parser():
    p = _Parser(prog="quadcolor", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("gen", help="generate a named instance family")
    q.add_argument("family")
    q.add_argument("params", nargs="*", type=int)
    q.add_argument("-o", "--out", help="write .emb here instead of stdout")

    q = sub.add_parser("faces", help="signature and face report")
    q.add_argument("emb")

    q = sub.add_parser("winding", help="necessary winding/parity report")
    q.add_argument("emb")
    q.add_argument("col")

    q = sub.add_parser("solve", help="decide extension of the cuff coloring")
    q.add_argument("emb")
    q.add_argument("col")
    q.add_argument("--budget", type=int, default=12, help="essential subgraph edge budget")
    q.add_argument("--heuristic-nu", type=int, default=None)
    q.add_argument("-o", "--out", help="write the coloring here on Yes")

    q = sub.add_parser("verify", help="check a full coloring (optionally against a precoloring)")
    q.add_argument("emb")
    q.add_argument("col")
    q.add_argument("--pre", help="precoloring the coloring must extend")

    q = sub.add_parser("oracle", help="exhaustive reference verdict")
    q.add_argument("emb")
    q.add_argument("col")

    q = sub.add_parser("essential", help="search for a connected essential subgraph")
    q.add_argument("emb")
    q.add_argument("--budget", type=int, required=True)
    return p


def _threads():
    raw = os.environ.get("QUADCOLOR_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise BadParameters("QUADCOLOR_THREADS must be an integer, got %r" % raw)
    if n < 1:
        raise BadParameters("QUADCOLOR_THREADS must be at least 1")
    return n


def _load_emb(path):
    with open(path) as fh:
        return parse_emb(fh.read())


def _load_col(path):
    with open(path) as fh:
        return parse_col(fh.read())


def _emit_coloring(col, out):
    if out:
        with open(out, "w") as fh:
            fh.write(serialize_col(col))
    else:
        sys.stdout.write(serialize_col(col))


def main(argv=None) -> int:
    try:
        return _run(argv)
    except QuadcolorError as e:
        print("error: %s: %s" % (e.category, e), file=sys.stderr)
        return 3
    except OSError as e:
        print("error: io: %s" % e, file=sys.stderr)
        return 3


def _run(argv):
    args = _build_parser().parse_args(argv)
    _threads()  # the hint caps parallelism; the current solvers are serial
    if args.cmd == "gen":
        g = generate(GeneratorSpec(args.family, tuple(args.params)))
        text = serialize_emb(g)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    if args.cmd == "faces":
        return _cmd_faces(args)
    if args.cmd == "winding":
        return _cmd_winding(args)
    if args.cmd == "solve":
        return _cmd_solve(args)
    if args.cmd == "verify":
        return _cmd_verify(args)
    if args.cmd == "oracle":
        return _cmd_oracle(args)
    return _cmd_essential(args)


def _cmd_faces(args):
    g = _load_emb(args.emb)
    sig = g.signature
    t = g.traced
    print("euler-genus: %d" % sig.euler_genus)
    print("orientable: %s" % ("yes" if sig.orientable else "no"))
    print("cuffs: %d" % sig.cuffs)
    print("faces: %d" % len(t.true_pairs))
    for p in t.true_pairs:
        print("face %s" % " ".join(str(g.dart_tail(d)) for d in t.pair_darts[p]))
    for w in g.cuffs:
        print("cuff %s" % " ".join(str(v) for v in g.walk_vertices(w)))
    return 0


def _cmd_winding(args):
    g = _load_emb(args.emb)
    psi = _load_col(args.col)
    r = winding_report(g, psi)
    print("verdict: %s" % r.verdict)
    print("per-boundary: %s" % " ".join(str(w) for w in r.per_boundary))
    print("total: %d" % r.total)
    if r.parity_p is not None:
        print("parity-p: %d" % r.parity_p)
    print("orientable: %s" % ("yes" if r.orientable else "no"))
    return 0


def _cmd_solve(args):
    g = _load_emb(args.emb)
    psi = _load_col(args.col)
    config = SolverConfig(essential_budget=args.budget, heuristic_nu=args.heuristic_nu)
    res = solve(g, psi, config)
    for line in res.describe():
        print(line)
    if res.coloring is not None:
        _emit_coloring(res.coloring, args.out)
    if res.heuristic:
        return 2
    return 0 if res.verdict == "Yes" else 1


def _cmd_verify(args):
    g = _load_emb(args.emb)
    col = _load_col(args.col)
    pre = _load_col(args.pre) if args.pre else None
    if verify_coloring(g, col, pre):
        print("verify: ok")
        return 0
    print("verify: FAILED")
    return 1


def _cmd_oracle(args):
    g = _load_emb(args.emb)
    psi = _load_col(args.col)
    res = oracle_solve(g, psi)
    print("verdict: %s" % res.verdict)
    if res.coloring is not None:
        sys.stdout.write(serialize_col(res.coloring))
    return 0 if res.verdict == "Yes" else 1


def _cmd_essential(args):
    g = _load_emb(args.emb)
    got = find_essential(g, args.budget)
    if got is None:
        print("essential: none within %d edges" % args.budget)
        return 1
    ids = sorted(got)
    vs = sorted({v for e in ids for v in g.edges[e]})
    print("essential: %d edges" % len(ids))
    print("edges: %s" % " ".join(str(e) for e in ids))
    print("vertices: %s" % " ".join(str(v) for v in vs))
    return 0


if __name__ == "__main__":
    sys.exit(main())
