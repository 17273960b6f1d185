"""Command-line interface: ``powerweight <subcommand> ...``.

Exit status is 0 on success, 1 on a domain or format error and 2 on a usage
error.  Data goes to stdout, diagnostics to stderr.  ``POWERWEIGHT_LOG``
(off/info/debug) sets diagnostic verbosity.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import os
import sys
from pathlib import Path

from powerweight import analysis, bm, engine
from powerweight.catalog import BM_VARIANTS, BmScheme, DocStats, Scheme, parse_scheme
from powerweight.errors import DomainError, EmptyCorpusError, FormatError
from powerweight.transforms import PowerParams, boxcox_transform, tukey_transform

logger = logging.getLogger("powerweight")

_LOG_LEVELS = {"off": logging.CRITICAL + 1, "info": logging.INFO, "debug": logging.DEBUG}


def _setup_logging() -> None:
    level = os.environ.get("POWERWEIGHT_LOG", "off").lower()
    logging.basicConfig(
        level=_LOG_LEVELS.get(level, logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _num(x: float) -> str:
    return f"{x:.6f}"


def cmd_transform(args) -> None:
    fn = tukey_transform if args.model == "tukey" else boxcox_transform
    print(_num(fn(args.y, PowerParams(args.p, args.k))))


def cmd_weigh(args) -> None:
    scheme = parse_scheme(args.scheme, apply_scale=args.scale)
    stats = DocStats(args.dl, args.avedl, args.avef)
    print(_num(scheme.weight(args.f, stats, raw=args.raw)))


def _profile_schemes(args):
    model = args.model
    if model in ("poisson2", "tukey", "boxcox"):
        if args.k is None or (model != "poisson2" and args.p is None):
            raise DomainError(f"{model} needs --k" + ("" if model == "poisson2" else " and --p"))
        ps = [None] if model == "poisson2" else args.p
        for p, k in itertools.product(ps, args.k):
            yield Scheme(model, p=p, k=k), 1.0
    elif model in BM_VARIANTS:
        b_values = args.b or [bm.DEFAULT_B]
        for k1, b, ratio in itertools.product(args.k1 or [bm.DEFAULT_K1], b_values, args.ratio):
            scale = True if args.scale else None
            yield BmScheme(model, bm.BmParams(k1, b, scale)), ratio
    else:
        yield parse_scheme(model), 1.0


def cmd_profile(args) -> None:
    if args.figure == 1:
        curves = analysis.figure1_curves(args.fmax)
    elif args.figure == 2:
        curves = analysis.figure2_curves(args.fmax)
    else:
        if args.model is None:
            raise DomainError("profile needs --model or --figure")
        stats = DocStats(args.dl, args.avedl, args.avef) if args.dl else None
        curves = [
            analysis.profile_curve(scheme, args.fmax, raw=args.raw, ratio=ratio, stats=stats)
            for scheme, ratio in _profile_schemes(args)
        ]
    if args.out is None:
        for curve in curves:
            params = " ".join(f"{k}={v:.6g}" for k, v in curve.parameters.items())
            print(f"# {curve.scheme} {params}".rstrip())
            print("f,L")
            for f, w in curve.points:
                print(f"{f},{_num(w)}")
        return
    manifest = analysis.write_curves(curves, args.out)
    for curve in curves:
        params = " ".join(f"{k}={v:.6g}" for k, v in curve.parameters.items())
        print(f"{Path(args.out) / (curve.stem + '.csv')}\t{params}")
    logger.info("wrote %d curves, manifest %s", len(curves), manifest)


def cmd_critical_k(args) -> None:
    k = analysis.critical_k(args.tol)
    print(_num(k))
    if args.report:
        print("k,delta1,delta2,argmax_n")
        for kk in (k - 0.1, k - 0.01, k, k + 0.01, k + 0.1):
            rep = analysis.increment_report(kk, 10)
            d = dict(rep.increments)
            print(f"{_num(kk)},{_num(d[1])},{_num(d[2])},{rep.argmax_n}")


def cmd_index(args) -> None:
    with open(args.corpus) as fh:
        index = engine.ingest_corpus(fh)
    engine.save_index(index, args.out)
    logger.info("indexed %d documents, avedl %.3f", index.N, index.avedl)
    print(f"{index.N} documents, {len(index.postings)} terms, avedl {_num(index.avedl)}")


def cmd_rank(args) -> None:
    index = engine.load_index(args.index)
    result = engine.rank_query(args.query, index, parse_scheme(args.scheme), args.top_k)
    sys.stdout.write(result.to_jsonl())


def cmd_compare(args) -> None:
    index = engine.load_index(args.index)
    a = engine.rank_query(args.query, index, parse_scheme(args.scheme_a), index.N)
    b = engine.rank_query(args.query, index, parse_scheme(args.scheme_b), index.N)
    if len(a.hits) >= 2:
        print(f"kendall_tau {_num(engine.kendall_tau(a.doc_ids, b.doc_ids))}")
    else:
        print("kendall_tau nan")
    print("rank,doc_a,score_a,doc_b,score_b")
    for rank, ((da, sa), (db, sb)) in enumerate(zip(a.hits[: args.top_k], b.hits[: args.top_k]), 1):
        print(f"{rank},{da},{_num(sa)},{db},{_num(sb)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="powerweight", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="evaluate a Tukey or Box-Cox transform")
    p.add_argument("--model", choices=("tukey", "boxcox"), required=True)
    p.add_argument("--p", type=float, required=True, help="power lambda1")
    p.add_argument("--k", type=float, required=True, help="shift lambda2")
    p.add_argument("--y", type=float, required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("weigh", help="evaluate a local weight scheme")
    p.add_argument("--scheme", required=True, help="e.g. loga, boxcox:-1:1, bm25:1.2:0.75")
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--dl", type=int, default=1, help="document length in tokens")
    p.add_argument("--avedl", type=float, default=None, help="average document length (default: --dl)")
    p.add_argument("--avef", type=float, default=1.0, help="mean term frequency in the document")
    p.add_argument("--raw", action="store_true", help="apply the formula literally at f=0")
    p.add_argument("--scale", action=argparse.BooleanOptionalAction, default=None,
                   help="force the (k1+1) factor on or off for BM schemes")
    p.set_defaults(func=cmd_weigh)

    p = sub.add_parser("profile", help="emit (f, L) profile curves as CSV")
    p.add_argument("--model", help="poisson2, tukey, boxcox, bm25, bm11, bm15, bm25ir or a scheme name")
    p.add_argument("--figure", type=int, choices=(1, 2), help="emit a preset curve family")
    p.add_argument("--p", type=float, nargs="+")
    p.add_argument("--k", type=float, nargs="+")
    p.add_argument("--k1", type=float, nargs="+")
    p.add_argument("--b", type=float, nargs="+")
    p.add_argument("--ratio", type=float, nargs="+", default=[1.0], help="dl/avedl")
    p.add_argument("--dl", type=int)
    p.add_argument("--avedl", type=float)
    p.add_argument("--avef", type=float, default=1.0)
    p.add_argument("--fmax", type=int, default=10)
    p.add_argument("--raw", action="store_true")
    p.add_argument("--scale", action="store_true", help="apply (k1+1) to BM25IR curves")
    p.add_argument("--out", help="directory for CSVs and manifest.json (default: stdout)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("critical-k", help="k below which the second occurrence gains most")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--report", action="store_true", help="print increments around the mark")
    p.set_defaults(func=cmd_critical_k)

    p = sub.add_parser("index", help="build an index from a JSONL corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("rank", help="rank documents for a query")
    p.add_argument("--index", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--scheme", default="bm25")
    p.add_argument("--top-k", type=int, default=10)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("compare", help="compare two schemes on one query")
    p.add_argument("--index", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--scheme-a", default="bm25")
    p.add_argument("--scheme-b", default="bm25ir")
    p.add_argument("--top-k", type=int, default=10)
    p.set_defaults(func=cmd_compare)
    return parser


def run(argv: list[str] | None = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    if getattr(args, "avedl", 0) is None and hasattr(args, "dl") and args.dl:
        args.avedl = float(args.dl)
    try:
        args.func(args)
    except (DomainError, FormatError, EmptyCorpusError) as exc:
        print(f"powerweight {args.command}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"powerweight {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
