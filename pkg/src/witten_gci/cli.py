"""Command line interface.

Exit codes: 0 success, 1 a checked condition failed, 2 input or parse
error, 3 internal invariant violation (the two genus routes disagree).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import kernel
from .cohomology import ModelError, dump_model, load_model, model_to_dict
from .corpus import CorpusError, corpus_regen, corpus_verify
from .families import bott_tower, projective_product
from .jobs import (
    EXIT_CONDITION, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK, JobError, JobSpec, canonical_json,
    chunk_vectors, default_q_order, iter_job,
)
from .genus import DualPathMismatch, SpinCError
from .conditions import SearchSpaceError


def _add_common(p: argparse.ArgumentParser, bundle=True):
    p.add_argument("--manifold", required=True, metavar="PATH", help="manifold description file")
    if bundle:
        p.add_argument("--bundle", nargs="*", type=int, default=[], metavar="INT",
                       help="roots of V, flattened; chunked by the number of generators")
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="witten-gci", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("genus", help="Witten genus of the intersection, both routes checked")
    _add_common(p)
    p.add_argument("--c1c", nargs="*", type=int, default=None, metavar="INT")
    p.add_argument("--q-order", type=int, default=None)

    p = sub.add_parser("phi-c", help="twisted Spin^c index phi^c(M; V, W)")
    _add_common(p)
    p.add_argument("--w-bundle", nargs="*", type=int, default=[], metavar="INT")
    p.add_argument("--c1c", nargs="*", type=int, default=None, metavar="INT",
                   help="Spin^c class; defaults to c1(V)")
    p.add_argument("--q-order", type=int, default=None)

    p = sub.add_parser("elliptic", help="elliptic genus of a spin manifold")
    _add_common(p, bundle=False)
    p.add_argument("--q-order", type=int, default=None)

    p = sub.add_parser("check", help="string conditions and theorem applicability")
    _add_common(p)
    p.add_argument("--require-string", action="store_true",
                   help="exit 1 unless w2(V)=w2(M) and p1(V)=p1(M)")

    p = sub.add_parser("fano", help="first Chern class of a complete intersection in CP^n")
    p.add_argument("--manifold", metavar="PATH", help="CP^n model (one generator)")
    p.add_argument("--n", type=int, default=None, help="ambient dimension instead of a model")
    p.add_argument("--bundle", nargs="+", type=int, required=True, metavar="INT", help="degrees")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("search", help="enumerate bundles satisfying the string conditions")
    _add_common(p, bundle=False)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--max-bundles", type=int, default=3)

    p = sub.add_parser("corpus", help="verify or regenerate the golden corpus")
    p.add_argument("action", choices=("verify", "regen"))
    p.add_argument("--corpus", default="corpus", metavar="DIR")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("model", help="write a manifold description file for a family")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--projective", nargs="+", type=int, metavar="N",
                   help="product of projective spaces CP^N1 x ...")
    g.add_argument("--bott", metavar="JSON",
                   help='generalized Bott stages, e.g. \'[[1, []], [2, [[1], [0]]]]\'')
    p.add_argument("--name", default=None)
    p.add_argument("-o", "--output", default=None, metavar="PATH")
    return parser


def _emit(payload: dict, fmt: str, out):
    if fmt == "json":
        out.write(canonical_json(payload) + "\n")
    else:
        out.write(_text(payload) + "\n")


def _text(p: dict) -> str:
    if "error" in p:
        return f"error: {p['error']}"
    cmd = p.get("command")
    if cmd in ("genus", "phi-c", "elliptic"):
        lines = [f"{p['manifold']}  V={p['bundle']}  q-order={p['q_order']}  path={p['path']}"]
        if cmd == "phi-c":
            lines[0] += f"  W={p['w_bundle']}  c1c={p['c1c']}"
        lines.append("  coefficients: " + ", ".join(p["coefficients"]))
        verdict = p["verdict"]
        if p.get("reason"):
            verdict += f" ({p['reason']})"
        lines.append(f"  verdict: {verdict}")
        if cmd == "genus":
            lines.append("  direct and lemma routes agree")
        return "\n".join(lines)
    if cmd == "check":
        w = p["witnesses"]
        mark = {True: "ok", False: "FAIL"}
        return "\n".join([
            f"{p['manifold']}  V={p['bundle']}",
            f"  w2: M={w['w2_M']}  V={w['w2_V']}  [{mark[p['w2_match']]}]",
            f"  p1: M={w['p1_M']}  V={w['p1_V']}  [{mark[p['p1_match']]}]",
            f"  X spin: {p['x_spin']}  theorem: {p['theorem_applicable']}"
            f"  predicts vanishing: {p['predicts_vanishing']}",
            *[f"  note: {n}" for n in p["notes"]],
        ])
    if cmd == "fano":
        return (f"CP{p['n']} degrees {p['degrees']}: c1 = {p['c1_coefficient']}u  "
                f"fano={p['fano']}  exceptional={p['exceptional']}")
    if cmd == "search":
        if p.get("done"):
            return f"# {p['count']} configurations"
        return " ".join("(" + ",".join(map(str, r)) + ")" for r in p["bundle"])
    return json.dumps(p, sort_keys=True)


def _run_model_command(args, out) -> int:
    try:
        if args.projective:
            M = projective_product(args.projective, name=args.name)
        else:
            stages = json.loads(args.bott)
            M = bott_tower([(n, tw) for n, tw in stages], name=args.name or "bott")
    except (ModelError, ValueError, TypeError) as exc:
        out.write(f"error: {exc}\n")
        return EXIT_INPUT
    if args.output:
        dump_model(M, args.output)
    else:
        out.write(json.dumps(model_to_dict(M), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _run_corpus(args, out) -> int:
    start = time.perf_counter()
    try:
        if args.action == "regen":
            names = corpus_regen(args.corpus)
            out.write(f"regenerated {len(names)} entries\n")
            return EXIT_OK
        results = corpus_verify(args.corpus, jobs=args.jobs)
    except CorpusError as exc:
        _emit({"error": str(exc), "kind": "input"}, args.format, out)
        return EXIT_INPUT
    failed = [r for r in results if r.status != "pass"]
    if args.format == "json":
        out.write(canonical_json({
            "entries": [r.to_dict() for r in results],
            "passed": len(results) - len(failed),
            "failed": len(failed),
        }) + "\n")
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            extra = f"  {r.detail}" if r.detail else ""
            out.write(f"{r.name:<{width}}  {r.status.upper()}{extra}\n")
        out.write(f"{len(results) - len(failed)}/{len(results)} passed in "
                  f"{time.perf_counter() - start:.2f}s ({kernel.backend_name()} kernel)\n")
    return EXIT_CONDITION if failed else EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "model":
        return _run_model_command(args, out)
    if args.command == "corpus":
        return _run_corpus(args, out)

    fmt = args.format
    try:
        if args.command == "fano" and args.manifold is None:
            if args.n is None:
                raise JobError("fano needs --manifold or --n")
            M = projective_product([args.n])
        else:
            M = load_model(args.manifold)
        request = JobSpec(command=args.command, manifold_file=args.manifold, format=fmt)
        m = M.ngens
        if hasattr(args, "bundle"):
            request.bundle = chunk_vectors(args.bundle, m)
        if getattr(args, "w_bundle", None):
            request.w_bundle = chunk_vectors(args.w_bundle, m, "w-bundle")
        if getattr(args, "c1c", None) is not None:
            if len(args.c1c) != m:
                raise JobError(f"--c1c needs {m} integers")
            request.c1c = list(args.c1c)
        if hasattr(args, "q_order"):
            request.q_order = args.q_order if args.q_order is not None else default_q_order()
        request.require_string = getattr(args, "require_string", False)
        if args.command == "search":
            request.max_degree, request.max_bundles = args.max_degree, args.max_bundles
        if args.command == "fano":
            request.n = args.n
        code = EXIT_OK
        for item_code, payload in iter_job(M, request.to_job()):
            _emit(payload, fmt, out)
            out.flush()
            code = max(code, item_code)
        return code
    except DualPathMismatch as exc:
        _emit({"error": str(exc), "kind": "internal"}, fmt, out)
        return EXIT_INTERNAL
    except (JobError, ModelError, SpinCError, SearchSpaceError, ValueError) as exc:
        _emit({"error": str(exc), "kind": "input"}, fmt, out)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
