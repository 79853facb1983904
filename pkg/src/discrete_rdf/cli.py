"""Command-line front end.

Exit codes: 0 success, 1 an asserted inequality failed or a reference value
did not match, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import extrapolation as ex
from . import falsifier as fz
from . import weights as wts
from .errors import BadSpec, DiscreteRdfError
from .generators import parse_spec, power_family, write_values
from .operators import apply_operator, estimate_operator_norm
from .rdf import RdfConfig, rdf_dual_iterate, rdf_iterate
from .report import FORMATS, emit_report

__all__ = ["main", "build_parser"]


class UsageError(DiscreteRdfError):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise BadSpec(f"expected comma-separated numbers, got {text!r}") from None


def _vector(spec: str, n: Optional[int]):
    """A generator spec, or an inline comma-separated list of numbers."""
    if ":" not in spec:
        return wts.Weight(_floats(spec), label="inline")
    return parse_spec(spec, n)


def _common(p: argparse.ArgumentParser, *names: str):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--threads", type=int, default=None,
                   help="accepted for compatibility; computations are single-threaded")
    if "n" in names:
        p.add_argument("--n", type=int, default=None, help="truncation length N")
    if "p" in names:
        p.add_argument("--p", type=float, required=True)
    if "p0" in names:
        p.add_argument("--p0", type=float, required=True)
    if "budget" in names:
        p.add_argument("--budget", type=int, default=20000)
    if "safety" in names:
        p.add_argument("--safety", type=float, default=1.5)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discrete-rdf",
        description="Truncated discrete Muckenhoupt weights, maximal operators and extrapolation.")
    sub = parser.add_subparsers(dest="command", required=True)

    norm = sub.add_parser("norm", help="class constants of a weight")
    nsub = norm.add_subparsers(dest="verb", required=True)
    for verb, needs_p in (("ap", True), ("a1", False), ("ainf", False), ("bp", True)):
        q = nsub.add_parser(verb)
        _common(q, "n", *(("p",) if needs_p else ()))
        q.add_argument("--weight", required=True)
        q.add_argument("--per-n", action="store_true", help="include the per-window values")
        if verb == "bp":
            q.add_argument("--no-analytic-tail", action="store_true")
    q = nsub.add_parser("profile")
    _common(q, "n")
    q.add_argument("--weight", required=True)
    q.add_argument("--p-grid", required=True, help="comma-separated increasing exponents")

    op = sub.add_parser("op", help="apply operators or estimate their norms")
    osub = op.add_subparsers(dest="verb", required=True)
    q = osub.add_parser("apply")
    _common(q, "n")
    q.add_argument("--op", required=True,
                   choices=("hardy", "maximal", "dual_maximal", "weighted_maximal", "identity"))
    q.add_argument("--f", required=True)
    q.add_argument("--weight", default=None)
    q = osub.add_parser("norm-est")
    _common(q, "n", "p", "budget")
    q.add_argument("--op", required=True, choices=("hardy", "maximal", "dual_maximal"))
    q.add_argument("--weight", required=True)

    rdf = sub.add_parser("rdf", help="Rubio de Francia iteration")
    rsub = rdf.add_subparsers(dest="verb", required=True)
    for verb in ("iterate", "dual"):
        q = rsub.add_parser(verb)
        _common(q, "n", "p", "budget", "safety")
        q.add_argument("--h", required=True)
        q.add_argument("--weight", required=True)
        q.add_argument("--K", type=float, default=None,
                       help="operator-norm constant; estimated times --safety when omitted")
        q.add_argument("--max-terms", type=int, default=40)
        q.add_argument("--include-iterate", action="store_true")

    ext = sub.add_parser("extrapolate", help="factorization lemmas and transfer constants")
    esub = ext.add_subparsers(dest="verb", required=True)
    for verb in ("lemma-lstar", "lemma-l1star"):
        q = esub.add_parser(verb)
        _common(q, "n", "p", "p0", "budget", "safety")
        q.add_argument("--h", required=True)
        q.add_argument("--weight", required=True)
        q.add_argument("--K", type=float, default=None)
        q.add_argument("--max-terms", type=int, default=40)
    q = esub.add_parser("constant")
    _common(q, "p", "p0")
    q.add_argument("--phi0", required=True, help="linear:c=<f> | power:c=<f>,a=<f> | const:c=<f>")
    q.add_argument("--K", type=float, required=True)
    q.add_argument("--apw", type=float, required=True)
    q = esub.add_parser("verify")
    _common(q, "n", "p", "p0", "budget", "safety")
    q.add_argument("--op", required=True, choices=("hardy", "maximal", "identity"))
    q.add_argument("--weights-p0", nargs="+", default=None,
                   help="weight specs for stage 1 (default: a power-weight family)")
    q.add_argument("--weights-p", nargs="+", default=None,
                   help="weight specs for stage 2 (default: a power-weight family)")

    ce = sub.add_parser("counterexample", help="discrete Hardy-type inequality instances")
    _common(ce)
    ce.add_argument("--paper", action="store_true", help="evaluate the four reference instances")
    csub = ce.add_subparsers(dest="verb")
    q = csub.add_parser("eval")
    _common(q)
    q.add_argument("--form", required=True, choices=fz.FORMS)
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--beta", type=float, required=True)
    q.add_argument("--v", required=True)
    q.add_argument("--lambda", dest="lam", default=None)
    q = csub.add_parser("search")
    _common(q, "n", "budget")
    q.add_argument("--form", required=True, choices=fz.FORMS)
    q.add_argument("--alpha", type=float, required=True)
    q.add_argument("--beta", type=float, required=True)

    gen = sub.add_parser("generate", help="write a weight or sequence file from a spec")
    _common(gen, "n")
    gen.add_argument("--weight", required=True)
    gen.add_argument("--header", default="w")
    return parser


def _run_config(args, argv) -> dict:
    cfg = {"command": " ".join(argv), "seed": args.seed, "output_format": args.format,
           "threads": 1, "tolerances": {}}
    for key in ("n", "p", "p0", "budget", "safety"):
        if hasattr(args, key):
            cfg[key] = getattr(args, key)
    return cfg


def _estimate_K(op, w, p, args):
    return estimate_operator_norm(op, w, p, args.budget, args.seed).value * args.safety


def _dispatch(args):
    """Returns ``(record, ok)``; ``ok = False`` maps to exit code 1."""
    cmd, verb = args.command, getattr(args, "verb", None)

    if cmd == "norm":
        w = _vector(args.weight, args.n)
        if verb == "profile":
            reports = wts.ap_norm_profile(w, _floats(args.p_grid))
            return [r.to_dict(args.per_n if hasattr(args, "per_n") else False)
                    for r in reports], True
        if verb == "ap":
            rep = wts.ap_norm(w, args.p)
        elif verb == "a1":
            rep = wts.a1_norm(w)
        elif verb == "ainf":
            rep = wts.ainf_norm(w)
        else:
            rep = wts.bp_constant(w, args.p, analytic_tail=not args.no_analytic_tail)
        return rep.to_dict(include_per_n=args.per_n), True

    if cmd == "op":
        if verb == "apply":
            f = _vector(args.f, args.n)
            w = None if args.weight is None else _vector(args.weight, len(f))
            out = apply_operator(args.op, f, w)
            return {"op": args.op, "f": np.asarray(f), "result": out}, True
        w = _vector(args.weight, args.n)
        return estimate_operator_norm(args.op, w, args.p, args.budget, args.seed), True

    if cmd == "rdf":
        w = _vector(args.weight, args.n)
        h = _vector(args.h, len(w))
        if verb == "iterate":
            K = args.K or _estimate_K("maximal", w, args.p, args)
            res = rdf_iterate(h, w, args.p, RdfConfig(K, args.max_terms))
        else:
            K = args.K or _estimate_K("dual_maximal", w, wts.conjugate(args.p), args)
            res = rdf_dual_iterate(h, w, args.p, RdfConfig(K, args.max_terms))
        ok = all(c["holds"] for c in res.checks.values())
        return (res.to_dict(include_iterate=True) if args.include_iterate else res), ok

    if cmd == "extrapolate":
        if verb == "constant":
            return ex.transfer_constant(args.p0, args.p, args.phi0, args.K, args.apw), True
        if verb == "verify":
            n = args.n or 512
            w0 = ([_vector(s, n) for s in args.weights_p0] if args.weights_p0
                  else power_family(n, args.p0))
            w1 = ([_vector(s, n) for s in args.weights_p] if args.weights_p
                  else power_family(n, args.p))
            rep = ex.extrapolation_verify(args.op, w0, w1, args.p0, args.p,
                                          budget=min(args.budget, 2000), seed=args.seed,
                                          safety=args.safety, K_budget=args.budget)
            return rep, not rep.violations
        w = _vector(args.weight, args.n)
        h = _vector(args.h, len(w))
        if verb == "lemma-lstar":
            K = args.K or _estimate_K("maximal", w, args.p, args)
            rep = ex.lemma_lstar_check(w, h, args.p, args.p0, RdfConfig(K, args.max_terms))
        else:
            K = args.K or _estimate_K("dual_maximal", w, wts.conjugate(args.p), args)
            rep = ex.lemma_l1star_check(w, h, args.p, args.p0, RdfConfig(K, args.max_terms))
        return rep, rep.holds

    if cmd == "counterexample":
        if args.paper:
            recs = fz.reference_instances()
            return recs, all(r["matches"] for r in recs)
        if verb == "eval":
            lam = None if args.lam is None else np.asarray(_vector(args.lam, None))
            inst = fz.InequalityInstance(args.form, args.alpha, args.beta,
                                         np.asarray(_vector(args.v, None)), lam)
            rec = inst.to_dict()
            return rec, not rec["violated"]
        if verb == "search":
            if args.n is None:
                raise UsageError("counterexample search needs --n")
            return fz.violation_search(args.form, args.n, args.alpha, args.beta,
                                       args.budget, args.seed), True
        raise UsageError("counterexample needs --paper, eval or search")

    if cmd == "generate":
        return parse_spec(args.weight, args.n), True
    raise UsageError(f"unknown command {cmd!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if os.environ.get("MK_SEED"):
        try:
            args.seed = int(os.environ["MK_SEED"])
        except ValueError:
            print(f"error: MK_SEED must be an integer, got {os.environ['MK_SEED']!r}",
                  file=sys.stderr)
            return 2
    if args.command == "counterexample" and args.paper and getattr(args, "verb", None):
        print("error: --paper cannot be combined with eval or search", file=sys.stderr)
        return 2
    try:
        record, ok = _dispatch(args)
        if args.command == "generate":
            if args.out:
                write_values(args.out, record.values, args.header)
                return 0
            text = "\n".join([args.header] + [repr(float(x)) for x in record.values]) + "\n"
        else:
            text = emit_report(record, args.format, config=_run_config(args, argv))
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except DiscreteRdfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
