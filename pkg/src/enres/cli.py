"""Command-line interface: ``enres {table,verify,groebner,oracle,check-complex}``.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 on a usage error.  Output is deterministic for fixed flags and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import betti, complex as cx
from .constructions import (
    Instance,
    InstanceSpec,
    Verdict,
    regular_sequence_by_coprime_lt,
    transversal_by_support,
)
from .groebner import Ideal, buchberger, colon, failing_s_pairs, ideal_equal, transversal_oracle
from .orders import named_order
from .ring import Polynomial, format_polynomial, leading_monomial, parse_polynomial

DEFAULT_SEED = 20240611

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _spec(args) -> InstanceSpec:
    try:
        return InstanceSpec.parse(args.n, args.kind, args.ij)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, payload: dict, tsv_lines: List[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(tsv_lines))


def _mono_str(m, ring) -> str:
    return format_polynomial(Polynomial(ring, {m: 1}))


# ---------- subcommands ----------

def cmd_table(args) -> int:
    if args.n < 3:
        raise UsageError("table needs --n >= 3")
    spec = _spec(args)
    tab = betti.table(spec.n, spec.kind, spec.pivot)
    if args.format == "json":
        print(json.dumps(tab.to_dict(), indent=2, sort_keys=True))
    else:
        sys.stdout.write(tab.to_tsv())
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _spec(args)
    if spec.n < 3:
        raise UsageError("verify needs --n >= 3")
    if not 0 <= args.stages <= spec.n - 2:
        raise UsageError(f"--stages must lie in 0..{spec.n - 2}")
    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    rep = betti.pipeline_verify(spec, args.stages, trials=args.trials, seed=args.seed,
                                probe=args.trials > 0)
    payload = rep.to_dict()
    payload["seed"] = args.seed
    payload["trials"] = args.trials
    if not args.timings:
        for step in payload["steps"]:
            del step["seconds"]
    lines = [f"# {spec.label()} stages={args.stages} trials={args.trials} seed={args.seed}",
             "lemma\tpassed\tstep\tdetail"]
    for s in rep.steps:
        detail = ";".join(f"{k}={v}" for k, v in sorted(s.detail.items()))
        lines.append(f"{s.lemma}\t{'PASS' if s.passed else 'FAIL'}\t{s.name}\t{detail}")
    lines.append(f"final_ranks\t{rep.final_ranks}")
    for s in rep.failures():
        print(f"check failed: {s.lemma}: {s.name}", file=sys.stderr)
    if args.emit_complex:
        C = _pipeline_complex(spec, args.stages)
        with open(args.emit_complex, "w") as fh:
            fh.write(cx.dumps(C))
    _emit(args, payload, lines)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _pipeline_complex(spec: InstanceSpec, stages: int) -> cx.FreeComplex:
    inst = Instance(spec)
    C = cx.minimalize(cx.mapping_cone(cx.tau_chain_map(inst)))
    for s in range(1, stages + 1):
        nxt = inst.g_sequence[s + 1]
        C = cx.tensor_principal(C, inst.gi(nxt), tag=f"g{nxt}")
    return C


def _ideal_from_args(args, inst: Instance) -> List:
    if args.file:
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(str(exc)) from None
        try:
            return [parse_polynomial(line, inst.ring) for line in text.splitlines()
                    if line.strip() and not line.lstrip().startswith("#")]
        except ValueError as exc:
            raise UsageError(f"{args.file}: {exc}") from None
    name = args.ideal
    if name == "minors":
        return list(inst.minors)
    if name == "row":
        return list(inst.row_i)
    if name.startswith("stage:"):
        try:
            k = int(name.split(":", 1)[1])
            return inst.stage_generators(k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown ideal {name!r}; use minors, row, stage:K or --file")


def cmd_groebner(args) -> int:
    spec = _spec(args)
    inst = Instance(spec)
    try:
        order = named_order(args.order, inst.ring, *spec.pivot)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    gens = [g for g in _ideal_from_args(args, inst) if g]
    if not gens:
        raise UsageError("the ideal has no nonzero generators")
    bad = failing_s_pairs(gens, order)
    gb = buchberger(gens, order)
    payload = {
        "n": spec.n, "kind": spec.kind, "ij": list(spec.pivot), "order": order.name,
        "input_is_groebner": not bad,
        "failing_pairs": [list(p) for p in bad],
        "generators": [format_polynomial(g, order) for g in gens],
        "reduced_basis": [format_polynomial(g, order) for g in gb],
        "leading_monomials": [_mono_str(leading_monomial(g, order), inst.ring) for g in gb],
    }
    lines = [f"# {spec.label()} order={order.name} input_is_groebner={not bad}"]
    lines += [f"{_mono_str(leading_monomial(g, order), inst.ring)}\t{format_polynomial(g, order)}" for g in gb]
    _emit(args, payload, lines)
    return EXIT_OK


def _transversality_steps(inst: Instance, step: Optional[int]):
    n = inst.n
    steps = list(range(-1, n - 2)) if step is None else [step]
    for s in steps:
        if not -1 <= s <= n - 3:
            raise UsageError(f"--step must lie in -1..{n - 3} for transversality")
        if s == -1:
            I, nxt, order = inst.minors_ideal(), inst.spec.i, inst.order_a
            lemma = "transversal"
        else:
            I, nxt, order = inst.stage_ideal(s), inst.g_sequence[s + 2], inst.order_c
            lemma = "transint"
        yield s, lemma, I, Ideal.of([inst.gi(nxt)], inst.ring), nxt, order


def cmd_oracle(args) -> int:
    spec = _spec(args)
    inst = Instance(spec)
    ring = inst.ring
    results = []
    if args.check == "transversality":
        for s, lemma, I, J, nxt, order in _transversality_steps(inst, args.step):
            verdict = transversal_by_support(I, J, order)
            oracle = transversal_oracle(I, J, order)
            results.append({"step": s, "lemma": lemma, "next": f"g{nxt}", "order": order.name,
                            "support": str(verdict), "oracle": oracle,
                            "passed": verdict is Verdict.TRANSVERSAL and oracle})
    elif args.check == "colon":
        if args.step not in (None, 0):
            raise UsageError("--step is only meaningful for transversality")
        order = inst.order_c
        c = colon(inst.stage_ideal(-1), inst.gi(spec.j), order)
        ok = ideal_equal(c, inst.row_ideal(), order)
        results.append({"lemma": "colon", "order": order.name,
                        "expected": [format_polynomial(v) for v in inst.row_i],
                        "colon_basis": [format_polynomial(g, order) for g in c.groebner(order)],
                        "passed": ok})
    else:
        order = inst.order_b
        fam = inst.regular_sequence_family()
        ok = regular_sequence_by_coprime_lt(fam, order)
        results.append({"lemma": "height", "order": order.name,
                        "family": [format_polynomial(f, order) for f in fam],
                        "leading_monomials": [_mono_str(leading_monomial(f, order), ring) for f in fam],
                        "passed": ok})
    ok = all(r["passed"] for r in results)
    payload = {"n": spec.n, "kind": spec.kind, "ij": list(spec.pivot), "check": args.check,
               "ok": ok, "results": results}
    lines = [f"# {spec.label()} check={args.check}", "lemma\tpassed\tdetail"]
    for r in results:
        detail = ";".join(f"{k}={v}" for k, v in sorted(r.items()) if k not in ("lemma", "passed"))
        lines.append(f"{r['lemma']}\t{'PASS' if r['passed'] else 'FAIL'}\t{detail}")
        if not r["passed"]:
            print(f"check failed: {r['lemma']}", file=sys.stderr)
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check_complex(args) -> int:
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        C = cx.loads(text, check=False)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    rep = cx.verify_complex(C)
    payload = rep.to_dict()
    ok = rep.ok
    if args.trials > 0 and rep.ok:
        pr = cx.exactness_probe(C, trials=args.trials, seed=args.seed)
        payload["probe"] = pr.to_dict()
        ok = ok and pr.ok
    payload["seed"] = args.seed
    payload["ok"] = ok
    lines = [f"ranks\t{' '.join(map(str, rep.ranks))}",
             f"square_zero\t{'PASS' if rep.ok else 'FAIL'}",
             f"minimal\t{rep.minimal}", f"euler\t{rep.euler}"]
    for k, rc in rep.square_failures:
        lines.append(f"d[{k}]d[{k + 1}] nonzero at\t{rc}")
    if "probe" in payload:
        lines.append(f"probe\t{payload['probe']['passed']}/{payload['probe']['trials']}")
    lines += [f"h0\t{g}" for g in rep.h0_basis]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


# ---------- parser ----------

def _instance_flags(p: argparse.ArgumentParser, need_n: bool = True) -> None:
    p.add_argument("--n", type=int, required=need_n, help="matrix size n")
    p.add_argument("--kind", choices=("generic", "symmetric"), default="generic")
    p.add_argument("--ij", default="1,2", help="pivot rows as 'i,j' with i < j")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enres",
        description="Resolutions and Betti numbers of I_2(X~_ij) + <entries of XY>.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="Betti table from the closed forms")
    _instance_flags(p)
    p.add_argument("--format", choices=("json", "tsv"), default="tsv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="build and check the resolution pipeline")
    _instance_flags(p)
    p.add_argument("--stages", type=int, default=0, help="tensor steps after the cone (0..n-2)")
    p.add_argument("--trials", type=int, default=3, help="exactness probe trials (0 disables)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("json", "tsv"), default="tsv")
    p.add_argument("--emit-complex", metavar="PATH", help="write the final complex in text form")
    p.add_argument("--timings", action="store_true",
                   help="include per-step wall time in JSON output (breaks byte-identical reruns)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("groebner", help="reduced Groebner basis of a named ideal or a file")
    _instance_flags(p)
    p.add_argument("--ideal", default="minors", help="minors, row or stage:K (K = -2..n-2)")
    p.add_argument("--file", help="one polynomial per line; overrides --ideal")
    p.add_argument("--order", default="A", help="A, B, C or default")
    p.add_argument("--format", choices=("json", "tsv"), default="tsv")
    p.set_defaults(func=cmd_groebner)

    p = sub.add_parser("oracle", help="transversality, colon or regular-sequence checks")
    _instance_flags(p)
    p.add_argument("--check", choices=("transversality", "colon", "regseq"), required=True)
    p.add_argument("--step", type=int, default=None,
                   help="transversality step: -1 for I_2 vs g_i, s >= 0 for stage s vs the next g")
    p.add_argument("--format", choices=("json", "tsv"), default="tsv")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check-complex", help="verify a complex written by verify --emit-complex")
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("json", "tsv"), default="tsv")
    p.set_defaults(func=cmd_check_complex)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"enres: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
