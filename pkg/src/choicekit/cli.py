"""Command-line interface.

Exit status: 0 success, 1 semantic negative (only with ``--strict`` or
``--check``), 2 usage or parse error, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import warnings
from typing import List, Optional

from .connectives import BUILTIN_LOGICS, UnknownConnectiveError, UnknownLogicError, builtin_registry, check_opt_ignoring
from .equivalence import (
    EQUIVALENT,
    ContextWitness,
    InterpretationWitness,
    OptionalityWitness,
    check_associative,
    degree_equivalent,
    fully_equivalent,
    strongly_equivalent,
)
from .generate import random_formula, variable_names
from .kernel import INF, interpretation, size_of
from .models import DEFAULT_VAR_CAP, EnumerationLimitError, degree_profile, interpretation_sort_key, preferred_models
from .reductions import ENCODING_TARGETS, LexInstance, LogBoundError, encode, lex_oracle, solve_via_encoding
from .semantics import compile_formula
from .synthesis import DegreeAssignment, UnobtainableDegreeError, synthesize
from .syntax import FormulaSyntaxError, parse, render

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
VAR_CAP_ENV = "CHOICEKIT_VAR_CAP"


class UsageError(Exception):
    pass


def jdeg(d):
    return "inf" if d is INF else d


def jinterp(i) -> list:
    return sorted(i)


def _read_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    return arg


def _read_json(path: str):
    try:
        with (sys.stdin if path == "-" else open(path, encoding="utf-8")) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from exc


def _formula(args, text):
    return parse(args.registry, _read_text(text))


def _witness_json(w, reg):
    if w is None:
        return None
    if isinstance(w, InterpretationWitness):
        return {
            "kind": "interpretation",
            "interpretation": jinterp(w.interpretation),
            "degrees": [jdeg(d) for d in w.degrees],
        }
    if isinstance(w, OptionalityWitness):
        return {"kind": "optionality", "optionalities": list(w.optionalities)}
    if isinstance(w, ContextWitness):
        return {
            "kind": "context",
            "context": render(w.context, reg),
            "path": list(w.path),
            "model": jinterp(w.model),
        }
    raise TypeError(type(w))


# --- subcommands ----------------------------------------------------------


def cmd_eval(args):
    f = _formula(args, args.formula)
    cf = compile_formula(args.registry, f)
    return {"degree": jdeg(cf.degree(interpretation(args.interpretation))), "optionality": cf.optionality}


def cmd_models(args):
    prof = degree_profile(args.registry, _formula(args, args.formula), args.var_cap)
    rows = sorted(prof.entries.items(), key=lambda kv: interpretation_sort_key(kv[0]))
    return {
        "variables": list(prof.variables),
        "optionality": prof.optionality,
        "profile": [{"interpretation": jinterp(i), "degree": jdeg(d)} for i, d in rows],
    }


def cmd_preferred(args):
    f = _formula(args, args.formula)
    prof = degree_profile(args.registry, f, args.var_cap)
    models = preferred_models(args.registry, f, args.var_cap)
    return {"min_degree": jdeg(prof.min_degree()), "models": [jinterp(m) for m in models]}


def cmd_equiv(args):
    a = _formula(args, args.a)
    b = _formula(args, args.b)
    check = {"degree": degree_equivalent, "full": fully_equivalent, "strong": strongly_equivalent}[args.kind]
    verdict = check(args.registry, a, b, args.var_cap)
    out = {"status": verdict.status, "method": verdict.method}
    if verdict.witness is not None:
        out["witness"] = _witness_json(verdict.witness, args.registry)
    negative = args.strict and verdict.status != EQUIVALENT
    return out, negative


def cmd_synth(args):
    try:
        table = DegreeAssignment.from_json(_read_json(args.table))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid degree table: {exc}") from exc
    f = synthesize(args.registry, table, iteration_bound=args.bound)
    return {"formula": render(f, args.registry), "size": size_of(f)}


def _instance(path):
    try:
        return LexInstance.from_json(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormulaSyntaxError):
            raise
        raise UsageError(f"invalid instance: {exc}") from exc


def cmd_reduce(args):
    inst = _instance(args.instance)
    target = args.target.upper()
    f = encode(inst, target, enforce_log_bound=not args.no_log_bound)
    return {"target": target, "formula": render(f, builtin_registry(target)), "size": size_of(f)}


def cmd_lexsolve(args):
    inst = _instance(args.instance)
    target = args.target.upper()
    answer = solve_via_encoding(inst, target, enforce_log_bound=not args.no_log_bound, var_cap=args.var_cap)
    out = {"answer": answer}
    negative = False
    if args.check:
        oracle = lex_oracle(inst, args.var_cap)
        expected = oracle is not None and inst.query in oracle[0]
        out["oracle_agrees"] = answer == expected
        negative = answer != expected
    return out, negative


def cmd_classify(args):
    reg = args.registry
    rows = []
    for spec in reg:
        ign = check_opt_ignoring(spec, args.k_max, args.d_max)
        assoc = check_associative(reg, spec.name, args.assoc_vars, args.var_cap)
        row = {
            "name": spec.name,
            "token": spec.token,
            "symbol": spec.symbol,
            "declared_associative": spec.declared_associative,
            "declared_opt_ignoring": spec.declared_opt_ignoring,
            "declared_opt_differentiating": spec.declared_opt_differentiating,
            "opt_ignoring_check": ign.status,
            "associativity_check": assoc.status,
        }
        if ign.witness:
            row["opt_ignoring_witness"] = {
                k: (jdeg(v) if k in ("m", "n") else {kk: jdeg(vv) for kk, vv in v.items()})
                for k, v in ign.witness.items()
            }
        if assoc.witness:
            w = assoc.witness
            row["associativity_witness"] = {
                "left_nested": render(w["left_nested"], reg),
                "right_nested": render(w["right_nested"], reg),
                **({"interpretation": jinterp(w["interpretation"]), "degrees": [jdeg(d) for d in w["degrees"]]}
                   if "interpretation" in w else {"optionalities": list(w["optionalities"])}),
            }
        rows.append(row)
    return {
        "logic": reg.name,
        "opt_ignoring": reg.opt_ignoring,
        "opt_differentiating": reg.opt_differentiating,
        "connectives": rows,
    }


def cmd_generate(args):
    rng = random.Random(args.seed)
    variables = variable_names(args.vars)
    formulas = []
    for _ in range(args.count):
        f = random_formula(rng, args.registry, rng.randint(1, args.size), variables)
        formulas.append(render(f, args.registry))
    return {"seed": args.seed, "formulas": formulas}


# --- plumbing -------------------------------------------------------------


def _default_var_cap() -> int:
    raw = os.environ.get(VAR_CAP_ENV)
    if raw is None:
        return DEFAULT_VAR_CAP
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{VAR_CAP_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--logic", default="qcl", type=str.lower,
                        choices=[l.lower() for l in BUILTIN_LOGICS], help="choice logic (default: qcl)")
    common.add_argument("--format", default="json", choices=["json", "text"])
    common.add_argument("--var-cap", type=int, default=None,
                        help=f"max variables to enumerate (default {DEFAULT_VAR_CAP}, env {VAR_CAP_ENV})")
    common.add_argument("--seed", type=int, default=0, help="seed for random generators")

    parser = argparse.ArgumentParser(prog="choicekit", description="Choice-logic reasoning engine.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="degree and optionality under one interpretation")
    p.add_argument("-i", "--interpretation", default="", help='comma-separated true atoms, e.g. "a,b"')
    p.add_argument("formula")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("models", parents=[common], help="degree under every interpretation")
    p.add_argument("formula")
    p.set_defaults(func=cmd_models)

    p = sub.add_parser("preferred", parents=[common], help="preferred models and minimum degree")
    p.add_argument("formula")
    p.set_defaults(func=cmd_preferred)

    p = sub.add_parser("equiv", parents=[common], help="degree, full or strong equivalence")
    p.add_argument("--kind", choices=["degree", "full", "strong"], default="strong")
    p.add_argument("--strict", action="store_true", help="exit 1 unless equivalent")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("synth", parents=[common], help="formula realizing a degree table")
    p.add_argument("table", help="DegreeAssignment JSON file ('-' for stdin)")
    p.add_argument("--bound", type=int, default=3, help="iteration bound for reachable degrees")
    p.set_defaults(func=cmd_synth)

    for name, helptext in (("reduce", "encode a lexicographic instance"),
                           ("lexsolve", "solve a lexicographic instance through its encoding")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("instance", help="LexInstance JSON file ('-' for stdin)")
        p.add_argument("--target", required=True, type=str.lower, choices=[t.lower() for t in ENCODING_TARGETS])
        p.add_argument("--no-log-bound", action="store_true",
                       help="allow QCL/CCL/SCCL encodings beyond the log bound")
        if name == "lexsolve":
            p.add_argument("--check", action="store_true", help="compare with the brute-force oracle")
        p.set_defaults(func=cmd_reduce if name == "reduce" else cmd_lexsolve)

    p = sub.add_parser("classify", parents=[common], help="connective flags and bounded checks")
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--d-max", type=int, default=4)
    p.add_argument("--assoc-vars", type=int, default=2)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("generate", parents=[common], help="random formulas")
    p.add_argument("--size", type=int, default=6, help="max atom occurrences")
    p.add_argument("--vars", type=int, default=3)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(func=cmd_generate)
    return parser


def _emit(out: dict, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(out, sort_keys=True, ensure_ascii=False) + "\n")
        return
    for key in sorted(out):
        value = out[key]
        if isinstance(value, (list, dict)):
            value = json.dumps(value, sort_keys=True, ensure_ascii=False)
        stream.write(f"{key}: {value}\n")


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.var_cap is None:
            args.var_cap = _default_var_cap()
        if args.var_cap < 1:
            raise UsageError("--var-cap must be >= 1")
        args.registry = builtin_registry(args.logic)
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda message, *_, **__: print(f"warning: {message}", file=stderr)
            result = args.func(args)
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_CAP
    except (UsageError, FormulaSyntaxError, UnknownConnectiveError, UnknownLogicError,
            LogBoundError, UnobtainableDegreeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    negative = False
    if isinstance(result, tuple):
        result, negative = result
    _emit(result, args.format, stdout)
    return EXIT_NEGATIVE if negative else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
