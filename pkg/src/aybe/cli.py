"""Command-line front end.

Subcommands: enumerate, eval, verify, bundle-check, bundle-bd,
oracle-compare, report.  JSON is the single interchange format; complex
numbers are emitted as [re, im] pairs.  Exit codes: 0 on pass, 1 on
verification failure, 2 on usage or input errors.  All numeric output is
deterministic for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bundles, solutions, structures, verify
from .structures import InvalidStructure, OrderedBDStructure
from .tensors import Tensor2

_USAGE_ERROR = 2


class CliError(Exception):
    """Input or usage problem; reported as a structured diagnostic."""


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise CliError(f"cannot parse complex number from {text!r}; use RE or RE,IM")


def _complex_pairs(array: np.ndarray):
    out = np.stack([array.real, array.imag], axis=-1)
    return out.tolist()


def _tensor_doc(t: Tensor2) -> dict:
    return {"n": t.n, "coeffs": _complex_pairs(t.coeffs)}


def _read_source(args, attr: str, what: str) -> str:
    path = getattr(args, attr, None)
    if getattr(args, "stdin", False):
        return sys.stdin.read()
    if path is None:
        raise CliError(f"missing --{what} FILE (or --stdin)")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _load_structure(args):
    try:
        return structures.structure_from_json(_read_source(args, "structure", "structure"))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise CliError(f"malformed structure JSON: {exc}") from exc


def _load_matrix(args) -> bundles.SplittingMatrix:
    try:
        return bundles.SplittingMatrix.from_json(_read_source(args, "matrix", "matrix"))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise CliError(f"malformed matrix JSON: {exc}") from exc


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _as_ordered(obj) -> OrderedBDStructure:
    if isinstance(obj, OrderedBDStructure):
        return obj
    for alpha0 in sorted(obj.graph):
        if alpha0 not in obj.gamma2:
            return OrderedBDStructure(obj, alpha0)
    raise CliError("structure admits no marked edge outside Gamma2")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_enumerate(args) -> int:
    docs = [
        json.loads(structures.structure_to_json(bd))
        for bd in structures.enumerate_structures(args.n)
    ]
    if args.format == "text":
        lines = [f"{len(docs)} structures for n={args.n}"]
        lines += [json.dumps(d, sort_keys=True) for d in docs]
        _emit(args, "\n".join(lines))
    else:
        _emit(args, json.dumps(docs, sort_keys=True))
    return 0


_EVAL_KINDS = ("trig", "quantum", "classical", "multiplicative", "rational")


def _cmd_eval(args) -> int:
    kind = args.kind
    if kind == "rational":
        r = solutions.rational_R(args.n, args.c)
        t = r(_parse_complex(args.u), _parse_complex(args.v))
    else:
        obj = _load_structure(args)
        bd = obj.bd if isinstance(obj, OrderedBDStructure) else obj
        if kind == "trig":
            t = solutions.trigonometric_r(bd)(_parse_complex(args.u), _parse_complex(args.v))
        elif kind == "quantum":
            t = solutions.quantum_R(bd)(_parse_complex(args.u), _parse_complex(args.v))
        elif kind == "classical":
            t = solutions.classical_r0(bd)(_parse_complex(args.v))
        elif kind == "multiplicative":
            obd = _as_ordered(obj)
            t = solutions.multiplicative_r(obd)(
                _parse_complex(args.x), _parse_complex(args.y), _parse_complex(args.yp)
            )
        else:
            raise CliError(f"unknown eval kind {kind!r}")
    _emit(args, json.dumps(_tensor_doc(t), sort_keys=True))
    return 0


def _suite_runners(plan, tol, u_fixed):
    sol = solutions
    strict = verify.DEFAULT_TOL if tol is None else tol
    loose = verify.EXTRACTION_TOL if tol is None else tol
    return {
        "aybe": lambda bd, obd: verify.residual_aybe(sol.trigonometric_r(bd), plan, strict),
        "unitarity": lambda bd, obd: verify.residual_unitarity(sol.trigonometric_r(bd), plan, strict),
        "qybe": lambda bd, obd: verify.residual_qybe(sol.quantum_R(bd), u_fixed, plan, strict),
        "qybe-unitarity": lambda bd, obd: verify.residual_qybe_unitarity(sol.quantum_R(bd), plan, strict),
        "cybe": lambda bd, obd: verify.residual_cybe(sol.classical_r0(bd), plan, strict),
        "s-identity": lambda bd, obd: verify.residual_s_identity(sol.trigonometric_r(bd), plan, strict),
        "cubic": lambda bd, obd: verify.residual_cubic(sol.trigonometric_r(bd), plan, strict),
        "aybe2": lambda bd, obd: verify.residual_aybe2(sol.multiplicative_r(obd), plan, strict),
        "abc": lambda bd, obd: verify.residual_abc(obd, plan, strict),
        "laurent-identity": lambda bd, obd: verify.residual_laurent_identity(
            sol.trigonometric_r(bd), plan, loose
        ),
    }


def _cmd_verify(args) -> int:
    plan = verify.SamplePlan(seed=args.seed, count=args.samples)
    runners = _suite_runners(plan, args.tol, _parse_complex(args.u_fixed))
    names = list(runners) if args.suite == "all" else [args.suite]
    unknown = [s for s in names if s not in runners]
    if unknown:
        raise CliError(
            f"unknown suite {unknown[0]!r}; choose from {sorted(runners)} or 'all'"
        )

    if args.structure or args.stdin:
        obj = _load_structure(args)
        bds = [obj.bd if isinstance(obj, OrderedBDStructure) else obj]
        ordered = [obj if isinstance(obj, OrderedBDStructure) else None]
    else:
        bds, ordered = [], []
        for n in range(1, args.n_max + 1):
            for bd in structures.enumerate_structures(n):
                bds.append(bd)
                ordered.append(None)

    reports = []
    for bd, obd in zip(bds, ordered):
        for name in names:
            needs_order = name in ("aybe2", "abc")
            if needs_order and obd is None:
                try:
                    obd_run = _as_ordered(bd)
                except CliError:
                    continue
            else:
                obd_run = obd or _as_ordered(bd)
            reports.append(json.loads(runners[name](bd, obd_run).to_json()))

    doc = {"reports": reports, "pass": all(r["pass"] for r in reports)}
    if args.format == "text":
        lines = [
            f"{r['suite']}: max_residual={r['max_residual']:.3e} tol={r['tol']:g} "
            + ("pass" if r["pass"] else "FAIL")
            for r in reports
        ]
        lines.append("ALL PASS" if doc["pass"] else "FAILURES PRESENT")
        _emit(args, "\n".join(lines))
    else:
        _emit(args, json.dumps(doc, sort_keys=True))
    return 0 if doc["pass"] else 1


def _cmd_bundle_check(args) -> int:
    m = _load_matrix(args)
    flag, witness = bundles.is_simple(m)
    doc = {
        "simple": flag,
        "witness": list(witness) if witness else None,
        "row_sums": list(bundles.row_sums(m)),
    }
    if flag:
        doc["order"] = list(bundles.star_order(m))
        doc["row_sum_rule"] = bundles.row_sum_rule_holds(m)
    _emit(args, json.dumps(doc, sort_keys=True))
    return 0 if flag else 1


def _cmd_bundle_bd(args) -> int:
    m = _load_matrix(args)
    obd = bundles.bd_from_matrix(m)
    doc = json.loads(structures.structure_to_json(obd))
    doc["order"] = list(bundles.star_order(m))
    doc["realizable"] = bundles.realizable(obd)
    _emit(args, json.dumps(doc, sort_keys=True))
    return 0


def _cmd_oracle_compare(args) -> int:
    m = _load_matrix(args)
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    trials = 0
    rejects = 0
    while trials < args.trials:
        x, y, yp = (
            complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(3)
        )
        if min(abs(x ** m.n_rows - 1), abs(x), abs(y), abs(yp), abs(y - yp)) < 0.05:
            rejects += 1
            if rejects > 10_000:
                raise CliError("could not find guarded parameter triples")
            continue
        trials += 1
        worst = max(
            worst,
            bundles.massey_closed(m, x, y, yp).max_abs_diff(
                bundles.massey_oracle(m, x, y, yp)
            ),
        )
    doc = {
        "trials": trials,
        "seed": args.seed,
        "max_deviation": worst,
        "tol": args.tol,
        "pass": worst <= args.tol,
    }
    _emit(args, json.dumps(doc, sort_keys=True))
    return 0 if doc["pass"] else 1


def _cmd_report(args) -> int:
    text = _read_source(args, "infile", "in")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed report JSON: {exc}") from exc
    if args.format == "text":
        flag = doc.get("pass")
        _emit(
            args,
            f"suite={doc.get('suite')} seed={doc.get('seed')} samples={doc.get('samples')} "
            f"max_residual={doc.get('max_residual')} tol={doc.get('tol')} "
            + ("pass" if flag else "FAIL"),
        )
    else:
        _emit(args, json.dumps(doc, sort_keys=True))
    return 0 if doc.get("pass") else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aybe", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, structure=False, matrix=False):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=32)
        sp.add_argument("--tol", type=float, default=None,
                        help="residual tolerance (per-suite default when omitted)")
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--stdin", action="store_true", help="read JSON input from stdin")
        if structure:
            sp.add_argument("--structure", default=None, help="structure JSON file")
        if matrix:
            sp.add_argument("--matrix", default=None, help="splitting matrix JSON file")

    sp = sub.add_parser("enumerate", help="list structures for a given set size")
    sp.add_argument("--n", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=_cmd_enumerate)

    sp = sub.add_parser("eval", help="evaluate a solution family at a point")
    sp.add_argument("--kind", choices=_EVAL_KINDS, required=True)
    sp.add_argument("--u", default="0.9,0.3")
    sp.add_argument("--v", default="-0.7,0.4")
    sp.add_argument("--x", default="1.3,0.4")
    sp.add_argument("--y", default="0.8,-0.3")
    sp.add_argument("--yp", default="-1.1,0.6")
    sp.add_argument("--n", type=int, default=2, help="matrix size for the rational family")
    sp.add_argument("--c", type=complex, default=1.0)
    common(sp, structure=True)
    sp.set_defaults(fn=_cmd_eval)

    sp = sub.add_parser("verify", help="run residual suites")
    sp.add_argument("--suite", default="all")
    sp.add_argument("--u-fixed", dest="u_fixed", default="0.9,0.2")
    sp.add_argument("--n-max", dest="n_max", type=int, default=4,
                    help="largest set size when no structure is given")
    common(sp, structure=True)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("bundle-check", help="simplicity and order of a splitting matrix")
    common(sp, matrix=True)
    sp.set_defaults(fn=_cmd_bundle_check)

    sp = sub.add_parser("bundle-bd", help="combinatorial structure of a splitting matrix")
    common(sp, matrix=True)
    sp.set_defaults(fn=_cmd_bundle_bd)

    sp = sub.add_parser("oracle-compare", help="closed form vs gluing-system solve")
    sp.add_argument("--trials", type=int, default=16)
    common(sp, matrix=True)
    sp.set_defaults(fn=_cmd_oracle_compare)
    sp.set_defaults(tol=1e-9)

    sp = sub.add_parser("report", help="render a stored report")
    sp.add_argument("--in", dest="infile", default=None)
    common(sp)
    sp.set_defaults(fn=_cmd_report)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (CliError, InvalidStructure, solutions.PoleError, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return _USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
