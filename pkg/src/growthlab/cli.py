"""Command-line front end.

Specs are single JSON documents with a "type" field; see parse_spec.
Commands: table, mdeg, asymptote, growth-type, check, irreducibles.
Exit codes: 0 success, 2 spec validation failure, 3 command/spec mismatch,
4 nothing verified (check).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .arith import prime_power_decompose
from .groups import (
    GroupDescriptor,
    NilpotentGf,
    SemidirectFgAbelian,
    WreathCyclic,
    ZkByZ,
    asymptotic_leading,
    growth_table,
    max_subgroups,
    mdeg,
)
from .modules import (
    MatrixAction,
    Presented,
    count_max_submodules,
    fiber_mod_p,
    growth_type_classify,
    module_invariants,
)
from .oracle import (
    SUBSPACE_STATE_BOUND,
    OracleBoundError,
    oracle_count_max_submodules,
)
from .poly import DEFAULT_SEED, count_irreducibles, parse_poly


class SpecError(ValueError):
    """Spec file failed validation; message names the offending field."""


SPEC_TYPES = (
    "zk_by_z",
    "semidirect",
    "wreath_cyclic",
    "nilpotent_gf",
    "module_matrix",
    "module_presented",
)


def _require(doc, field, kind, typename):
    if field not in doc:
        raise SpecError(f"{typename} spec is missing required field '{field}'")
    value = doc[field]
    if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
        raise SpecError(f"field '{field}' must be an integer")
    if kind is list and not isinstance(value, list):
        raise SpecError(f"field '{field}' must be an array")
    if kind is dict and not isinstance(value, dict):
        raise SpecError(f"field '{field}' must be an object")
    return value


def _int_matrix(value, field):
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise SpecError(f"field '{field}' must be an array of integer rows")
    for r in value:
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool):
                raise SpecError(f"field '{field}' must contain only integers")
    return tuple(tuple(r) for r in value)


def _matrix_action(doc, typename, group_action):
    actions = _require(doc, "actions", list, typename)
    actions = tuple(_int_matrix(a, f"actions[{i}]") for i, a in enumerate(actions))
    torsion = tuple(doc.get("torsion", []))
    if actions and actions[0]:
        size = len(actions[0])
    else:
        size = 0
    k = size - len(torsion)
    if k < 0:
        raise SpecError("field 'torsion' is longer than the action matrix size")
    try:
        return MatrixAction(
            k=k, torsion=torsion, actions=actions, group_action=group_action
        )
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


def parse_spec(doc) -> GroupDescriptor | MatrixAction | Presented:
    if not isinstance(doc, dict):
        raise SpecError("spec must be a JSON object")
    typename = doc.get("type")
    if typename not in SPEC_TYPES:
        raise SpecError(
            f"field 'type' must be one of {', '.join(SPEC_TYPES)}; got {typename!r}"
        )
    try:
        if typename == "zk_by_z":
            matrix = _int_matrix(_require(doc, "matrix", list, typename), "matrix")
            torsion = tuple(doc.get("torsion", []))
            k = len(matrix) - len(torsion)
            return ZkByZ(
                MatrixAction(
                    k=k, torsion=torsion, actions=(matrix,), group_action=True
                )
            )
        if typename == "semidirect":
            module = _matrix_action(doc, typename, group_action=True)
            return SemidirectFgAbelian(
                module=module,
                acting_rank=_require(doc, "acting_rank", int, typename),
                acting_torsion=tuple(doc.get("acting_torsion", [])),
            )
        if typename == "wreath_cyclic":
            return WreathCyclic(m=_require(doc, "m", int, typename))
        if typename == "nilpotent_gf":
            ell = _require(doc, "ell", int, typename)
            f_raw = doc.get("f", {})
            if not isinstance(f_raw, dict):
                raise SpecError("field 'f' must be an object mapping 'i,j' to vectors")
            f_vectors = {}
            for key, vec in f_raw.items():
                parts = key.split(",")
                if len(parts) != 2:
                    raise SpecError(f"f key {key!r} is not of the form 'i,j'")
                try:
                    pair = (int(parts[0]), int(parts[1]))
                except ValueError as exc:
                    raise SpecError(f"f key {key!r} is not a pair of integers") from exc
                f_vectors[pair] = tuple(vec)
            return NilpotentGf(ell=ell, f_vectors=f_vectors)
        if typename == "module_matrix":
            return _matrix_action(
                doc, typename, group_action=bool(doc.get("group_action", False))
            )
        # module_presented
        gens = _require(doc, "gens", int, typename)
        raw = doc.get("relations", [])
        if not isinstance(raw, list):
            raise SpecError("field 'relations' must be an array")
        columns = []
        for i, rel in enumerate(raw):
            if isinstance(rel, str):
                rel = [rel]
            if not isinstance(rel, list) or len(rel) != gens:
                raise SpecError(
                    f"relations[{i}] must give one polynomial per generator"
                )
            try:
                columns.append([tuple(parse_poly(s)) for s in rel])
            except ValueError as exc:
                raise SpecError(f"relations[{i}]: {exc}") from exc
        rows = tuple(
            tuple(columns[c][r] for c in range(len(columns))) for r in range(gens)
        )
        return Presented(gens=gens, relations=rows)
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


def load_spec(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read spec file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec file is not valid JSON: {exc}") from exc
    return parse_spec(doc)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GROWTHLAB_SEED")
    if env is not None:
        try:
            return int(env, 0)
        except ValueError as exc:
            raise SpecError(f"GROWTHLAB_SEED is not an integer: {env!r}") from exc
    return DEFAULT_SEED


def cmd_table(args) -> int:
    desc = load_spec(args.spec)
    seed = _resolve_seed(args)
    if args.max_n < 2:
        raise SpecError(f"--max-n must be >= 2, got {args.max_n}")
    report = growth_table(desc, args.max_n, seed=seed)
    if args.format == "csv":
        lines = ["n,p,k,count,mtriv,mnontriv,exact"]
        for r in report.rows:
            lines.append(
                f"{r.n},{r.p},{r.k},{r.count},{r.mtriv},{r.mnontriv},"
                f"{'true' if r.exact else 'false'}"
            )
        out = "\n".join(lines) + "\n"
    else:
        doc = {
            "seed": seed,
            "rows": [
                {
                    "n": r.n,
                    "p": r.p,
                    "k": r.k,
                    "count": r.count,
                    "mtriv": r.mtriv,
                    "mnontriv": r.mnontriv,
                    "exact": r.exact,
                }
                for r in report.rows
            ],
            "exactness": report.exactness,
        }
        if report.mdeg is not None:
            doc["mdeg"] = {
                "value": report.mdeg.value,
                "provenance": report.mdeg.provenance,
                "exactness": report.mdeg.exactness,
            }
        if report.asymptotic is not None:
            doc["asymptotic"] = {
                "rho1": report.asymptotic[0],
                "d": report.asymptotic[1],
            }
        if report.growth_type is not None:
            doc["growth_type"] = str(report.growth_type)
        out = json.dumps(doc, indent=2) + "\n"
    sys.stdout.write(out)
    return 0


def cmd_mdeg(args) -> int:
    desc = load_spec(args.spec)
    seed = _resolve_seed(args)
    doc = {"seed": seed}
    if isinstance(desc, (ZkByZ, SemidirectFgAbelian, WreathCyclic, NilpotentGf)):
        result = mdeg(desc, seed=seed)
        doc["mdeg"] = result.value
        doc["provenance"] = result.provenance
        doc["exactness"] = result.exactness
        if isinstance(desc, ZkByZ):
            rho1, d = asymptotic_leading(desc)
            doc["rho1"] = rho1
            doc["d"] = d
    else:
        sys.stderr.write("mdeg applies to group specs, not bare modules\n")
        return 3
    sys.stdout.write(json.dumps(doc) + "\n")
    return 0


def cmd_asymptote(args) -> int:
    desc = load_spec(args.spec)
    if not isinstance(desc, ZkByZ):
        sys.stderr.write("asymptote applies only to zk_by_z specs\n")
        return 3
    rho1, d = asymptotic_leading(desc)
    sys.stdout.write(json.dumps({"rho1": rho1, "d": d}) + "\n")
    return 0


def cmd_growth_type(args) -> int:
    desc = load_spec(args.spec)
    if not isinstance(desc, Presented):
        sys.stderr.write("growth-type applies only to module_presented specs\n")
        return 3
    gt = growth_type_classify(desc)
    sys.stdout.write(
        json.dumps(
            {
                "growth_type": str(gt),
                "kind": gt.kind,
                "degree": gt.degree,
                "d": gt.d,
                "r_max": gt.r_max,
                "r0": gt.r0,
            }
        )
        + "\n"
    )
    return 0


def cmd_check(args) -> int:
    desc = load_spec(args.spec)
    seed = _resolve_seed(args)
    if isinstance(desc, WreathCyclic):
        desc = desc.expand()
    if isinstance(desc, (ZkByZ, SemidirectFgAbelian)):
        module = desc.module
    elif isinstance(desc, MatrixAction):
        module = desc
    else:
        sys.stderr.write(
            "check needs a descriptor with an explicit matrix module\n"
        )
        return 3
    lines = []
    checked = 0
    failed = 0
    for n in range(2, args.max_n + 1):
        pp = prime_power_decompose(n)
        if pp is None:
            continue
        fib = fiber_mod_p(module, pp.p)
        try:
            want = oracle_count_max_submodules(fib, n)
        except OracleBoundError:
            lines.append(f"n={n}: skipped (p^dim > {SUBSPACE_STATE_BOUND})")
            continue
        got = count_max_submodules(module, n, seed)
        checked += 1
        if got == want:
            lines.append(f"n={n}: ok (engine={got} oracle={want})")
        else:
            failed += 1
            lines.append(f"n={n}: MISMATCH (engine={got} oracle={want})")
    sys.stdout.write("\n".join(lines) + ("\n" if lines else ""))
    if checked == 0:
        sys.stderr.write("nothing verified: every n was skipped\n")
        return 4
    if failed:
        sys.stderr.write(f"{failed} of {checked} comparisons disagree\n")
        return 4
    return 0


def cmd_irreducibles(args) -> int:
    sys.stdout.write(f"{count_irreducibles(args.p, args.k)}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="growthlab",
        description="Exact maximal subgroup/submodule growth computations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_max_n=False):
        p.add_argument("spec", help="path to a JSON spec file")
        p.add_argument(
            "--seed", type=lambda s: int(s, 0), default=None,
            help="engine seed (default GROWTHLAB_SEED or 0xC0FFEE)",
        )
        if needs_max_n:
            p.add_argument("--max-n", type=int, required=True, help="largest index")

    p = sub.add_parser("table", help="growth table for all prime powers <= N")
    common(p, needs_max_n=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("mdeg", help="degree of polynomial growth")
    common(p)
    p.set_defaults(func=cmd_mdeg)

    p = sub.add_parser("asymptote", help="leading term (rho1, d) for zk_by_z")
    common(p)
    p.set_defaults(func=cmd_asymptote)

    p = sub.add_parser("growth-type", help="growth trichotomy for module_presented")
    common(p)
    p.set_defaults(func=cmd_growth_type)

    p = sub.add_parser("check", help="compare engine counts against the oracle")
    common(p, needs_max_n=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("irreducibles", help="count monic irreducibles over F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_irreducibles)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        sys.stderr.write(f"spec error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
