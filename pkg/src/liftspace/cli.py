"""Command-line front end: table1, lift, query, verify, decompose.

Exit codes::

    0   success (query: deterministic outcome)
    1   any other liftspace error
    2   usage error
    3   predicate syntax error
    4   arity mismatch
    5   family too large for the arity cap
    6   bad input: dimension mismatch, unknown function or basis index
    7   zero state or state outside the measured span
    8   lifting coefficient budget exceeded
    9   verification failure (verify report or PVM construction)
    10  query outcome is not deterministic
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import errors
from .funcspace import (
    enumerate_functions,
    parse_function_selector,
    partition_by,
    to_evector,
)
from .lifting import DEFAULT_MAX_BITS, LiftedBasis, lift, lift_function_family, verify_orthogonality
from .multipartite import (
    BipartiteShape,
    partial_trace,
    product_factors,
    purity,
    schmidt_rank,
)
from .predicate import parse_predicate
from .projector import (
    build_pvm,
    pvm_checks,
    sample_outcomes,
    single_query,
    span_projector,
)
from .ratcore import (
    RationalMatrix,
    RationalVector,
    format_rational,
    rank,
    rational_to_json,
    to_rational,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_ARITY = 4
EXIT_TOO_LARGE = 5
EXIT_BAD_INPUT = 6
EXIT_STATE = 7
EXIT_GROWTH = 8
EXIT_VERIFY = 9
EXIT_NONDETERMINISTIC = 10

_EXIT_FOR = [
    (errors.PredicateParseError, EXIT_PARSE),
    (errors.ArityMismatch, EXIT_ARITY),
    (errors.FamilyTooLarge, EXIT_TOO_LARGE),
    (errors.DimensionMismatch, EXIT_BAD_INPUT),
    (errors.UnknownBasisIndex, EXIT_BAD_INPUT),
    (errors.ZeroState, EXIT_STATE),
    (errors.StateOutsideSpan, EXIT_STATE),
    (errors.CoefficientGrowthError, EXIT_GROWTH),
    (errors.NotAPVM, EXIT_VERIFY),
    (errors.LiftspaceError, EXIT_ERROR),
    # malformed selectors, vectors and basis files
    (ValueError, EXIT_BAD_INPUT),
    (IndexError, EXIT_BAD_INPUT),
    (KeyError, EXIT_BAD_INPUT),
]


@dataclass(frozen=True)
class RunConfig:
    command: str
    arity: int | None = None
    predicate: str | None = None
    function: str | None = None
    fmt: str = "pretty"
    sample: int = 0
    seed: int | None = None
    allow_large: bool = False

    def __post_init__(self) -> None:
        if self.sample < 0:
            raise ValueError("sample count must be >= 0")
        if self.sample > 0 and self.seed is None:
            raise ValueError("--sample needs --seed")

    @property
    def cap(self) -> int | None:
        return self.arity if self.allow_large else None


# ---- formatting -------------------------------------------------------------


def _entry(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else format_rational(q)


def dump_basis_json(basis: LiftedBasis, arity: int | None) -> str:
    """Stable JSON: one vector per line, decimal-string integers."""
    obj = basis.to_json(arity)
    lines = ["{"]
    lines.append(f'  "arity": {json.dumps(obj["arity"])},')
    lines.append(f'  "dim": {obj["dim"]},')
    lines.append('  "vectors": [')
    rows = [json.dumps(v, separators=(", ", ": ")) for v in obj["vectors"]]
    lines.append(",\n".join("    " + r for r in rows))
    lines.append("  ],")
    lines.append(f'  "own_dims": {json.dumps(obj["own_dims"])}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _row_names(basis: LiftedBasis, arity: int | None) -> list[str]:
    prefix = "f" if arity is not None else "v"
    return [f"{prefix}{i}" for i in range(1, len(basis) + 1)]


def dump_basis_csv(basis: LiftedBasis, arity: int | None) -> str:
    header = ["vector"] + [f"c{k}" for k in range(1, basis.dim + 1)]
    lines = [",".join(header)]
    for name, v in zip(_row_names(basis, arity), basis.vectors):
        lines.append(",".join([name] + [_entry(x) for x in v]))
    return "\n".join(lines) + "\n"


def dump_basis_pretty(basis: LiftedBasis, arity: int | None) -> str:
    names = _row_names(basis, arity)
    cells = [[_entry(x) for x in v] for v in basis.vectors]
    widths = [
        max(len(f"c{k + 1}"), *(len(row[k]) for row in cells)) for k in range(basis.dim)
    ]
    name_w = max(len(n) for n in names)
    out = [" " * name_w + "  " + " ".join(f"c{k + 1}".rjust(w) for k, w in enumerate(widths))]
    for name, row in zip(names, cells):
        out.append(name.ljust(name_w) + "  " + " ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(out) + "\n"


def dump_basis(basis: LiftedBasis, arity: int | None, fmt: str) -> str:
    return {"json": dump_basis_json, "csv": dump_basis_csv, "pretty": dump_basis_pretty}[fmt](
        basis, arity
    )


def _matrix_lines(m: RationalMatrix, indent: str = "  ") -> list[str]:
    cells = [[_entry(x) for x in r] for r in m.to_rows()]
    w = max(len(c) for r in cells for c in r)
    return [indent + "[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells]


def _parse_vector(text: str) -> RationalVector:
    return RationalVector(to_rational(x) for x in text.replace(" ", "").split(","))


# ---- commands ---------------------------------------------------------------


def cmd_table1(fmt: str = "json") -> str:
    return dump_basis(lift_function_family(2), 2, fmt)


def cmd_lift(args: argparse.Namespace) -> str:
    if args.vectors:
        inputs = [_parse_vector(chunk) for chunk in args.vectors.split(";") if chunk.strip()]
        basis = lift(inputs, max_bits=args.max_bits)
        arity = None
    else:
        cap = args.n if args.allow_large else None
        basis = lift_function_family(args.n, cap=cap, max_bits=args.max_bits)
        arity = args.n
    return dump_basis(basis, arity, args.format)


def _members_text(members) -> str:
    return " ".join(f"f{i}" for i in sorted(members))


def cmd_query(cfg: RunConfig) -> tuple[str, int]:
    predicate = parse_predicate(cfg.predicate)
    family = enumerate_functions(cfg.arity, cap=cfg.cap)
    partition = partition_by(predicate, family)
    basis = lift_function_family(cfg.arity, cap=cfg.cap)
    pvm = build_pvm(basis, partition)
    selected = [parse_function_selector(s, cfg.arity) for s in cfg.function.split(",")]
    state = basis.vector(selected[0].index)
    for f in selected[1:]:
        state = state + basis.vector(f.index)
    outcome = single_query(pvm, state)
    samples = sample_outcomes(outcome, cfg.sample, cfg.seed) if cfg.sample else []
    code = EXIT_OK if outcome.deterministic else EXIT_NONDETERMINISTIC

    if cfg.fmt == "json":
        obj = {
            "arity": cfg.arity,
            "predicate": str(predicate),
            "prepared": [f.index for f in selected],
            "outcome": {
                "label": outcome.label,
                "probability": rational_to_json(outcome.probability),
                "deterministic": outcome.deterministic,
            },
            "distribution": {k: rational_to_json(v) for k, v in outcome.distribution.items()},
            "classes": {c.label: sorted(c.members) for c in pvm.classes},
        }
        if cfg.sample:
            obj["samples"] = {"seed": cfg.seed, "draws": samples}
        return json.dumps(obj, indent=2) + "\n", code

    lines = [
        f"{outcome.label}, p = {format_rational(outcome.probability)}",
        "prepared: " + " + ".join(f"b{f.index} [f{f.index} = {f.bits}]" for f in selected),
        f"measured: {predicate}  (n = {cfg.arity}, {basis.dim} dimensions)",
        f"deterministic: {'yes' if outcome.deterministic else 'no'}",
        "",
    ]
    label_w = max(len("class"), *(len(c.label) for c in pvm.classes))
    probs = {k: format_rational(v) for k, v in outcome.distribution.items()}
    prob_w = max(len("p"), *(len(p) for p in probs.values()))
    lines.append(f"{'class'.ljust(label_w)}  {'p'.ljust(prob_w)}  members")
    for c in pvm.classes:
        lines.append(
            f"{c.label.ljust(label_w)}  {probs[c.label].ljust(prob_w)}  {_members_text(c.members)}"
        )
    if cfg.sample:
        counts = {lab: samples.count(lab) for lab in outcome.distribution}
        lines.append("")
        lines.append(f"samples (n = {cfg.sample}, seed = {cfg.seed}): " + " ".join(samples))
        lines.append("counts: " + ", ".join(f"{k}={v}" for k, v in counts.items()))
    return "\n".join(lines) + "\n", code


def verify_report(
    arity: int, predicate_text: str, basis: LiftedBasis | None = None, cap: int | None = None
) -> dict:
    """Run the orthogonality, PVM-identity and determinism suites; JSON-ready."""
    predicate = parse_predicate(predicate_text)
    family = enumerate_functions(arity, cap=cap)
    if basis is None:
        basis = lift_function_family(arity, cap=cap)
    if len(basis) != len(family):
        raise errors.DimensionMismatch(
            f"basis has {len(basis)} vectors, arity {arity} needs {len(family)}"
        )
    checks = []

    ortho = verify_orthogonality(basis)
    checks.append({"name": "orthogonality", "passed": ortho.ok, "detail": ortho.to_json()})

    bad_prefix = [f.index for f in family if basis.prefix(f.index) != to_evector(f)]
    checks.append(
        {"name": "prefix_preservation", "passed": not bad_prefix, "detail": {"mismatched": bad_prefix}}
    )

    partition = partition_by(predicate, family)
    pvm = build_pvm(basis, partition, verify=False)
    for c in pvm_checks(pvm):
        checks.append({"name": c.name, "passed": c.passed, "detail": c.detail})

    failures = []
    for f in family:
        expected = partition.class_of[f.index]
        try:
            outcome = single_query(pvm, basis.vector(f.index))
        except errors.LiftspaceError as err:
            failures.append({"function": f.index, "error": str(err)})
            continue
        if not (outcome.deterministic and outcome.label == expected):
            failures.append(
                {
                    "function": f.index,
                    "expected": expected,
                    "got": outcome.label,
                    "probability": format_rational(outcome.probability),
                }
            )
    checks.append(
        {"name": "single_query_determinism", "passed": not failures, "detail": {"failures": failures}}
    )

    identity = RationalMatrix.identity(basis.dim)
    span = span_projector(basis)
    return {
        "arity": arity,
        "predicate": str(predicate),
        "dim": basis.dim,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
        "ranks": {c.label: rank(c.projector) for c in pvm.classes},
        "identity": {
            "span_projector_equals_identity": span == identity,
            "note": (
                f"the class projectors sum to the projector onto the span of the "
                f"{len(basis)} lifted vectors, not to the identity on all {basis.dim} coordinates"
            ),
        },
    }


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    basis = None
    arity = args.n
    if args.basis:
        with open(args.basis) as fh:
            obj = json.load(fh)
        basis = LiftedBasis.from_json(obj)
        arity = obj.get("arity") or arity
    if arity is None:
        raise ValueError("verify needs --n or a basis file with an arity")
    cap = arity if args.allow_large else None
    report = verify_report(arity, args.predicate, basis, cap=cap)
    code = EXIT_OK if report["passed"] else EXIT_VERIFY
    if args.format == "json":
        return json.dumps(report, indent=2) + "\n", code
    lines = [f"verify n = {report['arity']}, predicate {report['predicate']}, {report['dim']} dimensions"]
    for c in report["checks"]:
        lines.append(f"  {'PASS' if c['passed'] else 'FAIL'}  {c['name']}")
        if not c["passed"] and c["name"] == "orthogonality":
            for fail in c["detail"]["failures"]:
                i, j = fail["pair"]
                lines.append(f"        <b{i}|b{j}> != 0")
    lines.append("ranks: " + ", ".join(f"{k}={v}" for k, v in report["ranks"].items()))
    lines.append("note: " + report["identity"]["note"])
    lines.append("result: " + ("all checks pass" if report["passed"] else "VIOLATIONS FOUND"))
    return "\n".join(lines) + "\n", code


def cmd_decompose(args: argparse.Namespace) -> str:
    shape = BipartiteShape.parse(args.dims)
    state = _parse_vector(args.vector)
    r = schmidt_rank(state, shape)
    factors = product_factors(state, shape)
    rho_a = partial_trace(state, shape, "A")
    rho_b = partial_trace(state, shape, "B")
    pur_a, pur_b = purity(rho_a), purity(rho_b)
    if args.format == "json":
        obj = {
            "dims": [shape.dim_a, shape.dim_b],
            "schmidt_rank": r,
            "product": factors is not None,
            "factors": None if factors is None else [f.to_json() for f in factors],
            "reduced_a": rho_a.matrix.to_json(),
            "reduced_b": rho_b.matrix.to_json(),
            "purity_a": rational_to_json(pur_a),
            "purity_b": rational_to_json(pur_b),
        }
        return json.dumps(obj, indent=2) + "\n"
    lines = [
        f"schmidt rank: {r}",
        f"product state: {'yes' if factors else 'no (entangled)'}",
    ]
    if factors:
        a, b = factors
        lines.append("factors: (" + ", ".join(_entry(x) for x in a) + ") ⊗ ("
                     + ", ".join(_entry(x) for x in b) + ")")
    lines.append("reduced state A:")
    lines.extend(_matrix_lines(rho_a.matrix))
    lines.append("reduced state B:")
    lines.extend(_matrix_lines(rho_b.matrix))
    lines.append(f"purity: {format_rational(pur_a)}")
    return "\n".join(lines) + "\n"


# ---- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liftspace",
        description="Exact dimensional lifting and single-query partition measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, default, choices=("json", "csv", "pretty")):
        p.add_argument("--format", choices=choices, default=default)

    def large(p):
        p.add_argument(
            "--allow-large", action="store_true",
            help="ignore the arity cap (LIFTSPACE_MAX_ARITY, default 3)",
        )

    p = sub.add_parser("table1", help="emit the lifted basis of all 16 two-bit functions")
    fmt(p, "json")

    p = sub.add_parser("lift", help="lift a function family or explicit vectors")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=int, help="arity of the function family")
    src.add_argument("--vectors", help='explicit inputs, e.g. "0,1;1,1;1/2,3"')
    p.add_argument("--max-bits", type=int, default=DEFAULT_MAX_BITS,
                   help="abort once a coefficient exceeds this many bits")
    fmt(p, "json")
    large(p)

    p = sub.add_parser("query", help="measure a partition PVM on a prepared function state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--predicate", required=True)
    p.add_argument("--function", required=True,
                   help="f-index or bitstring; comma-separate several to prepare their sum")
    p.add_argument("--sample", type=int, default=0, help="number of pseudo-random outcome draws")
    p.add_argument("--seed", type=int)
    fmt(p, "pretty", ("json", "pretty"))
    large(p)

    p = sub.add_parser("verify", help="check orthogonality, PVM identities and determinism")
    p.add_argument("--n", type=int)
    p.add_argument("--predicate", required=True)
    p.add_argument("--basis", help="JSON basis file to check instead of lifting")
    fmt(p, "json", ("json", "pretty"))
    large(p)

    p = sub.add_parser("decompose", help="Schmidt rank, factors and reduced states of a state")
    p.add_argument("--dims", required=True, help="factor dimensions, e.g. 2x2")
    p.add_argument("--vector", required=True, help='entries, e.g. "1,0,0,1"')
    fmt(p, "pretty", ("json", "pretty"))

    return parser


def _exit_code(err: Exception) -> int:
    for kind, code in _EXIT_FOR:
        if isinstance(err, kind):
            return code
    raise err


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "table1":
            out, code = cmd_table1(args.format), EXIT_OK
        elif args.command == "lift":
            out, code = cmd_lift(args), EXIT_OK
        elif args.command == "query":
            try:
                cfg = RunConfig(
                    "query", args.n, args.predicate, args.function, args.format,
                    args.sample, args.seed, args.allow_large,
                )
            except ValueError as err:
                parser.error(str(err))
            out, code = cmd_query(cfg)
        elif args.command == "verify":
            out, code = cmd_verify(args)
        else:
            out, code = cmd_decompose(args), EXIT_OK
    except Exception as err:  # mapped to documented exit codes
        code = _exit_code(err)
        print(f"error: {err}", file=sys.stderr)
        return code
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
