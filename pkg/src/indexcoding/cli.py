"""Command-line entry point: one subcommand per verifiable claim."""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import fixtures
from .compose import (
    NOWAY,
    TWOWAY,
    combined_code_87,
    combined_code_91,
    decode_87,
    decode_91,
    instance_87,
    instance_91,
    no_way,
    two_way,
)
from .errors import IndexCodingError
from .gf import BlockMatrix, FieldSpec
from .instance import Instance, is_acyclic_set, mais
from .lincode import LinearCode, check_decodable
from .matroid import MatroidSpec, search_scalar_representation, verify_representation
from .nlcode import decode_i3, encode_i3
from .sideinfo import SideInformation
from .suite import DEFAULT_SEED, DEFAULT_TRIALS, run_criterion, run_suite

PASS, FAIL, ERROR = "pass", "fail", "error"
EXIT_CODES = {PASS: 0, FAIL: 1, ERROR: 2}

# default matrices for the built-in matroids: the leading blocks of the code matrices
DEFAULT_MATRIX = {"N1": ("H_fig1", 9), "N2": ("H_fig1", 9), "N3": ("H_fig2", 18)}


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: list[str]
    status: str
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0
    format: str = "text"

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "status": self.status,
            "details": self.details,
            "elapsed": round(self.elapsed, 4),
        }

    def to_text(self) -> str:
        lines = [f"{' '.join(self.command)}: {self.status.upper()} ({self.elapsed:.2f} s)"]
        for line in self.details.get("lines", []):
            lines.append(f"  {line}")
        for k, v in self.details.items():
            if k == "lines":
                continue
            lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------


def parse_budget(text: str) -> tuple[Optional[int], Optional[float]]:
    """``30s`` is a time limit, ``1e7nodes`` a node limit; a bare number is seconds."""
    m = re.fullmatch(r"\s*([0-9.eE+]+)\s*(s|sec|nodes?)?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad budget {text!r}; use e.g. 30s or 1e7nodes")
    try:
        value = float(m.group(1))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad budget {text!r}") from None
    if m.group(2) and m.group(2).startswith("node"):
        return int(value), None
    return None, value


def parse_set(text: str) -> list[int]:
    try:
        return [int(t) for t in re.split(r"[,\s]+", text.strip()) if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad index set {text!r}") from None


def parse_seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed {text!r}") from None


def _load_json(ref: str) -> dict:
    path = Path(ref)
    if not path.exists():
        raise UsageError(f"{ref!r} is neither a built-in fixture nor an existing file")
    return json.loads(path.read_text())


def load_instance(ref: str) -> Instance:
    if ref in fixtures.NAMES:
        obj = fixtures.fixture(ref)
        if not isinstance(obj, Instance):
            raise UsageError(f"fixture {ref} is not an instance")
        return obj
    return Instance.from_json(_load_json(ref))


def load_matrix(ref: str) -> BlockMatrix:
    if ref in fixtures.NAMES:
        obj = fixtures.fixture(ref)
        if not isinstance(obj, BlockMatrix):
            raise UsageError(f"fixture {ref} is not a matrix")
        return obj
    return BlockMatrix.from_json(_load_json(ref))


def load_matroid(ref: str) -> MatroidSpec:
    if ref in fixtures.NAMES:
        obj = fixtures.fixture(ref)
        if not isinstance(obj, MatroidSpec):
            raise UsageError(f"fixture {ref} is not a matroid")
        return obj
    return MatroidSpec.from_json(_load_json(ref))


# ---------------------------------------------------------------------------
# Subcommands: each returns (status, details)
# ---------------------------------------------------------------------------


def cmd_verify_linear(args) -> tuple[str, dict]:
    I = load_instance(args.instance)
    H = load_matrix(args.matrix).with_field(FieldSpec(args.field))
    report = check_decodable(LinearCode(H), I)
    details = {"field": args.field, "failing": report.failing, **report.to_json()}
    details["lines"] = [
        f"user {u.i}: rank(H^{{i}}∪B_i) = {u.rank_iB}, rank(H^B_i) = {u.rank_B}"
        for u in report.users
        if not u.passed
    ]
    return (PASS if report.passed else FAIL), details


def cmd_mais(args) -> tuple[str, dict]:
    I = load_instance(args.instance)
    max_nodes, max_seconds = args.budget
    res = mais(I, max_nodes=max_nodes, max_seconds=max_seconds, witness=args.witness)
    details = res.to_json()
    if args.witness is not None:
        ok = is_acyclic_set(I, args.witness)
        details["witness_acyclic"] = ok
        return (PASS if ok else FAIL), details
    return (PASS if res.status == "Exact" else FAIL), details


def _matrix_for(args, spec: MatroidSpec) -> BlockMatrix:
    if args.matrix:
        H = load_matrix(args.matrix)
        if H.m > spec.n:
            H = H.restrict(range(1, spec.n + 1))
    elif args.spec in DEFAULT_MATRIX:
        name, n = DEFAULT_MATRIX[args.spec]
        H = fixtures.fixture(name).restrict(range(1, n + 1))
    else:
        raise UsageError("--matrix is required for a matroid given as a file")
    return H.with_field(FieldSpec(args.field))


def cmd_matroid(args) -> tuple[str, dict]:
    spec = load_matroid(args.spec)
    if args.action == "verify":
        verdict = verify_representation(spec, _matrix_for(args, spec))
        details = {"field": args.field, **verdict.to_json()}
        return (PASS if verdict.valid else FAIL), details
    max_nodes, max_seconds = args.budget
    out = search_scalar_representation(
        spec, args.field, max_nodes=max_nodes or 10**8, max_seconds=max_seconds
    )
    details = {"field": args.field, **out.to_json()}
    return (PASS if out.status == "Found" else FAIL), details


def cmd_nonlinear(args) -> tuple[str, dict]:
    if args.action == "identities":
        res = run_criterion(8)
        return res.status, res.details
    I3 = fixtures.fixture("I3")
    sides = [I3.side_info(i) for i in range(1, 59)]
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.trials):
        x = [rng.randrange(3) for _ in range(58)]
        z = encode_i3(x)
        for i in range(1, 59):
            if decode_i3(i, z, SideInformation(x, sides[i - 1])) != x[i - 1]:
                bad += 1
    details = {"trials": args.trials, "seed": args.seed, "failures": bad}
    ok = bad == 0
    if args.sweep:
        sweep = run_criterion(9, args.seed, 0)
        details["sweep"] = {k: v for k, v in sweep.details.items() if k.startswith("sweep")}
        ok = ok and sweep.passed
    return (PASS if ok else FAIL), details


def cmd_compose(args) -> tuple[str, dict]:
    a, b = load_instance(args.a), load_instance(args.b)
    result = no_way(a, b) if args.mode == NOWAY else two_way(a, b)
    text = json.dumps(result.to_json(), sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    details = {"mode": args.mode, "m": result.m, "parts": [a.m, b.m]}
    if args.out:
        details["out"] = args.out
    else:
        details["instance"] = result.to_json()
    return PASS, details


def cmd_verify_combined(args) -> tuple[str, dict]:
    if args.which == 87:
        m, enc, dec, inst = 87, combined_code_87, decode_87, instance_87()
    else:
        m, enc, dec, inst = 91, combined_code_91, decode_91, instance_91()
    sides = [inst.side_info(i) for i in range(1, m + 1)]
    rng = random.Random(args.seed)
    bad, width = 0, None
    for _ in range(args.trials):
        x = [rng.randrange(3) for _ in range(m)]
        w = enc(x)
        width = len(w)
        for i in range(1, m + 1):
            if dec(i, w, SideInformation(x, sides[i - 1])) != x[i - 1]:
                bad += 1
    details = {"users": m, "symbols": width, "trials": args.trials, "seed": args.seed, "failures": bad}
    return (PASS if bad == 0 else FAIL), details


def cmd_fixtures(args) -> tuple[str, dict]:
    if args.action == "list":
        return PASS, {
            "fixtures": {name: {"kind": fixtures.kind_of(name), "sha256": fixtures.sha256(name)}
                         for name in fixtures.NAMES}
        }
    if not args.name:
        raise UsageError("fixtures export needs --name")
    text = json.dumps(fixtures.raw(args.name), sort_keys=True)
    details = {"name": args.name, "kind": fixtures.kind_of(args.name), "sha256": fixtures.sha256(args.name)}
    if args.out:
        Path(args.out).write_text(text + "\n")
        details["out"] = args.out
    else:
        details["data"] = json.loads(text)
    return PASS, details


def cmd_paper_suite(args) -> tuple[str, dict]:
    results = run_suite(seed=args.seed, trials=args.trials, only=args.only)
    ok = all(r.passed for r in results)
    return (PASS if ok else FAIL), {
        "seed": args.seed,
        "trials": args.trials,
        "lines": [r.line() for r in results],
        "criteria": [r.to_json() for r in results],
    }


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")

    parser = argparse.ArgumentParser(prog="indexcoding", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-linear", parents=[common], help="rank test of a linear code")
    p.add_argument("--instance", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--field", type=int, required=True)
    p.set_defaults(func=cmd_verify_linear)

    p = sub.add_parser("mais", parents=[common], help="maximum acyclic induced subgraph")
    p.add_argument("--instance", required=True)
    p.add_argument("--witness", type=parse_set)
    p.add_argument("--budget", type=parse_budget, default=(10**7, 60.0))
    p.set_defaults(func=cmd_mais)

    p = sub.add_parser("matroid", parents=[common], help="check or search matroid representations")
    p.add_argument("action", choices=("verify", "search"))
    p.add_argument("--spec", required=True)
    p.add_argument("--matrix")
    p.add_argument("--field", type=int, required=True)
    p.add_argument("--budget", type=parse_budget, default=(10**8, 300.0))
    p.set_defaults(func=cmd_matroid)

    p = sub.add_parser("nonlinear", parents=[common], help="the nonlinear GF(3) code for I3")
    p.add_argument("action", choices=("identities", "roundtrip"))
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=parse_seed, default=DEFAULT_SEED)
    p.add_argument("--sweep", action="store_true", help="also run the 3^10 core sweep")
    p.set_defaults(func=cmd_nonlinear)

    p = sub.add_parser("compose", parents=[common], help="connect two instances")
    p.add_argument("--mode", choices=(NOWAY, TWOWAY), required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("verify-combined", parents=[common], help="round-trip the combined codes")
    p.add_argument("--which", type=int, choices=(87, 91), required=True)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=parse_seed, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify_combined)

    p = sub.add_parser("fixtures", parents=[common], help="list or export built-in data")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("--name", choices=fixtures.NAMES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("paper-suite", parents=[common], help="run every acceptance criterion")
    p.add_argument("--seed", type=parse_seed, default=DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--only", type=parse_set, help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_paper_suite)
    return parser


def run(argv: Sequence[str]) -> RunReport:
    """Parse and execute; argparse usage errors still raise SystemExit(2)."""
    args = build_parser().parse_args(list(argv))
    t0 = time.perf_counter()
    try:
        status, details = args.func(args)
    except (IndexCodingError, UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        status, details = ERROR, {"error": f"{type(exc).__name__}: {exc}"}
    return RunReport(list(argv), status, details, time.perf_counter() - t0, args.format)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    report = run(argv)
    if report.format == "json":
        print(json.dumps(report.to_json(), sort_keys=True, indent=2))
    else:
        print(report.to_text())
    if report.status == ERROR:
        print(report.details.get("error", "error"), file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
