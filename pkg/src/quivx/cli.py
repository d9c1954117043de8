"""Command line entry point.

Exit codes: 0 ran and the property holds (where one applies), 1 ran and it
fails, 2 usage or input error, 3 inconclusive (budget exceeded or a
probabilistic search was used).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import forms
from .classify import (
    DEFAULT_BUDGET_LOG2,
    FAILS,
    HOLDS,
    BudgetExceededError,
    check_property_x,
    classify_indecomposables,
)
from .exactfield import FieldError
from .presentation import SpecError, from_dict, serialize
from .repcat import DEFAULT_SEED, NotAdmissibleError, composition_series, rep_from_dict
from .separated import RadicalSquareError, separated_presentation, verify_separated

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
MIN_BUDGET_LOG2 = 10


class ReportError(OSError):
    pass


@dataclass
class RunConfig:
    command: str
    spec: str | None = None
    bound: int = 4
    dim: tuple[int, ...] | None = None
    field: int | None = None
    budget: int = DEFAULT_BUDGET_LOG2
    out: str | None = None
    seed: int = DEFAULT_SEED
    threads: int = 1


class _UsageError(Exception):
    pass


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit_report(report, path) -> None:
    """Write ``report`` (a dict or anything with ``to_dict``) as canonical JSON."""
    data = report.to_dict() if hasattr(report, "to_dict") else report
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(data))
    except OSError as exc:
        raise ReportError(f"cannot write report to {path}: {exc.strerror or exc}") from exc


# ---------------------------------------------------------------------------
# argument parsing

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _budget(text: str) -> int:
    value = int(text)
    if value < MIN_BUDGET_LOG2:
        raise argparse.ArgumentTypeError(f"budget must be >= {MIN_BUDGET_LOG2} (log2 of assignments)")
    return value


def _dimvec(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension vector {text!r}") from None
    if any(d < 0 for d in dims):
        raise argparse.ArgumentTypeError("dimensions must be nonnegative")
    return dims


def _pair(text: str) -> tuple[int, int]:
    for sep in ("x", ","):
        if sep in text:
            left, right = text.split(sep, 1)
            try:
                return int(left), int(right)
            except ValueError:
                break
    raise argparse.ArgumentTypeError(f"bad pair {text!r}; use LEFTxRIGHT")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--bound", type=_positive, default=4, help="largest module length to enumerate")
    common.add_argument("--dim", type=_dimvec, help="dimension vector, e.g. 1,1")
    common.add_argument("--field", type=int, help="override the prime p of the spec file")
    common.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET_LOG2,
                        help="log2 of the largest number of matrix assignments per dimension vector")
    common.add_argument("--threads", type=_positive, default=1, help="worker threads for classification")
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--seed", type=lambda s: int(s, 16), default=DEFAULT_SEED,
                        help="hex seed for pseudorandom searches")

    parser = _Parser(prog="quivx", description="Composition-factor rigidity of quiver algebras over GF(p).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="bounded check that indecomposables are determined by composition factors")
    p.add_argument("spec")
    p = sub.add_parser("count", parents=[common], help="indecomposable class counts per dimension vector")
    p.add_argument("spec")
    p = sub.add_parser("classify", parents=[common], help="indecomposable classes of one dimension vector (needs --dim)")
    p.add_argument("spec")
    p = sub.add_parser("series", parents=[common], help="composition series of a representation file")
    p.add_argument("spec")
    p.add_argument("rep", help="representation JSON file")
    p = sub.add_parser("separate", parents=[common], help="emit the separated quiver of a radical-square-zero algebra")
    p.add_argument("spec")
    p = sub.add_parser("verify-separated", parents=[common], help="check the separated functor's properties up to --bound")
    p.add_argument("spec")

    p = sub.add_parser("form", help="quadratic form data of a bimodule shape")
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--b", type=_positive, required=True)
    p.add_argument("--f1", type=_positive)
    p.add_argument("--f2", type=_positive)
    p.add_argument("--m", type=_positive)
    p.add_argument("--out")

    p = sub.add_parser("species-check", help="dimension-product criterion over bimodule pairs")
    p.add_argument("pairs", nargs="*", type=_pair, help="pairs LEFTxRIGHT")
    p.add_argument("--spec", dest="spec_file", help="derive pairs from the arrows of an algebra spec")
    p.add_argument("--out")
    return parser


def _load(cfg: RunConfig):
    try:
        with open(cfg.spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError("io", exc.strerror or str(exc), cfg.spec) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("malformed-json", exc.msg, f"{cfg.spec}:{exc.lineno}:{exc.colno}") from None
    if cfg.field is not None:
        if not isinstance(data, dict) or not isinstance(data.get("field"), dict):
            raise SpecError("schema", "missing field object", "field")
        data["field"]["p"] = cfg.field
    return from_dict(data)


# ---------------------------------------------------------------------------
# commands

def _fmt_dv(dv) -> str:
    return "(" + ",".join(str(x) for x in dv) + ")"


def _finish(cfg: RunConfig, data, out) -> None:
    if cfg.out:
        emit_report(data, cfg.out)


def cmd_check(cfg, out, counts_only=False) -> int:
    A = _load(cfg)
    rep = check_property_x(A, cfg.bound, cfg.budget, cfg.threads, cfg.seed)
    if counts_only:
        data = {"bound": rep.bound, "field": {"p": A.p},
                "counts": [{"dimvec": list(d), "count": c} for d, c in rep.counts],
                "skipped": [{"dimvec": list(d), "reason": r} for d, r in rep.skipped],
                "probabilistic": rep.probabilistic, "seed": hex(rep.seed)}
    else:
        data = rep.to_dict()
    print(f"{'dimvec':<16}{'classes':>8}", file=out)
    for dv, c in rep.counts:
        if c or counts_only:
            print(f"{_fmt_dv(dv):<16}{c:>8}", file=out)
    for dv, reason in rep.skipped:
        print(f"{_fmt_dv(dv):<16}{'skipped':>8}  {reason}", file=out)
    print(f"total indecomposable classes: {rep.total_classes}", file=out)
    if not counts_only:
        for v in rep.violations:
            print(f"violation at {_fmt_dv(v.dimvec)}: {len(v.reps)} non-isomorphic indecomposables", file=out)
        print(f"verdict: {rep.verdict} (bound {rep.bound}, GF({A.p}))", file=out)
    _finish(cfg, data, out)
    if counts_only:
        return EXIT_INCONCLUSIVE if rep.skipped or rep.probabilistic else EXIT_OK
    return {HOLDS: EXIT_OK, FAILS: EXIT_FAIL}.get(rep.verdict, EXIT_INCONCLUSIVE)


def cmd_classify(cfg, out) -> int:
    A = _load(cfg)
    if cfg.dim is None:
        raise _UsageError("classify needs --dim")
    table = classify_indecomposables(A, cfg.dim, cfg.budget, cfg.threads, cfg.seed)
    print(f"{table.count} indecomposable classes at {_fmt_dv(table.dimvec)} over GF({A.p})", file=out)
    for R, size in zip(table.representatives, table.class_sizes):
        print(f"  size {size:>6}  {json.dumps(R.to_dict()['mats'], sort_keys=True)}", file=out)
    _finish(cfg, table.to_dict(), out)
    return EXIT_INCONCLUSIVE if table.probabilistic else EXIT_OK


def cmd_series(cfg, out) -> int:
    A = _load(cfg)
    try:
        with open(cfg.rep_file, encoding="utf-8") as fh:
            M = rep_from_dict(A, json.load(fh))
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError("io", str(exc), cfg.rep_file) from None
    cs = composition_series(M)
    data = {
        "dims": M.to_dict()["dims"],
        "length": cs.length,
        "factors": cs.factor_vertices,
        "chain": [{v: b.tolist() for v, b in step.items()} for step in cs.chain],
    }
    print(f"length {cs.length}; factors bottom to top: {' '.join('S_' + v for v in cs.factor_vertices)}", file=out)
    _finish(cfg, data, out)
    return EXIT_OK


def cmd_separate(cfg, out) -> int:
    A = _load(cfg)
    sep = separated_presentation(A)
    text = serialize(sep.gamma)
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise ReportError(f"cannot write {cfg.out}: {exc.strerror or exc}") from exc
    else:
        out.write(text)
    return EXIT_OK


def cmd_verify(cfg, out) -> int:
    A = _load(cfg)
    rep = verify_separated(A, cfg.bound, cfg.budget, cfg.threads, cfg.seed)
    for name, c in rep.checks.items():
        print(f"{name:<20}{'pass' if c.passed else 'FAIL':>6}  ({c.checked} cases)", file=out)
    print(f"violation transport {'pass' if rep.transport.get('passed') else 'FAIL':>6}", file=out)
    print(f"verdict: {rep.verdict}", file=out)
    _finish(cfg, rep.to_dict(), out)
    return {"pass": EXIT_OK, "fail": EXIT_FAIL}.get(rep.verdict, EXIT_INCONCLUSIVE)


def cmd_form(args, out) -> int:
    shape = forms.BimoduleShape(args.a, args.b, args.f1, args.f2, args.m)
    data = forms.form_report(shape)
    print(f"shape (a,b) = ({shape.a},{shape.b}); bilinear form matrix {data['tilde_matrix']}", file=out)
    print(f"{'finite' if data['finite_type'] else 'infinite'} type (ab = {shape.a * shape.b})", file=out)
    null = data["null_vector"]
    print(f"null vector: {tuple(null) if null else 'none'}", file=out)
    if "positive_definite" in data:
        print(f"q positive definite: {data['positive_definite']}", file=out)
    if "defect_of_null_vector" in data:
        print(f"defect of null vector: {data['defect_of_null_vector']}", file=out)
    if args.out:
        emit_report(data, args.out)
    return EXIT_OK if data["finite_type"] else EXIT_FAIL


def cmd_species(args, out) -> int:
    pairs = list(args.pairs)
    if args.spec_file:
        cfg = RunConfig("species-check", spec=args.spec_file)
        pairs += forms.species_pairs(_load(cfg))
    res = forms.species_criterion(pairs)
    data = {"pairs": [list(x) for x in pairs], "passed": res.passed, "failing_index": res.index}
    if res.passed:
        print(f"pass: all {len(pairs)} products below 4", file=out)
    else:
        left, right = pairs[res.index]
        print(f"fail at pair {res.index}: {left} * {right} = {left * right} >= 4", file=out)
    if args.out:
        emit_report(data, args.out)
    return EXIT_OK if res.passed else EXIT_FAIL


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        if args.command == "form":
            return cmd_form(args, out)
        if args.command == "species-check":
            return cmd_species(args, out)
        cfg = RunConfig(args.command, args.spec, args.bound, args.dim, args.field,
                        args.budget, args.out, args.seed, args.threads)
        if args.command == "series":
            cfg.rep_file = args.rep
        handler = {
            "check": cmd_check,
            "count": lambda c, o: cmd_check(c, o, counts_only=True),
            "classify": cmd_classify,
            "series": cmd_series,
            "separate": cmd_separate,
            "verify-separated": cmd_verify,
        }[args.command]
        return handler(cfg, out)
    except BudgetExceededError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (SpecError, FieldError, RadicalSquareError, NotAdmissibleError, ReportError, _UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
