"""Command-line interface: ``kummer <command> [flags]``.

Exit codes: 0 Kummer / success, 1 not Kummer / check failed, 64 usage error,
65 invalid input data.  JSON reports are canonical (sorted keys) so two runs
on the same input differ only in ``timing_ms``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .classify import (
    EXHAUSTIVE_MAX_PRIME,
    MonomialSpace,
    classify_triple,
    default_workers,
    enumerate_maximal,
    standardness_certificate,
)
from .cyclotomic import PrimeCtx, CycInt, prime_ctx
from .generic import ingen_check
from .symbol_algebra import (
    AlgElement,
    CenterPoly,
    DependentBasis,
    ZeroElementError,
    is_kummer_space_power,
    is_kummer_space_trace,
)
from .zerosum import InvalidVectors, admissible_triple, dim3_residue_witness, index_witness, min_zero_sum

EXIT_OK = 0
EXIT_NOT_KUMMER = 1
EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# Input parsing
# --------------------------------------------------------------------------

_INT_RE = re.compile(r"^[+-]?\d+$")


def parse_prime(value: Any) -> PrimeCtx:
    try:
        return prime_ctx(int(value))
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid prime: {exc}") from None


def parse_set(text: str) -> List[List[int]]:
    """Parse "a1,b1;a2,b2;..." (whitespace ignored) into integer pairs."""
    cleaned = re.sub(r"\s+", "", text)
    if not cleaned:
        return []
    out = []
    for i, chunk in enumerate(cleaned.strip(";").split(";")):
        parts = chunk.split(",")
        if len(parts) != 2 or not all(_INT_RE.match(x) for x in parts):
            raise UsageError(f"entry {i} ({chunk!r}) is not of the form a,b")
        out.append([int(parts[0]), int(parts[1])])
    return out


def _as_int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise DataError(f"{where}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _INT_RE.match(value.strip()):
        return int(value.strip())
    raise DataError(f"{where}: expected an integer or decimal string, got {value!r}")


def parse_elements(doc: Any, ctx: PrimeCtx) -> List[AlgElement]:
    """Build AlgElements from the element-file JSON document."""
    if not isinstance(doc, dict) or "elements" not in doc:
        raise DataError("element file must be an object with an 'elements' list")
    if "p" in doc and _as_int(doc["p"], "p") != ctx.p:
        raise DataError(f"file declares p = {doc['p']} but --p is {ctx.p}")
    elements = doc["elements"]
    if not isinstance(elements, list):
        raise DataError("'elements' must be a list")
    out = []
    for i, el in enumerate(elements):
        terms = el.get("terms") if isinstance(el, dict) else None
        if not isinstance(terms, list):
            raise DataError(f"element {i}: missing 'terms' list")
        acc = AlgElement.zero(ctx)
        for j, term in enumerate(terms):
            where = f"element {i}, term {j}"
            if not isinstance(term, dict):
                raise DataError(f"{where}: must be an object")
            x = _as_int(term.get("x", 0), where + " x")
            y = _as_int(term.get("y", 0), where + " y")
            s = _as_int(term.get("alpha", 0), where + " alpha")
            t = _as_int(term.get("beta", 0), where + " beta")
            if x < 0 or y < 0 or s < 0 or t < 0:
                raise DataError(f"{where}: exponents must be nonnegative")
            coeff = term.get("coeff")
            if not isinstance(coeff, list) or len(coeff) != ctx.p - 1:
                raise DataError(f"{where}: coeff must be a list of {ctx.p - 1} integers")
            c = CycInt(ctx, [_as_int(v, where + " coeff") for v in coeff])
            acc = acc + AlgElement.monomial(ctx, x, y, CenterPoly.monomial(ctx, s, t, c))
        out.append(acc)
    return out


def load_elements(path: str, ctx: PrimeCtx) -> List[AlgElement]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DataError(f"{path} is not valid JSON: {exc}") from None
    return parse_elements(doc, ctx)


def element_to_json(e: AlgElement) -> dict:
    """Inverse of the element-file term encoding (canonical term order)."""
    terms = []
    for (a, b), cp in sorted(e.terms.items()):
        for (s, t), c in sorted(cp.terms.items()):
            terms.append({"x": a, "y": b, "alpha": s, "beta": t, "coeff": list(c.coords)})
    return {"terms": terms}


# --------------------------------------------------------------------------
# Reports
# --------------------------------------------------------------------------


def make_report(ctx: PrimeCtx, command: str, started: float, **fields) -> Dict[str, Any]:
    report = {
        "p": ctx.p,
        "command": command,
        "verdict": None,
        "witness": None,
        "certificate": None,
        "dimension": None,
        "tool_version": __version__,
    }
    report.update(fields)
    report["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    return report


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _emit(report: Dict[str, Any], fmt: str, out) -> None:
    if fmt == "json":
        out.write(dumps(report) + "\n")
        return
    for key in sorted(report):
        value = report[key]
        if isinstance(value, (list, dict)):
            value = dumps(value)
        out.write(f"{key}: {value}\n")


def _verdict(ok: bool) -> str:
    return "kummer" if ok else "not_kummer"


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def cmd_check_monomial(args, out) -> int:
    started = time.perf_counter()
    ctx = parse_prime(args.p)
    pairs = parse_set(args.set)
    if not pairs:
        raise UsageError("--set must contain at least one vector")
    try:
        space = MonomialSpace.of(ctx, pairs)
    except InvalidVectors as exc:
        raise DataError(f"invalid vector at index {exc.index}: {exc}") from None
    witness = min_zero_sum(ctx, space.vectors)
    cert = standardness_certificate(space) if witness is None else None
    report = make_report(
        ctx,
        "check-monomial",
        started,
        verdict=_verdict(witness is None),
        witness=None if witness is None else [[v.a, v.b, m] for v, m in witness.multiplicities],
        witness_weight=None if witness is None else witness.weight,
        certificate=None if cert is None else cert.to_dict(),
        dimension=len(space),
        space=space.to_list(),
    )
    _emit(report, args.format, out)
    return EXIT_OK if witness is None else EXIT_NOT_KUMMER


def cmd_check_symbolic(args, out) -> int:
    started = time.perf_counter()
    ctx = parse_prime(args.p)
    basis = load_elements(args.input, ctx)
    if not basis:
        raise DataError("the element file contains no elements")
    check = is_kummer_space_trace if args.criterion == "trace" else is_kummer_space_power
    try:
        verdict = check(basis)
    except DependentBasis as exc:
        raise DataError(f"element {exc.index} depends on the preceding elements") from None
    except ZeroElementError as exc:
        raise DataError(str(exc)) from None
    report = make_report(
        ctx,
        "check-symbolic",
        started,
        verdict=_verdict(verdict.is_kummer),
        witness=None if verdict.witness is None else list(verdict.witness),
        criterion=args.criterion,
        dimension=len(basis),
    )
    _emit(report, args.format, out)
    return EXIT_OK if verdict.is_kummer else EXIT_NOT_KUMMER


def classification_payload(results) -> List[dict]:
    return [
        {"space": space.to_list(), "certificate": None if cert is None else cert.to_dict()}
        for space, cert in results
    ]


def cmd_classify(args, out) -> int:
    ctx = parse_prime(args.p)
    if ctx.p > EXHAUSTIVE_MAX_PRIME and not args.symmetry:
        raise UsageError(f"p = {ctx.p} > {EXHAUSTIVE_MAX_PRIME} requires --symmetry")
    workers = args.workers if args.workers is not None else default_workers()
    if workers < 1:
        raise UsageError("--workers must be at least 1")
    results = enumerate_maximal(ctx, symmetry=args.symmetry, workers=workers)
    text = dumps(classification_payload(results)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    max_dim = max((len(s) for s, _ in results), default=0)
    uncertified = sum(1 for _, c in results if c is None)
    summary = f"p={ctx.p} maximal_spaces={len(results)} max_dim={max_dim} uncertified={uncertified}"
    print(summary, file=sys.stderr if not args.out else out)
    return EXIT_OK if uncertified == 0 else EXIT_NOT_KUMMER


def triple_rows(ctx: PrimeCtx) -> List[List[Any]]:
    """One row per (a, b) in [1, p)^2 for the space Fx + Fy + Fx^a y^b."""
    p = ctx.p
    rows = []
    for a in range(1, p):
        for b in range(1, p):
            verdict = classify_triple(ctx, (1, 0), (0, 1), (a, b))
            k = dim3_residue_witness(ctx, a, b)
            rows.append([a, b, _verdict(verdict.is_kummer), verdict.condition or "", "" if k is None else k])
    return rows


def cmd_triple_table(args, out) -> int:
    ctx = parse_prime(args.p)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["a", "b", "verdict", "matched_condition", "residue_witness_k"])
    writer.writerows(triple_rows(ctx))
    out.write(buf.getvalue())
    return EXIT_OK


def cmd_index_verify(args, out) -> int:
    started = time.perf_counter()
    ctx = parse_prime(args.p)
    p = ctx.p
    admissible = missing = 0
    failures = []
    for a in range(1, p):
        for b in range(1, p):
            for c in range(1, p):
                if not admissible_triple(ctx, a, b, c):
                    continue
                admissible += 1
                if index_witness(ctx, a, b, c) is None:
                    missing += 1
                    failures.append([a, b, c])
    report = make_report(
        ctx,
        "index-verify",
        started,
        verdict="verified" if not missing else "failed",
        admissible=admissible,
        without_witness=missing,
        witness=failures[:20] or None,
    )
    _emit(report, args.format, out)
    return EXIT_OK if not missing else EXIT_NOT_KUMMER


def cmd_degenerate(args, out) -> int:
    started = time.perf_counter()
    ctx = parse_prime(args.p)
    basis = load_elements(args.input, ctx)
    if not basis:
        raise DataError("the element file contains no elements")
    try:
        rep = ingen_check(basis, check_input=not args.skip_input_check)
    except DependentBasis as exc:
        raise DataError(f"element {exc.index} depends on the preceding elements") from None
    except ZeroElementError as exc:
        raise DataError(str(exc)) from None
    d = rep.to_dict()
    report = make_report(
        ctx,
        "degenerate",
        started,
        verdict=_verdict(rep.degeneration_kummer),
        witness=d["degeneration_witness"],
        dimension=rep.dimension,
        bound=rep.bound,
        bound_ok=rep.bound_ok,
        degeneration=d["degeneration"],
        input_kummer=d["input_kummer"],
        defects=d["defects"],
    )
    _emit(report, args.format, out)
    ok = rep.degeneration_kummer and rep.bound_ok and not rep.defects
    return EXIT_OK if ok else EXIT_NOT_KUMMER


# --------------------------------------------------------------------------
# Entry point
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kummer", description="Kummer elements and subspaces of symbol algebras of prime degree.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def with_p(name: str, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--p", required=True, type=int, help="prime degree")
        return sp

    sp = with_p("check-monomial", "test a set of monomial exponent vectors")
    sp.add_argument("--set", required=True, help='vectors as "a1,b1;a2,b2;..."')
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_check_monomial)

    sp = with_p("check-symbolic", "test a basis of elements of the generic algebra")
    sp.add_argument("--input", required=True, help="element file (JSON)")
    sp.add_argument("--criterion", choices=("trace", "power"), default="trace")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_check_symbolic)

    sp = with_p("classify", "enumerate maximal monomial Kummer spaces with certificates")
    sp.add_argument("--out", help="output JSON file (default: stdout)")
    sp.add_argument("--workers", type=int, default=None, help="worker processes (default: $KUMMER_WORKERS or 1)")
    sp.add_argument("--symmetry", action="store_true", help="search sets containing x and y, then close under GL2")
    sp.set_defaults(func=cmd_classify)

    sp = with_p("triple-table", "CSV verdicts for Fx + Fy + Fx^a y^b")
    sp.set_defaults(func=cmd_triple_table)

    sp = with_p("index-verify", "check every admissible triple has an index witness")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_index_verify)

    sp = with_p("degenerate", "degenerate a Kummer basis to a monomial space")
    sp.add_argument("--input", required=True, help="element file (JSON)")
    sp.add_argument("--skip-input-check", action="store_true", help="do not run the trace criterion on the input")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_degenerate)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"kummer: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"kummer: invalid data: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
