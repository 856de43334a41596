"""Command line interface.

Exit codes: 0 success, 1 usage or parse error, 2 certificate or check
failure, 3 no embedding found.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .criterion import (TRANSCENDENTAL, CertificateFailure, DomainError, NotTransitive, Pencil,
                        certify, default_jobs, embed, pencil_poly)
from .exactnum import parse_rational
from .geometry import DEFAULT_SCAN_CAP, kite_params
from .permgroup import (DEFAULT_CAP, CapExceeded, CycleParseError, GeneratorFileError, PermGroup,
                        Triple, parse_group_spec, triple_classes)
from .representation import DeletedRep

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_NOT_FOUND = 0, 1, 2, 3
CACHE_ENV = "TRANSQUAD_CACHE_DIR"


class UsageError(Exception):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "transquad"


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _emit(text: str, output: str | None) -> None:
    if output:
        atomic_write(Path(output), text)
    else:
        sys.stdout.write(text)


def _group(args) -> PermGroup:
    try:
        return parse_group_spec(args.group, cap=args.cap)
    except (GeneratorFileError, CycleParseError, OSError, ValueError) as exc:
        raise UsageError(f"bad group spec {args.group!r}: {exc}") from None


def _rational(text: str, what: str):
    try:
        return parse_rational(text)
    except ValueError:
        raise UsageError(f"{what} must be a rational p/q, got {text!r}") from None


def cmd_certify(args) -> int:
    if args.kite:
        alpha = kite_params(0)[0]
    elif args.alpha is None:
        raise UsageError("certify needs --alpha or --kite")
    else:
        alpha = _rational(args.alpha, "alpha")
    if args.beta != TRANSCENDENTAL:
        raise UsageError("certify only accepts --beta transcendental")
    group = _group(args)
    try:
        cert = certify(group, alpha, reduce=args.reduce, jobs=args.jobs, timing=args.timing)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    except CertificateFailure as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return EXIT_FAILED
    _emit(cert.dumps(), args.output)
    return EXIT_OK


def cmd_embed(args) -> int:
    if args.alpha is None or args.beta is None:
        raise UsageError("embed needs --alpha and --beta")
    if args.beta == TRANSCENDENTAL:
        raise UsageError("embed needs a rational beta")
    alpha, beta = _rational(args.alpha, "alpha"), _rational(args.beta, "beta")
    group = _group(args)
    witness = embed(group, alpha, beta, attempts=args.attempts, reduce=args.reduce,
                    jobs=args.jobs, timing=args.timing)
    if witness is None:
        print(f"no quadrilateral with parameters ({args.alpha}, {args.beta}) in any orbit "
              f"of {group.name}", file=sys.stderr)
        return EXIT_NOT_FOUND
    _emit(witness.dumps(), args.output)
    return EXIT_OK


def _parse_triple(text: str, order: int) -> Triple:
    try:
        t = Triple(*(int(p) for p in text.replace(" ", "").split(",")))
    except (TypeError, ValueError):
        raise UsageError(f"triple must be three comma-separated element indices: {text!r}") from None
    if not all(0 <= k < order for k in t):
        raise UsageError(f"triple {text!r} has indices outside 0..{order - 1}")
    return t


def _class_representative(group: PermGroup, t: Triple) -> Triple:
    conj = group.conjugation_table()
    return min(Triple(row[t.a], row[t.b], row[t.c]) for row in conj)


def _poly_entry(rep: DeletedRep, t: Triple) -> dict:
    pen = Pencil(rep.context(t))
    return {"restricted_dim": pen.dim, "terms": pencil_poly(pen).to_json()}


def cmd_poly(args) -> int:
    group = _group(args)
    if args.all_classes:
        requested = [tc.triple for tc in triple_classes(group, reduce=True)]
    elif args.triple:
        requested = [_parse_triple(t, group.order) for t in args.triple]
    else:
        raise UsageError("poly needs --triple i,j,k or --all-classes")
    rep = DeletedRep(group)
    key = hashlib.sha256(group.fingerprint().encode()).hexdigest()[:24]
    cache = Path(args.cache_dir or default_cache_dir()) / "poly" / key
    entries = []
    mismatches = []
    for t in requested:
        rep_t = _class_representative(group, t)
        path = cache / f"{rep_t.a}_{rep_t.b}_{rep_t.c}.json"
        cached = None
        if not args.no_cache and path.exists():
            try:
                cached = json.loads(path.read_text())
            except (OSError, json.JSONDecodeError):
                cached = None
        if cached is None or args.check_cache:
            fresh = _poly_entry(rep, rep_t)
            if cached is not None and cached != fresh:
                mismatches.append(list(t))
            if not args.no_cache:
                atomic_write(path, json.dumps(fresh))
            cached = fresh
        entries.append({"triple": list(t), "class_representative": list(rep_t), **cached})
    doc = {"schema_version": 1,
           "group": {"name": group.name, "degree": group.degree, "order": group.order},
           "polynomials": entries}
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    if mismatches:
        print(f"cache disagrees with fresh computation for {mismatches}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    from .verification import run_suite

    extra = []
    for spec in args.group or ():
        try:
            extra.append(parse_group_spec(spec, cap=args.cap))
        except (GeneratorFileError, CycleParseError, OSError, ValueError) as exc:
            raise UsageError(f"bad group spec {spec!r}: {exc}") from None

    def show(res):
        print(res.line(), file=sys.stderr)

    results = run_suite(max_degree=args.max_degree, extra_groups=extra, jobs=args.jobs,
                        scan_cap=args.scan_cap, report=show)
    doc = {"schema_version": 1, "passed": all(r.passed for r in results),
           "checks": [r.to_json() for r in results]}
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return EXIT_OK if doc["passed"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=default_jobs(),
                        help="worker processes (default: available CPUs)")
    common.add_argument("--no-reduce", dest="reduce", action="store_false",
                        help="enumerate all triples instead of conjugacy classes")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="group order cap")
    common.add_argument("--cache-dir", help=f"polynomial cache (default ${CACHE_ENV})")
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")
    common.add_argument("--scan-cap", type=int, default=DEFAULT_SCAN_CAP)
    common.add_argument("--attempts", type=int, default=16,
                        help="kernel combinations tried per singular triple")
    common.add_argument("--timing", action="store_true",
                        help="record elapsed_ms (makes output run-dependent)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="transquad", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"transquad {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[common],
                       help="certify non-embedding for transcendental beta")
    p.add_argument("--group", required=True, help="name:degree, regular_dihedral8 or file:path")
    p.add_argument("--alpha")
    p.add_argument("--beta", default=TRANSCENDENTAL)
    p.add_argument("--kite", action="store_true",
                   help="use the kite's parameters (-1, a+1) with a transcendental")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("embed", parents=[common], help="search for an embedding witness")
    p.add_argument("--group", required=True)
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("poly", parents=[common], help="singularity polynomial per triple")
    p.add_argument("--group", required=True)
    p.add_argument("--triple", action="append", help="element indices i,j,k (repeatable)")
    p.add_argument("--all-classes", action="store_true")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--check-cache", action="store_true",
                   help="recompute and compare with cached entries")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("verify-paper", parents=[common], help="run the verification suite")
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--group", action="append", help="extra group spec (repeatable)")
    # the determinism check compares 1 worker against --jobs workers
    p.set_defaults(func=cmd_verify_paper, jobs=8)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotTransitive, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
