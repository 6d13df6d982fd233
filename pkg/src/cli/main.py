from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
import sys
from typing import Sequence

from src.codes.alphabet import PhaseAlphabet
from src.codes.code import CodeSet
from src.codes.construct import (
    MultMatrixParams,
    build_mccc_szccs,
    default_permutation_family,
    example1_mos,
    example1_permutations,
    extend_ccc,
    mos_dft,
    mos_hadamard,
    mult_matrix_ccc,
    multiplication_matrix,
)
from src.codes.correlate import ZERO_TOLERANCE, accf_vector, pacf2d
from src.codes.errors import CodeError
from src.codes.families import MosFamily, PermutationFamily
from src.codes.verify import (
    Verdict,
    measure_symmetric_zone,
    verify_ccc,
    verify_gcs,
    verify_mccc,
    verify_perfect_array,
    verify_szccs,
)
from src.cli.document import CodeSetDocument, Kind, resolve_document, save_document
from src.cli.report import ACCF_FIELDS, PACF_FIELDS, accf_rows, pacf_rows, verdict_report, write_csv

logger = logging.getLogger("ccc_designer.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3

CONSTRUCTIONS = ("perfect", "ccc-mult", "extend", "szccs")
PROPERTIES = ("perfect", "gcs", "ccc", "szccs", "mccc")


class UsageError(CodeError):
    pass


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s [%(levelname)s] %(name)s: %(message)s", stream=sys.stderr)


def _parse_permutations(text: str) -> list[list[int]]:
    perms = []
    for chunk in text.replace("\n", ";").split(";"):
        chunk = chunk.strip().strip("()")
        if not chunk:
            continue
        try:
            perms.append([int(x) for x in chunk.replace(",", " ").split()])
        except ValueError:
            raise UsageError(f"cannot parse permutation {chunk!r}; use 1-based lists like 1,2,3,4;2,1,4,3") from None
    if not perms:
        raise UsageError("no permutation given")
    return perms


def _read_permutations(args: argparse.Namespace) -> list[list[int]] | None:
    """1-based permutations from --perms / --perms-file, None for the presets."""
    if args.perms in (None, "default", "example1"):
        return None
    if args.perms == "file":
        if args.perms_file is None:
            raise UsageError("--perms file needs --perms-file")
        try:
            return _parse_permutations(Path(args.perms_file).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read {args.perms_file}: {exc.strerror}") from exc
    return _parse_permutations(args.perms)


def _permutation_family(args: argparse.Namespace, m: int, p: int) -> PermutationFamily:
    if args.perms == "example1":
        return example1_permutations()
    perms = _read_permutations(args)
    if perms is None:
        return default_permutation_family(m, p)
    return PermutationFamily.from_one_based(perms, p)


def _single_permutation(args: argparse.Namespace, m: int) -> tuple[int, ...]:
    if args.perms == "example1":
        return example1_permutations()[0]
    perms = _read_permutations(args)
    if perms is None:
        return tuple(range(m))
    if len(perms) != 1:
        raise UsageError(f"extend takes exactly one permutation, got {len(perms)}")
    return tuple(x - 1 for x in perms[0])


def _mos_family(args: argparse.Namespace, p: int) -> MosFamily:
    kind = args.mos or ("example1" if args.perms == "example1" else "dft")
    if kind == "dft":
        return mos_dft(p)
    if kind == "hadamard":
        return mos_hadamard(p)
    if kind == "example1":
        return example1_mos()
    if args.mos_file is None:
        raise UsageError("--mos file needs --mos-file")
    path = Path(args.mos_file)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    if path.suffix == ".json":
        try:
            data = json.loads(raw)
            root_order = data["root_order"]
            if isinstance(root_order, bool) or not isinstance(root_order, int):
                raise UsageError(f"malformed MOS file {path}: root_order must be an integer, got {root_order!r}")
            return MosFamily(data["phases"], PhaseAlphabet(root_order))
        except CodeError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed MOS file {path}: {exc}") from exc
    return MosFamily.from_signs([line for line in raw.splitlines() if line.strip() and not line.startswith("#")])


def _require(value: object, flag: str, construction: str) -> object:
    if value is None:
        raise UsageError(f"{construction} needs {flag}")
    return value


def _build(args: argparse.Namespace) -> tuple[list[CodeSet], Kind, dict[str, object], list[Verdict]]:
    name = args.construction
    if name in ("perfect", "ccc-mult"):
        params = MultMatrixParams(int(_require(args.m, "--m", name)), args.s, args.x)
        provenance: dict[str, object] = {"construction": name, "M": params.m, "s": params.s, "x": params.x}
        if name == "perfect":
            code = multiplication_matrix(params)
            verdict = verify_perfect_array(code, tolerance=args.tolerance)
            return [CodeSet.of([code])], Kind.CODE, provenance, [verdict]
        code_set = mult_matrix_ccc(params)
        verdict = verify_ccc(code_set, tolerance=args.tolerance, workers=args.workers)
        return [code_set], Kind.CODE_SET, provenance, [verdict]

    seed_ref = _require(args.seed, "--seed", name)
    seed = resolve_document(str(seed_ref)).code_set()
    p = int(_require(args.p, "--p", name))
    mos = _mos_family(args, p)
    provenance = {"construction": name, "seed": str(seed_ref), "P": p, "mos": args.mos or "auto"}

    if name == "extend":
        perm = _single_permutation(args, seed.size)
        extended = extend_ccc(seed, p, mos, perm)
        provenance["perm"] = [x + 1 for x in perm]
        verdict = verify_ccc(extended, tolerance=args.tolerance, workers=args.workers)
        return [extended], Kind.CODE_SET, provenance, [verdict]

    perms = _permutation_family(args, seed.size, p)
    bundle = build_mccc_szccs(seed, p, mos, perms)
    provenance.update(bundle.provenance)
    provenance.update({"Z": bundle.zone.z, "seed_n": seed.cols})
    verdicts = [verify_szccs(bundle.codes, bundle.zone.z, tolerance=args.tolerance, workers=args.workers)]
    if bundle.set_count > 1:
        verdicts.append(verify_mccc(bundle.sets, seed.cols, tolerance=args.tolerance, workers=args.workers))
    return list(bundle.sets), Kind.SZCCS_BUNDLE, provenance, verdicts


def cmd_gen(args: argparse.Namespace) -> int:
    sets, kind, provenance, verdicts = _build(args)
    failed = [v for v in verdicts if not v.passed]
    if failed:
        for verdict in failed:
            print(f"error: construction failed verification: {verdict.summary()}", file=sys.stderr)
        return EXIT_CONSTRUCTION

    document = CodeSetDocument.from_sets(
        sets,
        kind=kind,
        provenance=provenance,
        verdicts=[v.to_dict() for v in verdicts],
    )
    fmt = args.format or ("txt" if args.out is not None and Path(args.out).suffix == ".txt" else "json")
    if args.out is not None:
        save_document(document, args.out, fmt=fmt)
        print(f"wrote {document.kind} k={document.k} {document.m}x{document.n} to {args.out}")
    else:
        print(document.to_json() if fmt == "json" else document.to_text(), end="")
    return EXIT_OK


def _single_code_index(document: CodeSetDocument, index: int | None) -> int:
    if index is not None:
        return index
    if document.k != 1:
        raise UsageError(f"document holds {document.k} codes; choose one with --index")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    document = resolve_document(args.file)
    prop = args.property
    options = {"tolerance": args.tolerance}
    if prop == "perfect":
        verdict = verify_perfect_array(document.code(_single_code_index(document, args.index)), **options)
    elif prop == "gcs":
        verdict = verify_gcs(document.code(_single_code_index(document, args.index)), **options)
    elif prop == "ccc":
        verdict = verify_ccc(document.code_set(), workers=args.workers, **options)
    elif prop == "szccs":
        z = args.z if args.z is not None else document.provenance.get("Z")
        if z is None:
            raise UsageError("szccs verification needs --z")
        verdict = verify_szccs(document.code_set(), int(z), workers=args.workers, **options)
    else:
        sets = document.code_sets()
        if len(sets) < 2:
            raise UsageError(f"mccc verification needs a bundle of code sets, document has {len(sets)}")
        z = args.z if args.z is not None else document.provenance.get("seed_n")
        if z is None:
            raise UsageError("mccc verification needs --z")
        verdict = verify_mccc(sets, int(z), workers=args.workers, **options)

    print(verdict_report([verdict]))
    return EXIT_OK if verdict.passed else EXIT_FAILED


def cmd_corr(args: argparse.Namespace) -> int:
    first = resolve_document(args.file_a)
    a = first.code(args.index)
    out = Path(args.out) if args.out else None
    if args.mode == "pacf":
        if args.file_b is not None or args.index_b is not None:
            raise UsageError("pacf is an autocorrelation; it takes a single code")
        write_csv(pacf_rows(pacf2d(a)), PACF_FIELDS, out)
        return EXIT_OK

    if args.file_b is not None:
        b = resolve_document(args.file_b).code(args.index_b or 0)
    elif args.index_b is not None:
        b = first.code(args.index_b)
    else:
        b = a
    write_csv(accf_rows(accf_vector(a, b)), ACCF_FIELDS, out)
    return EXIT_OK


def cmd_info(args: argparse.Namespace) -> int:
    document = resolve_document(args.file)
    print(f"kind: {document.kind}")
    print(f"codes: k={document.k}, {document.m}x{document.n}, q={document.root_order}")
    print(f"sets: {list(document.group_sizes)}")
    if document.provenance:
        print(f"provenance: {json.dumps(document.provenance, ensure_ascii=False)}")
    print(f"symmetric zone: {measure_symmetric_zone(document.code_set(), workers=args.workers)}")
    for verdict in document.verdicts:
        status = "passed" if verdict.get("passed") else "failed"
        print(f"verdict: {verdict.get('property')} {status} {verdict.get('parameters', {})}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccc-designer",
        description="Build and certify perfect arrays, CCCs, MCCCs and optimal symmetrical ZCCS.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log INFO (-v) or DEBUG (-vv) to stderr")
    parser.add_argument("--workers", type=int, default=1, help="Threads for correlation sweeps (default %(default)s)")
    parser.add_argument("--tolerance", type=float, default=ZERO_TOLERANCE, help="Relative zero tolerance, scaled by M*N")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Construct a code, code set or bundle")
    gen.add_argument("construction", choices=CONSTRUCTIONS)
    gen.add_argument("--m", type=int, help="Matrix order M (perfect, ccc-mult)")
    gen.add_argument("--s", type=int, default=1, help="Multiplier s, gcd(M, s) = 1 (default %(default)s)")
    gen.add_argument("--x", type=int, default=0, help="Phase offset x (default %(default)s)")
    gen.add_argument("--p", type=int, help="Extension factor P, a divisor of M")
    gen.add_argument("--seed", help="Seed CCC document or bundled fixture name (e.g. example1_seed)")
    gen.add_argument("--mos", choices=["dft", "hadamard", "example1", "file"], help="Orthogonal sequences")
    gen.add_argument("--mos-file", help="MOS rows as +/- lines or JSON {root_order, phases}")
    gen.add_argument("--perms", help="default, example1, file, or 1-based lists like 1,2,3,4;2,1,4,3")
    gen.add_argument("--perms-file", help="One 1-based permutation per line")
    gen.add_argument("--out", help="Write the document here instead of stdout")
    gen.add_argument("--format", choices=["json", "txt"], help="Document format (txt is binary only)")
    gen.set_defaults(handler=cmd_gen)

    verify = sub.add_parser("verify", help="Certify a property, JSON verdict on stdout")
    verify.add_argument("file", help="Document path or bundled fixture name")
    verify.add_argument("--property", required=True, choices=PROPERTIES)
    verify.add_argument("--z", type=int, help="Zone width Z (szccs, mccc)")
    verify.add_argument("--index", type=int, help="Code index for perfect/gcs")
    verify.set_defaults(handler=cmd_verify)

    corr = sub.add_parser("corr", help="Exhaustive correlation table as CSV")
    corr.add_argument("file_a")
    corr.add_argument("file_b", nargs="?")
    corr.add_argument("--mode", choices=["pacf", "accf"], default="accf")
    corr.add_argument("--index", type=int, default=0, help="Code index in file_a (default %(default)s)")
    corr.add_argument("--index-b", type=int, help="Code index of the second code")
    corr.add_argument("--out", help="CSV path (stdout if not set)")
    corr.add_argument("--format", choices=["csv"], default="csv")
    corr.set_defaults(handler=cmd_corr)

    info = sub.add_parser("info", help="Summarize a document")
    info.add_argument("file")
    info.set_defaults(handler=cmd_info)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except CodeError as exc:
        logger.debug("command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
