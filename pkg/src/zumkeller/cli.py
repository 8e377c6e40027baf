"""Command-line front end.  All arithmetic happens in the library modules.

Exit codes: 0 success, 1 verification/domain failure, 2 usage error,
3 resource-budget refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import additive, checks, store, structure
from .additive import PairType
from .arith import sigma
from .classify import abundancy, is_practical
from .errors import BitmapFormatError, DomainError, ResourceLimitError


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _limit_int(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("limit must be >= 2")
    return value


# argparse embeds the type callable's name in its error messages.
_positive_int.__name__ = "integer"
_limit_int.__name__ = "integer"


def _default_jobs() -> int:
    return os.cpu_count() or 1


def cmd_classify(args) -> int:
    from .arith import is_prime, is_square
    from .classify import is_zumkeller

    n = args.n
    verdict = is_zumkeller(n, witness=args.witness)
    info = {
        "n": n,
        "sigma": sigma(n),
        "abundancy": str(abundancy(n)),
        "zumkeller": verdict.is_zumkeller,
        "practical": is_practical(n),
        "prime": is_prime(n),
        "square": is_square(n),
    }
    if verdict.rejection_reason is not None:
        info["rejection"] = verdict.rejection_reason.value
    if args.witness and verdict.witness is not None:
        from .arith import divisors

        half = sorted(verdict.witness)
        rest = sorted(set(divisors(n)) - set(half))
        info["partition"] = [half, rest]
    if args.format == "jsonl":
        print(json.dumps(info))
        return 0
    print(f"n = {n}")
    print(f"sigma = {info['sigma']}")
    print(f"abundancy = {info['abundancy']}")
    for key in ("zumkeller", "practical", "prime", "square"):
        line = "yes" if info[key] else "no"
        if key == "zumkeller" and "rejection" in info:
            line += f" ({info['rejection']})"
        print(f"{key} = {line}")
    if "partition" in info:
        half, rest = info["partition"]
        print(f"partition = {half} / {rest}")
    return 0


def cmd_sums(args) -> int:
    pair = PairType(args.pair)
    table = additive.build_range_table(args.limit, jobs=args.jobs)
    if args.manifest:
        try:
            manifest = store.load_manifest(args.manifest)
        except FileNotFoundError:
            manifest = store.RunManifest(args.limit, pair.value, args.chunk_size)
        values, agg = additive.run_pair_scan(
            table, pair, manifest, manifest_path=args.manifest
        )
    else:
        values, agg = additive.run_pair_scan(table, pair)
    print(f"pair zumkeller+{pair.second_category}, limit {args.limit}")
    print(f"non-representable count: {agg['count']}")
    print(f"max non-representable: {agg['max'] if agg['max'] is not None else 'none'}")
    if pair is PairType.ZUM_ZUM and args.limit >= additive.ODD_WINDOW[1]:
        print(f"odd non-representable in [953, 32761]: {agg['odd_window_count']}")
    if pair is PairType.ZUM_SQUARE:
        classed = [v for v in values if v % 18 in additive.SQUARE_RESIDUES]
        print(f"non-representable within residue classes: {classed}")
    if pair is PairType.ZUM_PRIME and args.limit >= 39:
        k_max = min(1000, (args.limit - 3) // 18)
        scan = additive.scan_conjecture_18k3(table, k_max)
        print(
            f"18k+3 scan (k = 2..{k_max}): counterexamples = "
            f"{scan.counterexamples if scan.counterexamples else 'none'}; "
            f"n=21 representable: {'yes' if scan.k1_representable else 'no'}"
        )
    if args.out:
        store.export_csv(values, args.out)
    if args.witnesses_out:
        reports = additive.classify_pair_sums(table, pair)
        store.export_witness_csv(reports, args.witnesses_out)
    return 0


def cmd_verify_paper(args) -> int:
    results = checks.run_all(args.limit, jobs=args.jobs)
    for r in results:
        print(f"[{r.status.upper():>8}] {r.name} -- {r.detail}")
    if any(r.status == "fail" for r in results):
        return 1
    if any(r.status == "resource" for r in results):
        return 3
    return 0


def cmd_table1(args) -> int:
    rep = structure.verify_table1()
    if rep.ok:
        print(f"{rep.rows_checked}/44 rows pass")
        return 0
    for idx, why in rep.failures:
        print(f"row {idx}: {why}")
    return 1


def cmd_runs(args) -> int:
    table = additive.build_range_table(args.limit, jobs=args.jobs)
    for start, length in structure.find_runs(table, args.min_len):
        print(f"{start} {length}")
    return 0


def cmd_ak(args) -> int:
    block = structure.compute_f_and_A(args.k)
    verdict = structure.zumkeller_check_block(block)
    word = {True: "yes", False: "no", None: "unknown"}[verdict]
    print(f"f({args.k}) = {block.f_k}, A_{args.k} = {block.a_k}, zumkeller = {word}")
    return 0


def cmd_alambda(args) -> int:
    lam = Fraction(args.num, args.den)
    result = structure.compute_A_lambda(lam, args.k, args.bound)
    if result is None:
        print(f"not found below {args.bound}")
        return 0
    print(
        f"A = {result.n}, u = {result.u}, block divisor = {result.block_divisor}, "
        f"lemma-check: {'pass' if result.lemma_ok else 'fail'}"
    )
    return 0 if result.lemma_ok else 1


def cmd_witness(args) -> int:
    try:
        indices = [int(tok) for tok in args.blocks.split(",") if tok]
    except ValueError:
        print(
            f"zumkeller witness: error: --blocks expects integers, got {args.blocks!r}",
            file=sys.stderr,
        )
        return 2
    if not indices or min(indices) < 1:
        print(
            "zumkeller witness: error: --blocks expects positive block indices",
            file=sys.stderr,
        )
        return 2
    blocks = []
    for j in indices:
        block = structure.compute_f_and_A(j)
        verdict = structure.zumkeller_check_block(block)
        if verdict is None:
            raise ResourceLimitError(f"A_{j} = {block.a_k} is too large to verify")
        if verdict is False:
            raise DomainError(f"A_{j} = {block.a_k} is not Zumkeller")
        blocks.append(block)
    witness = structure.construct_consecutive_witness(blocks)
    print("blocks: " + ", ".join(f"A_{b.k} = {b.a_k}" for b in blocks))
    print(f"n = {witness.n}")
    print(f"period = {witness.period}")
    for pos, block in enumerate(blocks, start=1):
        print(f"n+{pos} = {block.a_k} * {(witness.n + pos) // block.a_k}")
    return 0


def cmd_sieve(args) -> int:
    table = additive.build_range_table(args.limit, jobs=args.jobs)
    bitmap = store.BitmapFile.from_flags(args.kind, table.flags(args.kind))
    store.save_bitmap(bitmap, args.out)
    print(f"wrote {args.out} ({os.path.getsize(args.out)} bytes)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zumkeller",
        description="Zumkeller/practical classification, pair-sum scans, constructions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a single integer")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--witness", action="store_true", help="emit a divisor partition")
    p.add_argument("--format", choices=("human", "jsonl"), default="human")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sums", help="classify n = a + b over a range")
    p.add_argument(
        "--pair", required=True, choices=[t.value for t in PairType],
        help="zz zumkeller+zumkeller, zs zumkeller+practical, "
             "zq zumkeller+square, zp zumkeller+prime",
    )
    p.add_argument("--limit", type=_limit_int, default=additive.DEFAULT_PAIR_LIMIT)
    p.add_argument("--out", help="CSV of non-representable n")
    p.add_argument("--witnesses-out", help="CSV of witnesses n,a,b,...")
    p.add_argument("--jobs", type=_positive_int, default=_default_jobs())
    p.add_argument("--manifest", help="JSON checkpoint for resumable runs")
    p.add_argument("--chunk-size", type=_positive_int, default=10_000)
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("verify-paper", help="run the built-in verification checklist")
    p.add_argument("--limit", type=_limit_int, default=checks.HEADLINE_LIMIT)
    p.add_argument("--jobs", type=_positive_int, default=_default_jobs())
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("table1", help="verify the 44-row odd pair table")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("runs", help="maximal runs of consecutive Zumkeller numbers")
    p.add_argument("--limit", type=_limit_int, required=True)
    p.add_argument("--min-len", type=_positive_int, default=1)
    p.add_argument("--jobs", type=_positive_int, default=_default_jobs())
    p.set_defaults(func=cmd_runs)

    p = sub.add_parser("ak", help="prime block A_k and its verdict")
    p.add_argument("--k", type=_positive_int, required=True)
    p.set_defaults(func=cmd_ak)

    p = sub.add_parser("alambda", help="smallest n with sigma(n)/n >= num/den")
    p.add_argument("--num", type=_positive_int, required=True)
    p.add_argument("--den", type=_positive_int, default=1)
    p.add_argument("--k", type=int, default=0, help="skip the first k primes")
    p.add_argument("--bound", type=_positive_int, default=10_000_000)
    p.set_defaults(func=cmd_alambda)

    p = sub.add_parser("witness", help="consecutive Zumkeller run via CRT")
    p.add_argument("--blocks", required=True, help="comma-separated block indices")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("sieve", help="write a flag bitmap file")
    p.add_argument("--limit", type=_limit_int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--kind", choices=sorted(store.FLAG_KIND_TAGS), default="zumkeller")
    p.add_argument("--jobs", type=_positive_int, default=_default_jobs())
    p.set_defaults(func=cmd_sieve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except (DomainError, BitmapFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
