"""Command line interface.

Every command prints exactly one JSON report to stdout:

    {"schema": 1, "version": ..., "command": ..., "inputs": ..., "result": ...}

``inputs`` echoes the semantic parameters (and a sha256 digest for each
input file); operational knobs such as ``--threads`` and ``--json`` are
deliberately not echoed, so reports are byte-identical across runs and
worker counts.  Counts that can exceed a machine word (products,
closed-form sizes) are rendered as decimal strings.

Exit codes: 0 success (verify: satisfied), 1 verify: violated,
2 verify: vacuous, 3 search stopped by its node budget, 64 bad usage,
unreadable or unparsable input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys

from . import __version__
from .analysis import (
    SATISFIED,
    VACUOUS,
    VIOLATED,
    WeakCrossParams,
    check_weak_cross,
    check_weak_single,
)
from .constructions import (
    StarSpec,
    TightPairSpec,
    make_covering,
    make_star,
    make_sunflower,
    make_tight_pair,
    random_family,
)
from .families import (
    Block,
    Family,
    FamilyPair,
    FamilyParseError,
    GroundSet,
    InstanceTooLargeError,
    binomial,
    parse_family,
    serialize_family,
)
from .refutation import cover_by_cores, refute_with_sunflower
from .search import search_max_product
from .structures import erdos_bound, find_sunflower, matching_number, max_family_no_matching

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_VACUOUS = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64

_VERDICT_EXITS = {SATISFIED: EXIT_OK, VIOLATED: EXIT_VIOLATED, VACUOUS: EXIT_VACUOUS}


class _UsageError(Exception):
    pass


def _read_family(path: str) -> tuple[Family, dict]:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    try:
        family = parse_family(data)
    except FamilyParseError as exc:
        raise _UsageError(f"{path}: {exc}") from exc
    digest = hashlib.sha256(data).hexdigest()
    return family, {"path": path, "sha256": digest}


def _write_family(path: str, family: Family) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(serialize_family(family))
    except OSError as exc:
        raise _UsageError(f"cannot write {path}: {exc}") from exc


def _parse_elements(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise _UsageError(f"expected comma-separated integers, got {text!r}") from None


def _emit(args, command: str, inputs: dict, result: dict) -> None:
    report = {
        "schema": 1,
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "result": result,
    }
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if args.json:
        try:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise _UsageError(f"cannot write {args.json}: {exc}") from exc


def _params(args) -> WeakCrossParams:
    try:
        return WeakCrossParams(args.ell, args.t)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _cmd_verify_cross(args) -> int:
    left, left_info = _read_family(args.left)
    right, right_info = _read_family(args.right)
    params = _params(args)
    try:
        pair = FamilyPair(left, right)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    verdict = check_weak_cross(pair, params, threads=args.threads)
    inputs = {"left": left_info, "right": right_info, "ell": args.ell, "t": args.t}
    _emit(args, "verify-cross", inputs, verdict.to_json_dict())
    return _VERDICT_EXITS[verdict.verdict]


def _cmd_verify_single(args) -> int:
    family, info = _read_family(args.family)
    if args.ell < 1:
        raise _UsageError(f"ell must be at least 1, got {args.ell}")
    verdict = check_weak_single(family, args.ell)
    inputs = {"family": info, "ell": args.ell}
    _emit(args, "verify-single", inputs, verdict.to_json_dict())
    return _VERDICT_EXITS[verdict.verdict]


def _cmd_construct(args) -> int:
    try:
        return _construct_dispatch(args)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _construct_dispatch(args) -> int:
    kind = args.kind
    n = args.n
    ground = GroundSet(n)
    if kind == "star":
        if args.t is None or args.k is None:
            raise _UsageError("star needs --n, --k, --t")
        core_elems = _parse_elements(args.core) if args.core else tuple(range(1, args.t + 1))
        if len(core_elems) != args.t:
            raise _UsageError(f"core {list(core_elems)} does not have t = {args.t} elements")
        spec = StarSpec(ground, args.k, Block.from_elements(ground, core_elems))
        family = make_star(spec)
        _write_family(args.out, family)
        inputs = {"kind": kind, "n": n, "k": args.k, "t": args.t,
                  "core": list(core_elems)}
        result = {"out": args.out, "size": len(family),
                  "closed_form": str(binomial(n - args.t, args.k - args.t))}
        _emit(args, "construct", inputs, result)
        return EXIT_OK
    if kind == "tight-pair":
        if args.t is None or args.k is None or args.kprime is None:
            raise _UsageError("tight-pair needs --n, --k, --kprime, --t")
        if args.core or args.extra:
            core_elems = _parse_elements(args.core) if args.core else tuple(range(1, args.t + 1))
            if args.extra is None:
                raise _UsageError("an explicit --core also needs --extra")
            extra_elems = _parse_elements(args.extra)
            spec = TightPairSpec(ground, args.k, args.kprime,
                                 Block.from_elements(ground, core_elems),
                                 Block.from_elements(ground, extra_elems))
        else:
            spec = TightPairSpec.default(n, args.k, args.kprime, args.t)
        if spec.core.k != args.t:
            raise _UsageError(f"core does not have t = {args.t} elements")
        pair = make_tight_pair(spec, ell=args.ell)
        left_path, right_path = args.out + ".left.fam", args.out + ".right.fam"
        _write_family(left_path, pair.left)
        _write_family(right_path, pair.right)
        inputs = {"kind": kind, "n": n, "k": args.k, "kprime": args.kprime,
                  "t": args.t, "core": list(spec.core.elements),
                  "extra": list(spec.extra.elements)}
        if args.ell is not None:
            inputs["ell"] = args.ell
        result = {
            "left_out": left_path, "right_out": right_path,
            "left_size": len(pair.left), "right_size": len(pair.right),
            "product": str(len(pair.left) * len(pair.right)),
            "closed_form_product": str(
                binomial(n - args.t, args.k - args.t)
                * (binomial(n - args.t, args.kprime - args.t) + 1)),
        }
        _emit(args, "construct", inputs, result)
        return EXIT_OK
    if kind == "sunflower":
        if args.t is None or args.k is None or args.petals is None:
            raise _UsageError("sunflower needs --n, --k, --t, --petals")
        family = make_sunflower(ground, args.k, args.t, args.petals)
        _write_family(args.out, family)
        inputs = {"kind": kind, "n": n, "k": args.k, "t": args.t,
                  "petals": args.petals}
        result = {"out": args.out, "size": len(family)}
        _emit(args, "construct", inputs, result)
        return EXIT_OK
    if kind == "covering":
        if args.k is None or args.ell is None:
            raise _UsageError("covering needs --n, --k, --ell")
        family = make_covering(ground, args.k, args.ell)
        _write_family(args.out, family)
        inputs = {"kind": kind, "n": n, "k": args.k, "ell": args.ell}
        result = {"out": args.out, "size": len(family),
                  "closed_form": str(erdos_bound(n, args.k, args.ell))}
        _emit(args, "construct", inputs, result)
        return EXIT_OK
    if kind == "random":
        if args.k is None or args.size is None or args.seed is None:
            raise _UsageError("random needs --n, --k, --size, --seed")
        family = random_family(ground, args.k, args.size, random.Random(args.seed))
        _write_family(args.out, family)
        inputs = {"kind": kind, "n": n, "k": args.k, "size": args.size,
                  "seed": args.seed}
        result = {"out": args.out, "size": len(family)}
        _emit(args, "construct", inputs, result)
        return EXIT_OK
    raise _UsageError(f"unknown construction kind {kind!r}")


def _cmd_sunflower(args) -> int:
    family, info = _read_family(args.family)
    try:
        flower = find_sunflower(family, args.t, args.petals)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    inputs = {"family": info, "t": args.t, "petals": args.petals}
    if flower is None:
        result = {"found": False, "sunflower": None}
    else:
        result = {"found": True, "sunflower": flower.to_json_dict()}
    _emit(args, "sunflower", inputs, result)
    return EXIT_OK


def _cmd_matching(args) -> int:
    family, info = _read_family(args.family)
    nu, cert = matching_number(family)
    inputs = {"family": info}
    result = {"nu": nu, "certificate": list(cert.indices)}
    _emit(args, "matching", inputs, result)
    return EXIT_OK


def _cmd_erdos(args) -> int:
    try:
        bound = erdos_bound(args.n, args.k, args.ell)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    inputs = {"n": args.n, "k": args.k, "ell": args.ell}
    result: dict = {"bound": str(bound)}
    if args.exhaustive:
        inputs["exhaustive"] = True
        try:
            size, witness = max_family_no_matching(args.n, args.k, args.ell,
                                                   force=args.force)
        except (InstanceTooLargeError, ValueError) as exc:
            raise _UsageError(str(exc)) from exc
        result["max_size"] = size
        result["witness"] = [list(b.elements) for b in witness]
        result["matches_bound"] = (size == bound)
    _emit(args, "erdos", inputs, result)
    return EXIT_OK


def _cmd_search(args) -> int:
    params = _params(args)
    try:
        outcome = search_max_product(args.n, args.k, args.kprime, params,
                                     node_budget=args.budget,
                                     threads=args.threads)
    except (InstanceTooLargeError, ValueError) as exc:
        raise _UsageError(str(exc)) from exc
    if args.out:
        _write_family(args.out + ".left.fam", outcome.best_pair.left)
        _write_family(args.out + ".right.fam", outcome.best_pair.right)
    inputs = {"n": args.n, "k": args.k, "kprime": args.kprime,
              "ell": args.ell, "t": args.t}
    if args.budget is not None:
        inputs["budget"] = args.budget
    _emit(args, "search", inputs, outcome.to_json_dict())
    return EXIT_OK if outcome.exhaustive else EXIT_BUDGET


def _cmd_refute(args) -> int:
    left, left_info = _read_family(args.left)
    right, right_info = _read_family(args.right)
    params = _params(args)
    petals = args.petals if args.petals is not None else (1 + right.k) * params.ell
    try:
        pair = FamilyPair(left, right)
        flower = find_sunflower(left, params.t, petals)
        if flower is None:
            raise _UsageError(
                f"no sunflower with kernel size {params.t} and {petals} "
                "petals exists in the left family")
        trace = refute_with_sunflower(pair, flower, params)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    inputs = {"left": left_info, "right": right_info,
              "ell": args.ell, "t": args.t, "petals": petals}
    _emit(args, "refute", inputs, trace.to_json_dict())
    return EXIT_OK


def _cmd_cover(args) -> int:
    left, left_info = _read_family(args.left)
    right, right_info = _read_family(args.right)
    indices = _parse_elements(args.indices)
    try:
        pair = FamilyPair(left, right)
        decomposition = cover_by_cores(pair, indices, args.t)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    inputs = {"left": left_info, "right": right_info,
              "t": args.t, "indices": list(indices)}
    _emit(args, "cover", inputs, decomposition.to_json_dict())
    return EXIT_OK


def _default_threads() -> int:
    env = os.environ.get("WEAKCROSS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakcross",
        description="Verification and search for weakly cross-intersecting set families.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH",
                        help="also write the report to this file")
    common.add_argument("--threads", type=int, default=_default_threads(),
                        help="worker threads (default: WEAKCROSS_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-cross", parents=[common],
                       help="decide the ell-weak cross t-intersection condition")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(fn=_cmd_verify_cross)

    p = sub.add_parser("verify-single", parents=[common],
                       help="decide the single-family condition")
    p.add_argument("--family", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(fn=_cmd_verify_single)

    p = sub.add_parser("construct", parents=[common],
                       help="write a reference construction as .fam file(s)")
    p.add_argument("--kind", required=True,
                   choices=["star", "tight-pair", "sunflower", "covering", "random"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--kprime", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--petals", type=int)
    p.add_argument("--size", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--core", metavar="ELEMS",
                   help="explicit core elements, comma separated")
    p.add_argument("--extra", metavar="ELEMS",
                   help="explicit extra-block elements (tight-pair only)")
    p.add_argument("--out", required=True,
                   help="output path (tight-pair: prefix for .left.fam/.right.fam)")
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("sunflower", parents=[common],
                       help="find a sunflower with a given kernel size and petal count")
    p.add_argument("--family", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--petals", type=int, required=True)
    p.set_defaults(fn=_cmd_sunflower)

    p = sub.add_parser("matching", parents=[common],
                       help="matching number with a certificate")
    p.add_argument("--family", required=True)
    p.set_defaults(fn=_cmd_matching)

    p = sub.add_parser("erdos", parents=[common],
                       help="matching-free family size bound C(n,k) - C(n-ell+1,k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true",
                   help="also recompute the maximum exhaustively")
    p.add_argument("--force", action="store_true",
                   help="lift the desk-scale guard for --exhaustive")
    p.set_defaults(fn=_cmd_erdos)

    p = sub.add_parser("search", parents=[common],
                       help="exhaustive max-product search over feasible pairs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kprime", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--budget", type=int,
                   help="node budget for best-effort search")
    p.add_argument("--out", metavar="PREFIX",
                   help="write the best pair to PREFIX.left.fam / PREFIX.right.fam")
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("refute", parents=[common],
                       help="violation witness from a sunflower in the left family")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--petals", type=int,
                   help="required petal count (default: (1 + k') * ell)")
    p.set_defaults(fn=_cmd_refute)

    p = sub.add_parser("cover", parents=[common],
                       help="cover the right family by cores of chosen left blocks")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--indices", required=True,
                   help="chosen left block indices, comma separated")
    p.set_defaults(fn=_cmd_cover)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; normalise to the documented code.
        code = exc.code if isinstance(exc.code, int) else 0
        return EXIT_USAGE if code else 0
    if getattr(args, "threads", 1) < 1:
        sys.stderr.write("error: --threads must be at least 1\n")
        return EXIT_USAGE
    try:
        return args.fn(args)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
