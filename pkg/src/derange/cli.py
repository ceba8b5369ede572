"""Command-line front end.

Subcommands: count, series, lamfak, table, bijection, verify.  Output
is JSON by default (``--format csv|text|bfile`` where noted); every
number crossing the CLI boundary is a decimal string, never a float.
Exit codes: 0 success, 1 verification failure, 2 usage error.  Results
of the pure query commands are cached under the directory named by
DERANGE_CACHE_DIR (default ``./.derange-cache``); the cache only ever
affects latency.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import cache as cache_mod
from . import correlation, counting, euler, lamfak, series, verify
from .perm import ColouredPermutation, Composition, Permutation

__all__ = ["run", "main"]


class UsageError(Exception):
    pass


def _parse_composition(text: str) -> Composition:
    try:
        comp = Composition.from_string(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return comp


def _emit(payload: dict | list, cached: bool | None = None) -> None:
    if cached is not None and isinstance(payload, dict):
        payload = {**payload, "cached": cached}
    print(json.dumps(payload, sort_keys=True))


def _with_cache(command: str, params: dict, compute) -> int:
    key = cache_mod.cache_key(command, params)
    hit = cache_mod.cache_get(key)
    if hit is not None:
        _emit(hit, cached=True)
        return 0
    payload = compute()
    cache_mod.cache_put(key, payload)
    _emit(payload, cached=False)
    return 0


# ---------------------------------------------------------------------------
# count


def _cmd_count(args: argparse.Namespace) -> int:
    comp = _parse_composition(args.composition)
    j = args.j if args.j is not None else comp.k
    params = {
        "composition": list(comp.parts),
        "mode": args.mode,
        "j": j,
        "method": args.method,
    }

    def compute() -> dict:
        if args.mode == "Dj":
            if not 0 <= j <= comp.k:
                raise UsageError(f"--j must be in 0..{comp.k}")
            if args.method == "brute":
                value = counting.count_Dj(comp, j)
            elif args.method == "genfunc":
                value = series.coeff_Dj(comp, j)
            elif args.method in ("factorial", "derangement-basis"):
                if j != comp.k:
                    raise UsageError(
                        f"--method {args.method} computes the full derangement count; use --j {comp.k} or omit --j"
                    )
                value = (
                    lamfak.explicit_D_count(comp)
                    if args.method == "factorial"
                    else lamfak.derangement_basis_count(comp)
                )
            else:  # pragma: no cover - argparse restricts choices
                raise UsageError(f"unknown method {args.method}")
        elif args.mode in ("Dstar", "Dhat"):
            if args.method not in ("brute",):
                raise UsageError(f"mode {args.mode} is enumerative; use --method brute")
            if not 1 <= j <= comp.k:
                raise UsageError(f"--j must be in 1..{comp.k}")
            fn = counting.count_Dstar if args.mode == "Dstar" else counting.count_Dhat
            value = fn(comp, j)
        elif args.mode == "preimage":
            if args.method == "factorial":
                value = correlation.preimage_count(comp, "factorial")
            elif args.method == "brute":
                value = correlation.preimage_count(comp, "brute")
            else:
                raise UsageError("mode preimage supports --method brute or factorial")
            return {"count": str(value)}
        else:  # pragma: no cover
            raise UsageError(f"unknown mode {args.mode}")
        return {"count": str(value)}

    return _with_cache("count", params, compute)


# ---------------------------------------------------------------------------
# series


def _cmd_series(args: argparse.Namespace) -> int:
    comp = _parse_composition(args.composition)
    j = args.j if args.j is not None else comp.k
    if not 0 <= j <= comp.k:
        raise UsageError(f"--j must be in 0..{comp.k}")
    params = {"composition": list(comp.parts), "j": j}

    def compute() -> dict:
        return {
            "a": list(comp.parts),
            "j": j,
            "coefficient": str(series.coeff_Dj(comp, j)),
        }

    return _with_cache("series", params, compute)


# ---------------------------------------------------------------------------
# lamfak


def _parse_lambda(text: str) -> int | None:
    if text == "symbolic":
        return None
    try:
        value = int(text)
    except ValueError:
        raise UsageError(f"--lambda must be an integer or 'symbolic', got {text!r}") from None
    return value


def _cmd_lamfak(args: argparse.Namespace) -> int:
    lam = _parse_lambda(args.lam)
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    params = {"n": args.n, "lambda": args.lam}

    def compute() -> dict:
        poly = lamfak.lambda_factorial(args.n)
        if lam is None:
            return {"n": args.n, "lambda": "symbolic", "coefficients": poly.to_strings()}
        return {"n": args.n, "lambda": str(lam), "value": str(poly.eval_at(lam))}

    return _with_cache("lamfak", params, compute)


# ---------------------------------------------------------------------------
# table


def _cmd_table(args: argparse.Namespace) -> int:
    lam = _parse_lambda(args.lam)
    if args.n_max < 0:
        raise UsageError("--n-max must be nonnegative")
    table = euler.build_tables(args.n_max)
    pick = table.d if args.kind == "d" else table.e

    def cell(n: int, k: int):
        poly = pick(n, k)
        return str(poly.eval_at(lam)) if lam is not None else poly.to_strings()

    if args.format == "bfile":
        if lam is None:
            raise UsageError("bfile output needs an integer --lambda")
        index = 0
        for n in range(args.n_max + 1):
            for k in range(n + 1):
                index += 1
                print(f"{index} {cell(n, k)}")
        return 0
    if args.format == "csv":
        print("n,k,value")
        for n in range(args.n_max + 1):
            for k in range(n + 1):
                value = cell(n, k)
                text = value if isinstance(value, str) else ";".join(value)
                print(f"{n},{k},{text}")
        return 0
    if args.format == "text":
        for n in range(args.n_max + 1):
            row = [
                cell(n, k) if lam is not None else "(" + ",".join(cell(n, k)) + ")"
                for k in range(n + 1)
            ]
            print(f"n={n}: " + " ".join(row))
        return 0
    params = {"kind": args.kind, "lambda": args.lam, "n_max": args.n_max}

    def compute() -> dict:
        return {
            "kind": args.kind,
            "lambda": args.lam,
            "n_max": args.n_max,
            "rows": [[cell(n, k) for k in range(n + 1)] for n in range(args.n_max + 1)],
        }

    return _with_cache("table", params, compute)


# ---------------------------------------------------------------------------
# bijection


def _coloured_from_json(obj, prefix: int, lam: int) -> ColouredPermutation:
    if isinstance(obj, str):
        perm = Permutation.from_word(obj)
        colours: dict[int, int] = {}
    elif isinstance(obj, dict):
        try:
            perm = Permutation(tuple(int(v) for v in obj["perm"]))
            colours = {int(p): int(c) for p, c in obj.get("colours", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad permutation object: {exc}") from None
    else:
        raise UsageError("permutation must be a word string or an object")
    try:
        return ColouredPermutation.make(
            perm, lam, scope=euler.tail_scope(prefix, len(perm)), colours=colours
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _coloured_to_json(cp: ColouredPermutation) -> dict:
    return {
        "perm": list(cp.perm.image),
        "colours": {str(p): c for p, c in cp.colour_items},
    }


def _cmd_bijection(args: argparse.Namespace) -> int:
    lam = _parse_lambda(args.lam)
    if lam is None:
        raise UsageError("bijections need an integer --lambda")
    try:
        arg = json.loads(args.arg)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--arg must be JSON: {exc}") from None
    if not isinstance(arg, list):
        raise UsageError("--arg must be a JSON array")
    k, n = args.k, args.n
    payload: dict = {"map": args.map, "k": k, "n": n, "lambda": lam}
    try:
        if args.map in ("theta", "eta"):
            if len(arg) != 2:
                raise UsageError(f"{args.map} takes [x, permutation]")
            x = int(arg[0])
            size = len(arg[1]) if isinstance(arg[1], str) else len(arg[1]["perm"])
            if args.map == "theta":
                prefix = k if size == n else k - 1
                p = _coloured_from_json(arg[1], prefix, lam)
                image = euler.theta(x, p, k, n, lam)
                inv_x, inv_p = euler.theta_inverse(image, k, n, lam)
            else:
                prefix = k if size == n - 1 else k - 1
                p = _coloured_from_json(arg[1], prefix, lam)
                image = euler.eta(x, p, k, n, lam)
                inv_x, inv_p = euler.eta_inverse(image, k, n, lam)
            payload["argument"] = [x, _coloured_to_json(p)]
            payload["image"] = _coloured_to_json(image)
            payload["inverse"] = [inv_x, _coloured_to_json(inv_p)]
        elif args.map == "zeta1":
            if len(arg) != 3:
                raise UsageError("zeta1 takes [j, colour, permutation]")
            j, c = int(arg[0]), int(arg[1])
            p = _coloured_from_json(arg[2], k, lam)
            image = euler.zeta1(j, c, p, k, lam)
            payload["argument"] = [j, c, _coloured_to_json(p)]
            payload["image"] = _coloured_to_json(image)
            payload["preimages"] = _zeta_preimages(image, k, n, lam)
        elif args.map == "zeta2":
            if len(arg) != 3:
                raise UsageError("zeta2 takes [colour, j, permutation]")
            c, j = int(arg[0]), int(arg[1])
            p = _coloured_from_json(arg[2], k, lam)
            image = euler.zeta2(c, j, p, k, lam)
            payload["argument"] = [c, j, _coloured_to_json(p)]
            payload["image"] = _coloured_to_json(image)
            payload["preimages"] = _zeta_preimages(image, k, n, lam)
        else:  # pragma: no cover
            raise UsageError(f"unknown map {args.map}")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "text":
        print(f"image: {_render(payload['image'])}")
        if "inverse" in payload:
            inv = payload["inverse"]
            print(f"inverse: {inv[0]} | {_render(inv[1])}")
        else:
            for name in ("zeta1", "zeta2"):
                for pre in payload["preimages"][name]:
                    head = " ".join(str(x) for x in pre[:-1])
                    print(f"{name} preimage: {head} | {_render(pre[-1])}")
    else:
        _emit(payload)
    return 0


def _render(obj: dict) -> str:
    word = "".join(str(v) for v in obj["perm"])
    cols = ",".join(f"{p}:{c}" for p, c in sorted(obj["colours"].items(), key=lambda kv: int(kv[0])))
    return f"{word} {cols}" if cols else word


def _zeta_preimages(image: ColouredPermutation, k: int, n: int, lam: int) -> dict:
    """Every argument of either map landing on ``image``, by enumeration."""
    hits1 = []
    for p in euler.enumerate_Dkn(n - 1, k, lam):
        for j in range(1, n + 1):
            for c in range(1, lam + 1) if j == k + 1 else (1,):
                if euler.zeta1(j, c, p, k, lam) == image:
                    hits1.append([j, c, _coloured_to_json(p)])
    hits2 = []
    if n >= 2:
        for p in euler.enumerate_Dkn(n - 2, k, lam):
            for c in range(2, lam + 1):
                for j in range(k + 2, n + 1):
                    if euler.zeta2(c, j, p, k, lam) == image:
                        hits2.append([c, j, _coloured_to_json(p)])
    return {"zeta1": hits1, "zeta2": hits2}


# ---------------------------------------------------------------------------
# verify


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "correlation":
        n = args.n if args.n is not None else max(args.n_max, 1)
        report = correlation.verify_correlation(n)
        _emit(report.to_json()["comparisons"])
        return 0 if report.ok else 1
    suites = {
        "perm": verify.perm_suite,
        "series": verify.series_suite,
        "counting": verify.counting_suite,
        "lamfak": verify.lamfak_suite,
        "euler": verify.euler_suite,
    }
    if args.suite == "all":
        reports = verify.verify_all(args.n_max)
    else:
        reports = [suites[args.suite](args.n_max)]
    _emit([r.to_json() for r in reports])
    return 0 if all(r.ok for r in reports) else 1


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="derange",
        description="Exact enumeration of derangements with descents confined to prescribed blocks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count block-descending permutation classes")
    p.add_argument("--composition", required=True, help="comma-separated block lengths, e.g. 4,2")
    p.add_argument("--mode", choices=["Dj", "Dstar", "Dhat", "preimage"], default="Dj")
    p.add_argument("--j", type=int, default=None, help="block index (defaults to k)")
    p.add_argument(
        "--method",
        choices=["factorial", "derangement-basis", "genfunc", "brute"],
        default="factorial",
    )
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("series", help="extract a generating-function coefficient")
    p.add_argument("--composition", required=True)
    p.add_argument("--j", type=int, default=None)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("lamfak", help="the colour-count polynomial of n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default="symbolic")
    p.set_defaults(func=_cmd_lamfak)

    p = sub.add_parser("table", help="difference tables")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default="symbolic")
    p.add_argument("--kind", choices=["e", "d"], default="d")
    p.add_argument("--format", choices=["json", "csv", "text", "bfile"], default="json")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("bijection", help="apply one of the insertion bijections")
    p.add_argument("--map", choices=["theta", "eta", "zeta1", "zeta2"], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--arg", required=True, help="JSON argument, e.g. '[1, \"3214\"]'")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_bijection)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "suite",
        choices=["all", "perm", "series", "counting", "lamfak", "euler", "correlation"],
    )
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--n", type=int, default=None, help="single size for the correlation report")
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
