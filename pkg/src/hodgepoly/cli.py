"""Command-line front end.

Commands: ``psi``, ``hodge``, ``pa``, ``table``, ``verify``, ``cache``.
The persistent integral cache file is taken from ``--cache`` or the
``HODGEPOLY_CACHE`` environment variable; compute commands load it when
present and write it back afterwards.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import rational_to_str
from .cache import CacheIntegrityError, IntegralCache
from .hodge import hodge_integral
from .psi import _shared_cache, is_stable, psi_value
from .render import render_json, render_latex, render_text
from .series import (
    ALPHA_SHIFTED,
    PPolynomial,
    SeriesIntegrityError,
    assemble_Pa,
    canonical_index,
    constant_term,
    dilaton_apply,
    enumerate_index_vectors,
    mumford_specialize,
    shift_convention,
    string_apply,
    F_series,
)

CACHE_ENV = "HODGEPOLY_CACHE"

VERIFY_SUITES = ("theorem01", "prop12", "prop21", "prop22", "cor23", "mumford")


def _parse_ints(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return values


def _cache_path(args) -> Optional[str]:
    path = getattr(args, "cache", None)
    if path:
        return path
    return os.environ.get(CACHE_ENV) or None


def _load_cache(args) -> Tuple[IntegralCache, Optional[str]]:
    path = _cache_path(args)
    cache = _shared_cache
    if path and Path(path).exists():
        cache.read_file(path)
    return cache, path


def _save_cache(cache: IntegralCache, path: Optional[str]) -> None:
    if path:
        cache.write_file(path)


def _format_p(p: PPolynomial, fmt: str, label: Optional[str] = None) -> str:
    if fmt == "json":
        return render_json(p)
    body = render_latex(p.poly) if fmt == "latex" else render_text(p.poly)
    if label is None:
        return body
    return f"{label} = {body}"


def _label(a: Sequence[int]) -> str:
    return "P_{(" + ",".join(map(str, a)) + ")}"


def cmd_psi(args) -> int:
    cache, path = _load_cache(args)
    if not is_stable(args.g, len(args.exp)) or not args.exp:
        print(
            f"unstable input: stability requires 2g-2+n > 0 with n >= 1, "
            f"got g={args.g}, n={len(args.exp)}",
            file=sys.stderr,
        )
        return 1
    value = psi_value(args.g, args.exp, cache)
    _save_cache(cache, path)
    print(rational_to_str(value))
    return 0


def cmd_hodge(args) -> int:
    cache, path = _load_cache(args)
    n = len(args.exp)
    if not is_stable(args.g, n) or not args.exp:
        print(
            f"unstable input: stability requires 2g-2+n > 0 with n >= 1, "
            f"got g={args.g}, n={n}",
            file=sys.stderr,
        )
        return 1
    lam: Dict[int, int] = {}
    for j in args.a:
        lam[j] = lam.get(j, 0) + 1
    try:
        value = hodge_integral(args.g, n, args.exp, lam, cache)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    _save_cache(cache, path)
    print(rational_to_str(value))
    return 0


def _assemble(a, guard, shifted, cache) -> PPolynomial:
    p = assemble_Pa(a, guard=guard, cache=cache)
    return shift_convention(p) if shifted else p


def cmd_pa(args) -> int:
    cache, path = _load_cache(args)
    try:
        p = _assemble(tuple(args.a), args.guard, args.shifted, cache)
    except SeriesIntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return 1
    _save_cache(cache, path)
    print(_format_p(p, args.format))
    return 0


def cmd_table(args) -> int:
    cache, path = _load_cache(args)
    vectors = list(enumerate_index_vectors(args.max))

    def work(a: Tuple[int, ...]) -> str:
        p = _assemble(a, args.guard, True, cache)
        return _format_p(p, args.format, label=_label(a))

    try:
        if args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                lines = list(pool.map(work, vectors))
        else:
            lines = [work(a) for a in vectors]
    except SeriesIntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return 1
    _save_cache(cache, path)
    for line in lines:
        print(line)
    return 0


# ---------------------------------------------------------------------------
# verification suites


def _verify_theorem01(args, cache) -> Tuple[int, List[str]]:
    checks, failures = 0, []
    for a in enumerate_index_vectors(args.max):
        try:
            assemble_Pa(a, guard=args.guard, cache=cache)
        except SeriesIntegrityError as exc:
            failures.append(f"a={a}: {exc}")
        checks += 1
    return checks, failures


def _verify_prop12(args, cache) -> Tuple[int, List[str]]:
    checks, failures = 0, []
    try:
        series = F_series(args.order, cache)
    except SeriesIntegrityError as exc:
        return 1, [str(exc)]
    for m in range(args.order + 1):
        expected = Fraction(0)
        if m % 2 == 0:
            g = m // 2
            expected = Fraction(-1, 24) ** g / _factorial(g)
        got = series.coeff(m)
        checks += 1
        if not got.is_constant() or got.coeff(0) != expected:
            failures.append(
                f"t^{m}: got {got!r}, want {rational_to_str(expected)}"
            )
    return checks, failures


def _factorial(g: int) -> int:
    out = 1
    for i in range(2, g + 1):
        out *= i
    return out


def _verify_prop21(args, cache) -> Tuple[int, List[str]]:
    checks, failures = 0, []
    for a in enumerate_index_vectors(args.max):
        if not a:
            continue
        p = assemble_Pa(a, guard=args.guard, cache=cache)
        got = p.poly.t_coeff(0)
        want = constant_term(a)
        checks += 1
        if got.degree() > 0 or got.coeff(0) != want:
            failures.append(f"a={a}: t^0 coefficient {got!r} != {rational_to_str(want)}")
    return checks, failures


def _verify_prop22(args, cache) -> Tuple[int, List[str]]:
    checks, failures = 0, []
    assembled: Dict[Tuple[int, ...], PPolynomial] = {}

    def get(a: Tuple[int, ...]) -> PPolynomial:
        key = canonical_index(a)
        if key not in assembled:
            assembled[key] = assemble_Pa(key, guard=args.guard, cache=cache)
        return assembled[key]

    for b in enumerate_index_vectors(args.max):
        p = get(b)
        family = {
            canonical_index(b[:i] + (bi - 1,) + b[i + 1 :]): get(
                b[:i] + (bi - 1,) + b[i + 1 :]
            )
            for i, bi in enumerate(b)
            if bi > 0
        }
        via_string = string_apply(p, family)
        direct = get(b + (0,))
        checks += 1
        if via_string.poly != direct.poly:
            failures.append(f"string rule fails for {b + (0,)}")
        if sum(b) + 1 <= args.max:
            via_dilaton = dilaton_apply(p, len(b) + 1)
            direct = get(b + (1,))
            checks += 1
            if via_dilaton.poly != direct.poly:
                failures.append(f"dilaton rule fails for {b + (1,)}")
    return checks, failures


def _verify_cor23(args, cache) -> Tuple[int, List[str]]:
    checks, failures = 0, []
    for a in enumerate_index_vectors(args.max):
        p = assemble_Pa(a, guard=args.guard, cache=cache)
        got = mumford_specialize(a, cache)
        want = p.poly.eval_alpha(-1)
        checks += 1
        if got.poly != want:
            failures.append(f"a={a}: psi-only specialization disagrees at alpha=-1")
    return checks, failures


def _psi_monomials(n: int, total: int, cap: Optional[int] = None):
    """Non-increasing tuples of n non-negative exponents with the given sum."""
    if cap is None:
        cap = total
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(cap, total), -1, -1):
        if first * n < total:
            break
        yield from (
            (first,) + rest for rest in _psi_monomials(n - 1, total - first, first)
        )


def _verify_mumford(args, cache) -> Tuple[int, List[str]]:
    # graded pieces of c(E)c(E^*) = 1: for every psi-monomial of degree
    # dim - (k+j), sum_{k+j=c} (-1)^k <psi-monomial * l_k l_j> is 0 for
    # c > 0 and the pure psi integral for c = 0
    checks, failures = 0, []
    for g in range(4):
        for n in range(1, 4):
            if not is_stable(g, n):
                continue
            dim = 3 * g - 3 + n
            for c in range(0, min(2 * g, dim) + 1):
                for psi in _psi_monomials(n, dim - c):
                    total = Fraction(0)
                    for k in range(g + 1):
                        j = c - k
                        if j < 0 or j > g:
                            continue
                        lam = {}
                        for idx in (k, j):
                            if idx:
                                lam[idx] = lam.get(idx, 0) + 1
                        total += (-1) ** k * hodge_integral(g, n, psi, lam, cache)
                    want = psi_value(g, psi, cache) if c == 0 else Fraction(0)
                    checks += 1
                    if total != want:
                        failures.append(
                            f"(g={g}, n={n}, psi={psi}, codegree={c}): "
                            f"{rational_to_str(total)} != {rational_to_str(want)}"
                        )
    return checks, failures


_VERIFY_IMPL = {
    "theorem01": _verify_theorem01,
    "prop12": _verify_prop12,
    "prop21": _verify_prop21,
    "prop22": _verify_prop22,
    "cor23": _verify_cor23,
    "mumford": _verify_mumford,
}


def cmd_verify(args) -> int:
    cache, path = _load_cache(args)
    suites = list(VERIFY_SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in suites:
        checks, failures = _VERIFY_IMPL[name](args, cache)
        if failures:
            failed = True
            print(f"{name}: FAIL ({len(failures)}/{checks} checks failed)")
            for f in failures:
                print(f"  {f}")
        else:
            print(f"{name}: PASS ({checks} checks)")
    _save_cache(cache, path)
    return 1 if failed else 0


def cmd_cache(args) -> int:
    path = _cache_path(args)
    store = IntegralCache()
    if path and Path(path).exists():
        store.read_file(path)
    if args.action == "stats":
        s = store.stats()
        print(f"psi={s['psi']} hodge={s['hodge']} total={s['total']}")
        return 0
    if args.action == "clear":
        store.clear()
        if path:
            store.write_file(path)
        print("cleared")
        return 0
    if not args.path:
        print(f"cache {args.action} requires a file path argument", file=sys.stderr)
        return 1
    if args.action == "export":
        store.write_file(args.path)
        print(f"exported {len(store)} entries")
        return 0
    # import
    try:
        count = store.read_file(args.path)
    except CacheIntegrityError as exc:
        print(f"import rejected: {exc}", file=sys.stderr)
        return 1
    if path:
        store.write_file(path)
    print(f"imported {count} entries")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hodgepoly",
        description="Exact intersection numbers and Hodge-integral polynomials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cache_flag(p):
        p.add_argument("--cache", help=f"cache file path (default: ${CACHE_ENV})")

    p = sub.add_parser("psi", help="pure psi-class intersection number")
    p.add_argument("--g", type=int, required=True, help="genus")
    p.add_argument("--exp", type=_parse_ints, required=True, help="psi exponents d1,d2,...")
    add_cache_flag(p)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("hodge", help="psi integral against a lambda monomial")
    p.add_argument("--g", type=int, required=True, help="genus")
    p.add_argument("--exp", type=_parse_ints, required=True, help="psi exponents d1,d2,...")
    p.add_argument(
        "--a",
        type=_parse_ints,
        default=(),
        help="lambda indices with multiplicity, e.g. 1,1,2 for l1^2*l2",
    )
    add_cache_flag(p)
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("pa", help="assemble one P polynomial")
    p.add_argument("--a", type=_parse_ints, required=True, help="index vector (may be empty)")
    p.add_argument("--shifted", action="store_true", help="report P_a(-alpha-1, t)")
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.add_argument("--guard", type=int, default=2, help="extra vanishing degrees to verify")
    add_cache_flag(p)
    p.set_defaults(func=cmd_pa)

    p = sub.add_parser("table", help="all P_a(-alpha-1, t) with |a| <= max")
    p.add_argument("--max", type=int, default=4, help="maximum index weight")
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.add_argument("--guard", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1, help="parallel assemblies")
    add_cache_flag(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=VERIFY_SUITES + ("all",))
    p.add_argument("--max", type=int, default=4)
    p.add_argument("--guard", type=int, default=2)
    p.add_argument("--order", type=int, default=10, help="series order for prop12")
    add_cache_flag(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cache", help="manage the persistent cache")
    p.add_argument("action", choices=("stats", "export", "import", "clear"))
    p.add_argument("path", nargs="?", help="file for export/import")
    add_cache_flag(p)
    p.set_defaults(func=cmd_cache)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CacheIntegrityError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
