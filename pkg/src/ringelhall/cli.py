"""Command-line interface: ``python3 -m ringelhall <verb> [options]``.

Partitions are comma-separated parts ("2,1"; "" or "0" is empty).
Multipartitions are semicolon-separated partitions ("2;;1,1").
Exit status: 0 success, 1 verification failure, 2 usage error,
3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fq_oracle as fq
from . import hall_classical as hc
from . import hall_cyclic as hn
from . import symfunc as sf
from .errors import BoundExceeded
from .partitions import MultiPartition, Partition, enumerate_partitions, multipartitions_of_size

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --- input parsing -------------------------------------------------------

def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "0"):
        return Partition()
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"not a partition: {text!r} (expected comma-separated integers)") from None
    if any(p < 0 for p in parts):
        raise UsageError(f"negative part in {text!r}")
    return Partition(parts)


def parse_multipartition(text: str, n: int) -> MultiPartition:
    comps = text.split(";")
    if len(comps) != n:
        raise UsageError(f"{text!r} has {len(comps)} components, expected {n} (separate with ';')")
    return MultiPartition([parse_partition(c) for c in comps])


def _label(n: int, text: str):
    return parse_partition(text) if n == 1 else parse_multipartition(text, n)


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for {args.verb}")


# --- output --------------------------------------------------------------

def _emit(data) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False))


def _coeff_str(c, n: int) -> str:
    """Coefficients in q = v^2 for n = 1 when every exponent is even, else in v."""
    if n == 1 and all(e % 2 == 0 for e, _ in c.num.items()) and all(e % 2 == 0 for e, _ in c.den.items()):
        return c.deflate(2).to_str("q", descending=True)
    return c.to_str("v", descending=True)


def _tsv_rows(elem, n: int, basis: str):
    if n == 1:
        terms = elem.pbw_coefficients() if basis == "pbw" else elem.terms
        for lam, c in sorted(terms.items(), key=lambda kv: (kv[0].weight, kv[0]), reverse=True):
            yield str(lam), _coeff_str(c, n)
    else:
        terms = elem.pbw_coefficients() if basis == "pbw" else elem.terms
        for (lam, k), c in sorted(terms.items(), key=lambda kv: (kv[0][0].total_dim, kv[0][0], kv[0][1]),
                                  reverse=True):
            label = str(lam) + ("" if k.is_zero() else f"K{tuple(k)}")
            yield label, _coeff_str(c, n)


def _emit_element(args, key: str, elem) -> None:
    if args.format == "tsv":
        for label, c in _tsv_rows(elem, args.n, args.basis):
            print(f"{key}\t{label}\t{c}")
    else:
        _emit(_element_json(args, elem))


# --- verbs ---------------------------------------------------------------

def cmd_sym_convert(args) -> int:
    _require(args, "lam", "to")
    f = sf.SymFunc.basis_element(args.from_basis, parse_partition(args.lam))
    g = sf.convert(f, args.to)
    if args.format == "tsv":
        for lam, c in g.sorted_terms():
            print(f"{args.to}{lam}\t{c.to_str('t')}")
    else:
        _emit(g.to_json())
    return EXIT_OK


def cmd_sym_pair(args) -> int:
    _require(args, "lam", "mu")
    f = sf.SymFunc.basis_element(args.basis_left, parse_partition(args.lam))
    g = sf.SymFunc.basis_element(args.basis_right or args.basis_left, parse_partition(args.mu))
    val = sf.pairing(f, g) if args.classical else sf.pairing_t(f, g)
    print(val.to_str("t"))
    return EXIT_OK


def cmd_hall_poly(args) -> int:
    _require(args, "lam", "mu", "xi")
    lam, mu, xi = (_label(args.n, x) for x in (args.lam, args.mu, args.xi))
    f = hc.hall_polynomial(lam, mu, xi) if args.n == 1 else hn.hall_polynomial_n(lam, mu, xi)
    print(f.to_str("T", descending=True))
    return EXIT_OK


def cmd_hall_mult(args) -> int:
    _require(args, "lam", "mu")
    lam, mu = _label(args.n, args.lam), _label(args.n, args.mu)
    if args.n == 1:
        prod = hc.HallElement1.u(lam) * hc.HallElement1.u(mu)
    else:
        prod = hn.HallElementN.u(lam) * hn.HallElementN.u(mu)
    _emit_element(args, "product", prod)
    return EXIT_OK


def _labels_for(args):
    if args.lam is not None:
        return [_label(args.n, args.lam)]
    if args.deg is None:
        raise UsageError(f"{args.verb} needs --lam or --deg")
    if args.n == 1:
        return enumerate_partitions(args.deg)
    return multipartitions_of_size(args.n, args.deg)


def _element_json(args, elem) -> dict:
    data = elem.to_json(args.basis)
    return {"n": 1, **data} if args.n == 1 else data


def _canon(args, dual: bool) -> int:
    records = []
    for lam in _labels_for(args):
        if args.n == 1:
            elem = hc.dual_canonical_basis(lam) if dual else hc.canonical_basis(lam)
        else:
            elem = hn.dual_canonical_basis_n(lam) if dual else hn.canonical_basis_n(lam)
        if args.format == "tsv" or args.lam is not None:
            _emit_element(args, ("b*" if dual else "b") + str(lam), elem)
        else:
            label = list(lam) if args.n == 1 else [list(p) for p in lam]
            records.append({"label": label, "element": _element_json(args, elem)})
    if records:
        _emit(records)
    return EXIT_OK


def cmd_canon(args) -> int:
    return _canon(args, dual=False)


def cmd_dual_canon(args) -> int:
    return _canon(args, dual=True)


def cmd_centre(args) -> int:
    _require(args, "r")
    if args.r < 0:
        raise UsageError("--r must be non-negative")
    rs = range(1, args.r + 1) if args.format == "tsv" else [args.r]
    for r in rs:
        _emit_element(args, f"x{args.n},{r}", hn.central_x(r, args.n))
    return EXIT_OK


def cmd_conjecture(args) -> int:
    _require(args, "lam")
    _emit(hn.conjecture_report(parse_partition(args.lam), args.n))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .checks import SUITES, run_suites

    names = None if args.all or not args.suite else args.suite
    unknown = [s for s in (names or []) if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {', '.join(unknown)}; known: {', '.join(SUITES)}")
    failed = 0
    for res in run_suites(names):
        status = "PASS" if res.passed else "FAIL"
        line = f"{status}\t{res.suite}\t{res.name}\t{res.seconds:.2f}s"
        if res.detail:
            line += f"\t{res.detail}"
        print(line, flush=True)
        failed += not res.passed
    print(f"{'FAILED' if failed else 'OK'}: {failed} failing check(s)")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_oracle_count(args) -> int:
    _require(args, "lam", "mu", "xi")
    if not args.interpolate:
        _require(args, "q")
    lam, mu, xi = (parse_multipartition(x, args.n) if args.n > 1 else MultiPartition([parse_partition(x)])
                   for x in (args.lam, args.mu, args.xi))
    if args.interpolate:
        print(fq.interpolate_hall_polynomial_n(lam, mu, xi).to_str("T", descending=True))
    else:
        print(fq.count_hall_number(lam, mu, xi, args.q))
    return EXIT_OK


def cmd_cache_warm(args) -> int:
    _require(args, "max_dim")
    count = fq.warm_cache(args.n, args.max_dim)
    print(f"{count} Hall polynomials cached")
    return EXIT_OK


VERBS = {
    "sym-convert": cmd_sym_convert,
    "sym-pair": cmd_sym_pair,
    "hall-poly": cmd_hall_poly,
    "hall-mult": cmd_hall_mult,
    "canon": cmd_canon,
    "dual-canon": cmd_dual_canon,
    "centre": cmd_centre,
    "conjecture": cmd_conjecture,
    "verify": cmd_verify,
    "oracle-count": cmd_oracle_count,
    "cache-warm": cmd_cache_warm,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="quiver rank (1 = Jordan quiver)")
    common.add_argument("--deg-cap", type=int, help="degree / total dimension cap")
    common.add_argument("--field-bound", type=int, help="largest prime used by the F_q oracle")
    common.add_argument("--cache-dir", help="Hall polynomial cache directory")
    common.add_argument("--format", choices=("json", "tsv"), default="json")

    parser = argparse.ArgumentParser(prog="ringelhall", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="verb", required=True)
    bases = list(sf.BASES)

    p = sub.add_parser("sym-convert", parents=[common], help="change basis of a symmetric function")
    p.add_argument("--basis", dest="from_basis", choices=bases, default="s")
    p.add_argument("--lam")
    p.add_argument("--to", choices=bases)

    p = sub.add_parser("sym-pair", parents=[common], help="Hall-Littlewood pairing of two basis elements")
    p.add_argument("--basis", dest="basis_left", choices=bases, default="s")
    p.add_argument("--basis2", dest="basis_right", choices=bases)
    p.add_argument("--lam")
    p.add_argument("--mu")
    p.add_argument("--classical", action="store_true", help="use the t = 0 pairing")

    for verb, text in (("hall-poly", "Hall polynomial F^xi_{lam,mu}(T)"),
                       ("oracle-count", "brute-force Hall number over F_q")):
        p = sub.add_parser(verb, parents=[common], help=text)
        p.add_argument("--lam")
        p.add_argument("--mu")
        p.add_argument("--xi")
        if verb == "oracle-count":
            p.add_argument("--q", type=int)
            p.add_argument("--interpolate", action="store_true", help="interpolate the polynomial instead")

    p = sub.add_parser("hall-mult", parents=[common], help="product u_lam u_mu")
    p.add_argument("--lam")
    p.add_argument("--mu")
    p.add_argument("--basis", choices=("u", "pbw"), default="u")

    for verb in ("canon", "dual-canon"):
        p = sub.add_parser(verb, parents=[common], help=f"{verb.replace('-', ' ')}ical basis element")
        p.add_argument("--lam")
        p.add_argument("--deg", type=int, help="every element of this degree")
        p.add_argument("--basis", choices=("u", "pbw"), default="u")

    p = sub.add_parser("centre", parents=[common], help="central element x_r (tsv lists x_1..x_r)")
    p.add_argument("--r", type=int)
    p.add_argument("--basis", choices=("u", "pbw"), default="u")

    p = sub.add_parser("conjecture", parents=[common], help="evidence report for b*_(lam,...,lam)")
    p.add_argument("--lam")

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", action="append", help="suite name (repeatable)")
    p.add_argument("--all", action="store_true")

    p = sub.add_parser("cache-warm", parents=[common], help="fill the interpolation cache")
    p.add_argument("--max-dim", type=int)
    return parser


def _configure(args) -> None:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.deg_cap is not None:
        sf.set_degree_cap(max(args.deg_cap, sf.DEG_CAP))
        hc.set_degree_cap(args.deg_cap)
        hn.set_dim_cap(args.n, args.deg_cap)
    if args.field_bound is not None or args.cache_dir is not None:
        fq.configure(field_bound=args.field_bound, cache_dir=args.cache_dir)


def _snapshot() -> tuple:
    return (sf.DEG_CAP, hc.DEG_CAP, dict(hn.DIM_CAPS), fq.FIELD_BOUND, fq._cache_dir_override)


def _restore(state: tuple) -> None:
    sf_cap, hc_cap, dim_caps, field_bound, cache_dir = state
    sf.set_degree_cap(sf_cap)
    hc.set_degree_cap(hc_cap)
    hn.DIM_CAPS.clear()
    hn.DIM_CAPS.update(dim_caps)
    fq.configure(field_bound=field_bound)
    fq._cache_dir_override = cache_dir


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    state = _snapshot()
    try:
        _configure(args)
        return VERBS[args.verb](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundExceeded as exc:
        item = "" if exc.item is None or str(exc.item) in str(exc) else f" [{exc.item}]"
        print(f"bound exceeded: {exc}{item}", file=sys.stderr)
        return EXIT_BOUND
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        # in-process callers keep their own caps and cache location
        _restore(state)
