"""Command-line front end: series, entropy, exact counts, differential
verification, and rule-map classification, with machine-readable output.

Payload goes to stdout (JSON with --json, aligned text otherwise); all
diagnostics go to stderr.  Exit codes: 0 success / all match, 1
verification mismatch, 2 bad input, 3 numeric failure, 4 resource guard.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .entropy import (
    EntropyResult,
    RootError,
    entropy_bouquet,
    entropy_closed,
    entropy_graph_brackets,
    entropy_growth_check,
)
from .formulas import (
    NoClosedForm,
    classify_psi,
    closed_form_zeta,
    compare_with_oracle,
    dyck_graph_spec,
)
from .graphs import build_bouquet, build_even_automaton
from .series import PowerSeries, zeta_from_counts
from .shifts import (
    Dyck,
    GraphBrackets,
    Motzkin,
    MotzkinRestricted,
    PsiExclusion,
    TripleExclusion,
    XiExclusion,
    alphabet,
    as_subset_map,
    count_periodic,
    count_words,
    periodic_counts,
)

FAMILIES = (
    "dyck",
    "motzkin",
    "bouquet",
    "schroeder",
    "even-odd",
    "psi",
    "triple",
    "motzkin-restricted",
    "xi",
)

ENUMERATION_GUARD = 10**9


class GuardExceeded(RuntimeError):
    pass


class CliError(ValueError):
    pass


def parse_assoc(text: str) -> dict[int, set[int]]:
    """Parse semicolon-separated `index:comma-list` associations with
    1-based integers, e.g. "1:1,2;2:1"."""
    out: dict[int, set[int]] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" not in chunk:
            raise CliError(f"malformed association {chunk!r}: expected index:list")
        head, tail = chunk.split(":", 1)
        try:
            key = int(head)
            vals = {int(v) for v in tail.split(",") if v.strip()}
        except ValueError as exc:
            raise CliError(f"malformed association {chunk!r}: {exc}") from exc
        if key in out:
            raise CliError(f"duplicate index {key} in association string")
        if not vals:
            raise CliError(f"empty list for index {key}")
        out[key] = vals
    if not out:
        raise CliError("empty association string")
    return out


def _load_spec_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise CliError("spec file must hold a JSON object")
    out = {}
    for key in ("psi", "xi_omega", "xi_gamma"):
        if key in data:
            out[key] = {int(k): set(v) for k, v in data[key].items()}
    return out


def _assoc_arg(args, flag_value, file_specs: dict, key: str):
    if flag_value is not None:
        return parse_assoc(flag_value)
    if key in file_specs:
        return file_specs[key]
    raise CliError(f"family {args.family!r} needs --{key.replace('_', '-')}")


def build_spec(args):
    fam = args.family
    n = args.n
    file_specs = _load_spec_file(args.spec_file) if getattr(args, "spec_file", None) else {}
    if fam == "dyck":
        return Dyck(n)
    if fam == "motzkin":
        return Motzkin(n)
    if fam == "bouquet":
        ones = (1,) * n
        return GraphBrackets(n, build_bouquet(args.j, args.q), ones, ones)
    if fam == "schroeder":
        ones = (1,) * n
        return GraphBrackets(n, build_even_automaton(False), ones, ones)
    if fam == "even-odd":
        ones = (1,) * n
        return GraphBrackets(n, build_even_automaton(True), ones, ones)
    if fam == "psi":
        psi = as_subset_map(_assoc_arg(args, args.psi, file_specs, "psi"), n, n)
        spec = PsiExclusion(n, psi)
        if args.k is not None and spec.uniform_size != args.k:
            raise CliError(
                f"--k {args.k} contradicts the rule map (uniform size {spec.uniform_size})"
            )
        return spec
    if fam == "triple":
        return TripleExclusion(n)
    if fam == "motzkin-restricted":
        return MotzkinRestricted(n)
    if fam == "xi":
        j = args.j
        if j is None:
            raise CliError("family xi needs --j")
        omega = as_subset_map(_assoc_arg(args, args.xi_omega, file_specs, "xi_omega"), j, j)
        gamma = as_subset_map(_assoc_arg(args, args.xi_gamma, file_specs, "xi_gamma"), n, j)
        return XiExclusion(n, j, omega, gamma)
    raise CliError(f"unknown family {fam!r}")


def _guard_enumeration(spec, length: int, force: bool) -> None:
    size = len(alphabet(spec))
    if size**length > ENUMERATION_GUARD and not force:
        raise GuardExceeded(
            f"enumeration of {size}^{length} candidates exceeds the guard; "
            "rerun with --force to override"
        )


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _series_block(series: PowerSeries) -> dict:
    return {
        "variable": "z",
        "order": series.order,
        "coefficients": [_frac_str(c) for c in series.coeffs],
    }


def _entropy_block(res: EntropyResult) -> dict:
    block = {
        "value": res.value,
        "root": res.root,
        "residual": res.residual,
        "method": res.method,
    }
    if res.bracket is not None:
        block["bracket"] = list(res.bracket)
    if res.note:
        block["note"] = res.note
    if res.sequence is not None:
        block["sequence"] = list(res.sequence)
    return block


def _params_block(args) -> dict:
    params = {"n": args.n}
    for key in ("j", "q", "k"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    for key in ("psi", "xi_omega", "xi_gamma"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    return params


def _emit(report: dict, args) -> None:
    if args.json:
        print(json.dumps(report, indent=None, separators=(",", ":")))
        return
    for key, value in report.items():
        if key == "series":
            print("series coefficients:")
            for i, c in enumerate(value["coefficients"]):
                num, den = c.split("/")
                pretty = num if den == "1" else c
                print(f"  z^{i:<3} {pretty}")
        elif key == "verification":
            print("verification:")
            for row in value["rows"]:
                flag = "ok" if row["match"] else "MISMATCH"
                print(
                    f"  n={row['n']:<3} formula={row['formula']:<12} "
                    f"oracle={row['oracle']:<12} {flag}"
                )
            print(f"  all_match: {value['all_match']}")
        elif key == "entropy":
            print("entropy:")
            for k, v in value.items():
                print(f"  {k:<10} {v}")
        elif key == "classification":
            print("classification:")
            for k, v in value.items():
                print(f"  {k:<16} {v}")
        else:
            print(f"{key:<10} {value}")


def _zeta_series(spec, order: int, force: bool) -> tuple[PowerSeries, str]:
    try:
        return closed_form_zeta(spec, order), "closed-form"
    except NoClosedForm:
        _guard_enumeration(spec, order, force)
        counts = periodic_counts(spec, order)
        return zeta_from_counts(counts, order), "oracle-counts"


def cmd_zeta(args) -> int:
    spec = build_spec(args)
    t0 = time.perf_counter()
    series, method = _zeta_series(spec, args.order, args.force)
    report = {
        "command": "zeta",
        "family": args.family,
        "params": _params_block(args),
        "order": args.order,
        "method": method,
        "series": _series_block(series),
    }
    if args.timing:
        report["timing"] = {"seconds": time.perf_counter() - t0}
    _emit(report, args)
    return 0


def cmd_entropy(args) -> int:
    fam = args.family
    n = args.n
    t0 = time.perf_counter()
    if fam == "dyck":
        res = entropy_graph_brackets(dyck_graph_spec(n), args.tol)
    elif fam == "motzkin":
        res = entropy_bouquet(n, 1, 1, args.tol)
    elif fam == "bouquet":
        res = entropy_bouquet(n, args.j, args.q, args.tol)
    elif fam == "schroeder":
        res = entropy_closed("schroeder", n)
    elif fam == "even-odd":
        res = entropy_closed("even_odd", n)
    elif fam == "psi":
        spec = build_spec(args)
        k = spec.uniform_size
        if k is not None:
            res = entropy_closed("psi_uniform", n, k)
        else:
            _guard_enumeration(spec, args.n_max, args.force)
            res = entropy_growth_check(spec, args.n_max)
    else:
        spec = build_spec(args)
        _guard_enumeration(spec, args.n_max, args.force)
        res = entropy_growth_check(spec, args.n_max)
    report = {
        "command": "entropy",
        "family": fam,
        "params": _params_block(args),
        "entropy": _entropy_block(res),
    }
    if args.timing:
        report["timing"] = {"seconds": time.perf_counter() - t0}
    _emit(report, args)
    return 0


def cmd_count(args) -> int:
    spec = build_spec(args)
    _guard_enumeration(spec, args.length, args.force)
    t0 = time.perf_counter()
    value = (
        count_periodic(spec, args.length)
        if args.periodic
        else count_words(spec, args.length)
    )
    report = {
        "command": "count",
        "family": args.family,
        "params": _params_block(args),
        "length": args.length,
        "periodic": bool(args.periodic),
        "count": value,
    }
    if args.timing:
        report["timing"] = {"seconds": time.perf_counter() - t0}
    _emit(report, args)
    return 0


def cmd_verify(args) -> int:
    spec = build_spec(args)
    _guard_enumeration(spec, args.max_n, args.force)
    order = max(args.order, args.max_n)
    t0 = time.perf_counter()
    series = closed_form_zeta(spec, order)
    result = compare_with_oracle(spec, series, args.max_n)
    report = {
        "command": "verify",
        "family": args.family,
        "params": _params_block(args),
        "order": order,
        "max_n": args.max_n,
        "verification": {
            "rows": [
                {
                    "n": r.n,
                    "formula": _frac_str(r.formula),
                    "oracle": r.oracle,
                    "match": r.match,
                }
                for r in result.rows
            ],
            "all_match": result.all_match,
        },
    }
    if args.timing:
        report["timing"] = {"seconds": time.perf_counter() - t0}
    _emit(report, args)
    if not result.all_match:
        print("verification mismatch:\n" + result.summary(), file=sys.stderr)
        return 1
    return 0


def cmd_classify(args) -> int:
    mapping = parse_assoc(args.psi)
    psi = as_subset_map(mapping, args.n, args.n)
    cls = classify_psi(args.n, psi)
    report = {
        "command": "classify",
        "params": {"n": args.n, "psi": args.psi},
        "classification": {
            "targets_all": sorted(cls.targets_all),
            "complement_like": sorted(cls.complement_like),
            "self_like": sorted(cls.self_like),
            "remaining": sorted(cls.remaining),
            "classes": [sorted(c) for c in cls.classes],
            "symmetries": [list(p) for p in cls.symmetries],
            "k_all": list(cls.k_all),
            "k_complement": list(cls.k_complement),
            "k_self": list(cls.k_self),
            "k_cross": [list(row) for row in cls.k_cross],
        },
    }
    _emit(report, args)
    return 0


def _add_family_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", required=True, type=int, help="number of bracket letters")
    p.add_argument("--j", type=int, default=None, help="circle / loop-symbol count")
    p.add_argument("--q", type=int, default=None, help="circle length")
    p.add_argument("--k", type=int, default=None, help="uniform rule size (psi)")
    p.add_argument("--psi", type=str, default=None, help='rule map, e.g. "1:1,2;2:1"')
    p.add_argument("--xi-omega", dest="xi_omega", type=str, default=None)
    p.add_argument("--xi-gamma", dest="xi_gamma", type=str, default=None)
    p.add_argument("--spec-file", dest="spec_file", type=str, default=None,
                   help="JSON file with psi / xi_omega / xi_gamma objects")
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    p.add_argument("--timing", action="store_true")
    p.add_argument("--force", action="store_true",
                   help="override the enumeration size guard")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyckzeta",
        description="Exact zeta functions, entropy and counting for "
                    "bracket-matching subshifts over labeled graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", help="zeta series coefficients as exact fractions")
    _add_family_options(p)
    p.add_argument("--order", type=int, default=16)
    p.set_defaults(fn=cmd_zeta)

    p = sub.add_parser("entropy", help="topological entropy")
    _add_family_options(p)
    p.add_argument("--tol", type=float, default=1e-14, help="bisection bracket width")
    p.add_argument("--n-max", dest="n_max", type=int, default=8,
                   help="depth of the growth estimate where no formula exists")
    p.set_defaults(fn=cmd_entropy)

    p = sub.add_parser("count", help="exact word / periodic-point counts")
    _add_family_options(p)
    p.add_argument("--length", required=True, type=int)
    p.add_argument("--periodic", action="store_true")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("verify", help="closed form vs. enumeration oracle")
    _add_family_options(p)
    p.add_argument("--order", type=int, default=16)
    p.add_argument("--max-n", dest="max_n", type=int, default=8)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("classify", help="classify a rule map")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--psi", required=True, type=str)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(fn=cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except RootError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())
