"""Command line interface.

Exit codes: 0 success, 2 input error, 3 Cl2(k) not (2,2,2), 4 verification
mismatch, 5 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .arith import NotFundamentalError
from .classifier import NotTwoTwoTwo, classify, is_two_two_two

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_222 = 3
EXIT_MISMATCH = 4
EXIT_INTERNAL = 5


class InputError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def emit(obj, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(dumps(obj) + "\n")
        return
    for k in sorted(obj):
        out.write(f"{k}: {json.dumps(obj[k], sort_keys=True, ensure_ascii=False)}\n")


# ---------------------------------------------------------------------------
# records


def field_record(d: int) -> dict:
    """Classification plus tower report (or the reason it is out of scope)."""
    from .towers import OutOfScope, tower_report

    rec = classify(d)
    out = {"schema": SCHEMA_VERSION, "classification": rec.to_dict()}
    try:
        out["tower"] = tower_report(rec).to_dict()
        out["out_of_scope"] = None
    except OutOfScope as e:
        out["tower"] = None
        out["out_of_scope"] = str(e)
    return out


def _survey_one(d: int):
    if not is_two_two_two(d):
        return d, None
    return d, field_record(d)


# ---------------------------------------------------------------------------
# subcommands


def _check_d(d: int) -> int:
    if d >= 0:
        raise InputError(f"d = {d} must be negative")
    return d


def cmd_classify(args) -> int:
    rec = classify(_check_d(args.d))
    emit(rec.to_dict(), args.json)
    return EXIT_OK


def cmd_tower(args) -> int:
    from .towers import OutOfScope, tower_report

    rec = classify(_check_d(args.d))
    try:
        emit(tower_report(rec).to_dict(), args.json)
    except OutOfScope as e:
        emit({"d": rec.d, "hall_senior": rec.hall_senior, "out_of_scope": str(e)}, args.json)
    return EXIT_OK


def _load_cache(path: str) -> dict[int, dict]:
    cache: dict[int, dict] = {}
    if not path or not os.path.exists(path):
        return cache
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                entry = json.loads(line)
            except json.JSONDecodeError:
                continue
            if entry.get("schema") != SCHEMA_VERSION:
                continue
            cache[int(entry["d"])] = entry
    return cache


def _open_cache_writer(path: str):
    if not path:
        return None
    try:
        return open(path, "a", encoding="utf-8")
    except OSError as e:
        print(f"warning: cache {path} not writable ({e}); continuing without cache", file=sys.stderr)
        return None


def cmd_survey(args) -> int:
    lo, hi = args.min, args.max
    if lo is None or hi is None:
        raise InputError("survey needs --min and --max")
    if not (lo < hi <= 0):
        raise InputError("need min < max <= 0")
    cache = _load_cache(args.cache)
    writer = _open_cache_writer(args.cache)
    todo = [d for d in range(hi, lo - 1, -1) if d not in cache]
    jobs = args.jobs or os.cpu_count() or 1
    results: dict[int, dict | None] = {}
    if jobs > 1 and len(todo) > 200:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for d, r in ex.map(_survey_one, todo, chunksize=64):
                results[d] = r
    else:
        for d in todo:
            results[d] = _survey_one(d)[1]
    try:
        for d in range(hi, lo - 1, -1):
            if d in cache:
                entry = cache[d]
            else:
                entry = {"schema": SCHEMA_VERSION, "d": d, "record": results[d]}
                if writer is not None:
                    writer.write(dumps(entry) + "\n")
            if entry["record"] is not None:
                sys.stdout.write(dumps(entry["record"]) + "\n")
    finally:
        if writer is not None:
            writer.close()
    return EXIT_OK


def group_summary(G) -> dict:
    from .cohomology import OrderCapExceeded, multiplier_rank
    from .pcgroup.hallsenior import identify_hall_senior

    Gp = G.derived_subgroup()
    out = {
        "order": G.n,
        "abelianization": list(G.abelianization()),
        "derived_subgroup": list(G.subgroup_abelianization(Gp)),
        "derived_subgroup_order": int(len(Gp)),
        "second_derived_order": int(len(G.induced(Gp)[0].derived_subgroup())),
        "lower_central_orders": [int(len(H)) for H in G.lower_central_series()],
    }
    Q = G.quotient(G.lcs_term(3))[0]
    out["quotient_by_G3"] = identify_hall_senior(Q)
    try:
        out["multiplier_rank"] = multiplier_rank(G)
    except OrderCapExceeded:
        out["multiplier_rank"] = None
    return out


def cmd_group(args) -> int:
    from .pcgroup import families
    from .pcgroup.hallsenior import LABELS, reference_group

    if args.label:
        if args.label not in LABELS:
            raise InputError(f"unknown label {args.label}; known: {', '.join(LABELS)}")
        G = reference_group(args.label)
        name = args.label
    elif args.gamma:
        if args.n is None:
            raise InputError("--gamma needs -n")
        G = families.gamma_family(args.gamma, args.n, args.eps)
        name = f"Gamma_{args.n}" + (f",{args.eps}" if args.gamma == 37 else "") + f"^({args.gamma})"
    elif args.counterexample:
        G = {
            "literal": families.counterexample_group,
            "quotient": families.counterexample_quotient,
            "alternative": families.counterexample_alternative,
        }[args.counterexample]()
        name = f"order 2^9 presentation ({args.counterexample})"
    elif args.d is not None:
        from .towers import OutOfScope, gamma_group_for, tower_report

        try:
            G = gamma_group_for(tower_report(classify(args.d)))
        except OutOfScope as e:
            raise InputError(str(e)) from e
        if G is None:
            raise InputError("no explicit group for this label")
        name = f"Gal(k^2/k) for d = {args.d}"
    else:
        raise InputError("give one of --label, --gamma, --counterexample, -d")
    out = {"group": name}
    out.update(group_summary(G))
    emit(out, args.json)
    return EXIT_OK


def mu_example(parts) -> dict:
    from .multiquad import (
        REFERENCE_OCTIC,
        auto_fixing,
        build_mu,
        lemma_gamma,
        min_poly_sqrt,
        same_octic_field,
        sign_vector,
    )

    c = build_mu(parts)
    minpoly = min_poly_sqrt(c.mu)
    a1, a2, a3 = c.alpha
    b1, b2, b3 = c.beta
    sv1 = sign_vector(c.mu, auto_fixing(c.parts, 0))
    sv2 = sign_vector(c.mu, auto_fixing(c.parts, 1))
    out = {
        "parts": list(c.parts),
        "solutions": {k: [s.x, s.y, s.z] for k, s in sorted(c.sol.items())},
        "alpha": [repr(a) for a in c.alpha],
        "beta": [repr(b) for b in c.beta],
        "mu": repr(c.mu),
        "mu_sign": c.mu_sign,
        "rule_sign": c.rule_sign,
        "mu_equals_minus_a1a2b3": c.mu == -(a1 * a2 * b3),
        "norm_is_square": c.norm_is_square,
        "sign_vector_K1": {"entries": list(sv1.entries), "group": sv1.group},
        "sign_vector_K2": {"entries": list(sv2.entries), "group": sv2.group},
        "lemma_gamma": {str(k): v for k, v in lemma_gamma(c.parts, c).items()},
        "min_poly_sqrt_mu": minpoly,
    }
    if tuple(c.parts) == (-7, -3, -23, 5):
        iso = same_octic_field(minpoly, REFERENCE_OCTIC)
        out["reference_octic"] = list(REFERENCE_OCTIC)
        out["octic_coefficients_equal"] = list(minpoly) == list(REFERENCE_OCTIC)
        out["octic_same_field"] = iso["isomorphic"]
    return out


def cmd_mu_example(args) -> int:
    parts = tuple(args.parts) if args.parts else (-7, -3, -23, 5)
    if len(parts) != 4:
        raise InputError("need four prime discriminants")
    emit(mu_example(parts), args.json)
    return EXIT_OK


def cmd_verify_tables(args) -> int:
    from .tables import verify_all

    rows = verify_all()
    bad = [r for r in rows if not r["ok"]]
    for r in rows:
        if args.json:
            sys.stdout.write(dumps(r) + "\n")
        else:
            status = "ok" if r["ok"] else "MISMATCH"
            line = f"{status:8s} {r['table']:10s} {r['row']}"
            if not r["ok"]:
                line += f"  expected={dumps(r['expected'])} got={dumps(r['got'])}"
            sys.stdout.write(line + "\n")
    if not args.json:
        sys.stdout.write(f"{len(rows) - len(bad)}/{len(rows)} rows agree\n")
    return EXIT_MISMATCH if bad else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cl2tower", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, need_d=False):
        sp.add_argument("-d", type=int, required=need_d, help="field discriminant (negative)")
        sp.add_argument("--json", action="store_true", help="one JSON object per line")

    sp = sub.add_parser("classify", help="type, graph, Hall-Senior label and case letter")
    common(sp, True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("tower", help="2-class field tower report")
    common(sp, True)
    sp.set_defaults(func=cmd_tower)

    sp = sub.add_parser("survey", help="classify every (2,2,2) field in a range")
    sp.add_argument("--min", type=int)
    sp.add_argument("--max", type=int)
    sp.add_argument("--cache", help="JSON-lines cache file")
    sp.add_argument("--jobs", type=int, default=0, help="worker processes (default: all cores)")
    sp.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON lines")
    sp.set_defaults(func=cmd_survey)

    sp = sub.add_parser("group", help="invariants of a catalogue or family group")
    common(sp)
    sp.add_argument("--label", help="Hall-Senior label, e.g. 32.036")
    sp.add_argument("--gamma", type=int, choices=(35, 37, 38), help="Gamma family")
    sp.add_argument("-n", type=int)
    sp.add_argument("--eps", type=int, default=0, choices=(0, 1))
    sp.add_argument("--counterexample", choices=("literal", "quotient", "alternative"))
    sp.set_defaults(func=cmd_group)

    sp = sub.add_parser("mu-example", help="explicit unramified quadratic extensions for an odd 32.041 field")
    sp.add_argument("--parts", type=int, nargs=4, metavar="D")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_mu_example)

    sp = sub.add_parser("verify-tables", help="recompute the embedded numerical tables")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except NotTwoTwoTwo as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_222
    except (NotFundamentalError, InputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
