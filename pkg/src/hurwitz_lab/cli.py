"""Command-line interface: ``hurwitz-lab <command> [flags]``.

Commands: ``hurwitz``, ``whurwitz``, ``tau``, ``paths``, ``verify``.
Exit codes: 0 success/agreement, 1 identity failure or route disagreement,
2 usage error (bad arguments, malformed partitions, invalid parameters).
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import HurwitzLabError, TooLarge
from .exact_ring import get_max_terms, max_terms
from .hurwitz import (
    Route, applicable_routes, coefficient_sum, coefficient_sum_prediction, hurwitz_character,
    hurwitz_d0_matrix_count, weighted_hurwitz, weighted_hurwitz_cayley, weighted_hurwitz_character,
)
from .partitions import Partition, partitions_of
from .permgroup import hurwitz_bruteforce, monotone_path_table
from .taudet import (
    MiwaContext, VerificationReport, rhs_tep5, tau_schur, verify_lemma_np, verify_recursion,
)
from .weights import WeightFunc

SUITES = ("tep5", "lemma-np", "recursion", "d0-matrix", "cayley", "sums")
DEFAULT_C_VECTORS = (("1/2", "1/3", "2/7"), ("-1", "3/4", "1/6"))


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

def _split_list(text: str) -> list:
    return [x.strip() for x in text.strip().strip("[]").split(",") if x.strip()]


def _merge_config(args: argparse.Namespace) -> dict:
    cfg = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
    for key, val in vars(args).items():
        if val is not None and key not in ("func", "config"):
            cfg[key] = val
    return cfg


def _weight_from_config(cfg: dict, D: int) -> WeightFunc:
    spec = cfg.get("weight")
    if cfg.get("c") is not None:
        spec = {"c": _split_list(cfg["c"]) if isinstance(cfg["c"], str) else cfg["c"]}
    elif cfg.get("G") is not None:
        spec = {"G": _split_list(cfg["G"]) if isinstance(cfg["G"], str) else cfg["G"]}
    elif cfg.get("family") is not None:
        spec = {"family": cfg["family"], "order": D}
    if spec is None:
        return WeightFunc.formal(D)
    if spec == "formal" or spec == {"formal": True}:
        return WeightFunc.formal(D)
    try:
        if "G" in spec:
            g = list(spec["G"])
            if len(g) < D + 1:
                raise UsageError(f"G list has {len(g)} entries; D={D} needs {D + 1}")
        return WeightFunc.from_spec(spec, D)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad weight spec {spec}: {exc}") from exc


def _parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _threads(cfg: dict) -> int:
    t = cfg.get("threads")
    if t is None:
        env = os.environ.get("HURWITZ_LAB_THREADS")
        if env:
            try:
                t = int(env)
            except ValueError as exc:
                raise UsageError(f"HURWITZ_LAB_THREADS must be an integer, got {env!r}") from exc
    return max(1, int(t or 1))


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _emit(records: list, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(records if len(records) != 1 else records[0], out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        fields = []
        for r in records:
            for k in r:
                if k not in fields:
                    fields.append(k)
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in r.items()})
    else:
        for r in records:
            if set(r) == {"value"}:
                out.write(f"{r['value']}\n")
            else:
                out.write("  ".join(f"{k}={v}" for k, v in r.items()) + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_hurwitz(cfg: dict, out) -> int:
    profiles = [_parse_partition(p) for p in cfg["profiles"]]
    value = hurwitz_character(profiles)
    record = {"value": str(value)}
    code = 0
    if cfg.get("oracle"):
        brute = hurwitz_bruteforce(profiles)
        record = {"profiles": [str(p) for p in profiles], "value": str(value),
                  "bruteforce": str(brute), "agree": value == brute}
        code = 0 if value == brute else 1
    _emit([record], cfg.get("format") or "text", out)
    return code


def _pairs(cfg: dict, n: int) -> list:
    if cfg.get("mu") is not None or cfg.get("nu") is not None:
        if cfg.get("mu") is None or cfg.get("nu") is None:
            raise UsageError("--mu and --nu must be given together")
        return [(_parse_partition(cfg["mu"]), _parse_partition(cfg["nu"]))]
    parts = partitions_of(n)
    return [(a, b) for a in parts for b in parts]


def cmd_whurwitz(cfg: dict, out) -> int:
    pairs_given = cfg.get("mu") is not None
    n = cfg.get("n")
    if n is None and not pairs_given:
        raise UsageError("whurwitz needs --n or --mu/--nu")
    if pairs_given:
        n = sum(_parse_partition(cfg["mu"]))
    d_list = [int(cfg["d"])] if cfg.get("d") is not None else list(range(int(cfg.get("D") or 2) + 1))
    D = int(cfg["D"]) if cfg.get("D") is not None else max(d_list)
    if max(d_list) > D:
        raise UsageError(f"d={max(d_list)} exceeds truncation D={D}")
    w = _weight_from_config(cfg, D)
    route_name = cfg.get("route") or "character"
    records = []
    code = 0
    for mu, nu in _pairs(cfg, int(n)):
        for d in d_list:
            if route_name == "all":
                values = {r.value: weighted_hurwitz(r, w, mu, nu, d).value
                          for r in applicable_routes(w, int(n), d)}
                agree = len(set(values.values())) <= 1
                code = code or (0 if agree else 1)
                records.append({"mu": str(mu), "nu": str(nu), "d": d, "route": "all",
                                "value": str(values[Route.CHARACTER.value]),
                                "routes": {k: str(v) for k, v in values.items()}, "agree": agree})
            else:
                try:
                    res = weighted_hurwitz(Route(route_name), w, mu, nu, d)
                except ValueError as exc:
                    raise UsageError(str(exc)) from exc
                rec = res.to_json()
                rec["agree"] = True
                records.append(rec)
    _emit(records, cfg.get("format") or "json", out)
    return code


def cmd_tau(cfg: dict, out) -> int:
    n_max = int(cfg.get("n_max") or cfg.get("n") or 2)
    N = int(cfg.get("N") or n_max)
    D = int(cfg.get("D") if cfg.get("D") is not None else 2)
    w = _weight_from_config(cfg, D)
    tau = rhs_tep5(MiwaContext(N, n_max, D), w)
    check = tau_schur(None, w, n_max)
    agree = tau == check
    records = []
    for (om, sg), s in sorted(tau.coeffs.items()):
        for d in range(D + 1):
            v = s.coeff(d)
            if v:
                records.append({"omega": str(om), "sigma": str(sg), "d": d, "value": str(v)})
    if (cfg.get("format") or "json") == "json":
        json.dump({"N": N, "n_max": n_max, "D": D, "agree_with_schur": agree, "coefficients": records},
                  out, indent=2)
        out.write("\n")
    else:
        _emit(records, cfg["format"], out)
    return 0 if agree else 1


def cmd_paths(cfg: dict, out) -> int:
    n = cfg.get("n")
    d = cfg.get("d")
    if n is None or d is None:
        raise UsageError("paths needs --n and --d")
    n, d = int(n), int(d)
    if n > 6 or d > 4:
        raise UsageError("monotone path enumeration supports n <= 6, d <= 4")
    table = monotone_path_table(n, d)
    records = [{"lambda": str(l), "mu": str(m), "nu": str(v), "count": c}
               for (l, m, v), c in sorted(table.items())]
    if cfg.get("mu") is not None:
        mu = _parse_partition(cfg["mu"])
        records = [r for r in records if r["mu"] == str(mu)]
    if cfg.get("nu") is not None:
        nu = _parse_partition(cfg["nu"])
        records = [r for r in records if r["nu"] == str(nu)]
    _emit(records, cfg.get("format") or "json", out)
    return 0


# -- verification suites -----------------------------------------------------

def _random_points(rng: random.Random, count: int) -> list:
    pts: list = []
    while len(pts) < count:
        x = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        if x != 0 and x not in pts:
            pts.append(x)
    return pts


def suite_tep5(cfg: dict) -> list:
    D = int(cfg.get("D") if cfg.get("D") is not None else 2)
    ns = [int(cfg["n"])] if cfg.get("n") is not None else [1, 2, 3]
    w = _weight_from_config(cfg, D)
    reports = []
    for n in ns:
        N = int(cfg.get("N") or n)
        tau = rhs_tep5(MiwaContext(N, n, D), w)
        diff = tau.first_difference(tau_schur(None, w, n))
        reports.append(VerificationReport(
            "tep5", {"N": N, "n": n, "D": D, "weight": repr(w)}, diff is None,
            None if diff is None else f"H^{diff[2]}({diff[0]},{diff[1]}): det={diff[3]} schur={diff[4]}"))
    return reports


def suite_lemma(cfg: dict) -> list:
    if cfg.get("N") is not None:
        N = int(cfg["N"])
        pairs = [(N, int(cfg.get("P") or N))]
    else:
        pairs = [(2, 2), (2, 3), (3, 3)]
    reports = []
    for N, P in pairs:
        n_max = int(cfg.get("n_max") or N + 1)
        reports.append(verify_lemma_np(N, P, None, n_max))
    return reports


def suite_recursion(cfg: dict) -> list:
    k = int(cfg.get("k") or 2)
    D = int(cfg.get("D") if cfg.get("D") is not None else 2)
    w = _weight_from_config(cfg, D)
    rng = random.Random(int(cfg.get("seed") if cfg.get("seed") is not None else 0))
    reps = int(cfg.get("repeat") or 3)
    return [verify_recursion(k, w, _random_points(rng, k + 1), _random_points(rng, k + 1))
            for _ in range(reps)]


def suite_d0(cfg: dict) -> list:
    ns = [int(cfg["n"])] if cfg.get("n") is not None else [1, 2, 3]
    reports = []
    for n in ns:
        if n > 4:
            raise UsageError("d0-matrix supports n <= 4")
        w = WeightFunc.formal(0)
        tau = rhs_tep5(MiwaContext(max(n, 1), n, 0), w, cross_check=False)
        det_table = {k: s.coeff(0).constant_value() for k, s in tau.coeffs.items() if sum(k[0]) == n}
        failures = [r for r in hurwitz_d0_matrix_count(n)] + [r for r in hurwitz_d0_matrix_count(n, det_table)]
        bad = next((r for r in failures if not r.ok), None)
        reports.append(VerificationReport(
            "d0_matrix", {"n": n}, bad is None,
            None if bad is None else f"a={bad.a} b={bad.b}: coefficient {bad.coefficient} vs {bad.matrices} matrices",
            {"monomials": len(failures) // 2}))
    return reports


def suite_cayley(cfg: dict) -> list:
    ns = [int(cfg["n"])] if cfg.get("n") is not None else [1, 2, 3, 4]
    d_max = int(cfg.get("d") if cfg.get("d") is not None else 3)
    if any(n > 6 for n in ns) or d_max > 4:
        raise UsageError("the Cayley route supports n <= 6, d <= 4")
    if cfg.get("c") is not None or cfg.get("G") is not None or cfg.get("family") is not None:
        weights = [_weight_from_config(cfg, d_max)]
    else:
        weights = [WeightFunc.from_c(c, d_max) for c in DEFAULT_C_VECTORS]
    reports = []
    for w in weights:
        witness = None
        for n in ns:
            parts = partitions_of(n)
            for mu in parts:
                for nu in parts:
                    for d in range(d_max + 1):
                        a = weighted_hurwitz_character(w, mu, nu, d)
                        b = weighted_hurwitz_cayley(w, mu, nu, d)
                        if a != b and witness is None:
                            witness = f"H^{d}({mu},{nu}): character={a} cayley={b}"
        reports.append(VerificationReport("cayley", {"n": ns, "d_max": d_max, "weight": repr(w)},
                                          witness is None, witness))
    return reports


def suite_sums(cfg: dict) -> list:
    n_top = int(cfg.get("n") or 5)
    d_max = int(cfg.get("d") if cfg.get("d") is not None else 3)
    w = _weight_from_config(cfg, d_max)
    witness = None
    alt_fails = []
    for n in range(n_top + 1):
        for d in range(d_max + 1):
            s = coefficient_sum(w, n, d)
            if s != coefficient_sum_prediction(w, n, d) and witness is None:
                witness = f"n={n} d={d}: sum={s} rho_(n-1)={coefficient_sum_prediction(w, n, d)}"
            if n >= 2 and s != coefficient_sum_prediction(w, n, d, upper=n - 2):
                alt_fails.append(f"n={n},d={d}")
    return [VerificationReport("coefficient_sums", {"n_max": n_top, "d_max": d_max, "weight": repr(w)},
                               witness is None, witness,
                               {"product_to_n_minus_2_fails_at": alt_fails[:10],
                                "product_to_n_minus_2_failures": len(alt_fails)})]


SUITE_FUNCS = {"tep5": suite_tep5, "lemma-np": suite_lemma, "recursion": suite_recursion,
               "d0-matrix": suite_d0, "cayley": suite_cayley, "sums": suite_sums}


def _run_suite(name: str, cfg: dict) -> list:
    return [r.to_json() for r in SUITE_FUNCS[name](cfg)]


def cmd_verify(cfg: dict, out) -> int:
    suite = cfg["suite"]
    names = list(SUITES) if suite == "all" else [suite]
    threads = _threads(cfg)
    if suite == "all":
        # suite-specific overrides make no sense across every suite
        cfg = {k: v for k, v in cfg.items() if k in ("format", "seed", "threads", "max_terms")}
    if threads > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_suite, names, [cfg] * len(names)))
    else:
        results = [_run_suite(n, cfg) for n in names]
    records = [r for rs in results for r in rs]
    _emit(records, cfg.get("format") or "json", out)
    return 0 if all(r["pass"] for r in records) else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), help="output format")
    p.add_argument("--config", help="JSON config file; command-line flags override it")
    p.add_argument("--max-terms", type=int, dest="max_terms", help="polynomial term-count ceiling")
    p.add_argument("--threads", type=int, help="worker count (fallback: HURWITZ_LAB_THREADS)")


def _add_weight(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--c", help='parameters c_k, e.g. "1/2,1/3" (G(z) = prod(1 + c_k z))')
    g.add_argument("--G", help='coefficients G_0..G_D, rationals or formal names, e.g. "1,g1,g2"')
    g.add_argument("--family", choices=("exp-truncated",), help="named weight family")
    p.add_argument("--D", type=int, help="β truncation order (default: the largest d requested)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hurwitz-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hurwitz", help="classical Hurwitz number H(mu1, ..., muk)")
    p.add_argument("profiles", nargs="+", help='partitions such as "[2,1]"')
    p.add_argument("--oracle", action="store_true", default=None, help="add the brute-force count")
    _add_common(p)
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("whurwitz", help="weighted Hurwitz numbers H^d_G(mu, nu)")
    p.add_argument("--n", type=int, help="weight of mu and nu (all pairs)")
    p.add_argument("--mu", help="single mu partition")
    p.add_argument("--nu", help="single nu partition")
    p.add_argument("--d", type=int, help="β-degree (default: all 0..D)")
    p.add_argument("--route", choices=[r.value for r in Route] + ["all"])
    _add_weight(p)
    _add_common(p)
    p.set_defaults(func=cmd_whurwitz)

    p = sub.add_parser("tau", help="truncated tau-function table from the determinant side")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--N", type=int, help="Miwa dimension (default n_max)")
    _add_weight(p)
    _add_common(p)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("paths", help="monotone Cayley-path counts m^lambda_{mu nu}")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--mu")
    p.add_argument("--nu")
    _add_common(p)
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("verify", help="run an identity verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--P", type=int)
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--repeat", type=int, help="number of random point sets (recursion)")
    _add_weight(p)
    _add_common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _merge_config(args)
        with max_terms(int(cfg.get("max_terms") or get_max_terms())):
            return args.func(cfg, out)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, HurwitzLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
