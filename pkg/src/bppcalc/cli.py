"""
Command-line entry point: ``bppcalc <subcommand> [flags]``.

Every report is JSON (default) or CSV, carries a schema version and the
resolved configuration, and is byte-identical for identical inputs.
Exit codes: 0 ok, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import biasimir, lr_process, moments, pbw, walks, weingarten
from .permutations import ExponentFunction, Permutation, parse_permutation
from .polynomials import RationalFunctionOfN, SparsePoly

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    format: str = "json"
    cap_d: int = weingarten.DEFAULT_D_CAP
    cap_n: int | None = None
    seed: int = 0
    flags: dict = field(default_factory=dict)


# -- parsing helpers ----------------------------------------------------------------------

def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").strip("[]()").split(",") if x != "")
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from exc


def _fractions(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in text.replace(" ", "").split(",") if x)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"expected a comma-separated list of rationals, got {text!r}") from exc


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"expected an exact rational such as 1/2, got {text!r}") from exc
    return value


def _perm(text: str, d: int | None = None) -> Permutation:
    try:
        return parse_permutation(text, d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _signature(text: str) -> lr_process.Signature:
    try:
        return lr_process.Signature(_ints(text))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- serialization --------------------------------------------------------------------

def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _coeff(c):
    if isinstance(c, RationalFunctionOfN):
        return {"numerator": list(c.numerator), "denominator": list(c.denominator)}
    if isinstance(c, Fraction):
        return _frac(c)
    return int(c)


def _poly(p: SparsePoly):
    return p.to_json(_coeff)


def _casimir_poly(p: SparsePoly):
    return {mono: _poly(coeff) for mono, coeff in biasimir.casimir_map(p).items()}


def _one_line(p: Permutation) -> str:
    return "[" + ",".join(map(str, p.images)) + "]"


# -- subcommands ----------------------------------------------------------------------

def cmd_wg(cfg: RunConfig):
    d = cfg.flags["d"]
    if d < 1:
        raise UsageError("--d must be positive")
    if cfg.flags["class"]:
        shape = tuple(sorted(_ints(cfg.flags["class"]), reverse=True))
        if sum(shape) != d or min(shape) < 1:
            raise UsageError(f"cycle type {shape} is not a partition of {d}")
        shapes = [shape]
    else:
        shapes = weingarten.partitions(d)
    order = cfg.flags["series_order"]
    rows = []
    for shape in shapes:
        value = weingarten.wg_class(shape, cfg.cap_d)
        rep = weingarten._class_representative(shape)
        series = weingarten.wg_series(Permutation.identity(d), rep, order)
        rows.append({
            "class": list(shape),
            "numerator": list(value.numerator),
            "denominator": list(value.denominator),
            "expression": str(value),
            "leading_power": -(d + rep.norm),
            "series": series,
        })
    return {"d": d, "classes": rows}, rows


def cmd_walks(cfg: RunConfig):
    d = cfg.flags["d"]
    if d is None:
        d = max(_perm(cfg.flags["pi1"]).d, _perm(cfg.flags["pi2"]).d)
    p1 = _perm(cfg.flags["pi1"], d)
    p2 = _perm(cfg.flags["pi2"], d)
    if cfg.flags["geodesics"]:
        paths = walks.enumerate_monotone_geodesics(p1, p2, cfg.flags["enum_cap"])
        result = {"pi1": _one_line(p1), "pi2": _one_line(p2), "geodesics": [[list(t) for t in w] for w in paths]}
        return result, [{"walk": " ".join(f"({s} {t})" for s, t in w)} for w in paths]
    if cfg.flags["genus"] is not None:
        steps = (p1.inverse() * p2).norm + 2 * cfg.flags["genus"]
    elif cfg.flags["steps"] is not None:
        steps = cfg.flags["steps"]
    else:
        steps = (p1.inverse() * p2).norm
    count = walks.count_monotone_walks(p1, p2, steps, cfg.flags["step_cap"])
    result = {"pi1": _one_line(p1), "pi2": _one_line(p2), "steps": steps, "count": int(count)}
    return result, [result]


def cmd_biasimir(cfg: RunConfig):
    p = _perm(cfg.flags["perm"], cfg.flags["d"])
    r = _ints(cfg.flags["exp"]) if cfg.flags["exp"] else ExponentFunction.ones(p.d).values
    if len(r) != p.d:
        raise UsageError(f"--exp has {len(r)} entries but the permutation acts on {p.d} points")
    classical, quantum = biasimir.reduce(p, r)
    result = {
        "perm": _one_line(p),
        "cycles": str(p),
        "exp": list(r),
        "classical": _casimir_poly(classical),
        "quantum": _casimir_poly(quantum),
        "degree_classical": biasimir.casimir_degree(classical),
        "degree_quantum": biasimir.casimir_degree(quantum),
        "aex": p.aex,
        "cyc": p.cyc,
    }
    ok = True
    if cfg.flags["oracle"]:
        n = cfg.flags["oracle"]
        ok = pbw.oracle_check(p, r, n, cfg.cap_n or pbw.DEFAULT_N_CAP)
        result["oracle"] = {"n": n, "passed": ok}
    rows = [{"part": "classical", "polynomial": str(classical)}, {"part": "quantum", "polynomial": str(quantum)}]
    if not ok:
        raise CheckFailed(result)
    return result, rows


def _word(flags, p_key="p", q_key="q") -> moments.WordSpec:
    try:
        return moments.WordSpec(_ints(flags[p_key]), _ints(flags[q_key]))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _moment_report(classical, quantum, cfg: RunConfig, d: int):
    result = {"classical": _poly(classical), "quantum": _poly(quantum)}
    rows = [{"part": "classical", "monomial": m, "coefficient": json.dumps(c)} for m, c in result["classical"].items()]
    rows += [{"part": "quantum", "monomial": m, "coefficient": json.dumps(c)} for m, c in result["quantum"].items()]
    if cfg.flags.get("limit"):
        cl = moments.limit_at_infinity(classical)
        qu = moments.limit_at_infinity(quantum)
        result["limit"] = {
            "classical": _poly(cl),
            "quantum": _poly(qu),
            "monomials": {"classical": len(cl), "quantum": len(qu), "total": len(cl) + len(qu)},
        }
        rows = [{"part": "classical_limit", "monomial": m, "coefficient": c} for m, c in result["limit"]["classical"].items()]
        rows += [{"part": "quantum_limit", "monomial": m, "coefficient": c} for m, c in result["limit"]["quantum"].items()]
    if cfg.flags.get("N_list"):
        a, b = cfg.flags.get("a"), cfg.flags.get("b")
        if not a or not b:
            raise UsageError("--N-list needs --a and --b moment lists")
        hbar = _fraction(cfg.flags["hbar"])
        evals = []
        for n in _ints(cfg.flags["N_list"]):
            if n < d:
                raise UsageError(f"N = {n} is below d = {d}")
            c = moments.evaluate_moment_polynomial(classical, _fractions(a), _fractions(b), hbar, n)
            q = moments.evaluate_moment_polynomial(quantum, _fractions(a), _fractions(b), hbar, n)
            evals.append({"N": n, "classical": _frac(c), "quantum": _frac(q), "tau": _frac(c + hbar * q)})
        result["evaluations"] = evals
        rows = evals
    return result, rows


def cmd_tau(cfg: RunConfig):
    w = _word(cfg.flags)
    if w.d > cfg.cap_d:
        raise UsageError(f"d={w.d} exceeds --cap-d {cfg.cap_d}")
    classical, quantum = moments.tau_decomposition(w, cfg.cap_d)
    result, rows = _moment_report(classical, quantum, cfg, w.d)
    return {"word": str(w), **result}, rows


def cmd_tau2(cfg: RunConfig):
    w1 = _word(cfg.flags, "p1", "q1")
    w2 = _word(cfg.flags, "p2", "q2")
    if w1.d + w2.d > cfg.cap_d:
        raise UsageError(f"d1+d2={w1.d + w2.d} exceeds --cap-d {cfg.cap_d}")
    classical, quantum = moments.two_point_decomposition(w1, w2, cfg.cap_d)
    result, rows = _moment_report(classical, quantum, cfg, w1.d + w2.d)
    return {"word1": str(w1), "word2": str(w2), **result}, rows


def cmd_free(cfg: RunConfig):
    w = _word(cfg.flags)
    a, b = _fractions(cfg.flags["a"]), _fractions(cfg.flags["b"])
    try:
        genus_zero = moments.free_moment(w, a, b)
        oracle = moments.free_moment_oracle(w, a, b)
        expansion = moments.classical_expansion(w, cfg.flags["k_max"], a, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok = genus_zero == oracle == expansion[0]
    result = {
        "word": str(w),
        "free_moment": _frac(genus_zero),
        "cumulant_oracle": _frac(oracle),
        "expansion": [_frac(x) for x in expansion],
        "agree": ok,
    }
    if not ok:
        raise CheckFailed(result)
    return result, [{"k": k, "e_k": _frac(x)} for k, x in enumerate(expansion)]


def cmd_lr(cfg: RunConfig):
    lam, mu = _signature(cfg.flags["lam"]), _signature(cfg.flags["mu"])
    try:
        table = lr_process.lr_coefficients(lam, mu, cfg.cap_n or lr_process.DEFAULT_N_CAP)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = [{"nu": str(nu), "mult": c, "dim": lr_process.weyl_dim(nu)} for nu, c in sorted(table.items(), reverse=True)]
    return {"lam": str(lam), "mu": str(mu), "dim_lam": lr_process.weyl_dim(lam),
            "dim_mu": lr_process.weyl_dim(mu), "components": rows}, rows


def cmd_measure(cfg: RunConfig):
    lam, mu = _signature(cfg.flags["lam"]), _signature(cfg.flags["mu"])
    try:
        measure = lr_process.isotypic_measure(lam, mu, cfg.cap_n or lr_process.DEFAULT_N_CAP)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = [{"nu": str(nu), "probability": _frac(measure.probabilities[nu])} for nu in measure.support()]
    result = {"lam": str(lam), "mu": str(mu), "measure": rows}
    count = cfg.flags["count"]
    if count:
        draws = lr_process.sample(measure, cfg.seed, count)
        freq = {str(nu): sum(1 for x in draws if x == nu) for nu in measure.support()}
        result["samples"] = {"count": count, "frequencies": freq}
        for row in rows:
            row["sampled"] = freq[row["nu"]]
    return result, rows


def cmd_bpp(cfg: RunConfig):
    lam = _signature(cfg.flags["lam"])
    hbar = _fraction(cfg.flags["hbar"])
    config = lr_process.signature_to_config(lam, hbar)
    rows = []
    for k in _ints(cfg.flags["k"]):
        if k < 1:
            raise UsageError("power sum orders must be positive")
        rows.append({"k": k, "power_sum": _frac(lr_process.bpp_power_sum(config, k)),
                     "normalized": _frac(lr_process.bpp_power_sum(config, k, normalized=True))})
    return {"lam": str(lam), "hbar": _frac(hbar), "config": [_frac(c) for c in config.c], "values": rows}, rows


def cmd_check_biane(cfg: RunConfig):
    lam, mu = _signature(cfg.flags["lam"]), _signature(cfg.flags["mu"])
    hbar = _fraction(cfg.flags["hbar"])
    ks = _ints(cfg.flags["k"])
    try:
        ok = lr_process.biane_identity_check(lam, mu, ks, hbar)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = {"lam": str(lam), "mu": str(mu), "k": list(ks), "hbar": _frac(hbar), "passed": ok}
    if not ok:
        raise CheckFailed(result)
    return result, [result]


def cmd_check_pp(cfg: RunConfig):
    lam = _signature(cfg.flags["lam"])
    hbar = _fraction(cfg.flags["hbar"])
    rows = []
    try:
        for k in range(1, cfg.flags["k_max"] + 1):
            rows.append({"k": k, "passed": lr_process.perelomov_popov_check(lam, k, hbar)})
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = {"lam": str(lam), "hbar": _frac(hbar), "checks": rows}
    if not all(r["passed"] for r in rows):
        raise CheckFailed(result)
    return result, rows


def cmd_lln(cfg: RunConfig):
    family = []
    for n in _ints(cfg.flags["N_list"]):
        lam = lr_process.Signature((1,) + (0,) * (n - 1))
        mu = lr_process.Signature.trivial(n) if cfg.flags["trivial_mu"] else lam
        family.append((lam, mu, Fraction(1, n)))
    rows = [{"N": r.N, "hbar": _frac(r.hbar), "mean": _frac(r.mean), "variance": _frac(r.variance),
             "variance_float": float(r.variance)} for r in lr_process.lln_experiment(family, cfg.flags["k"])]
    return {"k": cfg.flags["k"], "family": "lam=mu=(1,0,...,0), hbar=1/N", "rows": rows}, rows


COMMANDS = {
    "wg": cmd_wg, "walks": cmd_walks, "biasimir": cmd_biasimir, "tau": cmd_tau, "tau2": cmd_tau2,
    "free": cmd_free, "lr": cmd_lr, "measure": cmd_measure, "bpp": cmd_bpp,
    "check-biane": cmd_check_biane, "check-pp": cmd_check_pp, "lln": cmd_lln,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bppcalc", description="Exact BPP moment calculus.")
    _add_global_flags(parser, suppress=False)
    # the same flags are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, suppress=True)
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    class _Sub:
        @staticmethod
        def add_parser(name, **kw):
            return subparsers.add_parser(name, parents=[common], **kw)

    sub = _Sub()

    p = sub.add_parser("wg", help="Weingarten function, exact and as a series")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--class", dest="class", default=None, help="cycle type, e.g. 2,1")
    p.add_argument("--series-order", type=int, default=3)

    p = sub.add_parser("walks", help="count monotone walks")
    p.add_argument("--pi1", required=True)
    p.add_argument("--pi2", required=True)
    p.add_argument("--d", type=int, default=None, help="size when cycles omit fixed points")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--geodesics", action="store_true")
    p.add_argument("--step-cap", type=int, default=walks.DEFAULT_STEP_CAP)
    p.add_argument("--enum-cap", type=int, default=walks.DEFAULT_ENUMERATION_CAP)

    p = sub.add_parser("biasimir", help="reduce a Biasimir to higher Casimirs")
    p.add_argument("--perm", required=True, help='"(1 3 2)" or [3,1,2]')
    p.add_argument("--d", type=int, default=None, help="size when cycles omit fixed points")
    p.add_argument("--exp", default=None, help="exponents, e.g. 2,1,1")
    p.add_argument("--oracle", type=int, default=None, metavar="n", help="also verify in U(gl_n)")

    p = sub.add_parser("tau", help="classical/quantum decomposition of a mixed moment")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    _add_eval_flags(p)

    p = sub.add_parser("tau2", help="two-point function E[tr w1 · tr w2]")
    for key in ("p1", "q1", "p2", "q2"):
        p.add_argument(f"--{key}", required=True)
    _add_eval_flags(p)

    p = sub.add_parser("free", help="free mixed moment by two routes plus the 1/N² expansion")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--a", required=True, help="moments a_1,a_2,...")
    p.add_argument("--b", required=True, help="moments b_1,b_2,...")
    p.add_argument("--k-max", type=int, default=0)

    p = sub.add_parser("lr", help="Littlewood-Richardson decomposition")
    p.add_argument("--lam", required=True)
    p.add_argument("--mu", required=True)

    p = sub.add_parser("measure", help="isotypic measure, optionally sampled")
    p.add_argument("--lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--count", type=int, default=0)

    p = sub.add_parser("bpp", help="deformed power sums of a signature")
    p.add_argument("--lam", required=True)
    p.add_argument("--hbar", default="1")
    p.add_argument("--k", default="1,2,3")

    p = sub.add_parser("check-biane", help="verify the quantum correlator identity")
    p.add_argument("--lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--k", default="1")
    p.add_argument("--hbar", default="1")

    p = sub.add_parser("check-pp", help="verify Tr Z^k acts by the deformed power sum")
    p.add_argument("--lam", required=True)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--hbar", default="1")

    p = sub.add_parser("lln", help="exact mean and variance of the normalized power sum")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--N-list", dest="N_list", default="2,3")
    p.add_argument("--trivial-mu", action="store_true")
    return parser


def _add_global_flags(p, suppress: bool):
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--format", choices=["json", "csv"], default=default("json"))
    p.add_argument("--cap-d", type=int, default=default(weingarten.DEFAULT_D_CAP), help="largest d for Weingarten sums")
    p.add_argument("--cap-n", type=int, default=default(None), help="largest n for PBW and N for LR tables")
    p.add_argument("--seed", type=int, default=default(0))


def _add_eval_flags(p):
    p.add_argument("--limit", action="store_true", help="report the N → ∞ limit")
    p.add_argument("--hbar", default="1")
    p.add_argument("--N-list", dest="N_list", default=None)
    p.add_argument("--a", default=None)
    p.add_argument("--b", default=None)


def _to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        keys = list(rows[0])
        for row in rows[1:]:
            keys += [k for k in row if k not in keys]
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in row.items()})
    return buf.getvalue()


def dispatch(cfg: RunConfig) -> tuple[int, str]:
    """Run one subcommand; returns (exit status, serialized report)."""
    if cfg.cap_d < 1 or (cfg.cap_n is not None and cfg.cap_n < 1):
        raise UsageError("caps must be positive")
    status = 0
    try:
        result, rows = COMMANDS[cfg.subcommand](cfg)
    except (ValueError, ZeroDivisionError) as exc:
        # bad inputs and exceeded caps surface from the library as ValueError
        raise UsageError(str(exc)) from exc
    except CheckFailed as failed:
        result = failed.args[0]
        rows = [result] if isinstance(result, dict) else []
        status = 1
    if cfg.format == "csv":
        return status, _to_csv(rows)
    report = {"schema_version": SCHEMA_VERSION, "config": asdict(cfg), "result": result}
    return status, json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    values = vars(args)
    cfg = RunConfig(
        subcommand=values.pop("subcommand"),
        format=values.pop("format"),
        cap_d=values.pop("cap_d"),
        cap_n=values.pop("cap_n"),
        seed=values.pop("seed"),
        flags=values,
    )
    try:
        status, text = dispatch(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"bppcalc: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
