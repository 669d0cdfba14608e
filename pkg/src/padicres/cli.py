"""Command-line front-end.

One job document in, one deterministic report out on stdout; with
--outdir the report is also written to disk together with a delimited
table and a rendered figure for the same data.

Exit codes: 0 success, 2 invalid input, 3 precision or tail trouble
(retry with a larger N), 4 structurally inapplicable.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import documents as docs
from .bounds import (CountingProfile, construction_31, construction_51,
                     phi_max_report)
from .errors import (CommonRoots, ContextMismatch, InvalidInput, NotApplicable,
                     NotAUnit, NotSquareFree, PrecisionExhausted, TailUncertain)
from .newton import characteristic_sequence, convergence_mu
from .resultant import (res_disc, smith_normal_form, sylvester_of_pair)
from .roots import ExpandConfig, irreducible_test, root_find
from .series import distinguished

NEG_INF = -math.inf


def _require_series(series, k: int, command: str):
    if len(series) < k:
        raise InvalidInput(f"{command} needs {k} series payload(s), got {len(series)}")


def _fr(x):
    if x == NEG_INF:
        return "-inf"
    if x == math.inf:
        return "inf"
    return docs.fr_str(x)


# -- subcommand handlers -----------------------------------------------------


def _cmd_newton(ctx, series, params, rng):
    _require_series(series, 1, "newton")
    F = series[0]
    cs = characteristic_sequence(F)
    result = {
        "breaks": [{"k": k, "v": _fr(v)} for k, v in cs.breaks],
        "slopes": [_fr(s) for s in cs.slopes],
        "roots_by_slope": [{"slope": _fr(s), "count": length}
                           for s, length in cs.slope_lengths()],
        "zero_root_multiplicity": cs.zero_mult,
        "complete": cs.complete,
        "slope_floor": _fr(cs.slope_floor),
    }
    try:
        result["mu"] = _fr(convergence_mu(F).mu)
    except TailUncertain:
        result["mu"] = None
    rows = [["k", "v_p", "slope_to_next"]]
    for i, (k, v) in enumerate(cs.breaks):
        rows.append([k, _fr(v), _fr(cs.slopes[i]) if i < len(cs.slopes) else ""])

    def figure(path):
        from . import plots
        plots.plot_newton(F.valuation_profile_p(), cs.breaks, path)

    return result, rows, figure


def _cmd_weier(ctx, series, params, rng):
    _require_series(series, 1, "weier")
    F = series[0]
    disc = params.get("disc", "open")
    dp = distinguished(F, disc)
    rec = dp.reconstruct()
    ok = all(rec.coeff(i).congruent(F.coeff(i)) for i in range(F.degree + 1))
    marks = {"wideg": F.wideg()}
    try:
        marks["lwideg"] = F.lwideg()
    except (TailUncertain, PrecisionExhausted):
        pass
    result = {
        "disc": disc,
        "degree": dp.degree,
        "distinguished": [docs.elem_to_doc(c) for c in dp.poly.coeffs],
        "unit_cofactor": [docs.elem_to_doc(c) for c in dp.unit.coeffs],
        "lead": docs.elem_to_doc(dp.lead),
        "reconstruction_ok": ok,
        "marks": {k: int(v) for k, v in marks.items()},
    }
    rows = [["degree", "v_pi"]] + [[i, _fr(v) if v is not None else "?"]
                                   for i, v in F.valuation_profile()]

    def figure(path):
        from . import plots
        plots.plot_valuation_profile(F.valuation_profile(), marks, path)

    return result, rows, figure


def _cmd_res(ctx, series, params, rng):
    _require_series(series, 2, "res")
    F, G = series[0], series[1]
    disc = params.get("disc", "open")
    r = res_disc(F, G, disc)
    if r.is_zeroish:
        result = {"valuation": f">= {_fr(Fraction(r.min_valuation_pi(), ctx.e))}",
                  "valuation_pi": f">= {r.min_valuation_pi()}",
                  "invariant_factors": None, "quotient_exponent": None,
                  "s_upper_bound": None}
        rows = [["quantity", "value"], ["valuation", result["valuation"]]]
        return result, rows, None
    snf = smith_normal_form(sylvester_of_pair(F, G, disc))
    result = {
        "valuation": _fr(r.valuation()),
        "valuation_pi": str(r.valuation_pi()),
        "invariant_factors": [str(v) for v in snf.valuations] if snf.valid else None,
        "quotient_exponent": ctx.f * r.valuation_pi(),
        "s_upper_bound": str(snf.valuations[-1]) if snf.valid else None,
    }
    rows = [["invariant_factor_index", "v_pi"]]
    rows += [[i + 1, v] for i, v in enumerate(snf.valuations)]

    def figure(path):
        from . import plots
        plots.plot_invariant_factors(snf.valuations, path)

    return result, rows, figure


def _cmd_count(ctx, series, params, rng):
    upto = int(params.get("upto", 8))
    if upto < 0:
        raise InvalidInput("params.upto: must be nonnegative")
    prof = CountingProfile(ctx.p, ctx.f, ctx.e)
    names = ["alpha", "alpha_prime", "beta", "beta_prime", "B", "B_prime"]
    tables = {name: prof.table(name, upto) for name in names}
    result = {"upto": upto, "tables": tables}
    rows = [["arg"] + names]
    for k in range(upto + 1):
        rows.append([k] + [tables[n][k] for n in names])

    def figure(path):
        from . import plots
        plots.plot_counting(tables, path)

    return result, rows, figure


def _cmd_phi_bound(ctx, series, params, rng):
    _require_series(series, 2, "phi-bound")
    disc = params.get("disc", "closed")
    budget = int(params.get("sample_budget", 64))
    rep = phi_max_report(series[0], series[1], disc, budget, rng)
    result = {
        "disc": rep.disc,
        "S_est": _fr(rep.S_est) if rep.S_est is not None else None,
        "S_arg": rep.S_arg,
        "s_est": _fr(rep.s_est) if rep.s_est is not None else None,
        "upper_bounds": {k: _fr(v) for k, v in rep.upper_bounds.items()},
        "finiteness": rep.finite,
        "finiteness_reason": rep.finite_reason,
        "samples": rep.samples,
        "candidates": rep.candidates,
    }
    rows = [["bound", "value"]] + [[k, _fr(v)] for k, v in rep.upper_bounds.items()]
    rows.append(["S_est", result["S_est"]])
    rows.append(["s_est", result["s_est"]])

    def figure(path):
        from . import plots
        vals = [rep.s_est, rep.S_est] if rep.S_est is not None else []
        plots.plot_phi(vals, rep.upper_bounds, path)

    return result, rows, figure


def _cmd_roots(ctx, series, params, rng):
    _require_series(series, 1, "roots")
    cfg = ExpandConfig(
        max_terms=int(params.get("max_terms", 24)),
        target_precision=docs.fr_parse(params.get("target_precision", "20"),
                                       "params.target_precision"))
    rep = root_find(series[0], cfg)
    exps = []
    for e in rep.expansions:
        exps.append({
            "field": {"p": e.ctx.p, "f": e.ctx.f, "e": e.ctx.e},
            "terms": [{"t": _fr(t), "eps": list(epsv)} for t, epsv in e.terms],
            "terminated": e.terminated,
            "achieved": _fr(e.achieved) if e.achieved != math.inf else "inf",
            "multiplicity": e.multiplicity,
        })
    result = {"expansions": exps,
              "zero_root_multiplicity": rep.zero_root_multiplicity,
              "unsupported": rep.unsupported}
    rows = [["branch", "term", "t", "eps"]]
    for bi, e in enumerate(rep.expansions):
        for ti, (t, epsv) in enumerate(e.terms):
            rows.append([bi, ti, _fr(t), "+".join(map(str, epsv))])

    def figure(path):
        from . import plots
        plots.plot_expansion([e.terms for e in rep.expansions], path)

    return result, rows, figure


def _cmd_irred(ctx, series, params, rng):
    _require_series(series, 1, "irred")
    v = irreducible_test(series[0])
    result = {"verdict": v.verdict, "power": v.power,
              "certificate": v.certificate, "steps": v.steps,
              "step_bound": v.step_bound}
    rows = [["field", "value"]] + [[k, str(val)] for k, val in result.items()]

    def figure(path):
        from . import plots
        cs = characteristic_sequence(series[0])
        plots.plot_newton(series[0].valuation_profile_p(), cs.breaks, path,
                          title=f"{v.verdict} ({v.certificate})")

    return result, rows, figure


def _cmd_construct(ctx, series, params, rng):
    kind = params.get("kind")
    if kind == "c31":
        s = int(params.get("s", 1))
        F, G = construction_31(s, ctx)
        meta = {"kind": kind, "s": s,
                "expected_phi_pi": s,
                "expected_res_valuation_pi": s * CountingProfile(ctx.p, ctx.f).beta(s)}
    elif kind == "c51":
        n = int(params.get("n", 1))
        stage = construction_51(n, ctx.p, ctx)
        F, G = stage.f_n, stage.g_n
        meta = {"kind": kind, "n": n,
                "expected_phi": _fr(stage.expected_phi),
                "phi_at_witness": _fr(stage.phi_at_witness),
                "witness_modulus_degree": stage.witness_modulus_degree}
    else:
        raise InvalidInput(f"params.kind: expected c31 or c51, got {kind!r}")
    document = {"context": docs.context_to_doc(ctx),
                "series": [docs.series_to_doc(F), docs.series_to_doc(G)],
                "params": {}}
    result = {"meta": meta, "document": document}
    rows = [["series", "degree", "coeff_valuations"]]
    for name, H in (("F", F), ("G", G)):
        rows.append([name, H.degree,
                     " ".join(_fr(v) if v is not None else "?"
                              for _, v in H.valuation_profile())])

    def figure(path):
        from . import plots
        plots.plot_pair_polygons(
            {"F": F.valuation_profile(), "G": G.valuation_profile()}, path)

    return result, rows, figure


_COMMANDS = {
    "newton": _cmd_newton,
    "weier": _cmd_weier,
    "res": _cmd_res,
    "count": _cmd_count,
    "phi-bound": _cmd_phi_bound,
    "roots": _cmd_roots,
    "irred": _cmd_irred,
    "construct": _cmd_construct,
}

_EXIT_CODES = (
    ((InvalidInput, ContextMismatch, json.JSONDecodeError), 2),
    ((TailUncertain, PrecisionExhausted), 3),
    ((NotApplicable, NotAUnit, CommonRoots, NotSquareFree), 4),
)


def dispatch(command: str, job_doc: dict, seed: int = 0,
             override_N: int | None = None) -> dict:
    """Run one subcommand on a parsed job document; returns the report."""
    if command not in _COMMANDS:
        raise InvalidInput(f"unknown subcommand {command!r}")
    ctx, series, params, echo = docs.job_from_doc(job_doc, override_N)
    rng = random.Random(seed)
    result, rows, figure = _COMMANDS[command](ctx, series, params, rng)
    return {"command": command, "seed": seed, "input": echo,
            "result": result, "_rows": rows, "_figure": figure}


def _write_outputs(report: dict, command: str, outdir: str, with_figure: bool):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    rows = report.pop("_rows", None)
    figure = report.pop("_figure", None)
    (out / "report.json").write_text(docs.dump_report(report))
    if rows:
        tsv = "\n".join("\t".join(str(c) for c in row) for row in rows) + "\n"
        (out / f"{command}.tsv").write_text(tsv)
    if figure is not None and with_figure:
        figure(str(out / f"{command}.png"))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="padicres",
        description="Finite-precision p-adic power series toolkit")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("job", nargs="?", default="-",
                        help="job document file (default: stdin)")
    parser.add_argument("--outdir", help="write report.json, a TSV table and "
                                         "a figure here")
    parser.add_argument("--no-figure", action="store_true",
                        help="skip figure rendering")
    parser.add_argument("--precision", type=int, default=None,
                        help="override the context precision N")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for sampled reports")
    args = parser.parse_args(argv)
    try:
        raw = sys.stdin.read() if args.job == "-" else Path(args.job).read_text()
        job = json.loads(raw)
        report = dispatch(args.command, job, args.seed, args.precision)
    except Exception as exc:  # mapped to the documented exit codes
        for types, code in _EXIT_CODES:
            if isinstance(exc, types):
                print(f"error: {exc}", file=sys.stderr)
                return code
        if isinstance(exc, (OSError,)):
            print(f"error: {exc}", file=sys.stderr)
            return 2
        raise
    if args.outdir:
        _write_outputs(report, args.command, args.outdir, not args.no_figure)
    else:
        report.pop("_rows", None)
        report.pop("_figure", None)
    sys.stdout.write(docs.dump_report(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
