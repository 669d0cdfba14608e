"""Job documents and report serialization for the CLI.

One flat JSON document format serves every subcommand: a context
header, one or two series payloads, and command parameters. Reports
echo the normalized input so they re-parse to the same job, and all
rationals are printed as "u/v" strings so output is byte-stable.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .errors import InvalidInput
from .padic import PadicContext, PadicElem
from .series import TailCert, TruncatedSeries, ZERO_TAIL

INF = math.inf


def fr_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fr_parse(s, where: str = "value") -> Fraction:
    try:
        if isinstance(s, int):
            return Fraction(s)
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"{where}: not a rational: {s!r}") from exc


def context_from_doc(doc, override_N=None) -> PadicContext:
    if not isinstance(doc, dict):
        raise InvalidInput("context: expected an object")
    try:
        p = int(doc["p"])
    except (KeyError, TypeError, ValueError):
        raise InvalidInput("context.p: missing or not an integer")
    f = int(doc.get("f", 1))
    e = int(doc.get("e", 1))
    N = int(override_N if override_N is not None else doc.get("N", 30))
    return PadicContext(p, f=f, e=e, N=N)


def context_to_doc(ctx: PadicContext) -> dict:
    return {"p": ctx.p, "f": ctx.f, "e": ctx.e, "N": ctx.N}


def elem_from_doc(doc, ctx: PadicContext, where: str = "coeff") -> PadicElem:
    if isinstance(doc, int):
        return ctx.from_int(doc)
    if isinstance(doc, str):
        return ctx.from_fraction(fr_parse(doc, where))
    if isinstance(doc, dict):
        if "base_exp" not in doc or "digits" not in doc:
            raise InvalidInput(f"{where}: element literal needs base_exp and digits")
        base = fr_parse(doc["base_exp"], f"{where}.base_exp")
        shift = base * ctx.e
        if shift.denominator != 1:
            raise InvalidInput(
                f"{where}.base_exp: denominator must divide e = {ctx.e}")
        digits = doc["digits"]
        if not all(isinstance(d, int) and 0 <= d < ctx.ff.q for d in digits):
            raise InvalidInput(f"{where}.digits: entries must be in [0, p^f)")
        return ctx.from_digit_indices(digits, shift=int(shift))
    raise InvalidInput(f"{where}: unsupported element literal {doc!r}")


def elem_to_doc(x: PadicElem, ndigits: int | None = None) -> dict:
    if x.is_zeroish:
        if x.is_exact_zero:
            return {"base_exp": "0", "digits": []}
        return {"base_exp": None, "digits": [],
                "min_valuation": fr_str(Fraction(x.min_valuation_pi(), x.ctx.e))}
    v = x.valuation_pi()
    n = min(x.rel, ndigits if ndigits is not None else x.ctx.N)
    digits = x.digits(n, start=v)
    while digits and digits[-1] == 0:
        digits.pop()
    return {"base_exp": fr_str(Fraction(v, x.ctx.e)), "digits": digits}


def tail_from_doc(doc) -> TailCert | None:
    if doc is None:
        return None
    if doc == "zero":
        return ZERO_TAIL
    if isinstance(doc, dict):
        strict = bool(doc.get("strict", False))
        if "affine" in doc:
            a, b = doc["affine"]
            return TailCert("affine", fr_parse(a, "tail.affine[0]"),
                            fr_parse(b, "tail.affine[1]"), strict)
        if "bound" in doc:
            return TailCert("affine", Fraction(0),
                            fr_parse(doc["bound"], "tail.bound"), strict)
    raise InvalidInput(f"tail: unsupported certificate {doc!r}")


def tail_to_doc(tail: TailCert | None):
    if tail is None:
        return None
    if tail.kind == "zero":
        return "zero"
    if tail.a == 0:
        return {"bound": fr_str(tail.b), "strict": tail.strict}
    return {"affine": [fr_str(tail.a), fr_str(tail.b)], "strict": tail.strict}


def series_from_doc(doc, ctx: PadicContext, where: str = "series") -> TruncatedSeries:
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise InvalidInput(f"{where}: expected an object with coeffs")
    coeffs = [elem_from_doc(c, ctx, f"{where}.coeffs[{i}]")
              for i, c in enumerate(doc["coeffs"])]
    if not coeffs:
        raise InvalidInput(f"{where}.coeffs: must not be empty")
    tail = tail_from_doc(doc.get("tail", "zero"))
    return TruncatedSeries(ctx, coeffs, tail)


def series_to_doc(F: TruncatedSeries) -> dict:
    return {"coeffs": [elem_to_doc(c) for c in F.coeffs],
            "tail": tail_to_doc(F.tail)}


def job_from_doc(doc, override_N=None):
    """Parse a job document; returns (ctx, series list, params, echo)."""
    if not isinstance(doc, dict):
        raise InvalidInput("job: expected a JSON object")
    ctx = context_from_doc(doc.get("context", {}), override_N)
    series = [series_from_doc(s, ctx, f"series[{i}]")
              for i, s in enumerate(doc.get("series", []))]
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise InvalidInput("params: expected an object")
    echo = {"context": context_to_doc(ctx),
            "series": [series_to_doc(s) for s in series],
            "params": params}
    return ctx, series, params, echo


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
