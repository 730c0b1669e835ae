"""Command-line entry point.

Exit codes: 0 pass, 1 mathematical failure (with witness), 2 input error,
3 precision exhausted, 4 internal-consistency error.  Global flags may be
set through CPINV_PRECISION_BITS, CPINV_MAX_PRECISION_BITS and CPINV_REPORT.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from pathlib import Path
from typing import Any, Callable

from . import codebook as cbmod
from . import io
from .crossed import CrossedProduct, cocycle_unitary, cocycle_validate
from .embedding import DEFAULT_MAX_PRECISION_BITS, DEFAULT_PRECISION_BITS, verify_alpha_is_conjugation
from .errors import CpinvError, InputError, InternalConsistencyError, PrecisionExhausted
from .galois import lemma21_check, validate_tower
from .involution import build_tau, symmetric_basis, validate_involution
from .positivity import (Kind, compare_methods, cor24_check, definiteness, iff_check, prop22_check, prop23_check,
                         trace_form_gram, transport_definiteness, transport_hermitian)
from .reports import FAIL, NOT_MET, PASS, Report

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_PRECISION, EXIT_INTERNAL = 0, 1, 2, 3, 4
ENV_PREFIX = "CPINV_"


class Outcome:
    """Reports plus free-form lines collected by one command."""

    def __init__(self, command: str):
        self.command = command
        self.reports: list[Report] = []
        self.lines: list[str] = []
        self.data: dict[str, Any] = {}
        self.code = EXIT_PASS

    def add(self, rep: Report) -> Report:
        self.reports.append(rep)
        if rep.status == FAIL:
            self.code = max(self.code, EXIT_FAIL)
        return rep

    def fail(self, rep: Report | None = None) -> None:
        if rep is not None:
            self.add(rep)
        self.code = max(self.code, EXIT_FAIL)

    def witnesses(self) -> list:
        out = []
        for r in self.reports:
            for w in r.witnesses:
                out.append({"check": r.check, **w})
            if r.status == FAIL and not r.witnesses:
                out.append({"check": r.check, "failed items": [i.name for i in r.failures()]})
        return out

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps({"command": self.command, "exit_code": self.code,
                               "status": PASS if self.code == 0 else FAIL,
                               "reports": [r.to_dict() for r in self.reports],
                               "witnesses": self.witnesses(), **self.data}, indent=2, sort_keys=True, default=str)
        parts = [r.to_text() for r in self.reports] + self.lines
        if self.code == EXIT_FAIL:
            parts.append("witness: " + json.dumps(self.witnesses(), sort_keys=True, default=str))
        return "\n".join(parts)


# ---------------------------------------------------------------- helpers


def _load(args) -> io.Algebra:
    return io.build(io.load(args.file), args.precision_bits, args.max_precision_bits)


def _structure(out: Outcome, alg: io.Algebra) -> bool:
    """Tower and cocycle validation; False when later stages cannot run."""
    tr = out.add(validate_tower(alg.tower))
    if not tr.ok:
        return False
    cr = out.add(cocycle_validate(alg.tower, alg.cocycle))
    ur = Report("cocycle_unitary")
    ur.add("alpha(xi) xi = 1", cocycle_unitary(alg.tower, alg.cocycle))
    out.add(ur)
    return cr.ok and ur.ok


def _embedding_report(alg: io.Algebra) -> Report:
    rep = Report("embedding")
    root = alg.ctx.approx_root()
    rep.details["root"] = f"{root.real:.12g} {'+' if root.imag >= 0 else '-'} {abs(root.imag):.12g}i"
    rep.details["precision_bits"] = alg.ctx.precision_bits
    rep.precision_used = alg.ctx.precision_bits
    is_conj = verify_alpha_is_conjugation(alg.tower.alpha_auto.image, alg.ctx)
    if is_conj:
        rep.add("alpha is complex conjugation", True)
    else:
        rep.status = NOT_MET
        rep.details["alpha is complex conjugation"] = "no: hypothesis not met at this embedding"
    return rep


def _involution(out: Outcome, alg: io.Algebra):
    if not _structure(out, alg):
        return None
    tau = build_tau(alg.tower, alg.cocycle)
    vr = out.add(validate_involution(tau))
    return tau if vr.ok else None


# --------------------------------------------------------------- commands


def cmd_validate(args) -> Outcome:
    out = Outcome("validate")
    alg = _load(args)
    if _structure(out, alg):
        out.add(_embedding_report(alg))
        B = CrossedProduct(alg.tower, alg.cocycle)
        if B.rescaling is not None:
            out.lines.append(f"cocycle rescaled: e_s -> ({B.rescaling!r})^-1 e_s")
    return out


def cmd_involution(args) -> Outcome:
    out = Outcome("involution")
    alg = _load(args)
    tau = _involution(out, alg)
    if tau is None:
        out.fail()
        return out
    images = {nm: repr(img) for nm, img in tau.gen_images.items()}
    for nm, img in images.items():
        out.lines.append(f"tau(e_{nm}) = {img}")
    dim = len(symmetric_basis(tau))
    out.lines.append(f"dim Sym(B, tau) over k0 = {dim}")
    out.data.update({"generator_images": images, "sym_dimension": dim})
    return out


def cmd_positivity(args) -> Outcome:
    out = Outcome("positivity")
    alg = _load(args)
    tau = _involution(out, alg)
    if tau is None:
        out.fail()
        return out
    ctx = alg.ctx
    rep = Report("positivity")
    rep.precision_used = ctx.precision_bits
    results = {}
    if args.method == "both":
        cmp = compare_methods(tau, ctx)
        rep.timings.update(cmp.timings)
        results = {"trace-form": cmp.details["trace_form"], "transport": cmp.details["transport"]}
        if not cmp.ok:
            out.add(cmp)
            out.code = EXIT_INTERNAL
            return out
        rep.details["methods agree"] = True
    elif args.method == "trace-form":
        t0 = time.perf_counter()
        results["trace-form"] = definiteness(trace_form_gram(tau), ctx).to_json()
        rep.timings["trace-form"] = time.perf_counter() - t0
    else:
        t0 = time.perf_counter()
        tm = transport_hermitian(tau)
        results["transport"] = transport_definiteness(tm, ctx, tau).to_json()
        rep.timings["transport"] = time.perf_counter() - t0
    for method, res in results.items():
        ok = res["kind"] == Kind.POS_DEF.value
        rep.add(f"{method}: positive definite", ok, f"{res['kind']} signature {tuple(res['signature'])}",
                witness=None if ok else {"method": method, "kind": res["kind"], "signature": res["signature"]})
    out.add(rep)
    out.data["positivity"] = results
    return out


def cmd_theorems(args) -> Outcome:
    out = Outcome("theorems")
    alg = _load(args)
    if not _structure(out, alg):
        out.fail()
        return out
    t, c, ctx = alg.tower, alg.cocycle, alg.ctx
    out.add(lemma21_check(t))
    out.add(prop22_check(t, ctx, c))
    tau = build_tau(t, c)
    out.add(prop23_check(tau, ctx))
    out.add(cor24_check(tau, ctx))
    out.add(iff_check(t, c, ctx))
    table = []
    for r in out.reports[3:]:
        met = r.status != NOT_MET
        table.append({"check": r.check, "hypotheses met": met,
                      "conclusion verified": (r.status == PASS) if met else None})
    out.lines.append(f"{'check':<16} {'hypotheses met':<16} conclusion verified")
    for row in table:
        concl = "-" if row["conclusion verified"] is None else ("yes" if row["conclusion verified"] else "NO")
        out.lines.append(f"{row['check']:<16} {'yes' if row['hypotheses met'] else 'no':<16} {concl}")
    out.data["table"] = table
    return out


def cmd_codebook(args) -> Outcome:
    out = Outcome("codebook")
    if args.size < 2:
        raise InputError("--size must be at least 2")
    alg = _load(args)
    tau = _involution(out, alg)
    if tau is None:
        out.fail()
        return out
    ctx = alg.ctx
    positive = definiteness(trace_form_gram(tau), ctx).kind is Kind.POS_DEF
    if not positive:
        if not args.force:
            rep = Report("codebook precondition")
            rep.add("tau is positive", False, "use --force to generate anyway", witness={"positive": False})
            out.fail(rep)
            return out
        out.lines.append("warning: tau is not positive at this embedding (--force)")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        cb = cbmod.generate(tau, args.strategy, args.size, args.height, args.seed)
    dr = cbmod.diversity(cb, ctx)
    rep = Report("codebook")
    rep.details.update({"codewords": len(cb), "strategy": args.strategy, "seed": args.seed})
    rep.add("every codeword unitary", True, "tau(u) u = 1 exactly")
    rep.add("fully diverse", dr.fully_diverse,
            "all pairwise determinants nonzero" if dr.fully_diverse else f"{len(dr.zero_pairs)} singular differences",
            witness=None if dr.fully_diverse else {"zero_pairs": [list(p) for p in dr.zero_pairs[:10]]})
    if dr.diversity_product is not None:
        dp = dr.diversity_product
        rep.details["diversity product"] = f"[{float(dp.lower):.15g}, {float(dp.upper):.15g}]"
    out.add(rep)
    field_desc = {"name": alg.description.name, "min_poly": alg.description.min_poly,
                  "root": alg.description.embedding_hint}
    data = cbmod.export(cb, ctx, dr, field_desc)
    text = cbmod.dumps(data)
    try:
        if args.out:
            Path(args.out).write_text(text)
            out.lines.append(f"wrote {args.out}")
        else:
            sys.stdout.write(text)
        if args.csv:
            Path(args.csv).write_text(cbmod.to_csv(data))
            out.lines.append(f"wrote {args.csv}")
    except OSError as exc:
        raise InputError(f"cannot write output: {exc}") from exc
    return out


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate, "involution": cmd_involution, "positivity": cmd_positivity,
    "theorems": cmd_theorems, "codebook": cmd_codebook,
}


# ----------------------------------------------------------------- parsing


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"{ENV_PREFIX}{name} must be an integer") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cpinv", description="Crossed products with unitary involutions.")
    p.add_argument("--precision-bits", type=int, default=None,
                   help=f"working precision (env {ENV_PREFIX}PRECISION_BITS, default {DEFAULT_PRECISION_BITS})")
    p.add_argument("--max-precision-bits", type=int, default=None,
                   help=f"escalation cap (env {ENV_PREFIX}MAX_PRECISION_BITS, default {DEFAULT_MAX_PRECISION_BITS})")
    p.add_argument("--report", choices=("text", "json"), default=None,
                   help=f"output format (env {ENV_PREFIX}REPORT, default text)")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("file", help="algebra description JSON, or a bundled fixture name such as FIX-E8")
        if name == "positivity":
            sp.add_argument("--method", choices=("trace-form", "transport", "both"), default="both")
        if name == "codebook":
            sp.add_argument("--strategy", choices=cbmod.STRATEGIES, default="products")
            sp.add_argument("--size", type=int, default=32)
            sp.add_argument("--height", type=int, default=8)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--out", default=None, help="JSON output path (default stdout)")
            sp.add_argument("--csv", default=None, help="optional CSV output path")
            sp.add_argument("--force", action="store_true", help="generate even if tau is not positive")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    fmt = "text"
    try:
        fmt = args.report or os.environ.get(ENV_PREFIX + "REPORT", "text")
        if fmt not in ("text", "json"):
            raise InputError(f"{ENV_PREFIX}REPORT must be text or json")
        if args.precision_bits is None:
            args.precision_bits = _env_int("PRECISION_BITS", 0) or None
        if args.max_precision_bits is None:
            args.max_precision_bits = _env_int("MAX_PRECISION_BITS", 0) or None
        for v in (args.precision_bits, args.max_precision_bits):
            if v is not None and v <= 0:
                raise InputError("precision flags must be positive")
        if args.precision_bits and args.max_precision_bits and args.max_precision_bits < args.precision_bits:
            raise InputError("--max-precision-bits is below --precision-bits")
        out = COMMANDS[args.command](args)
    except InputError as exc:
        return _error(fmt, args.command, EXIT_INPUT, "input error", exc)
    except PrecisionExhausted as exc:
        return _error(fmt, args.command, EXIT_PRECISION, "precision exhausted", exc)
    except InternalConsistencyError as exc:
        return _error(fmt, args.command, EXIT_INTERNAL, "internal consistency error", exc)
    except CpinvError as exc:
        return _error(fmt, args.command, EXIT_FAIL, "mathematical failure", exc)
    stream = sys.stderr if args.command == "codebook" and not getattr(args, "out", None) else sys.stdout
    print(out.render(fmt), file=stream)
    return out.code


def _error(fmt: str, command: str, code: int, kind: str, exc: Exception) -> int:
    if fmt == "json":
        print(json.dumps({"command": command, "exit_code": code, "status": FAIL, "error": kind,
                          "message": str(exc), "witnesses": [{"error": kind, "message": str(exc)}]},
                         indent=2, sort_keys=True))
    else:
        print(f"{kind}: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
