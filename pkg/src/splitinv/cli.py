"""Command-line entry point: verification suites, restriction reports,
abstract splitting-cocycle computation, Hilbert symbols, and the factor
calculus, all emitting deterministic JSON reports."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from typing import List, Optional

from .coeffs import LocalPlace, QuadConj, QuadField, hilbert_symbol
from .errors import SplitinvError
from .factors import build_factor_expression, chi_invariance_check
from .rootdata import (PinnedAutomorphism, RootDatum, analyze_weyl,
                       restrict_root_system)
from .splitting import ADatum, DescentDatum, lambda_twisted, lambda_untwisted, \
    _symbolic_adata
from .suites import CheckRecord, run_suite


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]


def _report(command: List[str], checks: List[CheckRecord], seed: Optional[int],
            result=None, timing: Optional[float] = None) -> dict:
    out = {
        "command": command,
        "input_digest": _digest(command),
        "seed": seed,
        "checks": [c.to_dict() for c in checks],
        "pass": all(c.passed for c in checks),
    }
    if result is not None:
        out["result"] = result
    if timing is not None:
        out["wall_time_s"] = round(timing, 3)
    return out


def _emit(report: dict, out_path: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


class ScenarioError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(f"field {field!r}: {message}")
        self.field = field


def _load_scenario(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ScenarioError("<file>", f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError("<json>", str(exc)) from None


def _parse_datum(doc: dict):
    spec = doc.get("datum", doc.get("type"))
    if spec is None:
        raise ScenarioError("datum", "missing")
    try:
        datum = RootDatum([(str(f), int(r)) for f, r in spec])
    except (TypeError, ValueError, SplitinvError) as exc:
        raise ScenarioError("datum", str(exc)) from None
    theta_doc = doc.get("theta")
    try:
        theta = PinnedAutomorphism.from_json(datum, theta_doc)
    except SplitinvError as exc:
        raise ScenarioError("theta", str(exc)) from None
    return datum, theta


def _parse_galois(doc: dict, datum: RootDatum, fieldq: Optional[QuadField],
                  symbolic_action=None) -> DescentDatum:
    gal = doc.get("galois")
    if gal is None:
        raise ScenarioError("galois", "missing")
    try:
        order = int(gal["order"])
    except (KeyError, TypeError, ValueError):
        raise ScenarioError("galois.order", "missing or not an integer") from None
    word = gal.get("omega_T", [])
    if not isinstance(word, list):
        raise ScenarioError("galois.omega_T", "expected a list of 1-based indices")
    try:
        omega = analyze_weyl(datum, [int(i) for i in word], one_based=True)
    except (SplitinvError, ValueError, IndexError) as exc:
        raise ScenarioError("galois.omega_T", str(exc)) from None
    sigma_doc = gal.get("sigma_T")
    try:
        sigma = PinnedAutomorphism.from_json(
            datum, {"perm": sigma_doc} if sigma_doc else None)
    except SplitinvError as exc:
        raise ScenarioError("galois.sigma_T", str(exc)) from None
    if symbolic_action is not None:
        action = symbolic_action
    elif fieldq is not None:
        action = QuadConj(fieldq)
    else:
        action = None
    try:
        descent = DescentDatum(datum, order, omega, sigma, action)
        descent.validate()
    except SplitinvError as exc:
        raise ScenarioError("galois", str(exc)) from None
    return descent


def _parse_value(raw, fieldq: Optional[QuadField]):
    if isinstance(raw, (int, str)):
        val = Fraction(raw)
        return fieldq.embed(val) if fieldq else val
    if isinstance(raw, list) and len(raw) == 2 and fieldq is not None:
        return fieldq.embed(Fraction(raw[0])) + fieldq.gen() * fieldq.embed(Fraction(raw[1]))
    raise ValueError(f"cannot parse coefficient {raw!r}")


def cmd_invariant(args) -> int:
    doc = _load_scenario(args.scenario)
    datum, theta = _parse_datum(doc)
    adoc = doc.get("adata")
    if adoc is None or "mode" not in adoc:
        raise ScenarioError("adata.mode", "missing")
    gal = doc.get("galois") or {}
    fdoc = gal.get("field")
    checks: List[CheckRecord] = []
    if adoc["mode"] == "symbolic":
        base = _parse_galois(doc, datum, None)
        try:
            adata, info = _symbolic_adata(datum, base,
                                          None if theta.is_identity else theta)
            descent = DescentDatum(datum, base.order, base.omega_T, base.sigma_T,
                                   info.field_action)
            descent.validate()
        except SplitinvError as exc:
            raise ScenarioError("galois", str(exc)) from None
    elif adoc["mode"] == "values":
        if not fdoc or "d" not in fdoc:
            raise ScenarioError("galois.field.d", "missing (required for value mode)")
        try:
            fieldq = QuadField(int(fdoc["d"]))
        except SplitinvError as exc:
            raise ScenarioError("galois.field.d", str(exc)) from None
        descent = _parse_galois(doc, datum, fieldq)
        raw = adoc.get("values")
        if not isinstance(raw, dict):
            raise ScenarioError("adata.values", "expected an object keyed by root coords")
        values = {}
        try:
            for key, v in raw.items():
                coords = tuple(int(c) for c in key.split(","))
                values[coords] = _parse_value(v, fieldq)
        except ValueError as exc:
            raise ScenarioError("adata.values", str(exc)) from None
        try:
            adata = ADatum.from_positive(datum, values, fieldq.one(), fieldq.half(),
                                         flavor="twisted" if not theta.is_identity
                                         else "plain")
        except SplitinvError as exc:
            raise ScenarioError("adata.values", str(exc)) from None
    else:
        raise ScenarioError("adata.mode", f"unknown mode {adoc['mode']!r}")

    def run():
        if theta.is_identity:
            return lambda_untwisted(datum, descent, adata)
        return lambda_twisted(datum, theta, descent, adata)

    t0 = time.time()
    try:
        cocycle = run()
        ok = True
        detail = None
    except SplitinvError as exc:
        ok, detail = False, str(exc)
        cocycle = None
    checks.append(CheckRecord("invariant/cocycle-and-fixedness", ok,
                              counterexample=detail))
    result = None
    if cocycle is not None:
        result = {
            "level": cocycle.level,
            "ambient": cocycle.ambient,
            "values": {
                str(k): {
                    "torus": [repr(c) for c in
                              (v.torus.coords if cocycle.level == "m" else v.coords)],
                    "weyl": [i + 1 for i in v.weyl.word] if cocycle.level == "m" else [],
                }
                for k, v in cocycle.values.items()
            },
        }
    report = _report(["invariant", args.scenario], checks, None, result,
                     time.time() - t0 if args.timing else None)
    _emit(report, args.out)
    return 0 if all(c.passed for c in checks) else 1


def cmd_restrict(args) -> int:
    doc = _load_scenario(args.scenario)
    datum, theta = _parse_datum(doc)
    t0 = time.time()
    checks: List[CheckRecord] = []
    try:
        rrs = restrict_root_system(datum, theta)
        ok = True
        detail = None
    except SplitinvError as exc:
        rrs, ok, detail = None, False, str(exc)
    checks.append(CheckRecord("restrict/construction", ok, counterexample=detail))
    result = None
    if rrs is not None:
        result = {
            "restricted_roots": [
                {"coords": list(v), "type": rr.rtype, "positive": rr.positive,
                 "orbit": [list(c) for c in rr.orbit]}
                for v, rr in sorted(rrs.restricted.items())
            ],
            "simple": [list(v) for v in rrs.simple_restricted],
            "reduced": rrs.is_reduced,
            "fixed_weyl_order": len(rrs.fixed_weyl_subgroup()),
        }
    report = _report(["restrict", args.scenario], checks, None, result,
                     time.time() - t0 if args.timing else None)
    _emit(report, args.out)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    t0 = time.time()
    try:
        checks = run_suite(args.suite, args.seed)
    except SplitinvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = _report(["verify", args.suite], checks, args.seed, None,
                     time.time() - t0 if args.timing else None)
    _emit(report, args.out)
    return 0 if all(c.passed for c in checks) else 1


def cmd_hilbert(args) -> int:
    place = LocalPlace.real() if args.place == "real" else \
        LocalPlace.padic(int(args.place))
    value = hilbert_symbol(Fraction(args.a), Fraction(args.b), place)
    print(value)
    return 0


def cmd_factors(args) -> int:
    expr = build_factor_expression(args.variant)
    report = {
        "variant": args.variant,
        "exponents": expr.to_dict(),
        "chi_invariant": chi_invariance_check(expr),
    }
    _emit(report, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="splitinv",
        description="exact splitting-invariant computations and verification suites")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="all",
                   choices=["steinberg", "tits", "nn", "main", "aa", "appendix", "all"])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", default=None)
    v.add_argument("--timing", action="store_true",
                   help="include wall time (breaks byte-level determinism)")
    v.set_defaults(fn=cmd_verify)

    i = sub.add_parser("invariant", help="compute a splitting cocycle from a scenario file")
    i.add_argument("scenario")
    i.add_argument("--out", default=None)
    i.add_argument("--timing", action="store_true")
    i.set_defaults(fn=cmd_invariant)

    r = sub.add_parser("restrict", help="restricted root system report")
    r.add_argument("scenario")
    r.add_argument("--out", default=None)
    r.add_argument("--timing", action="store_true")
    r.set_defaults(fn=cmd_restrict)

    h = sub.add_parser("hilbert", help="Hilbert symbol at a place of Q")
    h.add_argument("a")
    h.add_argument("b")
    h.add_argument("--place", required=True, help="'real' or a prime p")
    h.set_defaults(fn=cmd_hilbert)

    f = sub.add_parser("factors", help="transfer-factor exponent map")
    f.add_argument("--variant", required=True,
                   choices=["delta_ks", "delta_d", "delta_prime",
                            "delta_d_lambda", "delta_prime_lambda"])
    f.add_argument("--out", default=None)
    f.set_defaults(fn=cmd_factors)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SplitinvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
