"""Command-line front end.

Every subcommand builds a JSON payload and wraps it in a small envelope
(tool, version, schema id, config echo, result, warnings).  Exit status is 0
on success, 1 when a check fails, 2 on bad input or an exceeded budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .chain import ChainSpec, axiom_report, chain_from_json, make_nested_chain, nested_family, spec_from_json
from .invariants import InadmissiblePair, PairConfig, pair_invariants
from .linalg import Subspace, check_prime
from .limit_series import (EHPair, OutOfScope, SequenceError, crude_excess, eh_classify, fiber_bound_eh,
                           genus0_nonempty, genus1_case, gluing_profile, random_compatible_pair,
                           random_excess_one_pair, random_refined_pair, refined_case_split, rho,
                           rho_additivity, translate, twist_threshold, verify_crude_identity)
from .oracle import (BudgetExceeded, InsufficientSamples, default_budget, enum_fiber, enum_lg_points,
                     fit_count_polynomial, stratify, key_str, verify_configuration)
from .strata import PairLocusSpec, StratumSpec, fiber_bound, pair_locus_report, stratum_report


class InputError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# --- argument parsing helpers ----------------------------------------------

def parse_primes(text: str) -> list[int]:
    try:
        primes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError("primes", f"not a comma list of integers: {text!r}")
    if not primes:
        raise InputError("primes", "empty list")
    if len(set(primes)) != len(primes):
        raise InputError("primes", "primes must be distinct")
    for p in primes:
        try:
            check_prime(p)
        except ValueError as exc:
            raise InputError("primes", str(exc))
    return sorted(primes)


def parse_budget(text: str | None) -> int:
    if text is None:
        return default_budget()
    try:
        value = int(float(text))
    except ValueError:
        raise InputError("budget", f"not a number: {text!r}")
    if value <= 0:
        raise InputError("budget", "must be positive")
    return value


def parse_ints(text: str, field: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(field, f"not a comma list of integers: {text!r}")


def parse_subsets(text: str, n: int) -> tuple[frozenset[int], ...]:
    """``"1;1,2"`` -> ({1}, {1, 2}); an empty part is the empty subset."""
    parts = text.split(";")
    if len(parts) != n - 1:
        raise InputError("subsets", f"need {n - 1} ';'-separated subsets for n={n}, got {len(parts)}")
    return tuple(frozenset(parse_ints(part, "subsets")) for part in parts)


def load_json(path: str, field: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(field, f"cannot read {path}: {exc.strerror}")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(field, f"malformed JSON in {path}: {exc.msg} at line {exc.lineno}")
    # reports written by this tool can be fed back in directly
    if isinstance(obj, dict) and obj.get("tool") == "lglab" and "result" in obj:
        obj = obj["result"]
    return obj


def load_chain(path: str, field: str = "chain"):
    obj = load_json(path, field)
    if not isinstance(obj, dict):
        raise InputError(field, "chain JSON must be an object")
    try:
        return chain_from_json(obj)
    except KeyError as exc:
        raise InputError(f"{field}.{exc.args[0]}", "missing field")
    except (TypeError, ValueError) as exc:
        raise InputError(field, str(exc))


def parse_subspace(text: str, p: int, d: int, field: str) -> Subspace:
    """Inline rows ``'1,0;0,1'`` or a path to subspace JSON."""
    if text.endswith(".json") or Path(text).is_file():
        obj = load_json(text, field)
        try:
            sub = Subspace.from_json(obj) if isinstance(obj, dict) else Subspace.span(p, d, obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(field, f"bad subspace JSON: {exc}")
        if sub.p != p or sub.ambient != d:
            raise InputError(field, f"subspace lives in F_{sub.p}^{sub.ambient}, chain needs F_{p}^{d}")
        return sub
    rows = []
    for part in text.split(";"):
        if part.strip():
            row = parse_ints(part, field)
            if len(row) != d:
                raise InputError(field, f"row {part!r} has {len(row)} entries, expected {d}")
            rows.append(row)
    return Subspace.span(p, d, rows)


def load_pair(args, chain) -> PairConfig:
    p, d = chain.p, chain.d
    if getattr(args, "pair", None):
        obj = load_json(args.pair, "pair")
        try:
            V1 = Subspace.span(p, d, obj["V1"])
            Vn = Subspace.span(p, d, obj["Vn"])
        except KeyError as exc:
            raise InputError(f"pair.{exc.args[0]}", "missing field")
        except (TypeError, ValueError) as exc:
            raise InputError("pair", str(exc))
    else:
        if not args.V1 or not args.Vn:
            raise InputError("V1", "give --v1 and --vn (or --pair FILE)")
        V1 = parse_subspace(args.V1, p, d, "V1")
        Vn = parse_subspace(args.Vn, p, d, "Vn")
    if V1.dim != Vn.dim:
        raise InputError("Vn", f"V1 has dimension {V1.dim} but Vn has {Vn.dim}")
    try:
        return PairConfig(chain, V1.dim, V1, Vn)
    except ValueError as exc:
        raise InputError("V1", str(exc))


def _pair_invariants(pair: PairConfig):
    try:
        return pair_invariants(pair)
    except InadmissiblePair as exc:
        raise InputError("Vn", str(exc))
    except ValueError as exc:
        raise InputError("chain", str(exc))


# --- subcommands -------------------------------------------------------------

Result = tuple[dict, list, bool]   # payload, warnings, passed


def cmd_chain_make(args) -> Result:
    subsets = parse_subsets(args.subsets, args.n)
    try:
        spec = ChainSpec(args.d, args.n, check_prime(args.p), subsets, args.seed)
    except ValueError as exc:
        raise InputError("subsets", str(exc))
    out = spec.to_json()
    if args.explicit:
        chain = make_nested_chain(spec)
        out = {"model": "explicit", **chain.to_json()}
    return out, [], True


def cmd_chain_check(args) -> Result:
    chain = load_chain(args.spec, "spec")
    rep = axiom_report(chain)
    return {"chain": {"p": chain.p, "d": chain.d, "n": chain.n, "s": chain.s}, **rep.to_json()}, [], rep.passed


def cmd_invariants(args) -> Result:
    chain = load_chain(args.chain)
    inv = _pair_invariants(load_pair(args, chain))
    return inv.to_json(), [], True


def cmd_stratum(args) -> Result:
    chain = load_chain(args.chain)
    inv = _pair_invariants(load_pair(args, chain))
    try:
        spec = StratumSpec.parse(args.stratum)
        rep = stratum_report(inv, spec)
    except ValueError as exc:
        raise InputError("stratum", str(exc))
    return rep.to_json(), [], True


def cmd_pair_locus(args) -> Result:
    if args.locus:
        obj = load_json(args.locus, "locus")
        try:
            spec = PairLocusSpec(
                n=int(obj["n"]), r=int(obj["r"]),
                vbar1={int(k): int(v) for k, v in obj["vbar1"].items()},
                vbarn={int(k): int(v) for k, v in obj["vbarn"].items()},
                zbar={int(k): int(v) for k, v in obj["zbar"].items()},
                V1n=int(obj["V1n"]), Vn1=int(obj["Vn1"]),
                img_g={int(k): int(v) for k, v in obj["img_g"].items()},
                img_f={int(k): int(v) for k, v in obj["img_f"].items()},
                ztilde={int(k): int(v) for k, v in obj["ztilde"].items()},
                ker_f1=int(obj["ker_f1"]), ker_gn1=int(obj["ker_gn1"]))
            rep = pair_locus_report(spec)
        except KeyError as exc:
            raise InputError(f"locus.{exc.args[0]}", "missing field")
        except (TypeError, ValueError, AttributeError) as exc:
            raise InputError("locus", str(exc))
        return rep.to_json(), [], True
    if not args.chain:
        raise InputError("chain", "give --chain with a pair, or --locus FILE")
    chain = load_chain(args.chain)
    inv = _pair_invariants(load_pair(args, chain))
    return pair_locus_report(PairLocusSpec.from_invariants(inv)).to_json(), [], True


def cmd_fiber_bound(args) -> Result:
    chain = load_chain(args.chain)
    inv = _pair_invariants(load_pair(args, chain))
    bound = fiber_bound(inv)
    locus = pair_locus_report(PairLocusSpec.from_invariants(inv))
    r, d = inv.r, chain.d
    return {"bound": bound, "pair_locus_dimension": locus.dimension, "grassmannian_dimension": r * (d - r)}, [], True


def cmd_enumerate(args) -> Result:
    obj = load_json(args.chain, "chain")
    if not isinstance(obj, dict):
        raise InputError("chain", "chain JSON must be an object")
    try:
        spec = spec_from_json(obj) if obj.get("model") == "nested" else None
    except KeyError as exc:
        raise InputError(f"chain.{exc.args[0]}", "missing field")
    except ValueError as exc:
        raise InputError("chain", str(exc))
    budget = parse_budget(args.budget)
    primes = parse_primes(args.primes) if args.primes else None
    if spec is None:
        chain = load_chain(args.chain)
        if primes and primes != [chain.p]:
            raise InputError("primes", "an explicit chain lives over a single prime; omit --primes")
        chains = {chain.p: chain}
    else:
        chains = {q: make_nested_chain(spec.with_prime(q)) for q in (primes or [spec.p])}
    any_chain = next(iter(chains.values()))
    want_pair = bool(args.V1 or args.Vn or args.pair)
    r = args.r
    rows = []
    strata_rows = []
    counts: dict[int, int] = {}
    warnings = []
    for q, chain in sorted(chains.items()):
        if want_pair:
            pair = load_pair(args, chain)
            r = pair.r
            fib = enum_fiber(chain, r, pair.V1, pair.Vn, budget)
            counts[q] = len(fib)
            rows.append({"q": q, "count": len(fib), "status": fib.status})
            if fib.status != "inadmissible":
                inv = pair_invariants(pair)
                for key, c in sorted(stratify(chain, inv, fib.points).items()):
                    strata_rows.append({"q": q, "stratum": key_str(key), "count": c})
        else:
            if r is None:
                raise InputError("r", "give --r for a full count")
            pts = enum_lg_points(chain, r, budget)
            counts[q] = len(pts)
            rows.append({"q": q, "count": len(pts)})
    fit = None
    if len(counts) >= 2:
        fit = fit_count_polynomial(counts).to_json()
        if not fit["exact_fit"]:
            warnings.append({"kind": "no-exact-fit", "detail": "count polynomial not pinned by the samples"})
    payload = {"target": "fiber" if want_pair else "linked-grassmannian", "r": r, "d": any_chain.d,
               "n": any_chain.n, "counts": rows, "fit": fit}
    if want_pair:
        payload["strata"] = strata_rows
    return payload, warnings, True


def _family(args) -> list[ChainSpec]:
    if args.family != "nested":
        raise InputError("family", f"unknown family {args.family!r} (only 'nested')")
    if args.d < 2:
        raise InputError("d", "need d >= 2")
    if args.n < 3:
        raise InputError("n", "need n >= 3")
    out = []
    k = 0
    for d in range(2, args.d + 1):
        for n in range(3, args.n + 1):
            for spec in nested_family(d, n):
                seed = None if args.seed is None else args.seed * 1_000_003 + k
                out.append(ChainSpec(spec.d, spec.n, 2, spec.subsets, seed))
                k += 1
    return out


def cmd_verify(args) -> Result:
    primes = parse_primes(args.primes)
    budget = parse_budget(args.budget)
    if args.r < 1:
        raise InputError("r", "need r >= 1")
    family = _family(args)
    rs = list(range(1, args.r + 1))
    report = verify_configuration(family, rs, primes, budget)
    warnings = list(report.pop("warnings"))
    passed = report["summary"]["passed"]
    if report["truncated"]:
        report["truncated_marker"] = "TRUNCATED: budget exceeded for some primes"
    return report, warnings, passed


# --- limit series ------------------------------------------------------------

def _eh_pair(args) -> EHPair:
    try:
        return EHPair.build(args.r, args.d, parse_ints(args.aY, "aY"), parse_ints(args.aZ, "aZ"),
                            args.gY, args.gZ)
    except SequenceError as exc:
        raise InputError("aY", str(exc))


def _twists(args, pair: EHPair) -> tuple[int, int]:
    tY, tZ = twist_threshold(pair)
    return (tY if args.degDY is None else args.degDY), (tZ if args.degDZ is None else args.degDZ)


def cmd_lls_rho(args) -> Result:
    ram = [parse_ints(a, "alpha") for a in (args.alpha or [])]
    try:
        value = rho(args.g, args.r, args.d, ram)
    except SequenceError as exc:
        raise InputError("alpha", str(exc))
    return {"rho": value, "g": args.g, "r": args.r, "d": args.d, "ramification": ram}, [], True


def cmd_lls_classify(args) -> Result:
    pair = _eh_pair(args)
    return {"pair": pair.to_json(), "node_sums": pair.node_sums(), **eh_classify(pair)}, [], True


def cmd_lls_translate(args) -> Result:
    pair = _eh_pair(args)
    degDY, degDZ = _twists(args, pair)
    try:
        return translate(pair, degDY, degDZ).to_json(), [], True
    except SequenceError as exc:
        raise InputError("degDY", str(exc))


def cmd_lls_bound(args) -> Result:
    pair = _eh_pair(args)
    try:
        bound = fiber_bound_eh(pair, args.degDY, args.degDZ)
    except SequenceError as exc:
        raise InputError("aZ" if "compatible" in str(exc) else "degDY", str(exc))
    return {"pair": pair.to_json(), "excess": crude_excess(pair), "bound": bound}, [], True


def _sweep_or_single(args, single: Callable[[EHPair], dict], gen: Callable[[random.Random], EHPair],
                     ok: Callable[[dict], bool]) -> Result:
    if args.aY is not None or args.aZ is not None:
        if args.aY is None or args.aZ is None or args.r is None or args.d is None:
            raise InputError("aY", "a single pair needs --r --d --aY --aZ")
        rep = single(_eh_pair(args))
        return rep, [], ok(rep)
    rng = random.Random(args.seed)
    failures = []
    for k in range(args.cases):
        pair = gen(rng)
        rep = single(pair)
        if not ok(rep):
            failures.append({"case": k, "pair": pair.to_json(), "report": rep})
    return {"seed": args.seed, "cases": args.cases, "failures": failures, "passed": not failures}, [], not failures


def cmd_lls_identity(args) -> Result:
    def single(pair: EHPair) -> dict:
        tY, tZ = twist_threshold(pair)
        try:
            return verify_crude_identity(pair, tY if args.degDY is None else args.degDY,
                                         tZ if args.degDZ is None else args.degDZ).to_json()
        except SequenceError as exc:
            raise InputError("aZ", str(exc))

    return _sweep_or_single(args, single, random_compatible_pair, lambda rep: rep["holds"])


def cmd_lls_additivity(args) -> Result:
    def gen(rng: random.Random) -> EHPair:
        return random_compatible_pair(rng)

    def single(pair: EHPair) -> dict:
        if not pair.compatible:
            raise InputError("aZ", "pair is not Eisenbud-Harris compatible")
        return rho_additivity(pair)

    return _sweep_or_single(args, single, gen, lambda rep: rep["holds"])


def cmd_lls_genus0(args) -> Result:
    try:
        if args.alpha:
            rep = genus0_nonempty(args.r, args.d, [parse_ints(a, "alpha") for a in args.alpha])
        else:
            rep = genus0_nonempty(args.r, args.d, args.points)
    except OutOfScope as exc:
        raise InputError("alpha", str(exc))
    except SequenceError as exc:
        raise InputError("alpha", str(exc))
    return rep, [], True


def cmd_lls_genus1(args) -> Result:
    try:
        return genus1_case(parse_ints(args.a, "a"), args.r, args.d), [], True
    except SequenceError as exc:
        raise InputError("a", str(exc))


def cmd_lls_gluing(args) -> Result:
    def single(pair: EHPair) -> dict:
        try:
            prof = gluing_profile(pair)
        except SequenceError as exc:
            raise InputError("aZ", str(exc))
        out = prof.to_json()
        out["unique_smoothing"] = prof.condition
        if pair.refined:
            out["refined_case_split"] = list(refined_case_split(pair))
        return out

    gens = {"refined": random_refined_pair, "excess1": random_excess_one_pair,
            "compatible": random_compatible_pair}

    def ok(rep: dict) -> bool:
        if "refined_case_split" in rep:
            return rep["sums"] == rep["refined_case_split"]
        if args.kind == "excess1":
            return rep["unique_smoothing"]
        return True

    return _sweep_or_single(args, single, gens[args.kind], ok)


# --- rendering -----------------------------------------------------------------

def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(obj, dict):
        out = []
        for k in obj:
            out.extend(_flatten(obj[k], f"{prefix}.{k}" if prefix else str(k)))
        return out
    if isinstance(obj, list) and obj and all(isinstance(x, (dict, list)) for x in obj):
        out = []
        for i, x in enumerate(obj):
            out.extend(_flatten(x, f"{prefix}[{i}]"))
        return out
    return [(prefix, json.dumps(obj) if isinstance(obj, (list, dict)) else str(obj))]


def _table_rows(command: str, result: dict) -> tuple[list[str], list[list]] | None:
    """Census-style tables for csv output."""
    if command == "verify":
        header = ["pair", "model", "r", "bound", "stratum", "predicted_nonempty", "predicted_dim",
                  "degree", "verdict", "counts"]
        rows = []
        for entry in result["pairs"]:
            pid = entry["pair"]["id"]
            for s in entry["strata"]:
                rows.append([pid, entry["pair"]["model"], entry["pair"]["r"], entry["bound"], s["key"],
                             s["predicted"]["nonempty"], s["predicted"]["dim"], s["degree"], s["verdict"],
                             " ".join(f"{q}:{c}" for q, c in s["counts"].items())])
        return header, rows
    if command == "enumerate":
        if result.get("strata"):
            return ["q", "stratum", "count"], [[r["q"], r["stratum"], r["count"]] for r in result["strata"]]
        return ["q", "count"], [[r["q"], r["count"]] for r in result["counts"]]
    return None


def render(envelope: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    command = envelope["command"]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        table = _table_rows(command, envelope["result"])
        if table is None:
            w.writerow(["key", "value"])
            w.writerows(_flatten(envelope["result"]))
        else:
            w.writerow(table[0])
            w.writerows(table[1])
        return buf.getvalue()
    pairs = _flatten(envelope["result"])
    width = max((len(k) for k, _ in pairs), default=3)
    lines = [f"{command}  (lglab {envelope['version']})", "-" * (width + 20)]
    lines += [f"{k.ljust(width)}  {v}" for k, v in pairs]
    if envelope["warnings"]:
        lines.append("warnings:")
        lines += [f"  {json.dumps(w, sort_keys=True)}" for w in envelope["warnings"]]
    return "\n".join(lines) + "\n"


# --- parser ----------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="add wall-clock timing (breaks byte-identical output)")


def _pair_args(p: argparse.ArgumentParser, spec_required: bool = True, spec_alias: bool = True):
    flags = ("--chain", "--spec") if spec_alias else ("--chain",)
    p.add_argument(*flags, dest="chain", required=spec_required,
                   help="chain JSON (nested model or explicit matrices)")
    p.add_argument("--v1", "--V1", dest="V1", help="V_1 as rows '0,1;1,1' or a subspace JSON file")
    p.add_argument("--vn", "--Vn", dest="Vn", help="V_n as rows or a subspace JSON file")
    p.add_argument("--pair", help="JSON file with V1 and Vn row lists")


def _eh_args(p: argparse.ArgumentParser, required: bool = True):
    p.add_argument("--r", type=int, required=required)
    p.add_argument("--d", type=int, required=required)
    p.add_argument("--aY", required=required, help="vanishing orders on Y at the node, comma list")
    p.add_argument("--aZ", required=required, help="vanishing orders on Z at the node, comma list")
    p.add_argument("--gY", type=int, default=0)
    p.add_argument("--gZ", type=int, default=0)


def _sweep_args(p: argparse.ArgumentParser, cases: int):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=cases)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lglab", description="Linked Grassmannian toolkit")
    parser.add_argument("--version", action="version", version=f"lglab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    chain = sub.add_parser("chain", help="build or check a chain")
    csub = chain.add_subparsers(dest="action", required=True)
    make = csub.add_parser("make", help="nested coordinate model")
    _common(make)
    make.add_argument("--d", type=int, required=True)
    make.add_argument("--n", type=int, required=True)
    make.add_argument("--p", type=int, default=2)
    make.add_argument("--subsets", required=True, help="1-based subsets S_1;...;S_{n-1}, e.g. '1;1,2'")
    make.add_argument("--seed", type=int, help="conjugate by seeded random invertible matrices")
    make.add_argument("--explicit", action="store_true", help="emit the matrices instead of the model")
    make.set_defaults(func=cmd_chain_make, name="chain make")
    check = csub.add_parser("check", help="axiom report")
    _common(check)
    check.add_argument("--spec", required=True)
    check.set_defaults(func=cmd_chain_check, name="chain check")

    for name, func, helptext in (("invariants", cmd_invariants, "pair invariants"),
                                 ("fiber-bound", cmd_fiber_bound, "fiber dimension bound over a pair")):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        _pair_args(p)
        p.set_defaults(func=func, name=name)

    p = sub.add_parser("stratum", help="stratum conditions and dimension")
    _common(p)
    _pair_args(p, spec_alias=False)
    p.add_argument("--spec", "--stratum", dest="stratum", required=True,
                   help="triples dV1,dVn,dZ per interior index, ';'-separated")
    p.set_defaults(func=cmd_stratum, name="stratum")

    p = sub.add_parser("pair-locus", help="pair locus conditions and dimension")
    _common(p)
    _pair_args(p, spec_required=False)
    p.add_argument("--locus", help="JSON with prescribed locus invariants instead of a pair")
    p.set_defaults(func=cmd_pair_locus, name="pair-locus")

    p = sub.add_parser("enumerate", help="brute-force point counts")
    _common(p)
    _pair_args(p)
    p.add_argument("--r", type=int)
    p.add_argument("--primes", help="comma list; nested models only")
    p.add_argument("--budget")
    p.set_defaults(func=cmd_enumerate, name="enumerate")

    p = sub.add_parser("verify", help="oracle sweep over a model family")
    _common(p)
    p.add_argument("--family", default="nested")
    p.add_argument("--d", type=int, required=True, help="largest d (d runs from 2)")
    p.add_argument("--n", type=int, required=True, help="largest n (n runs from 3)")
    p.add_argument("--r", type=int, default=1, help="largest r")
    p.add_argument("--primes", default="2,3,5,7")
    p.add_argument("--budget")
    p.add_argument("--seed", type=int, help="conjugate every model by a seeded change of basis")
    p.set_defaults(func=cmd_verify, name="verify")

    lls = sub.add_parser("lls", help="limit linear series numerics")
    lsub = lls.add_subparsers(dest="action", required=True)

    p = lsub.add_parser("rho", help="Brill-Noether number")
    _common(p)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha", action="append", help="ramification at one point, comma list; repeatable")
    p.set_defaults(func=cmd_lls_rho, name="lls rho")

    for name, func in (("classify", cmd_lls_classify), ("bound", cmd_lls_bound), ("translate", cmd_lls_translate)):
        p = lsub.add_parser(name)
        _common(p)
        _eh_args(p)
        if name != "classify":
            p.add_argument("--degDY", type=int)
            p.add_argument("--degDZ", type=int)
        p.set_defaults(func=func, name=f"lls {name}")

    p = lsub.add_parser("identity", help="crude-dimension identity, one pair or a seeded sweep")
    _common(p)
    _eh_args(p, required=False)
    p.add_argument("--degDY", type=int)
    p.add_argument("--degDZ", type=int)
    _sweep_args(p, 1000)
    p.set_defaults(func=cmd_lls_identity, name="lls identity")

    p = lsub.add_parser("additivity", help="Brill-Noether additivity at the node")
    _common(p)
    _eh_args(p, required=False)
    _sweep_args(p, 500)
    p.set_defaults(func=cmd_lls_additivity, name="lls additivity")

    p = lsub.add_parser("genus0", help="genus-0 base case via Pieri")
    _common(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--points", type=int, default=0, help="number of points with ramification 0,1,...,1")
    p.add_argument("--alpha", action="append", help="explicit ramification per point; repeatable")
    p.set_defaults(func=cmd_lls_genus0, name="lls genus0")

    p = lsub.add_parser("genus1", help="genus-1 base case, one marked point")
    _common(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", required=True, help="vanishing sequence, comma list")
    p.set_defaults(func=cmd_lls_genus1, name="lls genus1")

    p = lsub.add_parser("gluing", help="gluing profile and uniqueness")
    _common(p)
    _eh_args(p, required=False)
    _sweep_args(p, 200)
    p.add_argument("--kind", choices=("refined", "excess1", "compatible"), default="refined",
                   help="pair generator for sweeps")
    p.set_defaults(func=cmd_lls_gluing, name="lls gluing")
    return parser


def _config_echo(args) -> dict:
    skip = {"func", "name", "format", "out", "timing", "command", "action"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        payload, warnings, passed = args.func(args)
    except InputError as exc:
        print(f"lglab: error: {exc}", file=stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"lglab: error: budget: {exc}", file=stderr)
        return 2
    except InsufficientSamples as exc:
        print(f"lglab: error: primes: {exc}", file=stderr)
        return 2
    envelope = {
        "tool": "lglab",
        "version": __version__,
        "schema": f"lglab/{args.name.replace(' ', '-')}/1",
        "command": args.name,
        "config": _config_echo(args),
        "result": payload,
        "warnings": warnings,
        "passed": passed,
    }
    if args.timing:
        envelope["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    text = render(envelope, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    if args.name == "verify" and payload.get("truncated"):
        print("lglab: error: budget: some primes exceeded the budget; report is partial", file=stderr)
        return 2
    return 0 if passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
