"""Brute-force ground truth over small prime fields.

Linked points are enumerated depth first: ``V_{i+1}`` runs over the r-spaces
between ``f_i(V_i)`` and ``g_i^{-1}(V_i)``.  Fibers are classified into strata
by their point invariants, counted over several primes, and the counts are
interpolated exactly to read off dimensions.

Pairs are not comparable across primes, so counts are aggregated per *profile*
(the tuple of dimensions the closed formulas consume).  Every pair of a profile
is counted; the per-pair count is used only if all pairs of the profile agree,
and disagreement is reported.
"""

from __future__ import annotations

import os
from functools import lru_cache
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .chain import ChainSpec, LinkedChain, axiom_report, make_nested_chain
from .invariants import PairConfig, PairInvariants, admissible, pair_invariants, point_invariants
from .linalg import Subspace, enumerate_between, enumerate_subspaces, gaussian_binomial, image, preimage
from .strata import (StratumEvaluator, StratumSpec, PairLocusSpec, all_stratum_specs, fiber_bound,
                     pair_locus_report, stratum_report)

DEFAULT_BUDGET = 10 ** 6
DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)


def default_budget() -> int:
    raw = os.environ.get("LGLAB_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    value = int(float(raw))
    if value <= 0:
        raise ValueError("LGLAB_BUDGET must be positive")
    return value


class BudgetExceeded(RuntimeError):
    pass


def check_budget(d: int, r: int, p: int, budget: int | None = None):
    budget = default_budget() if budget is None else budget
    size = gaussian_binomial(d, r, p)
    if size > budget:
        raise BudgetExceeded(f"Grassmannian G({r},{d}) over F_{p} has {size} points, budget is {budget}")


@lru_cache(maxsize=64)
def _axioms_hold(chain: LinkedChain) -> bool:
    return axiom_report(chain).passed


def _check_chain(chain: LinkedChain, r: int):
    if chain.s != 0:
        raise ValueError("enumeration requires s = 0")
    if not 0 < r < chain.d:
        raise ValueError(f"need 0 < r < d, got r={r}")
    if not _axioms_hold(chain):
        raise ValueError("chain fails the linked Grassmannian axioms")


def enum_lg_points(chain: LinkedChain, r: int, budget: int | None = None) -> list[tuple[Subspace, ...]]:
    """All linked tuples (V_1, ..., V_n) of r-spaces, in deterministic order."""
    _check_chain(chain, r)
    check_budget(chain.d, r, chain.p, budget)
    out: list[tuple[Subspace, ...]] = []
    n = chain.n

    def extend(prefix: list[Subspace]):
        i = len(prefix)
        if i == n:
            out.append(tuple(prefix))
            return
        v = prefix[-1]
        low = image(chain.fwd(i), v)
        up = preimage(chain.bwd(i), v)
        for w in enumerate_between(low, up, r):
            prefix.append(w)
            extend(prefix)
            prefix.pop()

    for v1 in enumerate_subspaces(chain.d, r, chain.p):
        extend([v1])
    return out


def admissible_pairs(chain: LinkedChain, r: int, budget: int | None = None) -> list[tuple[Subspace, Subspace]]:
    _check_chain(chain, r)
    check_budget(chain.d, r, chain.p, budget)
    n = chain.n
    fwd, bwd = chain.f_comp(1, n - 1), chain.g_comp(n - 1, 1)
    out = []
    for v1 in enumerate_subspaces(chain.d, r, chain.p):
        for vn in enumerate_between(image(fwd, v1), preimage(bwd, v1), r):
            out.append((v1, vn))
    return out


@dataclass(frozen=True)
class FiberResult:
    status: str  # "ok", "empty" (admissible, no points) or "inadmissible"
    points: tuple[tuple[Subspace, ...], ...] = ()

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def enum_fiber(chain: LinkedChain, r: int, V1: Subspace, Vn: Subspace,
               budget: int | None = None, inv: PairInvariants | None = None) -> FiberResult:
    _check_chain(chain, r)
    check_budget(chain.d, r, chain.p, budget)
    pair = PairConfig(chain, r, V1, Vn)
    if not admissible(pair):
        return FiberResult("inadmissible")
    inv = inv or pair_invariants(pair)
    n = chain.n
    out = []

    def extend(prefix: list[Subspace]):
        i = len(prefix)
        v = prefix[-1]
        low = image(chain.fwd(i), v)
        up = preimage(chain.bwd(i), v)
        if i + 1 == n:
            if low <= Vn <= up:
                out.append(tuple(prefix) + (Vn,))
            return
        for w in enumerate_between(low, up & inv.K[i + 1], r):
            prefix.append(w)
            extend(prefix)
            prefix.pop()

    extend([V1])
    return FiberResult("ok" if out else "empty", tuple(out))


def stratify(chain: LinkedChain, inv: PairInvariants, points: Iterable[Sequence[Subspace]]) -> Counter:
    """Stratum key -> number of points."""
    return Counter(point_invariants(chain, pt, inv, validate=False).key() for pt in points)


@dataclass
class FiberCensus:
    pair_id: str
    totals: dict[int, int] = field(default_factory=dict)
    strata: dict[tuple, dict[int, int]] = field(default_factory=dict)

    def add(self, q: int, counts: Mapping[tuple, int], total: int):
        if sum(counts.values()) != total:
            raise AssertionError(f"strata do not partition the fiber over F_{q}")
        self.totals[q] = total
        for key, c in counts.items():
            self.strata.setdefault(key, {})[q] = c

    def counts(self, key: tuple) -> dict[int, int]:
        return {q: self.strata.get(key, {}).get(q, 0) for q in self.totals}

    def to_json(self) -> dict:
        return {"pair": self.pair_id,
                "totals": {str(q): c for q, c in sorted(self.totals.items())},
                "strata": {key_str(k): {str(q): c for q, c in sorted(v.items())}
                           for k, v in sorted(self.strata.items())}}


def census(chain_by_prime: Mapping[int, LinkedChain], r: int, V1_by_prime: Mapping[int, Subspace],
           Vn_by_prime: Mapping[int, Subspace], pair_id: str = "pair") -> FiberCensus:
    out = FiberCensus(pair_id)
    for q in sorted(chain_by_prime):
        chain = chain_by_prime[q]
        fib = enum_fiber(chain, r, V1_by_prime[q], Vn_by_prime[q])
        if fib.status == "inadmissible":
            continue
        inv = pair_invariants(PairConfig(chain, r, V1_by_prime[q], Vn_by_prime[q]))
        out.add(q, stratify(chain, inv, fib.points), len(fib))
    return out


def key_str(key: tuple) -> str:
    return ";".join(",".join(map(str, t)) for t in key)


class InsufficientSamples(ValueError):
    pass


@dataclass(frozen=True)
class CountPolynomial:
    samples: tuple[tuple[int, int], ...]
    coefficients: tuple[Fraction, ...]  # constant term first
    degree: int                          # -1 for the zero polynomial
    exact_fit: bool

    def __call__(self, q) -> Fraction:
        return sum((c * Fraction(q) ** k for k, c in enumerate(self.coefficients)), Fraction(0))

    def to_json(self) -> dict:
        def enc(c: Fraction):
            return int(c) if c.denominator == 1 else str(c)
        return {"samples": {str(q): n for q, n in self.samples},
                "coefficients": [enc(c) for c in self.coefficients],
                "degree": self.degree, "exact_fit": self.exact_fit}


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def lagrange_coefficients(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (constant first) of the interpolant through ``points``."""
    m = len(points)
    coeffs = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = _poly_mul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    return coeffs


def fit_count_polynomial(counts: Mapping[int, int], expected_degree: int | None = None) -> CountPolynomial:
    """Exact interpolation of point counts.

    ``exact_fit`` means the interpolant has integer coefficients and degree at
    most ``len(samples) - 2``, so at least one sample was not needed to pin it.
    """
    need = 1 if expected_degree is None else expected_degree + 1
    if len(counts) < need:
        raise InsufficientSamples(f"need {need - len(counts)} more primes")
    pts = sorted((int(q), int(c)) for q, c in counts.items())
    if len({q for q, _ in pts}) != len(pts):
        raise ValueError("sample primes must be distinct")
    coeffs = lagrange_coefficients(pts)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    degree = len(coeffs) - 1
    exact = degree <= len(pts) - 2 and all(c.denominator == 1 for c in coeffs)
    return CountPolynomial(tuple(pts), tuple(coeffs), degree, exact)


# --- verification sweep -----------------------------------------------------

def _profile_json(inv: PairInvariants) -> dict:
    return inv.dims()


@dataclass
class _ProfileData:
    inv: PairInvariants
    representative: dict
    pair_counts: dict[int, int] = field(default_factory=dict)
    fiber_counts: dict[int, Counter] = field(default_factory=dict)
    totals: dict[int, int] = field(default_factory=dict)
    inconsistent: list[int] = field(default_factory=list)
    observed: set = field(default_factory=set)      # keys seen over any member pair, any prime


def _collect_prime(chain: LinkedChain, r: int, profiles: dict, lg_counts: dict, failures: list, label: str):
    q = chain.p
    pairs = admissible_pairs(chain, r)
    invs = {}
    by_profile: dict[tuple, list] = defaultdict(list)
    for v1, vn in pairs:
        inv = pair_invariants(PairConfig(chain, r, v1, vn))
        invs[(v1, vn)] = inv
        by_profile[inv.profile_key()].append((v1, vn))
    points = enum_lg_points(chain, r)
    lg_counts[q] = len(points)
    fibers: dict[tuple, list] = defaultdict(list)
    for pt in points:
        fibers[(pt[0], pt[-1])].append(pt)
    stray = [k for k in fibers if k not in invs]
    if stray:
        failures.append({"model": label, "prime": q, "check": "lg-points-over-admissible-pairs",
                         "detail": f"{len(stray)} linked points lie over inadmissible pairs"})
    for key, members in by_profile.items():
        counters = []
        for v1, vn in members:
            inv = invs[(v1, vn)]
            counters.append(stratify(chain, inv, fibers.get((v1, vn), ())))
        data = profiles.get(key)
        if data is None:
            v1, vn = members[0]
            data = _ProfileData(invs[(v1, vn)], {"p": q, "V1": v1.to_json(), "Vn": vn.to_json()})
            profiles[key] = data
        data.pair_counts[q] = len(members)
        first = counters[0]
        for c in counters:
            data.observed.update(k for k, v in c.items() if v)
        if any(c != first for c in counters[1:]):
            data.inconsistent.append(q)
        data.fiber_counts[q] = first
        data.totals[q] = sum(first.values())


def _fit(counts: Mapping[int, int]) -> CountPolynomial | None:
    if len(counts) < 2:
        return None
    return fit_count_polynomial(counts)


def verify_model(spec: ChainSpec, r: int, primes: Sequence[int] = DEFAULT_PRIMES,
                 budget: int | None = None, evaluator: StratumEvaluator = stratum_report) -> dict:
    """Sweep every admissible pair of one nested model over the given primes."""
    budget = default_budget() if budget is None else budget
    label = spec.label()
    profiles: dict[tuple, _ProfileData] = {}
    lg_counts: dict[int, int] = {}
    failures: list[dict] = []
    warnings: list[dict] = []
    truncated = []
    for q in sorted(primes):
        if gaussian_binomial(spec.d, r, q) > budget:
            truncated.append(q)
            continue
        chain = make_nested_chain(spec.with_prime(q))
        _collect_prime(chain, r, profiles, lg_counts, failures, label)

    n, d = spec.n, spec.d
    lg_fit = _fit(lg_counts)
    model = {"model": label, "r": r, "lg_counts": {str(q): c for q, c in sorted(lg_counts.items())},
             "lg_fit": lg_fit.to_json() if lg_fit else None, "expected_lg_dim": r * (d - r)}
    if lg_fit and lg_fit.exact_fit and lg_fit.degree != r * (d - r):
        failures.append({"model": label, "r": r, "check": "lg-dimension",
                         "detail": f"degree {lg_fit.degree} != {r * (d - r)}"})
    if lg_fit and not lg_fit.exact_fit:
        warnings.append({"model": label, "r": r, "kind": "lg-count-no-fit"})

    specs = list(all_stratum_specs(n, r))
    pair_entries = []
    stats = Counter()
    for key, data in profiles.items():
        inv = data.inv
        pid = f"{label};r={r};profile#{len(pair_entries)}"
        bound = fiber_bound(inv)
        locus = pair_locus_report(PairLocusSpec.from_invariants(inv))
        primes_seen = sorted(data.fiber_counts)
        if data.inconsistent:
            warnings.append({"pair": pid, "kind": "profile-counts-differ", "primes": data.inconsistent})
        predicted = {s.triples: evaluator(inv, s) for s in specs}
        observed = data.observed
        keys = sorted(k for k in predicted if predicted[k].nonempty or k in observed)
        strata_out = []
        realized_max = None
        for k in keys:
            rep = predicted[k]
            counts = {q: data.fiber_counts[q].get(k, 0) for q in primes_seen}
            witnessed = k in observed
            fit = _fit(counts) if witnessed else None
            degree = fit.degree if fit else None
            if not rep.nonempty:
                verdict = "fail-predicted-empty-has-points" if witnessed else "ok"
            elif not witnessed:
                verdict = "unwitnessed"
            elif fit is None:
                verdict = "insufficient-samples"
            elif not fit.exact_fit:
                verdict = "no-fit"
            elif fit.degree == rep.dimension:
                verdict = "ok"
            else:
                verdict = "fail-degree"
            stats[verdict] += 1
            if witnessed and rep.nonempty:
                realized_max = rep.dimension if realized_max is None else max(realized_max, rep.dimension)
            entry = {"key": key_str(k), "predicted": {"nonempty": rep.nonempty, "dim": rep.dimension},
                     "counts": {str(q): c for q, c in counts.items()}, "degree": degree,
                     "exact_fit": fit.exact_fit if fit else False, "verdict": verdict}
            strata_out.append(entry)
            if verdict.startswith("fail"):
                failures.append({"pair": pid, "stratum": key_str(k), "check": verdict, "counts": entry["counts"],
                                 "predicted": entry["predicted"]})
            elif verdict == "unwitnessed":
                warnings.append({"pair": pid, "stratum": key_str(k), "kind": "geometrically-nonempty-unwitnessed"})
            elif verdict in ("no-fit", "insufficient-samples"):
                warnings.append({"pair": pid, "stratum": key_str(k), "kind": verdict})
        stats["predicted-empty-checked"] += sum(1 for k in predicted if not predicted[k].nonempty)
        # predicted-empty strata that never appear are checked implicitly: observed is empty for them
        fiber_fit = _fit(data.totals)
        fiber_checks = {"realized_max_dim": realized_max}
        if realized_max is not None and realized_max > bound:
            failures.append({"pair": pid, "check": "fail-realized-dim-above-bound",
                             "detail": f"{realized_max} > {bound}"})
        # an empty fiber (zero count polynomial) satisfies any bound, negative ones included
        if fiber_fit and fiber_fit.exact_fit and fiber_fit.degree >= 0 and fiber_fit.degree > bound:
            failures.append({"pair": pid, "check": "fail-fiber-degree-above-bound",
                             "detail": f"{fiber_fit.degree} > {bound}"})
        pair_fit = _fit(data.pair_counts)
        locus_verdict = "insufficient-samples"
        if pair_fit is not None:
            if not locus.nonempty:
                locus_verdict = "fail-locus-predicted-empty"
            elif not pair_fit.exact_fit:
                locus_verdict = "no-fit"
            elif pair_fit.degree == locus.dimension:
                locus_verdict = "ok"
            else:
                locus_verdict = "fail-locus-degree"
        if locus_verdict.startswith("fail"):
            failures.append({"pair": pid, "check": locus_verdict,
                             "detail": {"predicted": locus.dimension, "degree": pair_fit.degree}})
        stats["locus-" + locus_verdict] += 1
        if bound + (locus.dimension or 0) != r * (d - r) and locus.nonempty:
            failures.append({"pair": pid, "check": "fail-bound-locus-sum"})
        pair_entries.append({
            "pair": {"id": pid, "model": label, "r": r, "profile": _profile_json(inv),
                     "representative": data.representative,
                     "pair_counts": {str(q): c for q, c in sorted(data.pair_counts.items())}},
            "bound": bound,
            "fiber": {"counts": {str(q): c for q, c in sorted(data.totals.items())},
                      "fit": fiber_fit.to_json() if fiber_fit else None, **fiber_checks},
            "pair_locus": {"predicted": locus.to_json(), "fit": pair_fit.to_json() if pair_fit else None,
                           "verdict": locus_verdict},
            "strata": strata_out,
        })
    return {"model": model, "pairs": pair_entries, "failures": failures, "warnings": warnings,
            "truncated": truncated, "stats": dict(stats)}


def verify_configuration(family: Sequence[ChainSpec], rs: Sequence[int] | int,
                         primes: Sequence[int] = DEFAULT_PRIMES, budget: int | None = None,
                         evaluator: StratumEvaluator = stratum_report) -> dict:
    """Run :func:`verify_model` over a family and merge into one report."""
    if isinstance(rs, int):
        rs = [rs]
    budget = default_budget() if budget is None else budget
    models, pairs, failures, warnings = [], [], [], []
    truncated = []
    stats: Counter = Counter()
    for spec in family:
        for r in rs:
            if not 0 < r < spec.d:
                continue
            res = verify_model(spec, r, primes, budget, evaluator)
            models.append(res["model"])
            pairs.extend(res["pairs"])
            failures.extend(res["failures"])
            warnings.extend(res["warnings"])
            if res["truncated"]:
                truncated.append({"model": spec.label(), "r": r, "primes": res["truncated"]})
            stats.update(res["stats"])
    nonempty_total = sum(stats[v] for v in ("ok", "unwitnessed", "no-fit", "insufficient-samples", "fail-degree"))
    summary = {
        "models": len(models),
        "pairs": len(pairs),
        "failures": len(failures),
        "unwitnessed": stats["unwitnessed"],
        "strata_reported": sum(len(p["strata"]) for p in pairs),
        "predicted_empty_checked": stats["predicted-empty-checked"],
        "verdicts": {k: v for k, v in sorted(stats.items())},
        "truncated": bool(truncated),
        "passed": not failures and not truncated,
    }
    summary["nonempty_strata"] = nonempty_total
    return {
        "config": {"family": [s.label() for s in family], "r": list(rs), "primes": sorted(primes),
                   "budget": budget},
        "models": models,
        "pairs": pairs,
        "failures": failures,
        "warnings": warnings,
        "truncated": truncated,
        "summary": summary,
    }
