"""Closed-form stratum, pair-locus and fiber-dimension formulas.

All arithmetic is exact integer arithmetic on dimensions.  Index conventions
follow the chain: strata are prescribed for i = 2..n-1, and the boundary values
``dV1[n] = dim V_{1,n}`` and ``dVn[1] = dim V_{n,1}`` are read from the pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .invariants import PairInvariants

CONDITIONS = ("c1", "c2", "c3", "c4", "c5", "c6")


@dataclass(frozen=True)
class StratumSpec:
    """Prescribed (dim V_{1,i}, dim V_{n,i}, dim Z_i) for i = 2..n-1."""

    triples: tuple[tuple[int, int, int], ...]

    @property
    def n(self) -> int:
        return len(self.triples) + 2

    def dV1(self, i: int) -> int:
        return self.triples[i - 2][0]

    def dVn(self, i: int) -> int:
        return self.triples[i - 2][1]

    def dZ(self, i: int) -> int:
        return self.triples[i - 2][2]

    @classmethod
    def parse(cls, text: str) -> "StratumSpec":
        """``"1,1,0;0,1,0"`` -> one triple per interior index."""
        triples = []
        for part in text.split(";"):
            part = part.strip()
            if not part:
                continue
            vals = tuple(int(x) for x in part.split(","))
            if len(vals) != 3:
                raise ValueError(f"stratum triple {part!r} must have three entries")
            triples.append(vals)
        return cls(tuple(triples))

    def __str__(self) -> str:
        return ";".join(",".join(map(str, t)) for t in self.triples)


def all_stratum_specs(n: int, r: int) -> Iterator[StratumSpec]:
    one = list(itertools.product(range(r + 1), repeat=3))
    for combo in itertools.product(one, repeat=n - 2):
        yield StratumSpec(tuple(combo))


@dataclass(frozen=True)
class StratumReport:
    spec: StratumSpec
    conditions: dict[str, dict[int, bool]]
    nonempty: bool
    dimension: int | None

    def to_json(self) -> dict:
        return {
            "spec": str(self.spec),
            "conditions": {c: {str(i): v for i, v in per.items()} for c, per in self.conditions.items()},
            "nonempty": self.nonempty,
            "dimension": self.dimension,
        }


def _stratum_terms(inv: PairInvariants, spec: StratumSpec, r: int):
    n = inv.n
    if spec.n != n:
        raise ValueError(f"stratum spec has {len(spec.triples)} triples; chain needs {n - 2}")
    if any(not 0 <= x <= r for t in spec.triples for x in t):
        raise ValueError("stratum entries must lie in 0..r")

    def dV1(i):
        return inv.V1n.dim if i == n else spec.dV1(i)

    def dVn(i):
        return inv.Vn1.dim if i == 1 else spec.dVn(i)

    return dV1, dVn


def stratum_report(inv: PairInvariants, spec: StratumSpec, r: int | None = None) -> StratumReport:
    r = inv.r if r is None else r
    if r != inv.r:
        raise ValueError("r does not match the pair")
    n = inv.n
    dV1, dVn = _stratum_terms(inv, spec, r)
    conds: dict[str, dict[int, bool]] = {c: {} for c in CONDITIONS}
    dim = 0
    for i in range(2, n):
        dz = spec.dZ(i)
        cap = inv.zcap_dim(i)
        vb1_next = inv.vbar1[i + 1].dim
        vbn_prev = inv.vbarn[i - 1].dim
        conds["c1"][i] = dz <= cap
        conds["c2"][i] = vb1_next >= dV1(i) - dz >= dV1(i + 1)
        conds["c3"][i] = vbn_prev >= dVn(i) - dz >= dVn(i - 1)
        conds["c4"][i] = dV1(i) + dVn(i) - dz >= r
        conds["c5"][i] = r >= dV1(i + 1) + dVn(i)
        conds["c6"][i] = r >= dV1(i) + dVn(i - 1)
        dim += (dz * (cap - dz)
                + (dV1(i) - dV1(i + 1)) * (vb1_next - dV1(i) + dz)
                + (dVn(i) - dVn(i - 1)) * (vbn_prev - dVn(i) + dz)
                + (r - dV1(i + 1) - dVn(i - 1)) * (dV1(i) + dVn(i) - dz - r))
    nonempty = all(all(per.values()) for per in conds.values())
    return StratumReport(spec, conds, nonempty, dim if nonempty else None)


StratumEvaluator = Callable[[PairInvariants, StratumSpec], StratumReport]


@dataclass(frozen=True)
class PairLocusSpec:
    """Prescribed invariants of pairs plus the ambient data of the chain.

    ``vbar1`` and ``vbarn`` are indexed 1..n; ``zbar``, ``ztilde`` 2..n-1;
    ``img_g`` and ``img_f`` hold the raw images for 1..n (entries 1 and n
    are overridden by the boundary conventions where the formula asks).
    """

    n: int
    r: int
    vbar1: dict[int, int]
    vbarn: dict[int, int]
    zbar: dict[int, int]
    V1n: int
    Vn1: int
    img_g: dict[int, int]
    img_f: dict[int, int]
    ztilde: dict[int, int]
    ker_f1: int
    ker_gn1: int

    @classmethod
    def from_invariants(cls, inv: PairInvariants) -> "PairLocusSpec":
        n = inv.n
        return cls(
            n=n, r=inv.r,
            vbar1={i: inv.vbar1[i].dim for i in range(1, n + 1)},
            vbarn={i: inv.vbarn[i].dim for i in range(1, n + 1)},
            zbar={i: inv.zbar_dim(i) for i in range(2, n)},
            V1n=inv.V1n.dim, Vn1=inv.Vn1.dim,
            img_g=dict(inv.img_g_dim), img_f=dict(inv.img_f_dim),
            ztilde=dict(inv.ztilde_dim), ker_f1=inv.ker_f1, ker_gn1=inv.ker_gn1,
        )

    # conventions: Vbar1[n+1] = Vbarn[0] = 0, Vbar1[1] = Vbarn[n] = r
    def vb1(self, i: int) -> int:
        if i == self.n + 1:
            return 0
        if i == 1:
            return self.r
        return self.vbar1[i]

    def vbn(self, i: int) -> int:
        if i == 0:
            return 0
        if i == self.n:
            return self.r
        return self.vbarn[i]

    def g_dim(self, i: int) -> int:
        return self.Vn1 + self.ker_f1 if i == 1 else self.img_g[i]

    def f_dim(self, i: int) -> int:
        return self.V1n + self.ker_gn1 if i == self.n else self.img_f[i]

    def z1(self, i: int) -> int:
        return self.vb1(i) - self.vb1(i + 1)

    def zn(self, i: int) -> int:
        return self.vbn(i) - self.vbn(i - 1)

    def zcap(self, i: int) -> int:
        return self.z1(i) + self.zn(i) - self.zbar[i]


@dataclass(frozen=True)
class PairLocusReport:
    valid: bool
    nonempty: bool
    dimension: int | None
    conditions: dict[str, dict[int, bool]] = field(default_factory=dict)
    reason: str | None = None

    def to_json(self) -> dict:
        return {"valid": self.valid, "nonempty": self.nonempty, "dimension": self.dimension,
                "conditions": {c: {str(i): v for i, v in per.items()} for c, per in self.conditions.items()},
                "reason": self.reason}


def pair_locus_dimension(spec: PairLocusSpec) -> int:
    n = spec.n
    total = 0
    for i in range(1, n + 1):
        total += spec.z1(i) * (spec.g_dim(i) - spec.vb1(i)) + spec.zn(i) * (spec.f_dim(i) - spec.vbn(i))
    total += spec.V1n * (spec.vb1(n) - spec.V1n) + spec.Vn1 * (spec.vbn(1) - spec.Vn1)
    for i in range(2, n):
        total -= spec.zcap(i) * (spec.ztilde[i] - spec.zbar[i])
    return total


def pair_locus_report(spec: PairLocusSpec, r: int | None = None) -> PairLocusReport:
    r = spec.r if r is None else r
    if r != spec.r:
        raise ValueError("r does not match the locus spec")
    n = spec.n
    for i in range(1, n + 1):
        if spec.z1(i) < 0 or spec.zn(i) < 0:
            return PairLocusReport(False, False, None, reason=f"negative Zbar dimension at i={i}")
    for i in range(2, n):
        if spec.zcap(i) < 0:
            return PairLocusReport(False, False, None, reason=f"negative Zbar1 & Zbarn dimension at i={i}")
    conds: dict[str, dict[int, bool]] = {f"p{j}": {} for j in range(1, 10)}
    for i in range(2, n):
        z1, zn, zc, zt = spec.z1(i), spec.zn(i), spec.zcap(i), spec.ztilde[i]
        conds["p1"][i] = zc <= z1 <= zt
        conds["p2"][i] = zc <= zn <= zt
        conds["p3"][i] = z1 + zn <= zt + zc
        conds["p6"][i] = spec.vb1(i + 1) <= spec.vb1(i) <= spec.g_dim(i) + z1 - zt
        conds["p7"][i] = spec.vbn(i - 1) <= spec.vbn(i) <= spec.f_dim(i) + zn - zt
    conds["p4"][1] = spec.Vn1 <= spec.vbn(1) <= spec.img_f[1]
    conds["p5"][n] = spec.V1n <= spec.vb1(n) <= spec.img_g[n]
    conds["p8"][1] = spec.vb1(2) + spec.Vn1 <= spec.vb1(1) <= spec.g_dim(1)
    conds["p9"][n] = spec.vbn(n - 1) + spec.V1n <= spec.vbn(n) <= spec.f_dim(n)
    nonempty = all(all(per.values()) for per in conds.values())
    return PairLocusReport(True, nonempty, pair_locus_dimension(spec) if nonempty else None, conds)


def fiber_bound(inv: PairInvariants, r: int | None = None, d: int | None = None) -> int:
    """Upper bound on every stratum dimension in the fiber over the pair."""
    r = inv.r if r is None else r
    d = inv.chain.d if d is None else d
    spec = PairLocusSpec.from_invariants(inv)
    n = inv.n
    bound = r * (d - r)
    bound -= inv.V1n.dim * (inv.vbar1[n].dim - inv.V1n.dim)
    bound -= inv.Vn1.dim * (inv.vbarn[1].dim - inv.Vn1.dim)
    for i in range(2, n):
        bound += inv.zcap_dim(i) * (inv.ztilde_dim[i] - inv.zbar_dim(i))
    for i in range(1, n + 1):
        bound -= spec.z1(i) * (spec.g_dim(i) - spec.vb1(i)) + spec.zn(i) * (spec.f_dim(i) - spec.vbn(i))
    return bound
