"""Brill-Noether numerics for a curve with two components meeting at one node.

Everything here is integer bookkeeping on vanishing sequences: the
Eisenbud-Harris compatibility test, the translation of a pair of node
vanishing sequences into linked-Grassmannian dimensions, the fiber bound
that translation produces, and the two base cases (genus 0 via Pieri,
genus 1 via the exclusion rule).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .schubert import special_product, top_coefficient
from .strata import PairLocusSpec


class SequenceError(ValueError):
    pass


class OutOfScope(ValueError):
    pass


@dataclass(frozen=True)
class VanishingSeq:
    orders: tuple[int, ...]
    d: int

    def __post_init__(self):
        a = tuple(int(x) for x in self.orders)
        object.__setattr__(self, "orders", a)
        if not a:
            raise SequenceError("vanishing sequence is empty")
        if any(x < 0 or x > self.d for x in a):
            raise SequenceError(f"vanishing orders must lie in [0, {self.d}]")
        if any(a[j] >= a[j + 1] for j in range(len(a) - 1)):
            raise SequenceError("vanishing orders must be strictly increasing")

    @classmethod
    def parse(cls, text: str, d: int) -> "VanishingSeq":
        return cls(tuple(int(x) for x in text.split(",") if x.strip()), d)

    @classmethod
    def from_ramification(cls, alpha: Sequence[int], d: int) -> "VanishingSeq":
        return cls(tuple(a + j for j, a in enumerate(alpha)), d)

    @property
    def r(self) -> int:
        return len(self.orders) - 1

    @property
    def ramification(self) -> tuple[int, ...]:
        return tuple(a - j for j, a in enumerate(self.orders))

    def __getitem__(self, j: int) -> int:
        return self.orders[j]

    def __len__(self) -> int:
        return len(self.orders)

    def count_at_least(self, i: int) -> int:
        return sum(1 for a in self.orders if a >= i)

    def count_at_most(self, i: int) -> int:
        return sum(1 for a in self.orders if a <= i)


def check_ramification(alpha: Sequence[int], r: int, d: int) -> tuple[int, ...]:
    alpha = tuple(int(x) for x in alpha)
    if len(alpha) != r + 1:
        raise SequenceError(f"ramification sequence needs {r + 1} entries, got {len(alpha)}")
    if alpha[0] < 0 or any(alpha[j] > alpha[j + 1] for j in range(r)):
        raise SequenceError("ramification must be non-negative and non-decreasing")
    if alpha[-1] > d - r:
        raise SequenceError(f"ramification entries cannot exceed d - r = {d - r}")
    return alpha


def rho(g: int, r: int, d: int, ramification: Sequence[Sequence[int]] = ()) -> int:
    """Brill-Noether number with imposed ramification; may be negative."""
    if g < 0 or r < 0 or d < r:
        raise SequenceError("need g >= 0 and 0 <= r <= d")
    total = sum(sum(check_ramification(a, r, d)) for a in ramification)
    return (r + 1) * (d - r) - r * g - total


@dataclass(frozen=True)
class EHPair:
    r: int
    d: int
    aY: VanishingSeq
    aZ: VanishingSeq
    gY: int = 0
    gZ: int = 0

    def __post_init__(self):
        if len(self.aY) != self.r + 1 or len(self.aZ) != self.r + 1:
            raise SequenceError(f"both vanishing sequences need r+1 = {self.r + 1} entries")
        if self.aY.d != self.d or self.aZ.d != self.d:
            raise SequenceError("vanishing sequences were built for a different degree")
        if self.gY < 0 or self.gZ < 0:
            raise SequenceError("genera must be non-negative")

    @classmethod
    def build(cls, r: int, d: int, aY: Sequence[int], aZ: Sequence[int], gY: int = 0, gZ: int = 0) -> "EHPair":
        return cls(r, d, VanishingSeq(tuple(aY), d), VanishingSeq(tuple(aZ), d), gY, gZ)

    @property
    def g(self) -> int:
        return self.gY + self.gZ

    def node_sums(self) -> list[int]:
        return [self.aY[j] + self.aZ[self.r - j] for j in range(self.r + 1)]

    @property
    def compatible(self) -> bool:
        return all(s >= self.d for s in self.node_sums())

    @property
    def refined(self) -> bool:
        return all(s == self.d for s in self.node_sums())

    def to_json(self) -> dict:
        return {"r": self.r, "d": self.d, "aY": list(self.aY.orders), "aZ": list(self.aZ.orders),
                "gY": self.gY, "gZ": self.gZ}


def crude_excess(pair: EHPair) -> int:
    """sum_j (aY_j + aZ_{r-j} - d).  Meaningful as a dimension only for compatible pairs."""
    return sum(s - pair.d for s in pair.node_sums())


def eh_classify(pair: EHPair) -> dict:
    deficits = [j for j, s in enumerate(pair.node_sums()) if s < pair.d]
    if deficits:
        return {"class": "incompatible", "excess": None, "deficient_indices": deficits}
    excess = crude_excess(pair)
    return {"class": "refined" if excess == 0 else "crude", "excess": excess, "deficient_indices": []}


def _require_compatible(pair: EHPair):
    if not pair.compatible:
        bad = eh_classify(pair)["deficient_indices"]
        raise SequenceError(f"pair is not Eisenbud-Harris compatible (aY_j + aZ_(r-j) < d at j={bad})")


# --- translation into linked-Grassmannian numbers ---------------------------

@dataclass(frozen=True)
class TwistDictionary:
    pair: EHPair
    degDY: int
    degDZ: int
    n: int                       # n' = d + 1
    rank: int                    # r' = r + 1
    ambient: int                 # d' = d + deg D + 1 - g
    vbar1: dict[int, int]        # i = 1..n'
    vbarn: dict[int, int]        # i = 1..n'
    img_g: dict[int, int]        # i = 2..n'
    img_f: dict[int, int]        # i = 1..n'-1
    ztilde: dict[int, int]       # i = 2..n'-1
    V1n: int
    Vn1: int
    img_g_first: int             # dim g_{0,1}(E_1)
    img_f_last: int              # dim f_{n',n'-1}(E_n')
    margin: int

    @property
    def degD(self) -> int:
        return self.degDY + self.degDZ

    def hY(self) -> int:
        p = self.pair
        return p.d + self.degDY + 1 - p.gY

    def hZ(self) -> int:
        p = self.pair
        return p.d + self.degDZ + 1 - p.gZ

    def locus_spec(self, zbar: dict[int, int] | None = None) -> PairLocusSpec:
        """The same numbers in the form the pair-locus formulas consume.

        ``zbar`` is not fixed by the vanishing data; it defaults to
        ``max(dim Zbar1, dim Zbarn)``, the smallest value the filtration allows.
        """
        n = self.n
        img_g = dict(self.img_g)
        img_g[1] = self.img_g_first
        img_f = dict(self.img_f)
        img_f[n] = self.img_f_last
        base = PairLocusSpec(n=n, r=self.rank, vbar1=dict(self.vbar1), vbarn=dict(self.vbarn),
                             zbar={i: 0 for i in range(2, n)}, V1n=self.V1n, Vn1=self.Vn1,
                             img_g=img_g, img_f=img_f, ztilde=dict(self.ztilde),
                             ker_f1=self.img_g_first - self.Vn1, ker_gn1=self.img_f_last - self.V1n)
        if zbar is None:
            zbar = {i: max(base.z1(i), base.zn(i)) for i in range(2, n)}
        return PairLocusSpec(n=n, r=self.rank, vbar1=base.vbar1, vbarn=base.vbarn, zbar=dict(zbar),
                             V1n=self.V1n, Vn1=self.Vn1, img_g=img_g, img_f=img_f, ztilde=base.ztilde,
                             ker_f1=base.ker_f1, ker_gn1=base.ker_gn1)

    def to_json(self) -> dict:
        def arr(m):
            return {str(i): v for i, v in sorted(m.items())}
        return {"pair": self.pair.to_json(), "degDY": self.degDY, "degDZ": self.degDZ,
                "n_prime": self.n, "r_prime": self.rank, "d_prime": self.ambient,
                "Vbar1": arr(self.vbar1), "Vbarn": arr(self.vbarn), "img_g": arr(self.img_g),
                "img_f": arr(self.img_f), "Ztilde": arr(self.ztilde), "V1n": self.V1n, "Vn1": self.Vn1,
                "img_g_first": self.img_g_first, "img_f_last": self.img_f_last,
                "threshold_margin": self.margin}


def twist_threshold(pair: EHPair) -> tuple[int, int]:
    return 2 * pair.d + pair.gY + 1, 2 * pair.d + pair.gZ + 1


def translate(pair: EHPair, degDY: int, degDZ: int) -> TwistDictionary:
    tY, tZ = twist_threshold(pair)
    if degDY < tY or degDZ < tZ:
        raise SequenceError(f"twist degrees too small: need deg D^Y >= {tY} and deg D^Z >= {tZ}, "
                            f"got {degDY}, {degDZ}")
    r, d = pair.r, pair.d
    n = d + 1
    hY = d + degDY + 1 - pair.gY
    hZ = d + degDZ + 1 - pair.gZ
    vbar1 = {i: pair.aY.count_at_least(i - 1) for i in range(1, n + 1)}
    vbarn = {i: pair.aZ.count_at_least(n - i) for i in range(1, n + 1)}
    img_g = {i: hY - i + 1 for i in range(2, n + 1)}
    img_f = {i: hZ - (n - i) for i in range(1, n)}
    ztilde = {i: 1 for i in range(2, n)}
    V1n = pair.aZ.count_at_most(0)
    Vn1 = pair.aY.count_at_most(0)
    return TwistDictionary(
        pair=pair, degDY=degDY, degDZ=degDZ, n=n, rank=r + 1,
        ambient=d + degDY + degDZ + 1 - pair.g,
        vbar1=vbar1, vbarn=vbarn, img_g=img_g, img_f=img_f, ztilde=ztilde, V1n=V1n, Vn1=Vn1,
        img_g_first=hY - 1 + Vn1, img_f_last=hZ - 1 + V1n,
        margin=min(degDY - tY, degDZ - tZ),
    )


def fiber_bound_eh(pair: EHPair, degDY: int | None = None, degDZ: int | None = None) -> int:
    """Upper bound on the fiber of crude limit series over an EH pair."""
    _require_compatible(pair)
    if degDY is not None or degDZ is not None:
        tY, tZ = twist_threshold(pair)
        translate(pair, tY if degDY is None else degDY, tZ if degDZ is None else degDZ)
    return crude_excess(pair)


@dataclass
class IdentityReport:
    holds: bool
    first_sum: int
    target: int
    excess: int
    rewritten_sum: int
    delta_Y: int
    delta_Z: int
    v_terms: int
    cap_terms: dict[str, int]
    dictionary_bound: int
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"holds": self.holds, "first_sum": self.first_sum, "target": self.target,
                "excess": self.excess, "rewritten_sum": self.rewritten_sum, "delta_Y": self.delta_Y,
                "delta_Z": self.delta_Z, "v_terms": self.v_terms, "cap_terms": self.cap_terms,
                "dictionary_bound": self.dictionary_bound, "notes": self.notes}

    def __bool__(self) -> bool:
        return self.holds


def _feasible_zbar(spec: PairLocusSpec, i: int) -> list[int]:
    lo = max(spec.z1(i), spec.zn(i))
    hi = min(spec.z1(i) + spec.zn(i), spec.ztilde[i])
    return list(range(lo, hi + 1))


def verify_crude_identity(pair: EHPair, degDY: int, degDZ: int) -> IdentityReport:
    """Recompute the fiber bound through the dictionary and compare with the excess."""
    _require_compatible(pair)
    tw = translate(pair, degDY, degDZ)
    spec = tw.locus_spec()
    n, r1 = tw.n, tw.rank
    first = 0
    for i in range(1, n + 1):
        first += spec.z1(i) * (spec.g_dim(i) - spec.vb1(i)) + spec.zn(i) * (spec.f_dim(i) - spec.vbn(i))
    excess = crude_excess(pair)
    target = r1 * (tw.ambient - r1) - excess
    # per-j form, with delta terms measuring the boundary discrepancy
    r = pair.r
    rewritten = sum(tw.hY() - pair.aY[j] - (r + 1 - j) for j in range(r + 1))
    rewritten += sum(tw.hZ() - pair.aZ[j] - (r + 1 - j) for j in range(r + 1))
    delta_Y = spec.z1(1) * (spec.g_dim(1) - tw.hY())
    delta_Z = spec.zn(n) * (spec.f_dim(n) - tw.hZ())
    v_terms = spec.V1n * (spec.vb1(n) - spec.V1n) + spec.Vn1 * (spec.vbn(1) - spec.Vn1)
    notes = []
    cap_terms = {}
    for i in range(2, n):
        worst = 0
        for zb in _feasible_zbar(spec, i):
            zcap = spec.z1(i) + spec.zn(i) - zb
            term = zcap * (spec.ztilde[i] - zb)
            if term:
                worst = term
        cap_terms[str(i)] = worst
        if not _feasible_zbar(spec, i):
            notes.append(f"no Zbar dimension is compatible with Ztilde = 1 at i={i}")
    bound = r1 * (tw.ambient - r1) - first - v_terms + sum(cap_terms.values())
    holds = (first == target and rewritten + delta_Y + delta_Z == first and delta_Y == 0 and delta_Z == 0
             and v_terms == 0 and not any(cap_terms.values()) and bound == excess and not notes)
    return IdentityReport(holds, first, target, excess, rewritten, delta_Y, delta_Z, v_terms,
                          cap_terms, bound, notes)


# --- Brill-Noether additivity ----------------------------------------------

def rho_additivity(pair: EHPair, points_Y: Sequence[Sequence[int]] = (),
                   points_Z: Sequence[Sequence[int]] = ()) -> dict:
    """rho^X = rho^Y + rho^Z + sum_j (alpha^Y_j + alpha^Z_{r-j} - (d - r)).

    rho^Y and rho^Z include the node ramification; rho^X only the marked points.
    """
    r, d = pair.r, pair.d
    alY, alZ = pair.aY.ramification, pair.aZ.ramification
    rho_Y = rho(pair.gY, r, d, list(points_Y) + [alY])
    rho_Z = rho(pair.gZ, r, d, list(points_Z) + [alZ])
    rho_X = rho(pair.g, r, d, list(points_Y) + list(points_Z))
    node = sum(alY[j] + alZ[r - j] - (d - r) for j in range(r + 1))
    return {"rho_X": rho_X, "rho_Y": rho_Y, "rho_Z": rho_Z, "node_term": node,
            "excess": crude_excess(pair), "holds": rho_X == rho_Y + rho_Z + node and node == crude_excess(pair)}


# --- base cases --------------------------------------------------------------

def _is_special_shape(alpha: Sequence[int], r: int) -> bool:
    return tuple(alpha) == (0,) + (1,) * r


def genus0_nonempty(r: int, d: int, points: int | Sequence[Sequence[int]]) -> dict:
    """Linear series on P^1 with ramification (0,1,...,1) at general points.

    Each point contributes the special class sigma_r in the Grassmannian of
    (d - r)-planes, a box of (d - r) rows and (r + 1) columns.  The result
    is tagged as a characteristic-zero statement.
    """
    if r < 0 or d < r:
        raise SequenceError("need 0 <= r <= d")
    if isinstance(points, int):
        if points < 0:
            raise SequenceError("number of points must be non-negative")
        k = points
    else:
        k = 0
        for alpha in points:
            alpha = check_ramification(alpha, r, d)
            if all(a == 0 for a in alpha):
                continue
            if not _is_special_shape(alpha, r):
                raise OutOfScope(f"ramification {list(alpha)} is out of scope: only 0,1,...,1 is supported")
            k += 1
    rows, cols = d - r, r + 1
    value = rho(0, r, d, [(0,) + (1,) * r] * k)
    out = {"r": r, "d": d, "points": k, "rho": value, "characteristic": "0"}
    if value < 0:
        out.update(nonempty=False, intersection_number=None)
        return out
    product = special_product([r] * k, rows, cols)
    out["nonempty"] = bool(product)
    out["intersection_number"] = top_coefficient(product, rows, cols) if value == 0 else None
    out["class"] = {",".join(map(str, lam)): c for lam, c in product.items()} if value > 0 else None
    return out


def genus1_case(a: VanishingSeq | Sequence[int], r: int, d: int) -> dict:
    """Single marked point on a genus-one curve."""
    seq = a if isinstance(a, VanishingSeq) else VanishingSeq(tuple(a), d)
    if seq.r != r or seq.d != d:
        raise SequenceError("vanishing sequence does not match (r, d)")
    value = rho(1, r, d, [seq.ramification])
    if value < 0:
        return {"nonempty": False, "dimension": None, "rho": value,
                "diagnostic": "rho < 0: empty by the dimension statement"}
    excluded = r >= 1 and seq[r] == d and seq[r - 1] == d - 1
    return {"nonempty": not excluded, "dimension": None if excluded else value, "rho": value,
            "diagnostic": "excluded: a_r = d and a_(r-1) = d - 1" if excluded else None}


# --- gluing at the node ----------------------------------------------------

@dataclass(frozen=True)
class GluingProfile:
    pair: EHPair
    dY: tuple[int, ...]
    dZ: tuple[int, ...]
    sums: tuple[int, ...]
    allowed: frozenset[int]     # indices where a section is nonvanishing at the node on Y or Z
    within_lemma_hypothesis: bool

    @property
    def condition(self) -> bool:
        top = self.pair.r + 2
        return all(s <= top for s in self.sums) and all(i in self.allowed for i, s in enumerate(self.sums) if s == top)

    @property
    def verdict(self) -> str:
        if not self.condition:
            return "condition not established"
        return "unique" if self.within_lemma_hypothesis else "unique (sufficient condition, outside lemma hypothesis)"

    def to_json(self) -> dict:
        return {"pair": self.pair.to_json(), "dY": list(self.dY), "dZ": list(self.dZ), "sums": list(self.sums),
                "allowed_indices": sorted(self.allowed), "within_lemma_hypothesis": self.within_lemma_hypothesis,
                "condition": self.condition, "verdict": self.verdict}


def gluing_profile(pair: EHPair) -> GluingProfile:
    _require_compatible(pair)
    d, r = pair.d, pair.r
    dY = tuple(pair.aY.count_at_least(i) for i in range(d + 1))
    dZ = tuple(pair.aZ.count_at_least(d - i) for i in range(d + 1))
    sums = tuple(y + z for y, z in zip(dY, dZ))
    allowed = frozenset(pair.aY.orders) | frozenset(d - pair.aZ[r - j] for j in range(r + 1))
    over = [s - d for s in pair.node_sums()]
    within = all(e in (0, 1) for e in over) and sum(over) <= 1
    return GluingProfile(pair, dY, dZ, sums, allowed, within)


def unique_smoothing(pair: EHPair) -> bool:
    return gluing_profile(pair).condition


def refined_case_split(pair: EHPair) -> tuple[int, ...]:
    """The r+1 / r+2 split for refined pairs, computed from the vanishing orders alone."""
    d, r = pair.d, pair.r
    hits = {pair.aY[j] for j in range(r + 1) if pair.aY[j] == d - pair.aZ[r - j]}
    return tuple(r + 2 if i in hits else r + 1 for i in range(d + 1))


# --- seeded generators -------------------------------------------------------

def random_sequence(rng: random.Random, r: int, d: int) -> VanishingSeq:
    return VanishingSeq(tuple(sorted(rng.sample(range(d + 1), r + 1))), d)


def random_compatible_pair(rng: random.Random, max_r: int = 3, max_d: int = 8, max_g: int = 3) -> EHPair:
    while True:
        r = rng.randint(0, max_r)
        d = rng.randint(max(r, 1), max_d)
        if d < r:
            continue
        aY = random_sequence(rng, r, d)
        # lower bounds aZ_{r-j} >= d - aY_j, then a random strictly increasing lift
        low = [d - aY[r - k] for k in range(r + 1)]
        choice = []
        prev = -1
        ok = True
        for k in range(r + 1):
            lo = max(low[k], prev + 1)
            hi = d - (r - k)
            if lo > hi:
                ok = False
                break
            prev = rng.randint(lo, min(hi, lo + 2))
            choice.append(prev)
        if not ok:
            continue
        return EHPair(r, d, aY, VanishingSeq(tuple(choice), d), rng.randint(0, max_g), rng.randint(0, max_g))


def random_refined_pair(rng: random.Random, max_r: int = 3, max_d: int = 8, max_g: int = 3) -> EHPair:
    r = rng.randint(0, max_r)
    d = rng.randint(max(r, 1), max_d)
    aY = random_sequence(rng, r, d)
    aZ = tuple(d - aY[r - k] for k in range(r + 1))
    return EHPair(r, d, aY, VanishingSeq(aZ, d), rng.randint(0, max_g), rng.randint(0, max_g))


def random_excess_one_pair(rng: random.Random, max_r: int = 3, max_d: int = 8, max_g: int = 3) -> EHPair:
    """Refined except at one j0, where aY_j0 + aZ_(r-j0) = d + 1."""
    while True:
        base = random_refined_pair(rng, max_r, max_d, max_g)
        r, d = base.r, base.d
        j0 = rng.randint(0, r)
        aY = list(base.aY.orders)
        aZ = list(base.aZ.orders)
        side = rng.choice("YZ")
        if side == "Y":
            aY[j0] += 1
        else:
            aZ[r - j0] += 1
        try:
            pair = EHPair.build(r, d, aY, aZ, base.gY, base.gZ)
        except SequenceError:
            continue
        return pair
