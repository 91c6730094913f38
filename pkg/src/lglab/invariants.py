"""Invariants of a pair (V_1, V_n) and of the linked points above it.

For a fixed pair the intermediate spaces of any linked point embed into
``Vbar1[i] (+) Vbarn[i]`` via ``(g_{i-1,1}, f_{i,n-1})``.  The cokernel of the
largest such embedding is ``Zbar[i]``; it is represented as a
:class:`~lglab.linalg.Quotient` of the external direct sum, written in the
canonical coordinates of the two summands.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .chain import LinkedChain, require_analysis_ready
from .linalg import Matrix, Quotient, Subspace, image, preimage, push, quotient_by


@dataclass(frozen=True)
class PairConfig:
    chain: LinkedChain
    r: int
    V1: Subspace
    Vn: Subspace

    def __post_init__(self):
        c = self.chain
        if not 0 < self.r < c.d:
            raise ValueError(f"need 0 < r < d, got r={self.r}, d={c.d}")
        for name, v in (("V1", self.V1), ("Vn", self.Vn)):
            if v.p != c.p or v.ambient != c.d:
                raise ValueError(f"{name} must be a subspace of F_{c.p}^{c.d}")
            if v.dim != self.r:
                raise ValueError(f"{name} has dimension {v.dim}, expected r={self.r}")


def admissible(pair: PairConfig) -> bool:
    """f_{1,n-1}(V_1) <= V_n and g_{n-1,1}(V_n) <= V_1."""
    fwd, bwd = _end_to_end(pair.chain)
    return image(fwd, pair.V1) <= pair.Vn and image(bwd, pair.Vn) <= pair.V1


@lru_cache(maxsize=64)
def _end_to_end(c: LinkedChain) -> tuple[Matrix, Matrix]:
    return c.f_comp(1, c.n - 1), c.g_comp(c.n - 1, 1)


class InadmissiblePair(ValueError):
    pass


@dataclass(frozen=True)
class PairInvariants:
    pair: PairConfig
    to_first: dict[int, Matrix]      # g_{i-1,1}: E_i -> E_1
    to_last: dict[int, Matrix]       # f_{i,n-1}: E_i -> E_n
    vbar1: dict[int, Subspace]
    vbarn: dict[int, Subspace]
    V1n: Subspace
    Vn1: Subspace
    K: dict[int, Subspace]           # g_{i-1,1}^{-1}(V_1) & f_{i,n-1}^{-1}(V_n) inside E_i
    zbar: dict[int, Quotient]
    zbar1: dict[int, Subspace]
    zbarn: dict[int, Subspace]
    ztilde_dim: dict[int, int]
    img_g_dim: dict[int, int]        # dim g_{i-1,1}(E_i); i = 1 gives d
    img_f_dim: dict[int, int]        # dim f_{i,n-1}(E_i); i = n gives d
    ker_f1: int
    ker_gn1: int

    @property
    def chain(self) -> LinkedChain:
        return self.pair.chain

    @property
    def n(self) -> int:
        return self.pair.chain.n

    @property
    def r(self) -> int:
        return self.pair.r

    def zbar_dim(self, i: int) -> int:
        return self.zbar[i].target_dim

    def zcap_dim(self, i: int) -> int:
        """dim(Zbar1[i] & Zbarn[i]); the two always span Zbar[i]."""
        return self.zbar1[i].dim + self.zbarn[i].dim - self.zbar_dim(i)

    def sum_coords(self, i: int, x: Sequence[int]) -> tuple[int, ...]:
        """Image of x in E_i inside the direct sum Vbar1[i] (+) Vbarn[i]."""
        a = self.vbar1[i].coordinates(self.to_first[i].apply(x))
        b = self.vbarn[i].coordinates(self.to_last[i].apply(x))
        return a + b

    def dims(self) -> dict:
        n = self.n
        mid = range(2, n)
        return {
            "r": self.r, "n": n, "d": self.chain.d,
            "Vbar1": [self.vbar1[i].dim for i in range(1, n + 1)],
            "Vbarn": [self.vbarn[i].dim for i in range(1, n + 1)],
            "V1n": self.V1n.dim, "Vn1": self.Vn1.dim,
            "Zbar": [self.zbar_dim(i) for i in mid],
            "Zbar1": [self.zbar1[i].dim for i in mid],
            "Zbarn": [self.zbarn[i].dim for i in mid],
            "Zcap": [self.zcap_dim(i) for i in mid],
            "Ztilde": [self.ztilde_dim[i] for i in mid],
            "img_g": [self.img_g_dim[i] for i in range(1, n + 1)],
            "img_f": [self.img_f_dim[i] for i in range(1, n + 1)],
            "ker_f1": self.ker_f1, "ker_gn1": self.ker_gn1,
        }

    def profile_key(self) -> tuple:
        """Hashable summary of every dimension the closed formulas consume."""
        d = self.dims()
        return tuple((k, tuple(v) if isinstance(v, list) else v) for k, v in sorted(d.items()))

    def to_json(self) -> dict:
        n = self.n
        out = {"dims": self.dims()}
        out["spaces"] = {
            "Vbar1": {str(i): self.vbar1[i].to_json() for i in range(1, n + 1)},
            "Vbarn": {str(i): self.vbarn[i].to_json() for i in range(1, n + 1)},
            "V1n": self.V1n.to_json(), "Vn1": self.Vn1.to_json(),
            "Zbar_kernel": {str(i): self.zbar[i].kernel.to_json() for i in range(2, n)},
            "Zbar1": {str(i): self.zbar1[i].to_json() for i in range(2, n)},
            "Zbarn": {str(i): self.zbarn[i].to_json() for i in range(2, n)},
        }
        return out


@lru_cache(maxsize=64)
def _chain_maps(chain: LinkedChain):
    # per-chain data shared by every pair; the chain is validated once here
    require_analysis_ready(chain)
    n = chain.n
    to_first = {i: chain.g_comp(i - 1, 1) for i in range(1, n + 1)}
    to_last = {i: chain.f_comp(i, n - 1) for i in range(1, n + 1)}
    img_g = {i: image(to_first[i]) for i in range(1, n + 1)}
    img_f = {i: image(to_last[i]) for i in range(1, n + 1)}
    return to_first, to_last, img_g, img_f


@lru_cache(maxsize=8192)
def _first_side(chain: LinkedChain, V1: Subspace):
    # pieces depending on V_1 alone
    n = chain.n
    to_first, to_last, img_g, _ = _chain_maps(chain)
    vbar1 = {i: V1 & img_g[i] for i in range(1, n + 1)}
    pre = {i: preimage(to_first[i], V1) for i in range(2, n)}
    return vbar1, pre, image(to_last[1], V1)


@lru_cache(maxsize=8192)
def _last_side(chain: LinkedChain, Vn: Subspace):
    n = chain.n
    to_first, to_last, _, img_f = _chain_maps(chain)
    vbarn = {i: Vn & img_f[i] for i in range(1, n + 1)}
    pre = {i: preimage(to_last[i], Vn) for i in range(2, n)}
    return vbarn, pre, image(to_first[n], Vn)


def pair_invariants(pair: PairConfig) -> PairInvariants:
    chain = pair.chain
    if not admissible(pair):
        raise InadmissiblePair("pair is not admissible: f_{1,n-1}(V_1) <= V_n or g_{n-1,1}(V_n) <= V_1 fails")
    n, d, p = chain.n, chain.d, chain.p
    V1, Vn = pair.V1, pair.Vn
    to_first, to_last, img_g, img_f = _chain_maps(chain)
    vbar1, pre1, Vn1 = _first_side(chain, V1)
    vbarn, pren, V1n = _last_side(chain, Vn)
    K, zbar, zbar1, zbarn, ztilde = {}, {}, {}, {}, {}
    for i in range(2, n):
        K[i] = pre1[i] & pren[i]
        a, b = vbar1[i].dim, vbarn[i].dim
        emb = []
        for x in K[i].rows:
            emb.append(vbar1[i].coordinates(to_first[i].apply(x)) + vbarn[i].coordinates(to_last[i].apply(x)))
        q = quotient_by(a + b, Subspace.span(p, a + b, emb))
        zbar[i] = q
        zbar1[i] = push(q, Subspace.coordinate(p, a + b, range(a)))
        zbarn[i] = push(q, Subspace.coordinate(p, a + b, range(a, a + b)))
        ztilde[i] = img_f[i].dim + img_g[i].dim - d
    return PairInvariants(
        pair=pair, to_first=to_first, to_last=to_last, vbar1=vbar1, vbarn=vbarn,
        V1n=V1n, Vn1=Vn1, K=K, zbar=zbar, zbar1=zbar1, zbarn=zbarn, ztilde_dim=ztilde,
        img_g_dim={i: img_g[i].dim for i in img_g}, img_f_dim={i: img_f[i].dim for i in img_f},
        ker_f1=d - chain.fwd(1).rank(), ker_gn1=d - chain.bwd(n - 1).rank(),
    )


def filtration_checks(inv: PairInvariants) -> dict[str, bool]:
    """Filtration containments, the exact sequences, and the two readings of Vbar."""
    n, chain = inv.n, inv.chain
    out = {}
    out["V1n <= Vbar1[n]"] = inv.V1n <= inv.vbar1[n]
    out["Vn1 <= Vbarn[1]"] = inv.Vn1 <= inv.vbarn[1]
    out["Vbar1 decreasing"] = all(inv.vbar1[i + 1] <= inv.vbar1[i] for i in range(1, n))
    out["Vbarn increasing"] = all(inv.vbarn[i - 1] <= inv.vbarn[i] for i in range(2, n + 1))
    out["Vbar1 ends"] = inv.vbar1[1] == inv.pair.V1
    out["Vbarn ends"] = inv.vbarn[n] == inv.pair.Vn
    ok_seq = ok_two = ok_span = True
    for i in range(2, n):
        ok_seq &= inv.zbar1[i].dim == inv.vbar1[i].dim - inv.vbar1[i + 1].dim
        ok_seq &= inv.zbarn[i].dim == inv.vbarn[i].dim - inv.vbarn[i - 1].dim
        ok_two &= inv.vbar1[i + 1] == inv.vbar1[i] & image(chain.g_comp(i, 1))
        ok_two &= inv.vbarn[i - 1] == inv.vbarn[i] & image(chain.f_comp(i - 1, n - 1))
        ok_span &= (inv.zbar1[i] + inv.zbarn[i]).dim == inv.zbar_dim(i)
    out["exact sequences"] = ok_seq
    out["Vbar recursion"] = ok_two
    out["Zbar1 + Zbarn = Zbar"] = ok_span
    return out


@dataclass(frozen=True)
class PointInvariants:
    V1i: dict[int, Subspace]
    Vni: dict[int, Subspace]
    Zi: dict[int, Subspace]

    @property
    def V1i_dim(self) -> dict[int, int]:
        return {i: s.dim for i, s in self.V1i.items()}

    @property
    def Vni_dim(self) -> dict[int, int]:
        return {i: s.dim for i, s in self.Vni.items()}

    @property
    def Zi_dim(self) -> dict[int, int]:
        return {i: s.dim for i, s in self.Zi.items()}

    def key(self) -> tuple[tuple[int, int, int], ...]:
        """Stratum key: (dim V_{1,i}, dim V_{n,i}, dim Z_i) for i = 2..n-1."""
        return tuple((self.V1i[i].dim, self.Vni[i].dim, self.Zi[i].dim) for i in sorted(self.V1i))


def check_linked(chain: LinkedChain, spaces: Sequence[Subspace], r: int | None = None):
    if len(spaces) != chain.n:
        raise ValueError(f"expected {chain.n} subspaces, got {len(spaces)}")
    r = spaces[0].dim if r is None else r
    for i, v in enumerate(spaces, start=1):
        if v.dim != r or v.ambient != chain.d or v.p != chain.p:
            raise ValueError(f"V_{i} is not an {r}-dimensional subspace of F_{chain.p}^{chain.d}")
    for i in range(1, chain.n):
        if not image(chain.fwd(i), spaces[i - 1]) <= spaces[i]:
            raise ValueError(f"tuple not linked at index {i}: f_{i}(V_{i}) is not inside V_{i + 1}")
        if not image(chain.bwd(i), spaces[i]) <= spaces[i - 1]:
            raise ValueError(f"tuple not linked at index {i}: g_{i}(V_{i + 1}) is not inside V_{i}")


def _direct_sum_part(inv: PairInvariants, i: int, first: Subspace | None, last: Subspace | None) -> Subspace:
    p = inv.chain.p
    a, b = inv.vbar1[i].dim, inv.vbarn[i].dim
    vecs = []
    if first is not None:
        vecs += [inv.vbar1[i].coordinates(v) + (0,) * b for v in first.rows]
    if last is not None:
        vecs += [(0,) * a + inv.vbarn[i].coordinates(v) for v in last.rows]
    return Subspace.span(p, a + b, vecs)


def point_invariants(chain: LinkedChain, spaces: Sequence[Subspace],
                     inv: PairInvariants | None = None, validate: bool = True) -> PointInvariants:
    if validate:
        check_linked(chain, spaces)
    if inv is None:
        inv = pair_invariants(PairConfig(chain, spaces[0].dim, spaces[0], spaces[-1]))
    elif validate and (inv.pair.V1 != spaces[0] or inv.pair.Vn != spaces[-1]):
        raise ValueError("tuple does not lie over the given pair")
    V1i, Vni, Zi = {}, {}, {}
    for i in range(2, chain.n):
        V1i[i] = image(inv.to_first[i], spaces[i - 1])
        Vni[i] = image(inv.to_last[i], spaces[i - 1])
        Zi[i] = push(inv.zbar[i], _direct_sum_part(inv, i, V1i[i], Vni[i]))
    return PointInvariants(V1i, Vni, Zi)


@dataclass(frozen=True)
class LemmaCheck:
    passed: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.passed


def verify_lemma1(chain: LinkedChain, spaces: Sequence[Subspace], inv: PairInvariants | None = None) -> LemmaCheck:
    """V_i embeds into K_i and, through (g_{i-1,1}, f_{i,n-1}), into the direct sum."""
    check_linked(chain, spaces)
    inv = inv or pair_invariants(PairConfig(chain, spaces[0].dim, spaces[0], spaces[-1]))
    p = chain.p
    for i in range(2, chain.n):
        v = spaces[i - 1]
        if not v <= inv.K[i]:
            return LemmaCheck(False, {"index": i, "reason": "V_i not inside K_i"})
        a, b = inv.vbar1[i].dim, inv.vbarn[i].dim
        img = Subspace.span(p, a + b, (inv.sum_coords(i, x) for x in v.rows))
        if img.dim != v.dim:
            return LemmaCheck(False, {"index": i, "reason": "map to direct sum not injective",
                                      "image_dim": img.dim})
    return LemmaCheck(True)


def verify_lemma4(chain: LinkedChain, spaces: Sequence[Subspace], inv: PairInvariants | None = None) -> LemmaCheck:
    """Images of V_{1,i} and V_{n,i} in Zbar_i coincide, equal Z_i, and sit in Zbar1 & Zbarn."""
    check_linked(chain, spaces)
    inv = inv or pair_invariants(PairConfig(chain, spaces[0].dim, spaces[0], spaces[-1]))
    pt = point_invariants(chain, spaces, inv, validate=False)
    for i in range(2, chain.n):
        q = inv.zbar[i]
        left = push(q, _direct_sum_part(inv, i, pt.V1i[i], None))
        right = push(q, _direct_sum_part(inv, i, None, pt.Vni[i]))
        if left != pt.Zi[i] or right != pt.Zi[i]:
            return LemmaCheck(False, {"index": i, "dims": [left.dim, right.dim, pt.Zi[i].dim]})
        if not (pt.Zi[i] <= inv.zbar1[i] and pt.Zi[i] <= inv.zbarn[i]):
            return LemmaCheck(False, {"index": i, "reason": "Z_i escapes Zbar1 & Zbarn"})
        if not (pt.V1i[i] <= inv.vbar1[i] and pt.Vni[i] <= inv.vbarn[i]):
            return LemmaCheck(False, {"index": i, "reason": "V_{1,i} or V_{n,i} escapes its closure"})
    return LemmaCheck(True)
