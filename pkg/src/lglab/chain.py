"""Linked chains of maps ``f_i: E_i -> E_{i+1}``, ``g_i: E_{i+1} -> E_i``.

Indices follow the usual 1-based convention: ``E_1, ..., E_n`` and maps
``f_1, ..., f_{n-1}``.  Every ``E_i`` is ``F_p^d``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .linalg import Matrix, check_prime


@dataclass(frozen=True)
class LinkedChain:
    p: int
    d: int
    n: int
    f: tuple[Matrix, ...]
    g: tuple[Matrix, ...]
    s: int = 0

    def __post_init__(self):
        check_prime(self.p)
        if self.n < 2:
            raise ValueError("a chain needs n >= 2")
        if len(self.f) != self.n - 1 or len(self.g) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} forward and backward maps")
        for m in self.f + self.g:
            if m.shape != (self.d, self.d) or m.p != self.p:
                raise ValueError(f"every map must be a {self.d}x{self.d} matrix over F_{self.p}")
        object.__setattr__(self, "s", self.s % self.p)

    def fwd(self, i: int) -> Matrix:
        """f_i, for 1 <= i <= n-1."""
        if not 1 <= i <= self.n - 1:
            raise IndexError(f"f_{i} out of range")
        return self.f[i - 1]

    def bwd(self, i: int) -> Matrix:
        """g_i, for 1 <= i <= n-1."""
        if not 1 <= i <= self.n - 1:
            raise IndexError(f"g_{i} out of range")
        return self.g[i - 1]

    def f_comp(self, i: int, j: int) -> Matrix:
        """f_{i,j} = f_j o ... o f_i : E_i -> E_{j+1}; identity when j = i - 1."""
        if j == i - 1 and 1 <= i <= self.n:
            return Matrix.identity(self.p, self.d)
        if not 1 <= i <= j <= self.n - 1:
            raise IndexError(f"f_{{{i},{j}}} out of range")
        m = self.f[i - 1]
        for k in range(i + 1, j + 1):
            m = self.f[k - 1] @ m
        return m

    def g_comp(self, j: int, i: int) -> Matrix:
        """g_{j,i} = g_i o ... o g_j : E_{j+1} -> E_i; identity when j = i - 1."""
        if j == i - 1 and 1 <= i <= self.n:
            return Matrix.identity(self.p, self.d)
        if not 1 <= i <= j <= self.n - 1:
            raise IndexError(f"g_{{{j},{i}}} out of range")
        m = self.g[j - 1]
        for k in range(j - 1, i - 1, -1):
            m = self.g[k - 1] @ m
        return m

    def to_json(self) -> dict:
        return {
            "p": self.p, "d": self.d, "n": self.n, "s": self.s,
            "f": [m.to_json() for m in self.f],
            "g": [m.to_json() for m in self.g],
        }


def composite(chain: LinkedChain, kind: str, i: int, j: int) -> Matrix:
    """``forward`` gives f_{i,j}; ``backward`` gives g_{j,i}.  Both need i <= j + 1."""
    if kind == "forward":
        return chain.f_comp(i, j)
    if kind == "backward":
        return chain.g_comp(j, i)
    raise ValueError(f"kind must be 'forward' or 'backward', not {kind!r}")


@dataclass(frozen=True)
class ChainSpec:
    """Nested coordinate model: f_i projects onto S_i, g_i onto its complement.

    ``subsets`` hold 1-based coordinate indices, one subset per map.
    """

    d: int
    n: int
    p: int
    subsets: tuple[frozenset[int], ...]
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "subsets", tuple(frozenset(s) for s in self.subsets))
        if len(self.subsets) != self.n - 1:
            raise ValueError(f"need {self.n - 1} subsets for n={self.n}")
        for k, s in enumerate(self.subsets, start=1):
            if not s <= set(range(1, self.d + 1)):
                raise ValueError(f"subset {k} has indices outside 1..{self.d}")
        for k in range(len(self.subsets) - 1):
            if not self.subsets[k] <= self.subsets[k + 1]:
                raise ValueError(f"subsets not nested at index {k + 1}: S_{k + 1} is not inside S_{k + 2}")

    def with_prime(self, p: int) -> "ChainSpec":
        return ChainSpec(self.d, self.n, p, self.subsets, self.seed)

    def label(self) -> str:
        parts = ["{" + ",".join(map(str, sorted(s))) + "}" for s in self.subsets]
        return f"d={self.d},n={self.n},S=(" + ",".join(parts) + ")"

    def to_json(self) -> dict:
        out = {"model": "nested", "p": self.p, "d": self.d, "n": self.n,
               "subsets": [sorted(s) for s in self.subsets]}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def random_invertible(p: int, d: int, rng: random.Random) -> Matrix:
    while True:
        m = Matrix.from_rows(p, [[rng.randrange(p) for _ in range(d)] for _ in range(d)])
        if m.rank() == d:
            return m


def make_nested_chain(spec: ChainSpec) -> LinkedChain:
    p, d = spec.p, spec.d
    f = [Matrix.diagonal(p, [int(k in s) for k in range(1, d + 1)]) for s in spec.subsets]
    g = [Matrix.diagonal(p, [int(k not in s) for k in range(1, d + 1)]) for s in spec.subsets]
    if spec.seed is not None:
        rng = random.Random(spec.seed)
        a = [random_invertible(p, d, rng) for _ in range(spec.n)]
        ainv = [m.inverse() for m in a]
        f = [a[i + 1] @ f[i] @ ainv[i] for i in range(spec.n - 1)]
        g = [a[i] @ g[i] @ ainv[i + 1] for i in range(spec.n - 1)]
    return LinkedChain(p, d, spec.n, tuple(f), tuple(g), 0)


def nested_family(d: int, n: int, p: int = 2) -> list[ChainSpec]:
    """All nested models for fixed (d, n), ordered by entry index of each coordinate."""
    out = []
    # coordinate k joins at map index entry[k] (n means never)
    for entry in itertools.product(range(1, n + 1), repeat=d):
        subsets = tuple(frozenset(k + 1 for k in range(d) if entry[k] <= i) for i in range(1, n))
        out.append(ChainSpec(d, n, p, subsets))
    return out


@dataclass(frozen=True)
class AxiomCheck:
    condition: str
    index: int
    passed: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"condition": self.condition, "index": self.index, "passed": self.passed,
                "witness": self.witness}


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def verdicts(self) -> dict[str, bool]:
        out: dict[str, bool] = {"I": True, "II": True, "III": True}
        for c in self.checks:
            out[c.condition] = out[c.condition] and c.passed
        return out

    def to_json(self) -> dict:
        return {"passed": self.passed, "verdicts": self.verdicts(),
                "checks": [c.to_json() for c in self.checks]}


def axiom_report(chain: LinkedChain) -> AxiomReport:
    """Check conditions (I)-(III) at a field point.

    (II) only constrains the locus where s vanishes, so it is vacuous for s != 0.
    """
    p, d, s = chain.p, chain.d, chain.s
    scalar = Matrix.identity(p, d).scale(s)
    checks = []
    for i in range(1, chain.n):
        f, g = chain.fwd(i), chain.bwd(i)
        fg, gf = f @ g, g @ f
        ok = fg == scalar and gf == scalar
        checks.append(AxiomCheck("I", i, ok, None if ok else {
            "f_i g_i": [list(r) for r in fg.rows], "g_i f_i": [list(r) for r in gf.rows], "s": s}))
    for i in range(1, chain.n):
        rf, rg = chain.fwd(i).rank(), chain.bwd(i).rank()
        ok = s != 0 or rf + rg == d
        checks.append(AxiomCheck("II", i, ok, None if ok else {"rank f_i": rf, "rank g_i": rg, "d": d}))
    for i in range(1, chain.n - 1):
        rf, rff = chain.fwd(i).rank(), (chain.fwd(i + 1) @ chain.fwd(i)).rank()
        rg, rgg = chain.bwd(i + 1).rank(), (chain.bwd(i) @ chain.bwd(i + 1)).rank()
        ok = rf == rff and rg == rgg
        checks.append(AxiomCheck("III", i, ok, None if ok else {
            "rank f_i": rf, "rank f_{i+1} f_i": rff, "rank g_{i+1}": rg, "rank g_i g_{i+1}": rgg}))
    return AxiomReport(tuple(checks))


class ChainError(ValueError):
    pass


def require_analysis_ready(chain: LinkedChain):
    """Analysis needs n > 2, s = 0 and all three axioms."""
    if chain.s != 0:
        raise ChainError("analysis operations require s = 0")
    if chain.n <= 2:
        raise ChainError("analysis operations require n > 2")
    rep = axiom_report(chain)
    if not rep.passed:
        bad = rep.failures()[0]
        raise ChainError(f"chain violates condition ({bad.condition}) at index {bad.index}")


def chain_from_json(obj: dict) -> LinkedChain:
    if obj.get("model") == "nested":
        spec = ChainSpec(int(obj["d"]), int(obj["n"]), check_prime(int(obj["p"])),
                         tuple(frozenset(s) for s in obj["subsets"]), obj.get("seed"))
        return make_nested_chain(spec)
    p, d, n = check_prime(int(obj["p"])), int(obj["d"]), int(obj["n"])

    def mat(m) -> Matrix:
        if isinstance(m, dict):
            out = Matrix.from_json(m)
        else:
            out = Matrix.from_json({"p": p, "ambient": d, "rows": m})
        return out

    return LinkedChain(p, d, n, tuple(mat(m) for m in obj["f"]), tuple(mat(m) for m in obj["g"]),
                       int(obj.get("s", 0)))


def spec_from_json(obj: dict) -> ChainSpec:
    return ChainSpec(int(obj["d"]), int(obj["n"]), check_prime(int(obj["p"])),
                     tuple(frozenset(s) for s in obj["subsets"]), obj.get("seed"))


def mutate_entry(chain: LinkedChain, which: str, index: int, row: int, col: int, value: int) -> LinkedChain:
    """Copy of ``chain`` with one entry of f_index or g_index replaced."""
    f, g = list(chain.f), list(chain.g)
    target = f if which == "f" else g
    target[index - 1] = target[index - 1].with_entry(row, col, value)
    return LinkedChain(chain.p, chain.d, chain.n, tuple(f), tuple(g), chain.s)


def identity_blocks(spec: ChainSpec, which: str, index: int) -> set[int]:
    """0-based coordinates on which the unconjugated map acts as the identity."""
    s = spec.subsets[index - 1]
    keep = s if which == "f" else set(range(1, spec.d + 1)) - s
    return {k - 1 for k in keep}


def seeded_mutations(specs: Sequence[ChainSpec], count: int, seed: int) -> list[tuple[ChainSpec, str, int, int, int, int]]:
    """Single-entry mutations that leave the identity block of the mutated map.

    Changing an entry whose row or column lies outside the block where an
    unconjugated nested map is the identity makes ``f_i g_i`` or ``g_i f_i``
    nonzero.  Entries inside the block can give another valid chain (an
    invertible change of basis on that block), so they are excluded.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        spec = specs[rng.randrange(len(specs))]
        which = rng.choice("fg")
        index = rng.randrange(1, spec.n)
        block = identity_blocks(spec, which, index)
        cells = [(a, b) for a in range(spec.d) for b in range(spec.d) if not (a in block and b in block)]
        if not cells:
            continue
        a, b = cells[rng.randrange(len(cells))]
        # entries outside the identity block are zero, so any nonzero value changes the map
        value = rng.randrange(1, spec.p)
        out.append((spec, which, index, a, b, value))
    return out
