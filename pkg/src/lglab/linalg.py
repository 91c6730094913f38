"""Exact linear algebra over prime fields.

Matrices and subspaces are immutable values holding plain Python integers
reduced mod ``p``.  Maps act on column vectors, so a ``rows x cols`` matrix
sends ``F_p^cols`` to ``F_p^rows``; subspaces store their basis as the rows of
a reduced row-echelon matrix, which makes equality of subspaces plain
structural equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_PRIME = 1 << 16

Row = tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for a prime ``2 <= p < 2**16``."""

    p: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and 2 <= self.p < MAX_PRIME and is_prime(self.p)):
            raise ValueError(f"p must be a prime below 2**16, got {self.p!r}")

    def __call__(self, value: int) -> int:
        return value % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    @property
    def elements(self) -> range:
        return range(self.p)


def check_prime(p: int) -> int:
    PrimeField(p)
    return p


def _rref_rows(rows: Iterable[Sequence[int]], p: int, ncols: int) -> tuple[list[list[int]], list[int]]:
    """Gauss-Jordan elimination; returns the nonzero RREF rows and their pivots."""
    work = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        found = None
        for i in range(top, len(work)):
            if work[i][col]:
                found = i
                break
        if found is None:
            continue
        work[top], work[found] = work[found], work[top]
        prow = work[top]
        inv = pow(prow[col], -1, p)
        if inv != 1:
            prow = [(x * inv) % p for x in prow]
            work[top] = prow
        for i in range(len(work)):
            if i != top:
                c = work[i][col]
                if c:
                    ri = work[i]
                    work[i] = [(a - c * b) % p for a, b in zip(ri, prow)]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


@dataclass(frozen=True)
class Matrix:
    """Dense matrix over F_p, stored row-major as tuples."""

    p: int
    nrows: int
    ncols: int
    rows: tuple[Row, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError(f"matrix entries do not match shape {self.nrows}x{self.ncols}")
        if any(not 0 <= x < self.p for r in self.rows for x in r):
            object.__setattr__(self, "rows", tuple(tuple(x % self.p for x in r) for r in self.rows))

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "Matrix":
        rows = [tuple(int(x) % p for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(p, len(rows), ncols, tuple(rows))

    @classmethod
    def identity(cls, p: int, n: int) -> "Matrix":
        return cls(p, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, p: int, nrows: int, ncols: int) -> "Matrix":
        return cls(p, nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def diagonal(cls, p: int, diag: Sequence[int]) -> "Matrix":
        n = len(diag)
        return cls(p, n, n, tuple(tuple(diag[i] % p if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "Matrix":
        cols = tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols))
        return Matrix(self.p, self.ncols, self.nrows, cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.p != other.p:
            raise ValueError("matrices over different fields")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.p
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        rows = tuple(tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols) for r in self.rows)
        return Matrix(p, self.nrows, other.ncols, rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape or self.p != other.p:
            raise ValueError("shape mismatch in addition")
        p = self.p
        return Matrix(p, self.nrows, self.ncols,
                      tuple(tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c: int) -> "Matrix":
        p = self.p
        return Matrix(p, self.nrows, self.ncols, tuple(tuple((c * a) % p for a in r) for r in self.rows))

    def apply(self, v: Sequence[int]) -> Row:
        if len(v) != self.ncols:
            raise ValueError("vector length does not match matrix columns")
        p = self.p
        return tuple(sum(a * b for a, b in zip(r, v)) % p for r in self.rows)

    def rank(self) -> int:
        return len(_rref_rows(self.rows, self.p, self.ncols)[0])

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def with_entry(self, i: int, j: int, value: int) -> "Matrix":
        rows = [list(r) for r in self.rows]
        rows[i][j] = value % self.p
        return Matrix(self.p, self.nrows, self.ncols, tuple(map(tuple, rows)))

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("only square matrices are invertible")
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = _rref_rows(aug, self.p, 2 * n)
        if piv[:n] != list(range(n)) or len(red) < n:
            raise ValueError("matrix is singular")
        return Matrix(self.p, n, n, tuple(tuple(r[n:]) for r in red))

    def to_json(self) -> dict:
        return {"p": self.p, "ambient": self.ncols, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        if isinstance(obj, dict):
            p = check_prime(int(obj["p"]))
            rows = obj["rows"]
            ncols = int(obj.get("ambient", len(rows[0]) if rows else 0))
            _check_entries(rows, p)
            return cls.from_rows(p, rows, ncols)
        raise ValueError("matrix JSON must be an object with p, ambient, rows")


def _check_entries(rows, p):
    for r in rows:
        for x in r:
            if not isinstance(x, int) or not 0 <= x < p:
                raise ValueError(f"entry {x!r} is not in [0, {p})")


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form of ``m`` with zero rows dropped."""
    red, _ = _rref_rows(m.rows, m.p, m.ncols)
    return Matrix(m.p, len(red), m.ncols, tuple(map(tuple, red)))


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^ambient, held as its canonical RREF basis."""

    p: int
    ambient: int
    rows: tuple[Row, ...] = ()
    pivots: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if any(len(r) != self.ambient for r in self.rows):
            raise ValueError("basis vectors must have length equal to the ambient dimension")
        red, piv = _rref_rows(self.rows, self.p, self.ambient)
        object.__setattr__(self, "rows", tuple(map(tuple, red)))
        object.__setattr__(self, "pivots", tuple(piv))

    @classmethod
    def _trusted(cls, p: int, ambient: int, rows: tuple[Row, ...], pivots: tuple[int, ...]) -> "Subspace":
        # rows must already be a canonical RREF basis
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "ambient", ambient)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "pivots", pivots)
        return obj

    @classmethod
    def span(cls, p: int, ambient: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        red, piv = _rref_rows(vectors, p, ambient)
        return cls._trusted(p, ambient, tuple(map(tuple, red)), tuple(piv))

    @classmethod
    def zero(cls, p: int, ambient: int) -> "Subspace":
        return cls._trusted(p, ambient, (), ())

    @classmethod
    def full(cls, p: int, ambient: int) -> "Subspace":
        eye = Matrix.identity(p, ambient).rows
        return cls._trusted(p, ambient, eye, tuple(range(ambient)))

    @classmethod
    def coordinate(cls, p: int, ambient: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors e_k (0-based ``indices``)."""
        idx = sorted(set(indices))
        rows = tuple(tuple(int(j == k) for j in range(ambient)) for k in idx)
        return cls._trusted(p, ambient, rows, tuple(idx))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Matrix:
        return Matrix(self.p, len(self.rows), self.ambient, self.rows)

    def coordinates(self, v: Sequence[int]) -> Row:
        """Coefficients of ``v`` in the canonical basis (v must lie in the span)."""
        return tuple(v[k] % self.p for k in self.pivots)

    def __contains__(self, v: Sequence[int]) -> bool:
        p = self.p
        w = [x % p for x in v]
        for row, k in zip(self.rows, self.pivots):
            c = w[k]
            if c:
                w = [(a - c * b) % p for a, b in zip(w, row)]
        return not any(w)

    def __le__(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return self.dim <= other.dim and all(r in other for r in self.rows)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def is_zero(self) -> bool:
        return not self.rows

    def to_json(self) -> dict:
        return {"p": self.p, "ambient": self.ambient, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> "Subspace":
        p = check_prime(int(obj["p"]))
        ambient = int(obj["ambient"])
        rows = obj.get("rows", [])
        _check_entries(rows, p)
        if any(len(r) != ambient for r in rows):
            raise ValueError("rows must have length equal to 'ambient'")
        return cls.span(p, ambient, rows)

    def __repr__(self) -> str:
        return f"Subspace(p={self.p}, ambient={self.ambient}, rows={[list(r) for r in self.rows]})"


def _check_same(a: Subspace, b: Subspace):
    if a.p != b.p or a.ambient != b.ambient:
        raise ValueError(f"ambient mismatch: F_{a.p}^{a.ambient} vs F_{b.p}^{b.ambient}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    if not b.rows:
        return a
    if not a.rows:
        return b
    return Subspace.span(a.p, a.ambient, a.rows + b.rows)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection by the Zassenhaus block elimination."""
    _check_same(a, b)
    if not a.rows or not b.rows:
        return Subspace.zero(a.p, a.ambient)
    n = a.ambient
    block = [r + r for r in a.rows] + [r + (0,) * n for r in b.rows]
    red, piv = _rref_rows(block, a.p, 2 * n)
    tail = [r[n:] for r, k in zip(red, piv) if k >= n]
    return Subspace.span(a.p, n, tail)


def kernel(m: Matrix) -> Subspace:
    red, piv = _rref_rows(m.rows, m.p, m.ncols)
    p, n = m.p, m.ncols
    pivset = set(piv)
    vecs = []
    for free in range(n):
        if free in pivset:
            continue
        v = [0] * n
        v[free] = 1
        for row, k in zip(red, piv):
            v[k] = (-row[free]) % p
        vecs.append(v)
    return Subspace.span(p, n, vecs)


def image(m: Matrix, s: Subspace | None = None) -> Subspace:
    """Image ``m(s)``; the column space of ``m`` when ``s`` is omitted."""
    if s is None:
        s = Subspace.full(m.p, m.ncols)
    if s.ambient != m.ncols or s.p != m.p:
        raise ValueError(f"cannot apply a {m.nrows}x{m.ncols} map to a subspace of F^{s.ambient}")
    return Subspace.span(m.p, m.nrows, (m.apply(r) for r in s.rows))


@dataclass(frozen=True)
class Quotient:
    """A surjection F^source_dim -> F^target_dim with a prescribed kernel."""

    kernel: Subspace
    projection: Matrix

    @property
    def source_dim(self) -> int:
        return self.projection.ncols

    @property
    def target_dim(self) -> int:
        return self.projection.nrows

    def __call__(self, v: Sequence[int]) -> Row:
        return self.projection.apply(v)


def quotient_by(ambient: int, ker: Subspace) -> Quotient:
    """Projection that kills ``ker`` and reads off the non-pivot coordinates."""
    if ker.ambient != ambient:
        raise ValueError(f"kernel lives in F^{ker.ambient}, not F^{ambient}")
    p = ker.p
    piv = set(ker.pivots)
    free = [j for j in range(ambient) if j not in piv]
    # pi(v) = v[free] - sum_k v[pivot_k] * row_k[free]
    rows = []
    for j in free:
        row = [0] * ambient
        row[j] = 1
        for r, k in zip(ker.rows, ker.pivots):
            row[k] = (row[k] - r[j]) % p
        rows.append(tuple(row))
    return Quotient(ker, Matrix(p, len(rows), ambient, tuple(rows)))


def push(q: Quotient, s: Subspace) -> Subspace:
    return image(q.projection, s)


def preimage(m: Matrix, s: Subspace) -> Subspace:
    """All v with m v in s."""
    if s.ambient != m.nrows or s.p != m.p:
        raise ValueError(f"cannot pull back a subspace of F^{s.ambient} along a {m.nrows}x{m.ncols} map")
    q = quotient_by(m.nrows, s)
    if q.target_dim == 0:
        return Subspace.full(m.p, m.ncols)
    return kernel(q.projection @ m)


def gaussian_binomial(d: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of F_q^d."""
    if r < 0 or r > d:
        raise ValueError(f"need 0 <= r <= d, got r={r}, d={d}")
    num = den = 1
    for k in range(r):
        num *= q ** (d - k) - 1
        den *= q ** (k + 1) - 1
    return num // den


def enumerate_subspaces(d: int, r: int, p: int) -> Iterator[Subspace]:
    """Every r-dimensional subspace of F_p^d exactly once.

    Order: pivot pattern lexicographically, then the free entries in
    ``itertools.product`` order, row by row.
    """
    if r < 0 or r > d:
        raise ValueError(f"need 0 <= r <= d, got r={r}, d={d}")
    for piv in itertools.combinations(range(d), r):
        pivset = set(piv)
        slots = [(k, j) for k, c in enumerate(piv) for j in range(c + 1, d) if j not in pivset]
        base = [[0] * d for _ in piv]
        for k, c in enumerate(piv):
            base[k][c] = 1
        for values in itertools.product(range(p), repeat=len(slots)):
            for (k, j), x in zip(slots, values):
                base[k][j] = x
            yield Subspace._trusted(p, d, tuple(map(tuple, base)), piv)


def enumerate_between(lower: Subspace, upper: Subspace, r: int) -> Iterator[Subspace]:
    """Every r-dimensional W with ``lower <= W <= upper``.

    Works in coordinates on ``upper``: subspaces containing ``lower`` are in
    bijection with subspaces of the coordinate complement of ``lower``'s pivots.
    """
    _check_same(lower, upper)
    u, low = upper.dim, lower.dim
    if not low <= r <= u:
        return
    p = upper.p
    low_c = Subspace.span(p, u, (upper.coordinates(v) for v in lower.rows))
    free = [j for j in range(u) if j not in set(low_c.pivots)]
    ub = upper.rows
    amb = upper.ambient
    for t in enumerate_subspaces(len(free), r - low, p):
        vecs = list(low_c.rows)
        for row in t.rows:
            v = [0] * u
            for j, x in zip(free, row):
                v[j] = x
            vecs.append(v)
        yield Subspace.span(p, amb, (
            tuple(sum(c * b[k] for c, b in zip(coef, ub)) % p for k in range(amb)) for coef in vecs
        ))
