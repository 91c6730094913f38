"""Products of special Schubert classes by the Pieri rule, plus a tableau oracle.

Partitions live in a box with ``rows`` parts, each at most ``cols``, and are
stored as non-increasing tuples padded with zeros to length ``rows``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable, Sequence

Partition = tuple[int, ...]


def _check_box(rows: int, cols: int):
    if rows < 0 or cols < 0:
        raise ValueError("box dimensions must be non-negative")


def empty(rows: int) -> Partition:
    return (0,) * rows


def horizontal_strips(lam: Partition, k: int, cols: int) -> Iterable[Partition]:
    """Partitions obtained from ``lam`` by adding k boxes, no two in one column."""
    rows = len(lam)

    def rec(i: int, left: int, acc: list[int]):
        if i == rows:
            if left == 0:
                yield tuple(acc)
            return
        cap = cols if i == 0 else lam[i - 1]
        for extra in range(min(left, cap - lam[i]), -1, -1):
            acc.append(lam[i] + extra)
            yield from rec(i + 1, left - extra, acc)
            acc.pop()

    yield from rec(0, k, [])


def pieri_multiply(state: dict[Partition, int], k: int, cols: int) -> dict[Partition, int]:
    """Multiply a class (partition -> coefficient) by the special class sigma_k."""
    if k < 0:
        raise ValueError("special class index must be non-negative")
    out: Counter = Counter()
    for lam, c in state.items():
        if c < 0:
            raise AssertionError("negative Schubert coefficient")
        size = sum(lam)
        for mu in horizontal_strips(lam, k, cols):
            if sum(mu) != size + k:
                raise AssertionError("Pieri step did not add k boxes")
            out[mu] += c
    return {lam: c for lam, c in sorted(out.items()) if c}


def special_product(ks: Sequence[int], rows: int, cols: int) -> dict[Partition, int]:
    """sigma_{k_1} ... sigma_{k_m} in the (rows x cols) box, by iterated Pieri."""
    _check_box(rows, cols)
    state = {empty(rows): 1}
    for k in ks:
        state = pieri_multiply(state, k, cols)
    return state


def top_coefficient(product: dict[Partition, int], rows: int, cols: int) -> int:
    return product.get((cols,) * rows, 0)


# --- independent oracle -----------------------------------------------------

def kostka(shape: Partition, content: Sequence[int]) -> int:
    """Number of semistandard fillings of ``shape`` with content ``content``.

    Cells are filled in reading order by backtracking, checking rows weakly
    increase and columns strictly increase; no Pieri step is involved.
    """
    cells = [(i, j) for i, length in enumerate(shape) for j in range(length)]
    if sum(content) != len(cells):
        return 0
    left = list(content)
    fill: dict[tuple[int, int], int] = {}

    def rec(idx: int) -> int:
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        lo = 0
        if j > 0:
            lo = fill[(i, j - 1)]
        if i > 0:
            lo = max(lo, fill[(i - 1, j)] + 1)
        total = 0
        for v in range(lo, len(left)):
            if left[v]:
                left[v] -= 1
                fill[(i, j)] = v
                total += rec(idx + 1)
                left[v] += 1
        fill.pop((i, j), None)
        return total

    return rec(0)


def ballot_count(m: int) -> int:
    """Standard tableaux of the 2 x m rectangle, counted as ballot sequences."""
    count = 0
    for seq in itertools.product((0, 1), repeat=2 * m):
        if sum(seq) != m:
            continue
        lead = 0
        ok = True
        for step in seq:
            lead += 1 if step == 0 else -1
            if lead < 0:
                ok = False
                break
        count += ok
    return count


def partitions_in_box(rows: int, cols: int) -> list[Partition]:
    out = []
    for lam in itertools.product(range(cols, -1, -1), repeat=rows):
        if all(lam[i] >= lam[i + 1] for i in range(rows - 1)):
            out.append(lam)
    return sorted(out)


def _trim(lam: Partition) -> Partition:
    return tuple(x for x in lam if x)


def oracle_product(ks: Sequence[int], rows: int, cols: int) -> dict[Partition, int]:
    """Same product via Kostka numbers: coefficient of lam is K_{lam, ks}."""
    size = sum(ks)
    out = {}
    for lam in partitions_in_box(rows, cols):
        if sum(lam) != size:
            continue
        c = kostka(_trim(lam), [k for k in ks])
        if c:
            out[lam] = c
    return dict(sorted(out.items()))
