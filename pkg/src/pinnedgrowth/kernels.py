"""Pair-energy tables: E*(a -/+ B, a' -/+ B) for every (a, a') in A x A.

This is the hot loop behind the shifted energy sums, the fast Q count and
pinned-pair extraction.  Three strategies give identical integers:

* ``dense``: integral rational input with a small product range; products
  are bucketed with ``numpy.bincount``.
* ``sort``: integral rational input with a wide product range; products are
  sorted and run lengths squared.
* ``generic``: anything else (non-integral rationals, Gaussian rationals);
  a ``Counter`` over exact products, one (a, a') pair at a time.

Rows (fixed a) may be split across worker processes.  Chunks are contiguous
and reassembled in order, so the table never depends on the worker count.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import List, NamedTuple

import numpy as np

from .exact import RATIONAL

SUBTRACTIVE = "subtractive"
ADDITIVE = "additive"
SIGNS = (SUBTRACTIVE, ADDITIVE)

WORKERS_ENV = "PINNEDGROWTH_WORKERS"

# bincount buckets per call; bounds peak memory at ~8 bytes per bucket
_DENSE_BUCKETS = 1 << 23
_INT64_SAFE = 1 << 62


class EnergyTable(NamedTuple):
    """energy[i][j] = E*(X_i, X_j); zeros[i][j] = #{(x, y) in X_i x X_j : xy = 0}."""

    energy: List[List[int]]
    zeros: List[List[int]]


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def shifted_rows(A, B, sign):
    """X_a = a - B (subtractive) or a + B (additive), one list per a in A."""
    if sign == SUBTRACTIVE:
        return [[a - b for b in B] for a in A]
    if sign == ADDITIVE:
        return [[a + b for b in B] for a in A]
    raise ValueError(f"unknown sign {sign!r}")


def choose_strategy(rows, field) -> str:
    if field != RATIONAL or not rows or not rows[0]:
        return "generic"
    if any(x.denominator != 1 for row in rows for x in row):
        return "generic"
    m = max(abs(int(x)) for row in rows for x in row)
    width = 2 * m * m + 1
    if width <= _DENSE_BUCKETS:
        return "dense"
    if len(rows) * width < _INT64_SAFE:
        return "sort"
    return "generic"


def _generic_rows(rows, lo, hi):
    n = len(rows)
    zero = rows[0][0] - rows[0][0] if n and rows[0] else 0
    energy, zeros = [], []
    for i in range(lo, hi):
        xi = rows[i]
        e_row, z_row = [0] * n, [0] * n
        for j in range(n):
            counts = Counter(x * y for x in xi for y in rows[j])
            e_row[j] = sum(c * c for c in counts.values())
            z_row[j] = counts.get(zero, 0)
        energy.append(e_row)
        zeros.append(z_row)
    return energy, zeros


def _dense_rows(mat, lo, hi):
    n, _ = mat.shape
    m = int(np.abs(mat).max())
    offset = m * m
    width = 2 * offset + 1
    block = max(1, _DENSE_BUCKETS // width)
    energy = np.zeros((hi - lo, n), dtype=np.int64)
    zeros = np.zeros((hi - lo, n), dtype=np.int64)
    for r, i in enumerate(range(lo, hi)):
        xi = mat[i]
        for j0 in range(0, n, block):
            j1 = min(n, j0 + block)
            prods = xi[None, :, None] * mat[j0:j1, None, :]
            keys = prods + offset + (np.arange(j1 - j0, dtype=np.int64) * width)[:, None, None]
            counts = np.bincount(keys.ravel(), minlength=(j1 - j0) * width)
            counts = counts.reshape(j1 - j0, width)
            energy[r, j0:j1] = (counts * counts).sum(axis=1)
            zeros[r, j0:j1] = counts[:, offset]
    return energy.tolist(), zeros.tolist()


def _sort_rows(mat, lo, hi):
    n, _ = mat.shape
    m = int(np.abs(mat).max())
    offset = m * m
    width = 2 * offset + 1
    energy = np.zeros((hi - lo, n), dtype=np.int64)
    zeros = np.zeros((hi - lo, n), dtype=np.int64)
    for r, i in enumerate(range(lo, hi)):
        prods = mat[i][None, :, None] * mat[:, None, :]
        zeros[r] = (prods == 0).sum(axis=(1, 2))
        keys = np.sort((prods + offset + (np.arange(n, dtype=np.int64) * width)[:, None, None]).ravel())
        starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
        lengths = np.diff(np.concatenate((starts, [keys.size])))
        owner = keys[starts] // width
        np.add.at(energy[r], owner, lengths * lengths)
    return energy.tolist(), zeros.tolist()


def _compute_rows(payload):
    strategy, data, lo, hi = payload
    if strategy == "dense":
        return _dense_rows(data, lo, hi)
    if strategy == "sort":
        return _sort_rows(data, lo, hi)
    return _generic_rows(data, lo, hi)


def energy_table(A, B, sign=SUBTRACTIVE, workers: int | None = None) -> EnergyTable:
    """Full table of pair energies E*(a -/+ B, a' -/+ B), rows and columns in A's order."""
    rows = shifted_rows(A, B, sign)
    n = len(rows)
    strategy = choose_strategy(rows, A.field)
    if strategy == "generic":
        data = rows
    else:
        data = np.array([[int(x) for x in row] for row in rows], dtype=np.int64)
    workers = default_workers() if workers is None else max(1, workers)
    workers = min(workers, n) if n else 1
    bounds = [(n * k) // workers for k in range(workers + 1)]
    payloads = [(strategy, data, bounds[k], bounds[k + 1]) for k in range(workers)]
    if workers == 1:
        parts = [_compute_rows(payloads[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_compute_rows, payloads))
    energy, zeros = [], []
    for e, z in parts:
        energy.extend(e)
        zeros.extend(z)
    return EnergyTable(energy, zeros)
