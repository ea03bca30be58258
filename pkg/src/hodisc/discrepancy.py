"""L2 discrepancy: Warnock closed form, prefix scans, series checks, oracles.

The squared L2 discrepancy of points x_0..x_{N-1} in [0,1)^s is

    3^-s - (2/N) sum_n prod_j (1 - x_nj^2)/2
         + (1/N^2) sum_{n,m} prod_j (1 - max(x_nj, x_mj)).

Kernels are evaluated in the fixed-point domain and converted to float
once per point (1 - max(x,y) = min(1-x, 1-y), and float min commutes with
correct rounding), with compensated summation on top.  An exact big-rational
path is available behind a flag, or via HODISC_EXACT=1, for N <= 1024.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Iterable, Sequence

import numpy as np

from .points import DyadicPoint
from .walsh import r_coeff, wal_vec

EXACT_ENV = "HODISC_EXACT"
EXACT_LIMIT = 1024
SERIES_BUDGET = 200_000


def _exact_requested(exact: bool | None) -> bool:
    if exact is not None:
        return exact
    return os.environ.get(EXACT_ENV, "") == "1"


def _normalize(points: Sequence[DyadicPoint]) -> tuple[list[tuple[int, ...]], int, int]:
    """Common (numerators, precision, dimension); pads shorter precisions."""
    if not points:
        raise ValueError("empty point set")
    s = points[0].s
    prec = max(pt.precision for pt in points)
    nums = []
    for pt in points:
        if pt.s != s:
            raise ValueError("points must share a dimension")
        shift = prec - pt.precision
        nums.append(tuple(c << shift for c in pt.coords))
    return nums, prec, s


class _Kahan:
    """Kahan-Babuska (Neumaier) compensated accumulator."""

    __slots__ = ("total", "comp")

    def __init__(self) -> None:
        self.total = 0.0
        self.comp = 0.0

    def add(self, x: float) -> None:
        t = self.total + x
        if abs(self.total) >= abs(x):
            self.comp += (self.total - t) + x
        else:
            self.comp += (x - t) + self.total
        self.total = t

    def value(self) -> float:
        return self.total + self.comp


def _single_product(num: tuple[int, ...], prec: int) -> float:
    """prod_j (1 - x_j^2)/2, each factor exact in fixed point before rounding."""
    one2 = 1 << (2 * prec)
    acc = 1.0
    for c in num:
        acc *= (one2 - c * c) / (one2 << 1)
    return acc


def _complement_columns(nums: list[tuple[int, ...]], prec: int, s: int) -> list[np.ndarray]:
    """Per dimension, float array of 1 - x (rounded once per point)."""
    one = 1 << prec
    cols = []
    for j in range(s):
        cols.append(np.array([(one - row[j]) / one for row in nums], dtype=np.float64))
    return cols


def warnock_l2_sq(points: Sequence[DyadicPoint], exact: bool | None = None) -> float | Fraction:
    """Squared L2 discrepancy; Fraction in exact mode, float otherwise."""
    nums, prec, s = _normalize(points)
    n = len(nums)
    if _exact_requested(exact):
        if n > EXACT_LIMIT:
            raise ValueError(f"exact mode limited to {EXACT_LIMIT} points")
        return _warnock_sq_exact(nums, prec, s, n)
    return _warnock_sq_float(nums, prec, s, n)


def _warnock_sq_exact(nums, prec, s, n) -> Fraction:
    one = 1 << prec
    one2 = 1 << (2 * prec)
    s1 = 0
    for row in nums:
        term = 1
        for c in row:
            term *= one2 - c * c
        s1 += term
    s2 = 0
    for a in range(n):
        ra = nums[a]
        for b in range(a + 1, n):
            rb = nums[b]
            term = 1
            for c, d in zip(ra, rb):
                term *= one - (c if c > d else d)
            s2 += term
    s2 *= 2
    for row in nums:
        term = 1
        for c in row:
            term *= one - c
        s2 += term
    value = (
        Fraction(1, 3**s)
        - Fraction(2 * s1, n * (1 << (s * (2 * prec + 1))))
        + Fraction(s2, n * n * (1 << (s * prec)))
    )
    return value


def _warnock_sq_float(nums, prec, s, n) -> float:
    singles = _Kahan()
    for row in nums:
        singles.add(_single_product(row, prec))
    cols = _complement_columns(nums, prec, s)
    pair_chunks = []
    chunk = 256
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        block = np.minimum(cols[0][lo:hi, None], cols[0][None, :])
        for j in range(1, s):
            block = block * np.minimum(cols[j][lo:hi, None], cols[j][None, :])
        pair_chunks.append(float(block.sum()))
    s2 = math.fsum(pair_chunks)
    value = 3.0**-s - 2.0 * singles.value() / n + s2 / (n * n)
    return max(value, 0.0)


def warnock_l2(points: Sequence[DyadicPoint], exact: bool | None = None) -> float:
    """L2 discrepancy (square root of the Warnock expression)."""
    return math.sqrt(warnock_l2_sq(points, exact=exact))


def sum_of_digits(n: int) -> int:
    """Number of ones in the binary expansion of n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n.bit_count()


@dataclass(frozen=True)
class ScanRow:
    n: int
    l2: float
    s_of_n: int
    ratio_roth: float
    ratio_proinov: float


@dataclass
class DiscrepancyReport:
    """Prefix L2 values with sum-of-digits and normalized ratios, N ascending."""

    s: int
    rows: list[ScanRow] = field(default_factory=list)

    CSV_HEADER = "N,l2,S,ratio_roth,ratio_proinov"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(f"{r.n},{r.l2!r},{r.s_of_n},{r.ratio_roth!r},{r.ratio_proinov!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse_csv(cls, text: str, s: int = 0) -> DiscrepancyReport:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != cls.CSV_HEADER:
            raise ValueError("bad scan CSV header")
        report = cls(s=s)
        for ln in lines[1:]:
            n_str, l2_str, s_str, rr_str, rp_str = ln.split(",")
            report.rows.append(
                ScanRow(int(n_str), float(l2_str), int(s_str), float(rr_str), float(rp_str))
            )
        return report


def _ratios(n: int, l2: float, s: int) -> tuple[float, float]:
    log_pow = math.log(n) ** ((s - 1) / 2)
    roth = l2 * n / log_pow
    return roth, roth / math.sqrt(sum_of_digits(n))


def warnock_scan(
    seq: Iterable[DyadicPoint], n_max: int, exact: bool | None = None
) -> DiscrepancyReport:
    """Prefix L2 for every N = 2..n_max of a point stream.

    Keeps running single-sum and pairwise-kernel accumulators, so the whole
    scan costs O(n_max^2 * s) kernel evaluations.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    points = list(islice(seq, n_max))
    if len(points) < n_max:
        raise ValueError(f"stream ended after {len(points)} points, need {n_max}")
    nums, prec, s = _normalize(points)
    if _exact_requested(exact):
        if n_max > EXACT_LIMIT:
            raise ValueError(f"exact mode limited to {EXACT_LIMIT} points")
        return _scan_exact(nums, prec, s, n_max)
    return _scan_float(nums, prec, s, n_max)


def _scan_float(nums, prec, s, n_max) -> DiscrepancyReport:
    cols = _complement_columns(nums, prec, s)
    report = DiscrepancyReport(s=s)
    singles = _Kahan()
    pair_acc = _Kahan()
    inv3s = 3.0**-s
    for n in range(n_max):
        row = np.minimum(cols[0][:n], cols[0][n])
        self_term = cols[0][n]
        for j in range(1, s):
            row = row * np.minimum(cols[j][:n], cols[j][n])
            self_term *= cols[j][n]
        pair_acc.add(2.0 * float(row.sum()) + float(self_term))
        singles.add(_single_product(nums[n], prec))
        count = n + 1
        if count < 2:
            continue
        l2sq = inv3s - 2.0 * singles.value() / count + pair_acc.value() / (count * count)
        l2 = math.sqrt(max(l2sq, 0.0))
        roth, proinov = _ratios(count, l2, s)
        report.rows.append(ScanRow(count, l2, sum_of_digits(count), roth, proinov))
    return report


def _scan_exact(nums, prec, s, n_max) -> DiscrepancyReport:
    one = 1 << prec
    one2 = 1 << (2 * prec)
    comp = [tuple(one - c for c in row) for row in nums]
    report = DiscrepancyReport(s=s)
    s1 = 0
    s2 = 0
    for n in range(n_max):
        rn = comp[n]
        for m in range(n):
            rm = comp[m]
            term = 1
            for c, d in zip(rn, rm):
                term *= c if c < d else d
            s2 += 2 * term
        self_term = 1
        for c in rn:
            self_term *= c
        s2 += self_term
        term = 1
        for c in nums[n]:
            term *= one2 - c * c
        s1 += term
        count = n + 1
        if count < 2:
            continue
        l2sq = (
            Fraction(1, 3**s)
            - Fraction(2 * s1, count * (1 << (s * (2 * prec + 1))))
            + Fraction(s2, count * count * (1 << (s * prec)))
        )
        l2 = math.sqrt(l2sq)
        roth, proinov = _ratios(count, l2, s)
        report.rows.append(ScanRow(count, l2, sum_of_digits(count), roth, proinov))
    return report


def _scalar_pairs(k_limit: int) -> list[tuple[int, int, Fraction]]:
    """Nonzero (k, l, r(k,l)) with 0 <= k, l < k_limit."""
    out = []
    for k in range(k_limit):
        for l in range(k_limit):
            r = r_coeff(k, l)
            if r:
                out.append((k, l, r))
    return out


def walsh_series_l2(
    points: Sequence[DyadicPoint], trunc: int, budget: int = SERIES_BUDGET
) -> float:
    """Truncated double Walsh series of the squared L2 discrepancy.

    Sums r(k, l) * mean(wal_k) * mean(wal_l) over all index vectors with
    components below 2^trunc, excluding the all-zero vectors, using exact
    rational accumulation.  Returns the squared-discrepancy partial sum;
    rejected with a cost estimate when the nonzero-pair count exceeds the
    budget (cost grows as 4^(s*trunc)).
    """
    nums, prec, s = _normalize(points)
    if s > 2:
        raise ValueError("series evaluation supports s <= 2 only")
    if trunc < 0:
        raise ValueError("negative truncation")
    k_limit = 1 << trunc
    pairs = _scalar_pairs(k_limit)
    if s == 1:
        live = [(k, l, r) for k, l, r in pairs if k and l]
        if len(live) > budget:
            raise ValueError(f"series cost {len(live)} pairs exceeds budget {budget}")
        means = _wal_means(points, [(k,) for k in range(k_limit)])
        total = Fraction(0)
        for k, l, r in live:
            total += r * means[k] * means[l]
        return float(total)
    estimate = len(pairs) * len(pairs)
    if estimate > budget:
        raise ValueError(f"series cost {estimate} pair combinations exceeds budget {budget}")
    mean_cache: dict[tuple[int, int], Fraction] = {}

    def mean(kvec: tuple[int, int]) -> Fraction:
        got = mean_cache.get(kvec)
        if got is None:
            got = Fraction(sum(wal_vec(kvec, pt) for pt in points), len(points))
            mean_cache[kvec] = got
        return got

    total = Fraction(0)
    for k1, l1, r1 in pairs:
        for k2, l2, r2 in pairs:
            if (k1 or k2) and (l1 or l2):
                total += r1 * r2 * mean((k1, k2)) * mean((l1, l2))
    return float(total)


def _wal_means(points: Sequence[DyadicPoint], kvecs) -> list[Fraction]:
    n = len(points)
    return [Fraction(sum(wal_vec(kv, pt) for pt in points), n) for kv in kvecs]


def quadrature_oracle_l2(points: Sequence[DyadicPoint], grid: int | None = None) -> float:
    """L2 discrepancy straight from its definition, independent of Warnock.

    s = 1: exact piecewise integration of the local discrepancy after
    sorting (no grid).  s = 2: midpoint rule for |Delta|^2 on the
    2^grid x 2^grid mesh, with O(2^-grid) bias.  Larger s is rejected.
    """
    nums, prec, s = _normalize(points)
    if s == 1:
        return _quadrature_1d(nums, prec)
    if s == 2:
        if grid is None:
            raise ValueError("s = 2 needs a grid exponent")
        return _quadrature_2d(nums, prec, int(grid))
    raise ValueError("quadrature oracle supports s <= 2 only")


def _quadrature_1d(nums, prec) -> float:
    n = len(nums)
    values = sorted(Fraction(row[0], 1 << prec) for row in nums)
    bounds = [Fraction(0)] + values + [Fraction(1)]
    total = Fraction(0)
    for i in range(n + 1):
        a, b = bounds[i], bounds[i + 1]
        if a == b:
            continue
        c = Fraction(i, n)
        total += ((c - a) ** 3 - (c - b) ** 3) / 3
    return math.sqrt(total)


def _quadrature_2d(nums, prec, grid: int) -> float:
    if grid < 1:
        raise ValueError("grid exponent must be >= 1")
    n = len(nums)
    cells = 1 << grid
    fine = grid + 1
    bins = np.zeros((2, n), dtype=np.int64)
    for j in range(2):
        for i, row in enumerate(nums):
            q = row[j] >> (prec - fine) if prec >= fine else row[j] << (fine - prec)
            bins[j, i] = (q + 1) // 2
    hist = np.zeros((cells, cells), dtype=np.int64)
    inside = (bins[0] < cells) & (bins[1] < cells)
    np.add.at(hist, (bins[0][inside], bins[1][inside]), 1)
    counts = hist.cumsum(axis=0).cumsum(axis=1)
    mids = (2.0 * np.arange(cells) + 1.0) / (2.0 * cells)
    delta = counts / n - np.outer(mids, mids)
    return math.sqrt(float(np.mean(delta * delta)))
