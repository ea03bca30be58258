"""Structural certification of digital nets.

Checks the order-alpha row-independence condition by exhaustive search over
admissible row selections, counts points in elementary boxes and in unions
of dyadic intervals with pinned digits, enumerates the dual net from the
kernel of the stacked transposed matrices, and evaluates exact Walsh
character sums.  Certification that would exceed the enumeration budget
raises VerificationBudgetError, a third outcome never conflated with a
property violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence

from .genmat import GeneratingMatrixSet
from .gf2 import BitMatrix, kernel_basis, stack_transposed
from .points import Dyadic, DyadicPoint
from .walsh import WalshIndex, mu_alpha, wal_vec

DEFAULT_PATTERN_BUDGET = 2_000_000
DEFAULT_DUAL_EXPONENT = 24


class VerificationBudgetError(Exception):
    """Certification aborted: the enumeration would exceed the budget."""

    def __init__(self, estimate: int, budget: int) -> None:
        super().__init__(f"enumeration of {estimate} patterns exceeds budget {budget}")
        self.estimate = estimate
        self.budget = budget


def _selection_pattern_count(p: int, alpha: int, cap: int, s: int) -> int:
    """Number of admissible counted-row patterns across s coordinates.

    Counts per-coordinate strictly decreasing tuples of length <= alpha
    with entries in 1..p, convolved over coordinates, total weight <= cap.
    """
    if cap < 0:
        return 0
    # per-coordinate generating table f[w] = tuples of weight w
    f = [0] * (cap + 1)
    f[0] = 1
    # dp over part values, at most alpha parts, distinct parts
    dp = [[0] * (cap + 1) for _ in range(alpha + 1)]
    dp[0][0] = 1
    for value in range(1, p + 1):
        for parts in range(alpha, 0, -1):
            row = dp[parts]
            prev = dp[parts - 1]
            for w in range(cap, value - 1, -1):
                if prev[w - value]:
                    row[w] += prev[w - value]
    for parts in range(1, alpha + 1):
        for w in range(cap + 1):
            f[w] += dp[parts][w]
    total = f
    for _ in range(s - 1):
        nxt = [0] * (cap + 1)
        for w1, c1 in enumerate(total):
            if not c1:
                continue
            for w2 in range(cap + 1 - w1):
                if f[w2]:
                    nxt[w1 + w2] += c1 * f[w2]
        total = nxt
    return sum(total)


def find_dependency(
    g: GeneratingMatrixSet,
    alpha: int,
    t: int,
    budget: int = DEFAULT_PATTERN_BUDGET,
) -> list[tuple[int, int]] | None:
    """Witness of a violated order-alpha independence condition, or None.

    A witness is a list of (coordinate, row) pairs, rows 1-based, whose row
    vectors are linearly dependent while the sum over coordinates of their
    alpha largest rows is at most alpha*m - t.  Only maximal selections are
    walked: rows below the alpha chosen ones are weight-free, and adding
    them can only expose more dependencies.
    """
    m, p, s = g.width, g.depth, g.s
    if not 0 <= t <= alpha * m:
        raise ValueError(f"t={t} out of range 0..{alpha * m}")
    cap = alpha * m - t
    estimate = _selection_pattern_count(min(p, cap), alpha, cap, s)
    if estimate > budget:
        raise VerificationBudgetError(estimate, budget)
    rowdata = [mat.data for mat in g.matrices]
    pivots: dict[int, int] = {}
    selection: list[tuple[int, int]] = []

    def add_row(mask: int) -> int | None:
        while mask:
            top = mask.bit_length() - 1
            other = pivots.get(top)
            if other is None:
                pivots[top] = mask
                return top
            mask ^= other
        return None

    def explore_coord(j: int, weight: int) -> list[tuple[int, int]] | None:
        if j == s:
            return None
        hit = explore_coord(j + 1, weight)  # empty tuple for coordinate j
        if hit:
            return hit
        return extend_tuple(j, weight, 0, min(p, cap - weight) + 1)

    def extend_tuple(j: int, weight: int, length: int, upper: int):
        rows = rowdata[j]
        for i in range(min(upper - 1, cap - weight), 0, -1):
            piv = add_row(rows[i - 1])
            selection.append((j, i))
            if piv is None:
                return list(selection)
            hit = None
            if length + 1 == alpha:
                free_pivots = []
                for fr in range(i - 1, 0, -1):
                    fp = add_row(rows[fr - 1])
                    selection.append((j, fr))
                    if fp is None:
                        return list(selection)
                    free_pivots.append(fp)
                hit = explore_coord(j + 1, weight + i)
                if hit:
                    return hit
                for fp in free_pivots:
                    del pivots[fp]
                    selection.pop()
            else:
                hit = explore_coord(j + 1, weight + i)
                if not hit:
                    hit = extend_tuple(j, weight + i, length + 1, i)
                if hit:
                    return hit
            del pivots[piv]
            selection.pop()
        return None

    return explore_coord(0, 0)


def verify_order_alpha(
    g: GeneratingMatrixSet,
    alpha: int,
    t: int,
    budget: int = DEFAULT_PATTERN_BUDGET,
) -> bool:
    """True iff the matrices satisfy the order-alpha condition at quality t."""
    return find_dependency(g, alpha, t, budget=budget) is None


def smallest_certified_t(
    g: GeneratingMatrixSet,
    alpha: int,
    budget: int = DEFAULT_PATTERN_BUDGET,
    start: int | None = None,
) -> int:
    """Smallest t the verifier certifies, walking down from a passing bound.

    Starts at the formula bound (or ``start``), moves up while violated,
    then down while certified.  Budget overruns propagate.
    """
    m = g.width
    hi = alpha * m
    t = start if start is not None else (g.t_bound if g.t_bound is not None else hi)
    t = min(t, hi)
    while t <= hi and not verify_order_alpha(g, alpha, t, budget=budget):
        t += 1
    if t > hi:
        raise ValueError("no quality parameter certifies; matrices are defective")
    while t > 0 and verify_order_alpha(g, alpha, t - 1, budget=budget):
        t -= 1
    return t


def box_counts(
    points: Sequence[DyadicPoint], d: Sequence[int]
) -> dict[tuple[int, ...], int]:
    """Points per elementary box prod_j [a_j 2^-d_j, (a_j+1) 2^-d_j).

    Returns every box, zero counts included.  For a (t,m,s)-net with
    sum(d_j) = m - t each count equals 2^t.
    """
    if not points:
        raise ValueError("empty point set")
    s = points[0].s
    if len(d) != s:
        raise ValueError("one exponent per coordinate required")
    if any(dj < 0 for dj in d):
        raise ValueError("negative box exponent")
    if sum(d) > 30:
        raise ValueError("box family too large to materialise")
    counts: dict[tuple[int, ...], int] = {
        box: 0 for box in product(*(range(1 << dj) for dj in d))
    }
    for pt in points:
        key = []
        for j, dj in enumerate(d):
            if dj > pt.precision:
                raise ValueError("box finer than the point precision")
            key.append(pt.coords[j] >> (pt.precision - dj))
        counts[tuple(key)] += 1
    return counts


@dataclass(frozen=True)
class JAlphaBox:
    """One coordinate's union-of-intervals constraint: digit a_i = kappa_i.

    Positions must be strictly decreasing and at least -len(a)+1;
    non-positive positions impose no restriction.  Empty lists mean [0,1).
    """

    a: tuple[int, ...]
    kappa: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.kappa):
            raise ValueError("positions and digits must pair up")
        nu = len(self.a)
        for i in range(nu - 1):
            if self.a[i] <= self.a[i + 1]:
                raise ValueError("malformed box: positions must strictly decrease")
        if nu and self.a[-1] < -nu + 1:
            raise ValueError(f"malformed box: positions must be >= {-nu + 1}")
        if any(k not in (0, 1) for k in self.kappa):
            raise ValueError("digits must be 0 or 1")

    def constrained_digits(self) -> int:
        return sum(1 for ai in self.a if ai >= 1)

    def contains(self, x: Dyadic) -> bool:
        return all(
            x.digit(ai) == ki for ai, ki in zip(self.a, self.kappa) if ai >= 1
        )


def j_alpha_count(
    points: Sequence[DyadicPoint], boxes: Sequence[JAlphaBox]
) -> tuple[int, Fraction]:
    """(points inside, volume) for a product of digit-pinned interval unions.

    Volume is 2^-(number of constrained digits) per coordinate; fairness,
    count == 2^m * volume, is the caller's predicate.
    """
    if not points:
        raise ValueError("empty point set")
    if len(boxes) != points[0].s:
        raise ValueError("one box per coordinate required")
    volume = Fraction(1, 1 << sum(b.constrained_digits() for b in boxes))
    count = 0
    for pt in points:
        if all(b.contains(pt.coord(j)) for j, b in enumerate(boxes)):
            count += 1
    return count, volume


@dataclass(frozen=True)
class DualNetBasis:
    """Kernel basis of the stacked transposed system of a truncated net.

    Each basis mask is s concatenated digit vectors of digit_range bits,
    coordinate j occupying bits [j*digit_range, (j+1)*digit_range).
    """

    s: int
    m: int
    digit_range: int
    rank: int
    basis: tuple[int, ...]

    def size(self) -> int:
        return 1 << len(self.basis)

    def _split(self, mask: int) -> WalshIndex:
        r = self.digit_range
        keep = (1 << r) - 1
        return tuple((mask >> (j * r)) & keep for j in range(self.s))

    def elements(self, include_zero: bool = False) -> Iterator[WalshIndex]:
        """All dual frequency vectors with components below 2^digit_range."""
        for bits in range(self.size()):
            mask = 0
            rest = bits
            idx = 0
            while rest:
                if rest & 1:
                    mask ^= self.basis[idx]
                rest >>= 1
                idx += 1
            if mask == 0 and not include_zero:
                continue
            yield self._split(mask)

    def contains(self, ks: WalshIndex, matrices: Sequence[BitMatrix]) -> bool:
        """Membership check via the defining linear system.

        Digit i of k_j selects row i+1 of C_j; digits beyond the stored
        rows hit the implicit zero rows of the sequence matrices.
        """
        acc = 0
        for k, mat in zip(ks, matrices):
            bits = k
            pos = 0
            while bits:
                if bits & 1 and pos < mat.rows:
                    acc ^= mat.data[pos]
                bits >>= 1
                pos += 1
        return acc == 0


def dual_enumerate(
    g: GeneratingMatrixSet,
    digit_range: int | None = None,
    budget_exponent: int = DEFAULT_DUAL_EXPONENT,
) -> DualNetBasis:
    """Dual-net basis for a truncated matrix set.

    digit_range defaults to the depth; a larger range appends zero rows,
    matching the sequence matrices whose later rows vanish on the first
    width columns.
    """
    r = g.depth if digit_range is None else digit_range
    if r < g.depth:
        raise ValueError("digit range below matrix depth")
    if g.s * r - g.width > budget_exponent:
        raise VerificationBudgetError(1 << max(g.s * r - g.width, 0), 1 << budget_exponent)
    padded = []
    for mat in g.matrices:
        rows = mat.data + (0,) * (r - mat.rows)
        padded.append(BitMatrix.from_rows(rows, mat.cols))
    stacked = stack_transposed(padded)
    basis = kernel_basis(stacked)
    if len(basis) > budget_exponent:
        raise VerificationBudgetError(1 << len(basis), 1 << budget_exponent)
    return DualNetBasis(
        s=g.s,
        m=g.width,
        digit_range=r,
        rank=r * g.s - len(basis),
        basis=tuple(v.bits for v in basis),
    )


def dual_min_weight(dual: DualNetBasis | Iterable[WalshIndex], order: int = 1) -> float:
    """Minimum order-``order`` weight over the nonzero dual elements.

    Returns math.inf when the truncated-range dual is trivial.  For an
    order-``order`` (t,m,s)-net the minimum exceeds order*m - t.
    """
    elements = dual.elements() if isinstance(dual, DualNetBasis) else dual
    best = math.inf
    for ks in elements:
        w = sum(mu_alpha(k, order) for k in ks)
        if w < best:
            best = w
    return best


def character_sum(points: Sequence[DyadicPoint], ks: WalshIndex) -> int:
    """Exact Walsh character sum over a digital net.

    Equals the net size for dual frequency vectors and 0 otherwise.
    """
    return sum(wal_vec(ks, pt) for pt in points)
