"""Canonical lines, spanned-line spectra, collinear triples, rich lines and
rectangle pseudo-distances over Q and Q(i)."""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import NamedTuple

from .errors import CapExceededError, InvalidSetError
from .exact import GAUSSIAN, GaussianRational, gi_exact_div, gi_gcd, gi_mul, gi_unit_normalize
from .sets import FiniteScalarSet, PlanarPointSet

DEFAULT_TRIPLE_CAP = 30  # |P| for the O(|P|^3) collinearity oracle


class CanonicalLine(NamedTuple):
    """alpha*x + beta*y + gamma = 0 with primitive, unit-normalized coefficients.

    Coefficients are ints over Q and integral GaussianRationals over Q(i).
    """

    alpha: object
    beta: object
    gamma: object


def _raw_coefficients(p, q):
    (x1, y1), (x2, y2) = p, q
    return y2 - y1, x1 - x2, x2 * y1 - x1 * y2


def _canonical_rational(coeffs) -> CanonicalLine:
    den = lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = gcd(*ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return CanonicalLine(*ints)


def _canonical_gaussian(coeffs) -> CanonicalLine:
    den = lcm(*(d for c in coeffs for d in (c.re.denominator, c.im.denominator)))
    ints = [(int(c.re * den), int(c.im * den)) for c in coeffs]
    g = (0, 0)
    for v in ints:
        g = gi_gcd(v, g) if v != (0, 0) else g
    ints = [gi_exact_div(v, g) for v in ints]
    lead = next(v for v in ints if v != (0, 0))
    target = gi_unit_normalize(lead)
    # unit u with u * lead == target
    for u in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        if gi_mul(u, lead) == target:
            break
    return CanonicalLine(*(GaussianRational(*gi_mul(u, v)) for v in ints))


def line_through(p, q) -> CanonicalLine:
    """Canonical line through two distinct points."""
    p, q = tuple(p), tuple(q)
    if p == q:
        raise InvalidSetError("line_through needs two distinct points")
    coeffs = _raw_coefficients(p, q)
    if isinstance(coeffs[0], GaussianRational):
        return _canonical_gaussian(coeffs)
    return _canonical_rational(coeffs)


def _integral_points(P: PlanarPointSet):
    if P.field == GAUSSIAN:
        return None
    if all(x.denominator == 1 and y.denominator == 1 for x, y in P):
        return [(x.numerator, y.numerator) for x, y in P]
    return None


def _int_line(x1, y1, x2, y2):
    a, b, c = y2 - y1, x1 - x2, x2 * y1 - x1 * y2
    g = gcd(a, b, c)
    a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        return CanonicalLine(-a, -b, -c)
    return CanonicalLine(a, b, c)


class LineSpectrum(Mapping):
    """CanonicalLine -> number of points of P on it, for lines with >= 2 points."""

    __slots__ = ("_counts", "point_count")

    def __init__(self, counts, point_count: int):
        self._counts = dict(counts)
        self.point_count = point_count

    def __getitem__(self, line):
        return self._counts[line]

    def __iter__(self):
        return iter(self._counts)

    def __len__(self):
        return len(self._counts)

    def histogram(self) -> dict:
        """m -> number of lines carrying exactly m points."""
        return dict(sorted(Counter(self._counts.values()).items()))

    def __repr__(self):
        return f"LineSpectrum(lines={len(self)}, histogram={self.histogram()})"


def spanned_lines(P: PlanarPointSet) -> LineSpectrum:
    """L(P) with point counts, recovered from per-line pair counts.

    Each unordered pair of points votes once for its line; a line holding m
    points collects t = m(m-1)/2 votes.
    """
    n = len(P)
    if n < 2:
        raise InvalidSetError("spanned_lines needs |P| >= 2")
    pairs = Counter()
    ints = _integral_points(P)
    if ints is not None:
        for i in range(n):
            x1, y1 = ints[i]
            for j in range(i + 1, n):
                x2, y2 = ints[j]
                pairs[_int_line(x1, y1, x2, y2)] += 1
    else:
        pts = P.points
        for i in range(n):
            for j in range(i + 1, n):
                pairs[line_through(pts[i], pts[j])] += 1
    counts = {}
    for line, t in pairs.items():
        m = (1 + isqrt(1 + 8 * t)) // 2
        if m * (m - 1) != 2 * t:
            raise AssertionError(f"pair count {t} is not triangular")
        counts[line] = m
    return LineSpectrum(counts, n)


def _spectrum(P_or_spectrum):
    if isinstance(P_or_spectrum, LineSpectrum):
        return P_or_spectrum
    return spanned_lines(P_or_spectrum)


def collinear_cube_sum(P) -> int:
    """Sum over lines in L(P) of |l & P|^3."""
    return sum(m ** 3 for m in _spectrum(P).values())


def ordered_collinear_triples(P) -> int:
    """Ordered triples of distinct collinear points."""
    return sum(m * (m - 1) * (m - 2) for m in _spectrum(P).values())


def ordered_collinear_triples_bruteforce(P: PlanarPointSet, cap: int = DEFAULT_TRIPLE_CAP) -> int:
    """Same count by testing every triple's orientation determinant."""
    n = len(P)
    if n > cap:
        raise CapExceededError("ordered_collinear_triples_bruteforce", n, cap)
    pts = P.points
    count = 0
    for i in range(n):
        x1, y1 = pts[i]
        for j in range(i + 1, n):
            x2, y2 = pts[j]
            dx, dy = x2 - x1, y2 - y1
            for k in range(j + 1, n):
                x3, y3 = pts[k]
                if dx * (y3 - y1) == dy * (x3 - x1):
                    count += 1
    return 6 * count


def rich_lines(P, k: int) -> int:
    """|L_k|: lines holding at least k points of P."""
    if k < 2:
        raise InvalidSetError(f"rich_lines needs k >= 2, got {k}")
    return sum(1 for m in _spectrum(P).values() if m >= k)


def st_ratio_report(P) -> list:
    """Rows (k, |L_k|, |L_k| k^3 / |P|^2) for 2 <= k <= floor(sqrt|P|)."""
    spectrum = _spectrum(P)
    n = spectrum.point_count
    if n < 4:
        raise InvalidSetError("st_ratio_report needs |P| >= 4")
    rows = []
    for k in range(2, isqrt(n) + 1):
        count = rich_lines(spectrum, k)
        rows.append((k, count, Fraction(count * k ** 3, n * n)))
    return rows


def rect_distance(p, q):
    """Signed area (p1-q1)(p2-q2) of the axis-parallel rectangle spanned by p, q."""
    return (p[0] - q[0]) * (p[1] - q[1])


def rect_distance_set(P: PlanarPointSet) -> FiniteScalarSet:
    pts = P.points
    values = {rect_distance(pts[i], pts[j]) for i in range(len(pts)) for j in range(i, len(pts))}
    return FiniteScalarSet(values, field=P.field)


def pinned_rect_distance(P: PlanarPointSet, p) -> FiniteScalarSet:
    p = tuple(p)
    if p not in P:
        raise InvalidSetError("pinned point is not in P")
    return FiniteScalarSet((rect_distance(p, q) for q in P), field=P.field)
