"""Sumsets, product sets, multiplicative energy, the six-variable count Q,
shifted energy sums, pinned-pair extraction and cross-ratio sets."""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import CapExceededError, InvalidSetError
from .exact import Scalar
from .kernels import ADDITIVE, SIGNS, SUBTRACTIVE, energy_table
from .sets import FiniteScalarSet, affine_image, require_same_field

DEFAULT_ENERGY_CAP = 10_000  # pairs |A|*|B| for mult_energy_bruteforce
DEFAULT_Q_CAP = 12  # |A| for the A^6 oracle

__all__ = [
    "ADDITIVE", "SUBTRACTIVE", "SIGNS",
    "MultiplicitySpectrum", "QDecomposition", "PinnedCertificate",
    "sumset", "productset", "difference_set", "difference_product_set",
    "product_spectrum", "mult_energy", "mult_energy_bruteforce", "cs_bound",
    "count_Q", "count_Q_degenerate_ac", "shifted_energy_sum", "extract_pinned_pair",
    "cross_ratio_set", "cross_ratio_spectrum",
]


class MultiplicitySpectrum(Mapping):
    """Read-only map value -> number of generating tuples hitting that value."""

    __slots__ = ("_counts", "total")

    def __init__(self, counts):
        self._counts = dict(counts)
        if any(c < 1 for c in self._counts.values()):
            raise ValueError("spectrum counts must be positive")
        self.total = sum(self._counts.values())

    def __getitem__(self, x):
        return self._counts[x]

    def __iter__(self):
        return iter(self._counts)

    def __len__(self):
        return len(self._counts)

    def sum_of_squares(self) -> int:
        return sum(c * c for c in self._counts.values())

    def support(self, field) -> FiniteScalarSet:
        return FiniteScalarSet(self._counts, field=field)

    def __repr__(self):
        return f"MultiplicitySpectrum(support={len(self)}, total={self.total})"


@dataclass(frozen=True)
class QDecomposition:
    """Solutions of (a-b)(a'-c') = (a-c)(a'-b') over A^6, split disjointly.

    q_zero: both sides zero.  q_diag: both sides nonzero and b = c.
    q_star: both sides nonzero and b != c.
    """

    q_total: int
    q_zero: int
    q_diag: int
    q_star: int

    def __post_init__(self):
        if self.q_zero + self.q_diag + self.q_star != self.q_total:
            raise ValueError("QDecomposition parts do not sum to the total")

    @staticmethod
    def diag_closed_form(n: int) -> int:
        # b = c with nonzero sides forces b' = c'
        return n * n * (n - 1) * (n - 1)


@dataclass(frozen=True)
class PinnedCertificate:
    a: Scalar
    a_prime: Scalar
    sign: str
    energy: int
    product_set_size: int
    cs_lower_bound: Fraction
    energy_sum: int
    set_size: int

    def cs_holds(self) -> bool:
        return self.product_set_size >= self.cs_lower_bound

    def pigeonhole_holds(self) -> bool:
        return self.energy * self.set_size ** 2 <= self.energy_sum


def _integers(A: FiniteScalarSet):
    """A's elements as Python ints when A is an integral rational set, else None."""
    if A.is_integral():
        return [x.numerator for x in A]
    return None


def _pairwise(A, B, op):
    field = require_same_field(A, B)
    ia, ib = _integers(A), _integers(B)
    if ia is not None and ib is not None:
        return field, (op(a, b) for a in ia for b in ib)
    return field, (op(a, b) for a in A for b in B)


def sumset(A: FiniteScalarSet, B: FiniteScalarSet) -> FiniteScalarSet:
    field, values = _pairwise(A, B, lambda a, b: a + b)
    return FiniteScalarSet(set(values), field=field)


def productset(A: FiniteScalarSet, B: FiniteScalarSet) -> FiniteScalarSet:
    field, values = _pairwise(A, B, lambda a, b: a * b)
    return FiniteScalarSet(set(values), field=field)


def difference_set(A: FiniteScalarSet) -> FiniteScalarSet:
    """A - A, built as A + (-1)A."""
    return sumset(A, affine_image(A, -1, 0))


def difference_product_set(A: FiniteScalarSet) -> FiniteScalarSet:
    """(A-A)(A-A)."""
    D = difference_set(A)
    return productset(D, D)


def product_spectrum(A: FiniteScalarSet, B: FiniteScalarSet) -> MultiplicitySpectrum:
    """x -> #{(a, b) in A x B : ab = x}."""
    field, values = _pairwise(A, B, lambda a, b: a * b)
    counts = Counter(values)
    if field == "rational":
        counts = {Fraction(x): c for x, c in counts.items()}
    return MultiplicitySpectrum(counts)


def mult_energy(A: FiniteScalarSet, B: FiniteScalarSet) -> int:
    """E*(A, B) = sum of squared product multiplicities."""
    return product_spectrum(A, B).sum_of_squares()


def mult_energy_bruteforce(A: FiniteScalarSet, B: FiniteScalarSet,
                           cap: int = DEFAULT_ENERGY_CAP) -> int:
    """E*(A, B) by sorting all |A||B| products and squaring run lengths.

    Independent of the hashing path in :func:`mult_energy`.
    """
    require_same_field(A, B)
    size = len(A) * len(B)
    if size > cap:
        raise CapExceededError("mult_energy_bruteforce", size, cap)
    prods = sorted(a * b for a in A for b in B)
    total, run = 0, 0
    for k, p in enumerate(prods):
        if k and p == prods[k - 1]:
            run += 1
        else:
            total += run * run
            run = 1
    return total + run * run


def cs_bound(A: FiniteScalarSet, B: FiniteScalarSet) -> Fraction:
    """|A|^2 |B|^2 / |AB|, the Cauchy-Schwarz lower bound for E*(A, B)."""
    return Fraction(len(A) ** 2 * len(B) ** 2, len(productset(A, B)))


# -- the six-variable count ----------------------------------------------------

def _q_bruteforce(A: FiniteScalarSet, cap: int):
    """Enumerate A^6 and test (a-b)(a'-c') == (a-c)(a'-b') on every tuple.

    Returns (zero, diag, star, ac_degenerate) where the last counts
    solutions with a = c or a' = c'.
    """
    n = len(A)
    if n > cap:
        raise CapExceededError("count_Q bruteforce", n, cap)
    elems = list(A)
    diff = [[x - y for y in elems] for x in elems]
    ids: dict = {}
    zero_id = ids.setdefault(elems[0] - elems[0], 0)
    zero = diag = star = ac = 0
    idx = range(n)
    for i in idx:
        di = diff[i]
        for ip in idx:
            dip = diff[ip]
            # table[u][v] identifies the value (a-u)(a'-v)
            table = [[ids.setdefault(di[u] * dip[v], len(ids)) for v in idx] for u in idx]
            for b in idx:
                row_b = table[b]
                for cp in idx:
                    lhs = row_b[cp]
                    for c in idx:
                        hits = table[c].count(lhs)  # over b'
                        if not hits:
                            continue
                        if lhs == zero_id:
                            zero += hits
                        elif b == c:
                            diag += hits
                        else:
                            star += hits
                        if c == i or cp == ip:
                            ac += hits
    return zero, diag, star, ac


def count_Q(A: FiniteScalarSet, method: str = "bruteforce", cap: int = DEFAULT_Q_CAP,
            workers: int | None = None) -> QDecomposition:
    """Count 6-tuples over A with (a-b)(a'-c') = (a-c)(a'-b').

    ``method="bruteforce"`` enumerates A^6 (|A| <= cap).  ``method="fast"``
    uses the identity Q = sum over (a, a') of E*(a-A, a'-A) and reads the
    zero and diagonal parts off the same pair table.
    """
    if len(A) < 1:
        raise InvalidSetError("count_Q needs a nonempty set")
    if method == "bruteforce":
        zero, diag, star, _ = _q_bruteforce(A, cap)
        return QDecomposition(zero + diag + star, zero, diag, star)
    if method == "fast":
        table = energy_table(A, A, SUBTRACTIVE, workers)
        total = sum(map(sum, table.energy))
        q_zero = sum(z * z for row in table.zeros for z in row)
        # trivial energy solutions x = x', y = y' with xy != 0
        nonzero = sum(1 for a in A for b in A if a != b)
        q_diag = nonzero * nonzero
        return QDecomposition(total, q_zero, q_diag, total - q_zero - q_diag)
    raise ValueError(f"unknown count_Q method {method!r}")


def count_Q_degenerate_ac(A: FiniteScalarSet, cap: int = DEFAULT_Q_CAP) -> int:
    """Brute-force number of Q solutions with a = c or a' = c'."""
    return _q_bruteforce(A, cap)[3]


def shifted_energy_sum(A: FiniteScalarSet, B: FiniteScalarSet, sign: str = SUBTRACTIVE,
                       workers: int | None = None) -> int:
    """Sum over a, a' in A of E*(a - B, a' - B), or of E*(a + B, a' + B)."""
    require_same_field(A, B)
    table = energy_table(A, B, sign, workers)
    return sum(map(sum, table.energy))


def _shift(A, a, sign):
    # the set A - a (subtractive) or A + a (additive)
    return affine_image(A, 1, -a if sign == SUBTRACTIVE else a)


def extract_pinned_pair(A: FiniteScalarSet, sign: str = SUBTRACTIVE,
                        workers: int | None = None) -> PinnedCertificate:
    """The pair (a, a') minimising E*(a -/+ A, a' -/+ A), with its certificate.

    Ties go to the lexicographically first pair in canonical order.
    """
    n = len(A)
    if n < 2:
        raise InvalidSetError("extract_pinned_pair needs |A| >= 2")
    if sign not in SIGNS:
        raise ValueError(f"unknown sign {sign!r}")
    table = energy_table(A, A, sign, workers)
    best = None
    for i, row in enumerate(table.energy):
        for j, e in enumerate(row):
            if best is None or e < best[0]:
                best = (e, i, j)
    energy, i, j = best
    a, a_prime = A[i], A[j]
    pinned = productset(_shift(A, a, sign), _shift(A, a_prime, sign))
    return PinnedCertificate(
        a=a,
        a_prime=a_prime,
        sign=sign,
        energy=energy,
        product_set_size=len(pinned),
        cs_lower_bound=Fraction(n ** 4, energy),
        energy_sum=sum(map(sum, table.energy)),
        set_size=n,
    )


# -- cross ratios ----------------------------------------------------------------

def _cross_ratio_counts(A: FiniteScalarSet) -> Counter:
    if len(A) < 2:
        raise InvalidSetError("cross-ratio sets need |A| >= 2")
    ints = _integers(A)
    if ints is not None:
        counts = Counter()
        for a in ints:
            for c in ints:
                den = a - c
                if not den:
                    continue
                s = 1 if den > 0 else -1
                for b in ints:
                    num = a - b
                    g = gcd(num, den)
                    counts[(s * num // g, s * den // g)] += 1
        return Counter({Fraction(p, q): k for (p, q), k in counts.items()})
    counts = Counter()
    for a in A:
        for c in A:
            den = a - c
            if not den:
                continue
            for b in A:
                counts[(a - b) / den] += 1
    return counts


def cross_ratio_spectrum(A: FiniteScalarSet) -> MultiplicitySpectrum:
    """x -> #{(a, b, c) in A^3 : a != c, (a-b)/(a-c) = x}."""
    return MultiplicitySpectrum(_cross_ratio_counts(A))


def cross_ratio_set(A: FiniteScalarSet) -> FiniteScalarSet:
    """{(a-b)/(a-c) : a, b, c in A, a != c}."""
    return FiniteScalarSet(_cross_ratio_counts(A), field=A.field)
