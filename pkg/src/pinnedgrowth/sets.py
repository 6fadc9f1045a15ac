"""Finite scalar sets, planar point sets and the families used as inputs."""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Tuple

from .errors import FieldMismatchError, InvalidSetError
from .exact import (
    GAUSSIAN,
    RATIONAL,
    GaussianRational,
    Scalar,
    embed_gaussian,
    field_of,
    format_scalar,
    parse_scalar,
    to_field,
)

Point = Tuple[Scalar, Scalar]


def _infer_field(values, field):
    if field is not None:
        return field
    found = {field_of(v) for v in values if not isinstance(v, int)}
    if len(found) > 1:
        raise FieldMismatchError("set elements come from different fields")
    return found.pop() if found else RATIONAL


class FiniteScalarSet:
    """A deduplicated, canonically sorted, immutable set of exact scalars.

    Iteration yields the elements in canonical order, so anything derived
    from a set by a deterministic loop is itself deterministic.
    """

    __slots__ = ("_elements", "_members", "field")

    def __init__(self, elements: Iterable = (), field: str | None = None):
        values = list(elements)
        field = _infer_field(values, field)
        coerced = {to_field(v, field) for v in values}
        self._elements = tuple(sorted(coerced))
        self._members = frozenset(coerced)
        self.field = field

    @property
    def elements(self) -> tuple:
        return self._elements

    def __len__(self):
        return len(self._elements)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self._elements)

    def __getitem__(self, i):
        return self._elements[i]

    def __contains__(self, x):
        return x in self._members

    def __eq__(self, other):
        if isinstance(other, FiniteScalarSet):
            return self.field == other.field and self._elements == other._elements
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self._elements))

    def __repr__(self):
        body = ", ".join(format_scalar(x) for x in self._elements[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"FiniteScalarSet[{self.field}]({{{body}{more}}})"

    def to_gaussian(self) -> "FiniteScalarSet":
        """The same set embedded in Q(i) with zero imaginary parts."""
        if self.field == GAUSSIAN:
            return self
        return FiniteScalarSet((embed_gaussian(x) for x in self), field=GAUSSIAN)

    def is_integral(self) -> bool:
        return self.field == RATIONAL and all(x.denominator == 1 for x in self)


class PlanarPointSet:
    """A deduplicated set of points (x, y) with both coordinates in one field."""

    __slots__ = ("_points", "_members", "field")

    def __init__(self, points: Iterable[Point] = (), field: str | None = None):
        pts = [tuple(p) for p in points]
        if any(len(p) != 2 for p in pts):
            raise InvalidSetError("points must be pairs")
        field = _infer_field([c for p in pts for c in p], field)
        coerced = {(to_field(x, field), to_field(y, field)) for x, y in pts}
        self._points = tuple(sorted(coerced))
        self._members = frozenset(coerced)
        self.field = field

    @property
    def points(self) -> tuple:
        return self._points

    def __len__(self):
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._points)

    def __getitem__(self, i):
        return self._points[i]

    def __contains__(self, p):
        return tuple(p) in self._members

    def __eq__(self, other):
        if isinstance(other, PlanarPointSet):
            return self.field == other.field and self._points == other._points
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self._points))

    def __repr__(self):
        return f"PlanarPointSet[{self.field}](|P|={len(self)})"


def require_same_field(*sets) -> str:
    fields = {s.field for s in sets}
    if len(fields) != 1:
        raise FieldMismatchError(f"mixed fields: {sorted(fields)}")
    return fields.pop()


# -- families ------------------------------------------------------------------

def interval_set(n: int, field: str = RATIONAL) -> FiniteScalarSet:
    """{1, 2, ..., n}."""
    if n < 1:
        raise InvalidSetError(f"interval_set needs n >= 1, got {n}")
    return FiniteScalarSet(range(1, n + 1), field=field)


_DEGENERATE_BASES = {
    RATIONAL: {Fraction(0), Fraction(1), Fraction(-1)},
    GAUSSIAN: {GaussianRational(0), GaussianRational(1), GaussianRational(-1),
               GaussianRational(0, 1), GaussianRational(0, -1)},
}


def geometric_set(base, n: int) -> FiniteScalarSet:
    """{base, base^2, ..., base^n}.

    Roots of unity (and zero) are rejected since their powers collide.
    """
    if n < 1:
        raise InvalidSetError(f"geometric_set needs n >= 1, got {n}")
    field = field_of(base)
    base = to_field(base, field)
    if base in _DEGENERATE_BASES[field]:
        raise InvalidSetError(f"degenerate base {format_scalar(base)}")
    powers = []
    x = base
    for _ in range(n):
        powers.append(x)
        x = x * base
    return FiniteScalarSet(powers, field=field)


def random_set(seed: int, n: int, bound: int, field: str = RATIONAL) -> FiniteScalarSet:
    """n distinct integers drawn uniformly from [-bound, bound].

    Uses ``random.Random(seed)`` (Mersenne Twister), so a seed pins the set.
    """
    if n < 1 or bound < 1 or n > 2 * bound:
        raise InvalidSetError(f"random_set infeasible: n={n}, bound={bound}")
    rng = random.Random(seed)
    return FiniteScalarSet(rng.sample(range(-bound, bound + 1), n), field=field)


def random_gaussian_set(seed: int, n: int, bound: int) -> FiniteScalarSet:
    """n distinct Gaussian integers with both parts in [-bound, bound]."""
    side = 2 * bound + 1
    if n < 1 or bound < 1 or n > side * side:
        raise InvalidSetError(f"random_gaussian_set infeasible: n={n}, bound={bound}")
    rng = random.Random(seed)
    picks = rng.sample(range(side * side), n)
    return FiniteScalarSet(
        (GaussianRational(i // side - bound, i % side - bound) for i in picks),
        field=GAUSSIAN,
    )


def affine_image(A: FiniteScalarSet, scale, shift) -> FiniteScalarSet:
    """{scale*x + shift : x in A}."""
    scale = to_field(scale, A.field)
    shift = to_field(shift, A.field)
    if not scale:
        raise InvalidSetError("affine_image with zero scale")
    return FiniteScalarSet((scale * x + shift for x in A), field=A.field)


def direct_product(A: FiniteScalarSet, B: FiniteScalarSet) -> PlanarPointSet:
    field = require_same_field(A, B)
    return PlanarPointSet(((a, b) for a in A for b in B), field=field)


# -- set literal files ---------------------------------------------------------

def parse_set_text(text: str, field: str | None = None) -> FiniteScalarSet:
    """One scalar per line; blank lines and ``#`` comments are ignored."""
    values = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            values.append(parse_scalar(line, field))
    if not values:
        raise InvalidSetError("set file contains no scalars")
    if field is None and any(isinstance(v, GaussianRational) for v in values):
        values = [v if isinstance(v, GaussianRational) else embed_gaussian(v) for v in values]
    return FiniteScalarSet(values, field=field)


def read_set_file(path, field: str | None = None) -> FiniteScalarSet:
    return parse_set_text(Path(path).read_text(encoding="utf-8"), field)


def format_set_text(A: FiniteScalarSet) -> str:
    return "".join(format_scalar(x) + "\n" for x in A)
