"""Integer quadratic forms attached to a bimodule of shape (a, b).

Two descriptions are used.  With the K-dimensions ``f1, f2, m`` of the two
division rings and the bimodule, ``q(x, y) = f1 x^2 + f2 y^2 - m x y``.
With only the side dimensions ``a, b``, the bilinear form has matrix
``((a, -a b), (0, b))`` and quadratic form ``a x^2 - a b x y + b y^2``;
when the bookkeeping ``a f2 = m = b f1`` holds this is a positive multiple
of q, since ``m^2 = a b f1 f2``.

Coordinates always follow the matrix ``((a, -a b), (0, b))``: shape (4, 1)
has null vector (1, 2), shape (1, 4) has (2, 1).  All arithmetic is on
Python integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence

NULL_SEARCH_LIMIT = 16


@dataclass(frozen=True)
class QuadraticFormSpec:
    f1: int
    f2: int
    m: int

    def __post_init__(self):
        if min(self.f1, self.f2, self.m) <= 0:
            raise ValueError("f1, f2 and m must be positive")


@dataclass(frozen=True)
class BimoduleShape:
    a: int
    b: int
    f1: int | None = None
    f2: int | None = None
    m: int | None = None

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("a and b must be positive")
        extra = (self.f1, self.f2, self.m)
        if any(x is not None for x in extra):
            if any(x is None or x <= 0 for x in extra):
                raise ValueError("f1, f2, m must be given together and be positive")
            if self.a * self.f2 != self.m or self.b * self.f1 != self.m:
                raise ValueError(f"inconsistent shape: need a*f2 = m = b*f1, got "
                                 f"a={self.a} b={self.b} f1={self.f1} f2={self.f2} m={self.m}")

    @property
    def spec(self) -> QuadraticFormSpec | None:
        if self.f1 is None:
            return None
        return QuadraticFormSpec(self.f1, self.f2, self.m)


def eval_q(spec: QuadraticFormSpec, x: int, y: int) -> int:
    return spec.f1 * x * x + spec.f2 * y * y - spec.m * x * y


def tilde_matrix(shape: BimoduleShape) -> tuple[tuple[int, int], tuple[int, int]]:
    a, b = shape.a, shape.b
    return ((a, -a * b), (0, b))


def tilde_form(shape: BimoduleShape, x: int, y: int) -> int:
    """x T x^t for T = tilde_matrix(shape)."""
    (t11, t12), (t21, t22) = tilde_matrix(shape)
    return t11 * x * x + (t12 + t21) * x * y + t22 * y * y


def bilinear(shape: BimoduleShape, u: Sequence[int], v: Sequence[int]) -> int:
    (t11, t12), (t21, t22) = tilde_matrix(shape)
    return u[0] * (t11 * v[0] + t12 * v[1]) + u[1] * (t21 * v[0] + t22 * v[1])


def is_finite_type(shape: BimoduleShape) -> bool:
    return shape.a * shape.b <= 3


def is_positive_definite(spec: QuadraticFormSpec) -> bool:
    """Binary form with positive diagonal: definite iff m^2 < 4 f1 f2."""
    return spec.m * spec.m < 4 * spec.f1 * spec.f2


def consistent_specs(shape: BimoduleShape, fmax: int = 4) -> Iterator[QuadraticFormSpec]:
    """All (f1, f2, m) with f1, f2 <= fmax satisfying a f2 = m = b f1."""
    for f1 in range(1, fmax + 1):
        m = shape.b * f1
        if m % shape.a:
            continue
        f2 = m // shape.a
        if f2 <= fmax:
            yield QuadraticFormSpec(f1, f2, m)


def primitive_vectors(limit: int = NULL_SEARCH_LIMIT) -> Iterator[tuple[int, int]]:
    """Nonnegative primitive vectors with entries <= limit, lexicographically."""
    for x in range(limit + 1):
        for y in range(limit + 1):
            if gcd(x, y) == 1:
                yield (x, y)


def find_null_vector(form: BimoduleShape | QuadraticFormSpec, limit: int = NULL_SEARCH_LIMIT
                     ) -> tuple[int, int] | None:
    """First primitive nonnegative vector (lexicographic) with form value <= 0."""
    if isinstance(form, BimoduleShape):
        value = lambda x, y: tilde_form(form, x, y)
    else:
        value = lambda x, y: eval_q(form, x, y)
    for x, y in primitive_vectors(limit):
        if value(x, y) <= 0:
            return (x, y)
    return None


class DefectError(ValueError):
    def __init__(self):
        super().__init__("defect defined only for ab=4")


def defect(shape: BimoduleShape, dimvec: Sequence[int]) -> int:
    """Linear defect for the tame shapes ab = 4.

    (2, 2): x - y.  (4, 1): 2x - y.  (1, 4) is (4, 1) with the coordinates
    swapped: x - 2y.  In each case the defect vanishes exactly on the null
    line of ``tilde_form``.
    """
    a, b = shape.a, shape.b
    x, y = dimvec
    if a * b != 4:
        raise DefectError()
    if a == b:
        return x - y
    if a == 4:
        return 2 * x - y
    return x - 2 * y


@dataclass(frozen=True)
class SpeciesResult:
    passed: bool
    index: int | None = None

    def __bool__(self) -> bool:
        return self.passed


def species_criterion(dims: Sequence[tuple[int, int]]) -> SpeciesResult:
    """Fail at the first pair whose dimension product is at least 4."""
    for k, (left, right) in enumerate(dims):
        if left * right >= 4:
            return SpeciesResult(False, k)
    return SpeciesResult(True)


def species_pairs(A) -> list[tuple[int, int]]:
    """(n, n) for every unordered vertex pair joined by n > 0 arrows.

    Over a prime field every F_i is GF(p) itself, so both side dimensions of
    e_i J e_j equal the number of arrows between i and j.
    """
    counts: dict[tuple[str, str], int] = {}
    order = {v: k for k, v in enumerate(A.vertices)}
    for arrow in A.arrows:
        if arrow.source == arrow.target:
            continue
        key = tuple(sorted((arrow.source, arrow.target), key=order.__getitem__))
        counts[key] = counts.get(key, 0) + 1
    return [(n, n) for _, n in sorted(counts.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]]))]


def form_report(shape: BimoduleShape) -> dict:
    """Everything the ``form`` command prints, as plain data."""
    null = find_null_vector(shape)
    out = {
        "shape": {"a": shape.a, "b": shape.b},
        "tilde_matrix": [list(r) for r in tilde_matrix(shape)],
        "finite_type": is_finite_type(shape),
        "null_vector": list(null) if null else None,
    }
    spec = shape.spec
    if spec is not None:
        out["form"] = {"f1": spec.f1, "f2": spec.f2, "m": spec.m}
        out["positive_definite"] = is_positive_definite(spec)
        spec_null = find_null_vector(spec)
        out["form_null_vector"] = list(spec_null) if spec_null else None
    if shape.a * shape.b == 4 and null is not None:
        out["defect_of_null_vector"] = defect(shape, null)
    return out
