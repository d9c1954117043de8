"""Brute-force classification of representations and the bounded check of
whether indecomposables are determined by their composition factors.

Enumeration walks every matrix tuple of a dimension vector in lexicographic
entry order, pruning by each relation as soon as all of its arrows are
assigned.  Tuples are bucketed into isomorphism classes; the first member
met is the class representative, hence the lexicographically least.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .exactfield import all_matrices, rank_array
from .presentation import AlgebraPresentation, is_admissible
from .repcat import (
    DEFAULT_SEED,
    NotAdmissibleError,
    Representation,
    are_isomorphic,
    is_indecomposable,
)

DEFAULT_BUDGET_LOG2 = 24
_CHUNK = 1 << 16
_MERGE_BLOCK = 256
_PROFILE_PATHS = 64


class BudgetExceededError(RuntimeError):
    """The dimension vector needs more matrix assignments than allowed."""

    def __init__(self, dimvec, entries: int, p: int, budget_log2: int):
        self.dimvec = tuple(dimvec)
        self.entries = entries
        super().__init__(
            f"dimension vector {self.dimvec} needs {p}^{entries} assignments, "
            f"over the budget of 2^{budget_log2}")


def _dims_of(A: AlgebraPresentation, dimvec) -> dict[str, int]:
    if isinstance(dimvec, dict):
        return {v: int(dimvec.get(v, 0)) for v in A.vertices}
    dimvec = tuple(dimvec)
    if len(dimvec) != len(A.vertices):
        raise ValueError(f"dimension vector {dimvec} has the wrong length for {len(A.vertices)} vertices")
    return dict(zip(A.vertices, (int(d) for d in dimvec)))


def entry_count(A: AlgebraPresentation, dimvec) -> int:
    dims = _dims_of(A, dimvec)
    return sum(dims[a.target] * dims[a.source] for a in A.arrows)


def within_budget(A: AlgebraPresentation, dimvec, budget_log2: int = DEFAULT_BUDGET_LOG2) -> bool:
    return A.p ** entry_count(A, dimvec) <= 2**budget_log2


# ---------------------------------------------------------------------------
# enumeration

def enumerate_batches(A: AlgebraPresentation, dimvec, budget_log2: int = DEFAULT_BUDGET_LOG2
                      ) -> Iterator[dict[str, np.ndarray]]:
    """Yield stacks ``{arrow: (B, rows, cols)}`` of valid tuples in lexicographic order."""
    dims = _dims_of(A, dimvec)
    if not within_budget(A, dims, budget_log2):
        raise BudgetExceededError(tuple(dims.values()), entry_count(A, dims), A.p, budget_log2)
    p = A.p
    arrows = list(A.arrows)
    order = {a.name: k for k, a in enumerate(arrows)}
    # relations become checkable once their last arrow is assigned
    due: dict[int, list] = {}
    for rel in A.relations:
        if rel.terms:
            due.setdefault(max(order[x] for x in rel.arrows_used()), []).append(rel)
    shapes = [(dims[a.target], dims[a.source]) for a in arrows]

    def prune(batch: dict[str, np.ndarray], k: int) -> dict[str, np.ndarray]:
        rels = due.get(k)
        if not rels:
            return batch
        n = next(iter(batch.values())).shape[0]
        keep = np.ones(n, dtype=bool)
        for rel in rels:
            total = None
            for coeff, path in rel.terms:
                out = batch[path[0]]
                for name in path[1:]:
                    out = np.matmul(batch[name], out) % p
                term = coeff * out
                total = term if total is None else total + term
            keep &= ~(total % p).reshape(n, -1).any(axis=1)
        return {name: arr[keep] for name, arr in batch.items()}

    def rec(batch: dict[str, np.ndarray], size: int, k: int):
        if k == len(arrows):
            yield batch
            return
        name = arrows[k].name
        r, c = shapes[k]
        m = p ** (r * c)
        if m <= _CHUNK:
            mats = all_matrices(r, c, p)
            step = max(1, _CHUNK // m)
            for s in range(0, size, step):
                sub = {n: a[s:s + step] for n, a in batch.items()}
                nb = min(step, size - s)
                ext = {n: np.repeat(a, m, axis=0) for n, a in sub.items()}
                ext[name] = np.tile(mats, (nb, 1, 1))
                ext = prune(ext, k)
                rows = ext[name].shape[0]
                if rows:
                    yield from rec(ext, rows, k + 1)
        else:
            for s in range(size):
                for start in range(0, m, _CHUNK):
                    mats = all_matrices(r, c, p, start, min(m, start + _CHUNK))
                    ext = {n: np.repeat(a[s:s + 1], mats.shape[0], axis=0) for n, a in batch.items()}
                    ext[name] = mats
                    ext = prune(ext, k)
                    rows = ext[name].shape[0]
                    if rows:
                        yield from rec(ext, rows, k + 1)

    if not arrows:
        yield {}
        return
    yield from rec({}, 1, 0)


def enumerate_reps(A: AlgebraPresentation, dimvec, budget_log2: int = DEFAULT_BUDGET_LOG2
                   ) -> Iterator[Representation]:
    """Every representation with the given dimension vector, lexicographically."""
    dims = _dims_of(A, dimvec)
    for batch in enumerate_batches(A, dims, budget_log2):
        if not batch:
            yield Representation(A, dims, {})
            continue
        n = next(iter(batch.values())).shape[0]
        for i in range(n):
            yield Representation(A, dims, {name: arr[i] for name, arr in batch.items()})


def dimension_vectors(n: int, bound: int, lo: int = 1) -> list[tuple[int, ...]]:
    """All vectors in N^n with entry sum in [lo, bound], lexicographically ordered."""
    out = []

    def rec(prefix: list[int], left: int):
        if len(prefix) == n:
            if sum(prefix) >= lo:
                out.append(tuple(prefix))
            return
        for x in range(left + 1):
            prefix.append(x)
            rec(prefix, left - x)
            prefix.pop()

    rec([], bound)
    return out


# ---------------------------------------------------------------------------
# isomorphism classes

def rank_profile(M: Representation, max_len: int = 3) -> tuple:
    """Ranks of the matrices of all short paths: an isomorphism invariant."""
    quiver = M.A.quiver
    ranks = []
    frontier = [((a.name,), M.arr(a.name)) for a in quiver.arrows]
    length = 1
    while frontier and len(ranks) < _PROFILE_PATHS:
        nxt = []
        for path, mat in frontier:
            ranks.append(rank_array(mat, M.p))
            if length < max_len:
                for b in quiver.outgoing(quiver.arrow(path[-1]).target):
                    nxt.append((path + (b.name,), (M.arr(b.name) @ mat) % M.p))
        frontier = nxt
        length += 1
    return tuple(ranks[:_PROFILE_PATHS])


@dataclass
class IsoClass:
    representative: Representation
    size: int = 1
    indecomposable: bool | None = None
    probabilistic: bool = False


def _bucket(reps: Sequence[Representation], seed: int) -> list[IsoClass]:
    classes: list[IsoClass] = []
    buckets: dict[tuple, list[int]] = {}
    for M in reps:
        key = rank_profile(M)
        for idx in buckets.get(key, ()):
            res = are_isomorphic(classes[idx].representative, M, seed)
            classes[idx].probabilistic |= res.probabilistic
            if res.isomorphic:
                classes[idx].size += 1
                break
        else:
            buckets.setdefault(key, []).append(len(classes))
            classes.append(IsoClass(M))
    return classes


def _merge(global_classes: list[IsoClass], buckets: dict, local: list[IsoClass], seed: int) -> None:
    for cls in local:
        M = cls.representative
        key = rank_profile(M)
        for idx in buckets.get(key, ()):
            res = are_isomorphic(global_classes[idx].representative, M, seed)
            global_classes[idx].probabilistic |= res.probabilistic | cls.probabilistic
            if res.isomorphic:
                global_classes[idx].size += cls.size
                break
        else:
            buckets.setdefault(key, []).append(len(global_classes))
            global_classes.append(cls)


def _blocks(it: Iterator[Representation], size: int) -> Iterator[list[Representation]]:
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def classify_all(A: AlgebraPresentation, dimvec, budget_log2: int = DEFAULT_BUDGET_LOG2,
                 threads: int = 1, seed: int = DEFAULT_SEED) -> list[IsoClass]:
    """Isomorphism classes of all representations with this dimension vector.

    The stream is cut into fixed-size blocks bucketed independently, then
    merged in block order; the outcome does not depend on ``threads``.
    """
    stream = enumerate_reps(A, dimvec, budget_log2)
    classes: list[IsoClass] = []
    buckets: dict = {}
    dims = _dims_of(A, dimvec)
    nonzero = sum(dims.values()) > 0
    if threads <= 1:
        for block in _blocks(stream, _MERGE_BLOCK):
            _merge(classes, buckets, _bucket(block, seed), seed)
        for cls in classes:
            _mark(cls, seed, nonzero)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for local in pool.map(lambda b: _bucket(b, seed), _blocks(stream, _MERGE_BLOCK)):
                _merge(classes, buckets, local, seed)
            list(pool.map(lambda c: _mark(c, seed, nonzero), classes))
    return classes


def _mark(cls: IsoClass, seed: int, nonzero: bool) -> None:
    if not nonzero:
        cls.indecomposable = False
        return
    res = is_indecomposable(cls.representative, seed)
    cls.indecomposable = res.indecomposable
    cls.probabilistic |= res.probabilistic


@dataclass
class IsoClassTable:
    dimvec: tuple[int, ...]
    representatives: list[Representation]
    class_sizes: list[int]
    probabilistic: bool = False

    @property
    def count(self) -> int:
        return len(self.representatives)

    def to_dict(self) -> dict:
        return {
            "dimvec": list(self.dimvec),
            "count": self.count,
            "classes": [{"rep": R.to_dict(), "size": s} for R, s in zip(self.representatives, self.class_sizes)],
            "probabilistic": self.probabilistic,
        }


def table_from_classes(dimvec, classes: Sequence[IsoClass]) -> IsoClassTable:
    ind = [c for c in classes if c.indecomposable]
    return IsoClassTable(
        tuple(dimvec),
        [c.representative for c in ind],
        [c.size for c in ind],
        any(c.probabilistic for c in classes),
    )


def classify_indecomposables(A: AlgebraPresentation, dimvec, budget_log2: int = DEFAULT_BUDGET_LOG2,
                             threads: int = 1, seed: int = DEFAULT_SEED) -> IsoClassTable:
    dims = _dims_of(A, dimvec)
    dv = tuple(dims[v] for v in A.vertices)
    return table_from_classes(dv, classify_all(A, dims, budget_log2, threads, seed))


# ---------------------------------------------------------------------------
# the bounded property check

HOLDS = "holds-up-to-bound"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


class AdmissibilityError(NotAdmissibleError):
    def __init__(self, bound: int):
        super().__init__(f"not admissible: paths are not certified nilpotent within length {bound}")


@dataclass
class Violation:
    dimvec: tuple[int, ...]
    reps: list[Representation]

    def to_dict(self) -> dict:
        return {"dimvec": list(self.dimvec), "reps": [R.to_dict() for R in self.reps]}


@dataclass
class XReport:
    bound: int
    verdict: str
    violations: list[Violation]
    counts: list[tuple[tuple[int, ...], int]]
    skipped: list[tuple[tuple[int, ...], str]] = field(default_factory=list)
    probabilistic: bool = False
    seed: int = DEFAULT_SEED
    p: int = 2
    tables: dict = field(default_factory=dict, repr=False)

    @property
    def total_classes(self) -> int:
        return sum(c for _, c in self.counts)

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "verdict": self.verdict,
            "field": {"p": self.p},
            "seed": hex(self.seed),
            "probabilistic": self.probabilistic,
            "violations": [v.to_dict() for v in self.violations],
            "counts": [{"dimvec": list(d), "count": c} for d, c in self.counts],
            "skipped": [{"dimvec": list(d), "reason": r} for d, r in self.skipped],
        }


def check_property_x(A: AlgebraPresentation, length_bound: int, budget_log2: int = DEFAULT_BUDGET_LOG2,
                     threads: int = 1, seed: int = DEFAULT_SEED) -> XReport:
    """Classify indecomposables of every length 1..bound and look for two
    non-isomorphic ones sharing a dimension vector (= composition factors).

    A violation is a certificate.  Without one the verdict only claims
    the property up to the bound, or is inconclusive if a dimension vector
    had to be skipped or a probabilistic search was used.
    """
    if length_bound < 1:
        raise ValueError("length bound must be >= 1")
    if not is_admissible(A, length_bound):
        raise AdmissibilityError(length_bound)
    violations, counts, skipped, tables = [], [], [], {}
    prob = False
    for dv in dimension_vectors(len(A.vertices), length_bound):
        if not within_budget(A, dv, budget_log2):
            skipped.append((dv, str(BudgetExceededError(dv, entry_count(A, dv), A.p, budget_log2))))
            continue
        table = classify_indecomposables(A, dv, budget_log2, threads, seed)
        tables[dv] = table
        prob |= table.probabilistic
        counts.append((dv, table.count))
        if table.count >= 2:
            violations.append(Violation(dv, list(table.representatives)))
    if violations:
        verdict = FAILS
    elif skipped or prob:
        verdict = INCONCLUSIVE
    else:
        verdict = HOLDS
    return XReport(length_bound, verdict, violations, counts, skipped, prob, seed, A.p, tables)


def count_table(A: AlgebraPresentation, length_bound: int, budget_log2: int = DEFAULT_BUDGET_LOG2,
                threads: int = 1, seed: int = DEFAULT_SEED) -> list[tuple[tuple[int, ...], int]]:
    """Rows (dimvec, number of indecomposable classes), all dimvecs up to the bound."""
    return check_property_x(A, length_bound, budget_log2, threads, seed).counts


def plateau_length(counts: Sequence[tuple[tuple[int, ...], int]]) -> int | None:
    """Largest length carrying an indecomposable, if some longer length has none.

    Returns None when the longest enumerated length still has indecomposables.
    """
    by_len: dict[int, int] = {}
    for dv, c in counts:
        by_len[sum(dv)] = by_len.get(sum(dv), 0) + c
    if not by_len:
        return None
    top = max(by_len)
    if by_len[top]:
        return None
    nonzero = [L for L, c in by_len.items() if c]
    return max(nonzero, default=0)
