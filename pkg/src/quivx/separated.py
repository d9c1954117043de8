"""The separated algebra of a radical-square-zero presentation and the
functor M -> (M/JM, JM, f) into its representations.

For Lambda = KQ/I with J^2 = 0 the separated quiver has vertices
``v`` and ``v'`` for every vertex v of Q and one arrow ``a: i -> j'`` for
every arrow ``a: i -> j``; it has no relations.  A representation
(A, B, phi) of the triangular algebra is read as the representation with A
on the unprimed and B on the primed vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .classify import (
    DEFAULT_BUDGET_LOG2,
    AdmissibilityError,
    IsoClass,
    classify_all,
    dimension_vectors,
    enumerate_reps,
    within_budget,
)
from .exactfield import FieldMatrix, column_echelon_array, rank_array
from .presentation import AlgebraPresentation, is_admissible, is_radical_square_zero, make_presentation
from .repcat import (
    DEFAULT_SEED,
    Representation,
    are_isomorphic,
    composition_series,
    conjugate,
    is_indecomposable,
    is_morphism,
)

PRIME = "'"


class RadicalSquareError(ValueError):
    def __init__(self):
        super().__init__("radical square not zero")


def primed(v: str) -> str:
    return v + PRIME


@dataclass(frozen=True)
class SeparatedPresentation:
    source: AlgebraPresentation
    gamma: AlgebraPresentation
    vertex_map: dict = field(hash=False, compare=False)

    def top_vertex(self, v: str) -> str:
        return self.vertex_map[v][0]

    def socle_vertex(self, v: str) -> str:
        return self.vertex_map[v][1]

    def primed_vertices(self) -> list[str]:
        return [pair[1] for pair in self.vertex_map.values()]


def separated_presentation(A: AlgebraPresentation) -> SeparatedPresentation:
    if not is_radical_square_zero(A):
        raise RadicalSquareError()
    taken = set(A.vertices)
    vmap = {}
    for v in A.vertices:
        w = primed(v)
        while w in taken:
            w += PRIME
        taken.add(w)
        vmap[v] = (v, w)
    vertices = list(A.vertices) + [vmap[v][1] for v in A.vertices]
    arrows = [(a.name, a.source, vmap[a.target][1]) for a in A.arrows]
    gamma = make_presentation(vertices, arrows, [], A.p)
    return SeparatedPresentation(A, gamma, vmap)


@dataclass
class FunctorImage:
    """F(M) together with the bases used to build it.

    ``radical_basis[v]`` is the column-echelon basis of (JM)_v and
    ``radical_pivots[v]`` its pivot rows; the standard vectors at
    ``top_coords[v]`` (the other rows) give the basis of (M/JM)_v.
    """

    source: Representation
    image: Representation
    sep: SeparatedPresentation
    radical_basis: dict[str, np.ndarray]
    radical_pivots: dict[str, list[int]]
    top_coords: dict[str, list[int]]


def _radical_data(M: Representation):
    p = M.p
    basis, piv, top = {}, {}, {}
    for v in M.A.vertices:
        cols = [M.arr(a.name) for a in M.A.quiver.incoming(v)]
        stacked = np.concatenate(cols, axis=1) if cols else np.zeros((M.dims[v], 0), dtype=np.int64)
        b, pv = column_echelon_array(stacked, p)
        basis[v], piv[v] = b, pv
        top[v] = [k for k in range(M.dims[v]) if k not in set(pv)]
    return basis, piv, top


def apply_F(M: Representation, sep: SeparatedPresentation | None = None) -> FunctorImage:
    """F(M) = (M/JM, JM, f) as a representation of the separated quiver.

    The arrow a: i -> j' sends the class of e_k in (M/JM)_i to the
    coordinates of M_a e_k in the basis of (JM)_j; this is well defined
    because M_a kills (JM)_i when J^2 = 0.
    """
    if sep is None:
        sep = separated_presentation(M.A)
    elif sep.source != M.A:
        raise ValueError("separated presentation built for a different algebra")
    basis, piv, top = _radical_data(M)
    dims = {}
    for v in M.A.vertices:
        t, s = sep.vertex_map[v]
        dims[t] = len(top[v])
        dims[s] = len(piv[v])
    mats = {a.name: M.arr(a.name)[np.ix_(piv[a.target], top[a.source])] for a in M.A.arrows}
    image = Representation(sep.gamma, dims, mats)
    return FunctorImage(M, image, sep, basis, piv, top)


def apply_F_morphism(FM: FunctorImage, FN: FunctorImage, h: Mapping[str, object]) -> dict[str, FieldMatrix]:
    """F(g) = (g', g~): induced map on tops and restriction to radicals."""
    M, N = FM.source, FN.source
    p = M.p
    if not is_morphism(M, N, h):
        raise ValueError("not a morphism of representations")
    out = {}
    for v in M.A.vertices:
        g = h[v].array if isinstance(h[v], FieldMatrix) else np.asarray(h[v], dtype=np.int64)
        t, s = FM.sep.vertex_map[v]
        rad = (g @ FM.radical_basis[v]) % p
        out[s] = FieldMatrix._wrap(rad[FN.radical_pivots[v], :], p)
        lifted = g[:, FM.top_coords[v]] % p
        bN = FN.radical_basis[v]
        if bN.shape[1]:
            lifted = (lifted - bN @ lifted[FN.radical_pivots[v], :]) % p
        out[t] = FieldMatrix._wrap(lifted[FN.top_coords[v], :], p)
    return out


def phi_is_epi(X: Representation, sep: SeparatedPresentation) -> bool:
    """Whether the structure map onto the primed part is surjective at every primed vertex."""
    p = X.p
    for s in sep.primed_vertices():
        cols = [X.arr(a.name) for a in X.A.quiver.incoming(s)]
        if not cols:
            if X.dims[s]:
                return False
            continue
        if rank_array(np.concatenate(cols, axis=1), p) != X.dims[s]:
            return False
    return True


def is_primed_simple(X: Representation, sep: SeparatedPresentation) -> bool:
    support = [v for v, d in X.dims.items() if d]
    return X.total_dim == 1 and support[0] in set(sep.primed_vertices())


# ---------------------------------------------------------------------------
# bounded verification

CHECKS = ("indecomposability", "isomorphism", "epi_image", "non_image_simple", "length")


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)
    note: str = ""

    def fail(self, witness) -> None:
        self.passed = False
        if len(self.failures) < 20:
            self.failures.append(witness)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "failures": self.failures, "note": self.note}


@dataclass
class SeparationReport:
    bound: int
    checks: dict[str, CheckResult]
    transport: dict = field(default_factory=dict)
    skipped: list = field(default_factory=list)
    probabilistic: bool = False
    seed: int = DEFAULT_SEED
    p: int = 2
    gamma: AlgebraPresentation | None = field(default=None, repr=False)
    counts: dict = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    @property
    def verdict(self) -> str:
        if not self.all_passed:
            return "fail"
        if self.skipped or self.probabilistic:
            return "inconclusive"
        return "pass"

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "verdict": self.verdict,
            "field": {"p": self.p},
            "seed": hex(self.seed),
            "probabilistic": self.probabilistic,
            "checks": {name: c.to_dict() for name, c in self.checks.items()},
            "violation_transport": self.transport,
            "counts": self.counts,
            "skipped": [{"algebra": alg, "dimvec": list(dv)} for alg, dv in self.skipped],
        }


def _classes_up_to(A: AlgebraPresentation, bound: int, budget_log2: int, threads: int, seed: int,
                   skipped: list, tag: str) -> dict[tuple, list[IsoClass]]:
    out = {}
    for dv in dimension_vectors(len(A.vertices), bound):
        if not within_budget(A, dv, budget_log2):
            skipped.append((tag, dv))
            continue
        out[dv] = classify_all(A, dv, budget_log2, threads, seed)
    return out


def _scramble(M: Representation, rng: np.random.Generator) -> Representation:
    """M transported along a pseudorandom invertible change of basis."""
    g = {}
    for v in M.A.vertices:
        n = M.dims[v]
        while True:
            x = rng.integers(0, M.p, size=(n, n), dtype=np.int64)
            if rank_array(x, M.p) == n:
                break
        g[v] = x
    return conjugate(M, g)


def verify_separated(A: AlgebraPresentation, length_bound: int, budget_log2: int = DEFAULT_BUDGET_LOG2,
                     threads: int = 1, seed: int = DEFAULT_SEED) -> SeparationReport:
    """Check the functor's four structural properties and length preservation
    on everything enumerable up to ``length_bound``.

    The comparison of non-epi Gamma-indecomposables with F-images is a
    bounded check: only Gamma-representations of length <= bound are seen.
    """
    if not is_admissible(A, length_bound):
        raise AdmissibilityError(length_bound)
    sep = separated_presentation(A)
    G = sep.gamma
    checks = {name: CheckResult(name) for name in CHECKS}
    checks["epi_image"].note = f"bounded check: Gamma-indecomposables of length <= {length_bound}"
    skipped: list = []
    rng = np.random.default_rng(seed)

    lam = _classes_up_to(A, length_bound, budget_log2, threads, seed, skipped, "lambda")
    gam = _classes_up_to(G, length_bound, budget_log2, threads, seed, skipped, "gamma")
    prob = any(c.probabilistic for cs in list(lam.values()) + list(gam.values()) for c in cs)

    # (length) every enumerated M, plus composition series on class representatives
    length = checks["length"]
    for dv in lam:
        for M in enumerate_reps(A, dv, budget_log2):
            FM = apply_F(M, sep)
            length.checked += 1
            expect = {}
            for v in A.vertices:
                t, s = sep.vertex_map[v]
                expect[t] = M.dims[v] - len(FM.radical_pivots[v])
                expect[s] = len(FM.radical_pivots[v])
            if FM.image.total_dim != M.total_dim or FM.image.dims != expect:
                length.fail({"rep": M.to_dict()})
    for dv, classes in lam.items():
        for c in classes:
            M = c.representative
            if composition_series(apply_F(M, sep).image).length != composition_series(M).length:
                length.fail({"rep": M.to_dict(), "reason": "composition series lengths differ"})

    # (indecomposability) M indecomposable iff F(M) indecomposable, on all classes
    images: dict[tuple, list[tuple[Representation, Representation]]] = {}
    ind = checks["indecomposability"]
    for dv, classes in lam.items():
        for c in classes:
            M = c.representative
            FM = apply_F(M, sep).image
            res = is_indecomposable(FM, seed)
            prob |= res.probabilistic
            ind.checked += 1
            if res.indecomposable != bool(c.indecomposable):
                ind.fail({"rep": M.to_dict(), "indecomposable": c.indecomposable,
                          "image_indecomposable": res.indecomposable})
            if c.indecomposable:
                images.setdefault(FM.dimvec, []).append((M, FM))

    # (isomorphism) on indecomposables: distinct classes stay apart, and
    # a scrambled copy of M maps to something isomorphic to F(M)
    iso = checks["isomorphism"]
    for dv, pairs in images.items():
        for k, (M, FM) in enumerate(pairs):
            twin = apply_F(_scramble(M, rng), sep).image
            r = are_isomorphic(FM, twin, seed)
            prob |= r.probabilistic
            iso.checked += 1
            if not r.isomorphic:
                iso.fail({"rep": M.to_dict(), "reason": "F(M) not isomorphic to F of an isomorphic copy"})
            for M2, FM2 in pairs[k + 1:]:
                r = are_isomorphic(FM, FM2, seed)
                prob |= r.probabilistic
                iso.checked += 1
                if r.isomorphic:
                    iso.fail({"reps": [M.to_dict(), M2.to_dict()], "reason": "non-isomorphic modules with isomorphic images"})

    # (epi_image) and (non_image_simple) over Gamma-indecomposables
    epi, nonimg = checks["epi_image"], checks["non_image_simple"]
    for dv, classes in gam.items():
        for c in classes:
            if not c.indecomposable:
                continue
            X = c.representative
            if phi_is_epi(X, sep):
                epi.checked += 1
                found = False
                for M, FM in images.get(X.dimvec, []):
                    r = are_isomorphic(FM, X, seed)
                    prob |= r.probabilistic
                    if r.isomorphic:
                        found = True
                        break
                if not found:
                    epi.fail({"gamma_rep": X.to_dict()})
            else:
                nonimg.checked += 1
                if not is_primed_simple(X, sep):
                    nonimg.fail({"gamma_rep": X.to_dict()})
    for dv, pairs in images.items():
        for M, FM in pairs:
            epi.checked += 1
            if not phi_is_epi(FM, sep):
                epi.fail({"rep": M.to_dict(), "reason": "F(M) has non-surjective structure map"})

    # violation transport: two non-isomorphic Gamma-indecomposables with equal
    # composition factors must come from a violating pair over Lambda
    transport = {"passed": True, "gamma_violations": [], "lambda_violations": []}
    for dv, classes in gam.items():
        reps = [c.representative for c in classes if c.indecomposable]
        if len(reps) < 2:
            continue
        pre = []
        for X in reps:
            M = next((M for M, FM in images.get(X.dimvec, []) if are_isomorphic(FM, X, seed).isomorphic), None)
            pre.append(M)
        pulled = all(M is not None for M in pre) and len({M.dimvec for M in pre}) == 1
        transport["passed"] &= pulled
        transport["gamma_violations"].append({
            "dimvec": list(dv),
            "preimage_dimvecs": [list(M.dimvec) if M is not None else None for M in pre],
            "pulled_back": pulled,
        })
    for dv, classes in lam.items():
        reps = [c.representative for c in classes if c.indecomposable]
        if len(reps) >= 2:
            transport["lambda_violations"].append({
                "dimvec": list(dv),
                "image_dimvecs": [list(apply_F(M, sep).image.dimvec) for M in reps],
            })

    counts = {
        "lambda": [{"dimvec": list(dv), "count": sum(1 for c in cs if c.indecomposable)} for dv, cs in lam.items()],
        "gamma": [{"dimvec": list(dv), "count": sum(1 for c in cs if c.indecomposable)} for dv, cs in gam.items()],
    }
    return SeparationReport(length_bound, checks, transport, skipped, prob, seed, A.p, G, counts)
