"""Representations of a quiver with relations and their morphisms.

A representation stores one vector space dimension per vertex and one matrix
per arrow ``a: i -> j`` of shape ``dim(j) x dim(i)``.  Morphisms are tuples
of per-vertex matrices; they are kept as stacked numpy arrays
``(d, rows, cols)`` so that whole families of them can be tested at once.

Composition factors of a representation over an admissible presentation
are the vertex simples, one per dimension, so :func:`comp_vector` is the
dimension vector.  :func:`composition_series` builds an explicit series
from the radical filtration and is used to cross-check that identification.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np

from .exactfield import (
    FieldMatrix,
    ShapeError,
    coefficient_block,
    column_echelon_array,
    gl_exponent,
    invert_array,
    nullspace_array,
    rank_array,
    batch_power,
)
from .presentation import AlgebraPresentation

EXHAUSTIVE_LIMIT = 1 << 20
DEFAULT_SEED = 0xC0FFEE
TRIAL_BUDGET = 4096
_BATCH_CELLS = 1 << 21


class ZeroModuleError(ValueError):
    def __init__(self, msg: str = "zero module"):
        super().__init__(msg)


class NotAdmissibleError(ValueError):
    def __init__(self, msg: str = "not admissible"):
        super().__init__(msg)


class Representation:
    """A finite-dimensional representation of ``A``'s quiver over GF(p).

    Only shapes are validated on construction; use
    :func:`evaluate_relations` to test the relations.
    """

    __slots__ = ("A", "dims", "mats", "_arrays", "_key")

    def __init__(self, A: AlgebraPresentation, dims: Mapping[str, int], mats: Mapping[str, object] | None = None):
        self.A = A
        mats = dict(mats or {})
        unknown = set(dims) - set(A.vertices)
        if unknown:
            raise ValueError(f"unknown vertices {sorted(unknown)}")
        self.dims = {v: int(dims.get(v, 0)) for v in A.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise ValueError("dimensions must be nonnegative")
        extra = set(mats) - {a.name for a in A.arrows}
        if extra:
            raise ValueError(f"unknown arrows {sorted(extra)}")
        arrays = {}
        for a in A.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = mats.get(a.name)
            if m is None:
                arr = np.zeros(shape, dtype=np.int64)
            elif isinstance(m, FieldMatrix):
                if m.p != A.p:
                    raise ValueError(f"arrow {a.name}: matrix over GF({m.p}), expected GF({A.p})")
                arr = m.array
            else:
                arr = np.asarray(m, dtype=np.int64)
                if arr.size == 0:
                    arr = arr.reshape(shape)
                arr = arr % A.p
            if arr.shape != shape:
                raise ShapeError(f"arrow {a.name}: matrix shape {arr.shape}, expected {shape}")
            arr = np.ascontiguousarray(arr, dtype=np.int64)
            arr.setflags(write=False)
            arrays[a.name] = arr
        self._arrays = arrays
        self.mats = {k: FieldMatrix._wrap(v, A.p) for k, v in arrays.items()}
        self._key = None

    @classmethod
    def zero(cls, A: AlgebraPresentation) -> "Representation":
        return cls(A, {})

    @classmethod
    def simple(cls, A: AlgebraPresentation, vertex: str) -> "Representation":
        return cls(A, {vertex: 1})

    @property
    def p(self) -> int:
        return self.A.p

    def arr(self, arrow: str) -> np.ndarray:
        return self._arrays[arrow]

    @property
    def dimvec(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.A.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def entries(self) -> tuple[int, ...]:
        """All matrix entries, arrows in declaration order, row-major."""
        if self._key is None:
            self._key = tuple(int(x) for a in self.A.arrows for x in self._arrays[a.name].ravel())
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return self.A == other.A and self.dims == other.dims and self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash((self.dimvec, self.entries()))

    def __repr__(self) -> str:
        mats = {k: v.tolist() for k, v in self._arrays.items()}
        return f"Representation(dims={self.dimvec}, mats={mats})"

    def to_dict(self) -> dict:
        return {
            "dims": {v: self.dims[v] for v in self.A.vertices},
            "mats": {a.name: self._arrays[a.name].tolist() for a in self.A.arrows},
        }

    def digest(self) -> bytes:
        return hashlib.sha256(json.dumps([self.dimvec, self.entries(), self.p]).encode()).digest()


def rep_from_dict(A: AlgebraPresentation, data: Mapping, check: bool = True) -> Representation:
    """Read the representation file format; relations are enforced when ``check``."""
    dims = {str(k): int(v) for k, v in data.get("dims", {}).items()}
    mats = {}
    for name, rows in data.get("mats", {}).items():
        mats[str(name)] = rows
    M = Representation(A, dims, mats)
    if check and not evaluate_relations(M):
        raise ValueError("representation does not satisfy the relations")
    return M


def load_rep(A: AlgebraPresentation, path) -> Representation:
    with open(path, encoding="utf-8") as fh:
        return rep_from_dict(A, json.load(fh))


# ---------------------------------------------------------------------------
# relations

def path_matrix(M: Representation, path: Sequence[str]) -> np.ndarray:
    """Matrix of a path; the first arrow acts first."""
    out = M.arr(path[0])
    for name in path[1:]:
        out = (M.arr(name) @ out) % M.p
    return out


def evaluate_relations(M: Representation) -> bool:
    p = M.p
    for rel in M.A.relations:
        if not rel.terms:
            continue
        total = None
        for coeff, path in rel.terms:
            term = (coeff * path_matrix(M, path)) % p
            total = term if total is None else (total + term) % p
        if total.any():
            return False
    return True


# ---------------------------------------------------------------------------
# morphisms

@dataclass
class HomSpace:
    """Basis of Hom(source, target).

    ``blocks[v]`` has shape ``(dim, target.dims[v], source.dims[v])``; basis
    element k is the tuple ``(blocks[v][k] for v in vertices)``.  Basis
    vector k is 1 at ``free[k]`` and 0 at the other free unknowns, so
    coordinates of any morphism are read off at ``free``.
    """

    source: Representation
    target: Representation
    blocks: dict[str, np.ndarray]
    free: list[int]

    @property
    def dim(self) -> int:
        return len(self.free)

    @property
    def p(self) -> int:
        return self.source.p

    @property
    def basis(self) -> list[dict[str, FieldMatrix]]:
        return [self.element_at(k) for k in range(self.dim)]

    def element_at(self, k: int) -> dict[str, FieldMatrix]:
        return {v: FieldMatrix._wrap(b[k], self.p) for v, b in self.blocks.items()}

    def combine(self, coeffs: np.ndarray) -> dict[str, np.ndarray]:
        """Stacked morphisms for a batch of coefficient rows ``(B, dim)``."""
        coeffs = np.asarray(coeffs, dtype=np.int64)
        return {v: np.tensordot(coeffs, b, axes=(1, 0)) % self.p for v, b in self.blocks.items()}

    def element(self, coeffs: Sequence[int]) -> dict[str, FieldMatrix]:
        arrs = self.combine(np.asarray([coeffs], dtype=np.int64))
        return {v: FieldMatrix._wrap(a[0], self.p) for v, a in arrs.items()}

    def flatten(self, h: Mapping[str, object]) -> np.ndarray:
        parts = []
        for v in self.source.A.vertices:
            x = h[v]
            parts.append((x.array if isinstance(x, FieldMatrix) else np.asarray(x)).ravel())
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def coordinates(self, h: Mapping[str, object]) -> np.ndarray:
        return self.flatten(h)[self.free] % self.p


def intertwiner_system(M: Representation, N: Representation) -> tuple[np.ndarray, dict[str, tuple[int, int]]]:
    """Linear system whose kernel is Hom(M, N).

    Unknowns are the per-vertex matrices h_v (row-major, vertices in order);
    one block of equations ``h_j M_a - N_a h_i = 0`` per arrow a: i -> j.
    """
    A = M.A
    p = M.p
    offsets = {}
    n = 0
    for v in A.vertices:
        size = N.dims[v] * M.dims[v]
        offsets[v] = (n, size)
        n += size
    rows = []
    for a in A.arrows:
        i, j = a.source, a.target
        eq = np.zeros((N.dims[j] * M.dims[i], n), dtype=np.int64)
        if eq.shape[0] == 0:
            continue
        oj, sj = offsets[j]
        oi, si = offsets[i]
        if sj:
            eq[:, oj:oj + sj] += np.kron(np.eye(N.dims[j], dtype=np.int64), M.arr(a.name).T)
        if si:
            eq[:, oi:oi + si] -= np.kron(N.arr(a.name), np.eye(M.dims[i], dtype=np.int64))
        rows.append(eq % p)
    system = np.concatenate(rows, axis=0) if rows else np.zeros((0, n), dtype=np.int64)
    return system, offsets


def hom_space(M: Representation, N: Representation) -> HomSpace:
    if M.A != N.A:
        raise ValueError("representations of different presentations")
    system, offsets = intertwiner_system(M, N)
    basis, free = nullspace_array(system, M.p)
    d = basis.shape[1]
    blocks = {}
    for v in M.A.vertices:
        o, size = offsets[v]
        blocks[v] = np.ascontiguousarray(basis[o:o + size].T.reshape(d, N.dims[v], M.dims[v]))
    return HomSpace(M, N, blocks, free)


def is_morphism(M: Representation, N: Representation, h: Mapping[str, object]) -> bool:
    p = M.p
    def arr(v):
        x = h[v]
        return x.array if isinstance(x, FieldMatrix) else np.asarray(x, dtype=np.int64)
    for a in M.A.arrows:
        lhs = (arr(a.target) @ M.arr(a.name)) % p
        rhs = (N.arr(a.name) @ arr(a.source)) % p
        if not np.array_equal(lhs, rhs):
            return False
    return True


@dataclass
class EndAlgebra:
    """End(M) with structure constants: ``b_i b_j = sum_k table[i, j, k] b_k``.

    The product is composition, ``b_i b_j = b_i o b_j`` (b_j applied first).
    """

    space: HomSpace
    table: np.ndarray

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list[dict[str, FieldMatrix]]:
        return self.space.basis


def end_algebra(M: Representation) -> EndAlgebra:
    E = hom_space(M, M)
    d = E.dim
    p = M.p
    table = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            prod = [(E.blocks[v][i] @ E.blocks[v][j]) % p for v in M.A.vertices]
            vec = np.concatenate([x.ravel() for x in prod]) if prod else np.zeros(0, dtype=np.int64)
            table[i, j] = vec[E.free]
    return EndAlgebra(E, table)


# ---------------------------------------------------------------------------
# searching a hom space

def _batch_size(space: HomSpace) -> int:
    cells = sum(int(np.prod(b.shape[1:])) for b in space.blocks.values()) or 1
    return max(16, min(8192, _BATCH_CELLS // cells))


def _coefficient_batches(space: HomSpace, exhaustive: bool, seed: int) -> Iterator[np.ndarray]:
    """Yield coefficient batches: the basis first, then everything else.

    Exhaustive mode walks GF(p)^d in lexicographic order (growing batch
    sizes, so early hits stay cheap); otherwise a seeded pseudorandom
    stream derived from the inputs' digests supplies TRIAL_BUDGET trials.
    """
    d, p = space.dim, space.p
    if d == 0:
        return
    yield np.eye(d, dtype=np.int64)
    if exhaustive:
        total = p**d
        start, size, cap = 1, 64, _batch_size(space)
        while start < total:
            stop = min(total, start + size)
            yield coefficient_block(start, stop, d, p)
            start = stop
            size = min(cap, size * 4)
    else:
        digest = hashlib.sha256(space.source.digest() + space.target.digest()).digest()
        rng = np.random.default_rng([seed, int.from_bytes(digest[:8], "big")])
        done = 0
        cap = _batch_size(space)
        while done < TRIAL_BUDGET:
            n = min(cap, TRIAL_BUDGET - done)
            yield rng.integers(0, p, size=(n, d), dtype=np.int64)
            done += n


def _first_hit(space: HomSpace, test: Callable[[dict[str, np.ndarray]], np.ndarray], seed: int):
    """First element (in search order) passing ``test``; (element, exhaustive)."""
    exhaustive = space.p ** space.dim <= EXHAUSTIVE_LIMIT
    for coeffs in _coefficient_batches(space, exhaustive, seed):
        elems = space.combine(coeffs)
        hits = np.flatnonzero(test(elems))
        if hits.size:
            k = int(hits[0])
            return {v: e[k] for v, e in elems.items()}, exhaustive
    return None, exhaustive


def _fitting_splits(M: Representation) -> Callable[[dict[str, np.ndarray]], np.ndarray]:
    """Batch test: the Fitting idempotent of x is neither 0 nor the identity."""
    n = max(M.dims.values(), default=0)
    e = gl_exponent(n, M.p)
    verts = [v for v in M.A.vertices if M.dims[v]]

    def test(elems):
        nonzero = None
        nonid = None
        for v in verts:
            pw = batch_power(elems[v], e, M.p)
            nz = pw.reshape(pw.shape[0], -1).any(axis=1)
            ni = (pw != np.eye(M.dims[v], dtype=np.int64)).reshape(pw.shape[0], -1).any(axis=1)
            nonzero = nz if nonzero is None else nonzero | nz
            nonid = ni if nonid is None else nonid | ni
        return nonzero & nonid

    return test


def fitting_idempotent(M: Representation, h: Mapping[str, np.ndarray]) -> dict[str, np.ndarray]:
    n = max(M.dims.values(), default=0)
    e = gl_exponent(n, M.p)
    return {v: batch_power(np.asarray(h[v])[None], e, M.p)[0] for v in M.A.vertices}


@dataclass
class Indecomposability:
    indecomposable: bool
    witness: dict[str, FieldMatrix] | None = None
    probabilistic: bool = False
    end_dim: int = 0

    def __bool__(self) -> bool:
        return self.indecomposable


def is_indecomposable(M: Representation, seed: int = DEFAULT_SEED) -> Indecomposability:
    """Decide indecomposability by looking for a nontrivial idempotent in End(M).

    Every endomorphism x has a power (its Fitting idempotent) projecting onto
    im(x^n) along ker(x^n); M is decomposable iff some x yields a nontrivial
    one.  End(M) is scanned exhaustively when it has at most 2^20 elements.
    """
    if M.is_zero():
        raise ZeroModuleError()
    E = hom_space(M, M)
    if E.dim == 1:
        return Indecomposability(True, end_dim=1)
    hit, exhaustive = _first_hit(E, _fitting_splits(M), seed)
    if hit is None:
        return Indecomposability(True, probabilistic=not exhaustive, end_dim=E.dim)
    idem = fitting_idempotent(M, hit)
    return Indecomposability(False, {v: FieldMatrix._wrap(x, M.p) for v, x in idem.items()}, False, E.dim)


@dataclass
class Isomorphism:
    isomorphic: bool
    witness: dict[str, FieldMatrix] | None = None
    probabilistic: bool = False

    def __bool__(self) -> bool:
        return self.isomorphic


def _all_invertible(M: Representation) -> Callable[[dict[str, np.ndarray]], np.ndarray]:
    n = max(M.dims.values(), default=0)
    e = gl_exponent(n, M.p)
    verts = [v for v in M.A.vertices if M.dims[v]]

    def test(elems):
        ok = np.ones(next(iter(elems.values())).shape[0], dtype=bool)
        for v in verts:
            pw = batch_power(elems[v], e, M.p)
            ok &= (pw == np.eye(M.dims[v], dtype=np.int64)).reshape(pw.shape[0], -1).all(axis=1)
        return ok

    return test


def conjugate(M: Representation, g: Mapping[str, object]) -> Representation:
    """Transport M along per-vertex isomorphisms g: arrow maps g_j M_a g_i^-1."""
    p = M.p
    ga = {v: (g[v].array if isinstance(g[v], FieldMatrix) else np.asarray(g[v], dtype=np.int64)) % p
          for v in M.A.vertices}
    ginv = {v: invert_array(x, p) for v, x in ga.items()}
    mats = {a.name: (ga[a.target] @ M.arr(a.name) @ ginv[a.source]) % p for a in M.A.arrows}
    return Representation(M.A, M.dims, mats)


def are_isomorphic(M: Representation, N: Representation, seed: int = DEFAULT_SEED) -> Isomorphism:
    """Search Hom(M, N) for an element invertible at every vertex."""
    if M.A != N.A:
        raise ValueError("representations of different presentations")
    if M.dimvec != N.dimvec:
        return Isomorphism(False)
    if M.is_zero():
        return Isomorphism(True, {v: FieldMatrix.zeros(0, 0, M.p) for v in M.A.vertices})
    for a in M.A.arrows:
        if rank_array(M.arr(a.name), M.p) != rank_array(N.arr(a.name), M.p):
            return Isomorphism(False)
    H = hom_space(M, N)
    hit, exhaustive = _first_hit(H, _all_invertible(M), seed)
    if hit is None:
        return Isomorphism(False, probabilistic=not exhaustive)
    # certify the witness by exact inversion
    if conjugate(M, hit) != N:
        raise AssertionError("isomorphism witness failed verification")
    return Isomorphism(True, {v: FieldMatrix._wrap(x, M.p) for v, x in hit.items()})


# ---------------------------------------------------------------------------
# sub-objects and sums

def comp_vector(M: Representation) -> tuple[int, ...]:
    return M.dimvec


def span_basis(M: Representation, vectors: Mapping[str, np.ndarray]) -> dict[str, np.ndarray]:
    """Canonical column-echelon basis per vertex of the given column spans."""
    out = {}
    for v in M.A.vertices:
        x = np.asarray(vectors[v], dtype=np.int64)
        if x.ndim != 2:
            x = x.reshape(M.dims[v], -1)
        out[v] = column_echelon_array(x, M.p)[0]
    return out


def _pivot_rows(basis: np.ndarray, p: int) -> list[int]:
    return column_echelon_array(basis, p)[1] if basis.size else []


def generated_image(M: Representation, sub: Mapping[str, np.ndarray]) -> dict[str, np.ndarray]:
    """Per vertex j, the span of M_a(sub_i) over arrows a: i -> j."""
    p = M.p
    out = {}
    for v in M.A.vertices:
        cols = [(M.arr(a.name) @ sub[a.source]) % p for a in M.A.quiver.incoming(v)]
        stacked = np.concatenate(cols, axis=1) if cols else np.zeros((M.dims[v], 0), dtype=np.int64)
        out[v] = column_echelon_array(stacked, p)[0]
    return out


def radical(M: Representation) -> dict[str, np.ndarray]:
    """Basis of rad M: the subrepresentation spanned by all arrow images."""
    full = {v: np.eye(M.dims[v], dtype=np.int64) for v in M.A.vertices}
    return generated_image(M, full)


def radical_filtration(M: Representation) -> list[dict[str, np.ndarray]]:
    """M = R_0 > R_1 > ... > R_t = 0 with R_{k+1} = rad R_k."""
    cur = {v: np.eye(M.dims[v], dtype=np.int64) for v in M.A.vertices}
    layers = [cur]
    while any(b.shape[1] for b in cur.values()):
        nxt = generated_image(M, cur)
        if all(nxt[v].shape[1] == cur[v].shape[1] for v in M.A.vertices):
            raise NotAdmissibleError()
        layers.append(nxt)
        cur = nxt
    return layers


def restrict(M: Representation, basis: Mapping[str, np.ndarray]) -> Representation:
    """The subrepresentation spanned by column-echelon ``basis``, in that basis."""
    p = M.p
    piv = {v: _pivot_rows(basis[v], p) for v in M.A.vertices}
    mats = {}
    for a in M.A.arrows:
        img = (M.arr(a.name) @ basis[a.source]) % p
        mats[a.name] = img[piv[a.target], :]
    return Representation(M.A, {v: basis[v].shape[1] for v in M.A.vertices}, mats)


def quotient(M: Representation, basis: Mapping[str, np.ndarray]) -> Representation:
    """M / sub, coordinates on the non-pivot rows of the sub's echelon basis."""
    p = M.p
    piv = {v: _pivot_rows(basis[v], p) for v in M.A.vertices}
    keep = {v: [k for k in range(M.dims[v]) if k not in set(piv[v])] for v in M.A.vertices}

    def reduce(v, x):
        b = basis[v]
        if b.shape[1]:
            x = (x - b @ x[piv[v], :]) % p
        return x[keep[v], :]

    mats = {a.name: reduce(a.target, M.arr(a.name)[:, keep[a.source]]) for a in M.A.arrows}
    return Representation(M.A, {v: len(keep[v]) for v in M.A.vertices}, mats)


def direct_sum(M: Representation, N: Representation) -> Representation:
    if M.A != N.A:
        raise ValueError("representations of different presentations")
    dims = {v: M.dims[v] + N.dims[v] for v in M.A.vertices}
    mats = {}
    for a in M.A.arrows:
        m, n = M.arr(a.name), N.arr(a.name)
        out = np.zeros((dims[a.target], dims[a.source]), dtype=np.int64)
        out[: m.shape[0], : m.shape[1]] = m
        out[m.shape[0]:, m.shape[1]:] = n
        mats[a.name] = out
    return Representation(M.A, dims, mats)


def direct_sum_all(reps: Sequence[Representation], A: AlgebraPresentation) -> Representation:
    out = Representation.zero(A)
    for R in reps:
        out = direct_sum(out, R)
    return out


@dataclass
class CompositionSeries:
    """0 = chain[0] < chain[1] < ... < chain[-1] = M with simple quotients.

    ``chain[k]`` maps each vertex to a column basis of the k-th submodule;
    ``factors[k]`` is the index of the vertex simple chain[k+1]/chain[k].
    """

    rep: Representation
    chain: list[dict[str, FieldMatrix]]
    factors: list[int]

    @property
    def length(self) -> int:
        return len(self.factors)

    @property
    def factor_vertices(self) -> list[str]:
        return [self.rep.A.vertices[i] for i in self.factors]

    def multiplicities(self) -> tuple[int, ...]:
        counts = [0] * len(self.rep.A.vertices)
        for i in self.factors:
            counts[i] += 1
        return tuple(counts)


def composition_series(M: Representation) -> CompositionSeries:
    """Refine the radical filtration into a composition series.

    Layers are added bottom up; inside a (semisimple) layer one vector is
    added at a time, vertices in declaration order, candidate vectors in
    echelon order.  Any space between R_{k+1} and R_k is a submodule since
    arrows map R_k into R_{k+1}.
    """
    p = M.p
    verts = M.A.vertices
    layers = radical_filtration(M)
    cur = {v: layers[-1][v] for v in verts}
    chain = [{v: FieldMatrix._wrap(cur[v], p) for v in verts}]
    factors: list[int] = []
    for k in range(len(layers) - 2, -1, -1):
        for idx, v in enumerate(verts):
            for col in layers[k][v].T:
                trial = np.concatenate([cur[v], col[:, None]], axis=1)
                if rank_array(trial, p) > cur[v].shape[1]:
                    cur = dict(cur)
                    cur[v] = column_echelon_array(trial, p)[0]
                    chain.append({u: FieldMatrix._wrap(cur[u], p) for u in verts})
                    factors.append(idx)
    return CompositionSeries(M, chain, factors)


def is_subrepresentation(M: Representation, basis: Mapping[str, object]) -> bool:
    p = M.p
    def arr(v):
        x = basis[v]
        return x.array if isinstance(x, FieldMatrix) else np.asarray(x, dtype=np.int64)
    for a in M.A.arrows:
        b_s, b_t = arr(a.source), arr(a.target)
        img = (M.arr(a.name) @ b_s) % p
        if rank_array(np.concatenate([b_t, img], axis=1), p) != rank_array(b_t, p):
            return False
    return True


@dataclass
class Decomposition:
    summands: list[Representation]
    probabilistic: bool = False

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)


def split(M: Representation, idem: Mapping[str, object]) -> tuple[Representation, Representation]:
    """M = im(e) + ker(e) for an idempotent endomorphism e."""
    p = M.p
    e = {v: (idem[v].array if isinstance(idem[v], FieldMatrix) else np.asarray(idem[v])) % p for v in M.A.vertices}
    one_minus = {v: (np.eye(M.dims[v], dtype=np.int64) - e[v]) % p for v in M.A.vertices}
    return restrict(M, span_basis(M, e)), restrict(M, span_basis(M, one_minus))


def decompose(M: Representation, seed: int = DEFAULT_SEED) -> Decomposition:
    """Split M into indecomposable summands by repeated idempotent splitting."""
    out: list[Representation] = []
    prob = False
    todo = [M] if not M.is_zero() else []
    while todo:
        X = todo.pop(0)
        res = is_indecomposable(X, seed)
        prob |= res.probabilistic
        if res.indecomposable:
            out.append(X)
        else:
            a, b = split(X, res.witness)
            todo[:0] = [a, b]
    return Decomposition(out, prob)
