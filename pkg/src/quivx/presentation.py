"""Quivers with relations over GF(p).

A path is a sequence of arrow names traversed left to right: ``["a", "b"]``
means "first a, then b".  Its matrix in a representation is therefore the
right-to-left product ``M_b @ M_a``.  All presentations are immutable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactfield import FieldError, validate_modulus

MAX_SIZE = 64
RENAME_SUFFIX = "#2"


class SpecError(ValueError):
    """Invalid algebra specification.

    ``code`` is a stable machine-readable tag, ``location`` a JSON-path-like
    pointer into the offending input.
    """

    def __init__(self, code: str, message: str, location: str = ""):
        self.code = code
        self.location = location
        where = f" at {location}" if location else ""
        super().__init__(f"{code}: {message}{where}")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise SpecError("duplicate-vertex", "vertex names must be unique", "vertices")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise SpecError("duplicate-arrow", "arrow names must be unique", "arrows")
        vs = set(self.vertices)
        for k, a in enumerate(self.arrows):
            for end in (a.source, a.target):
                if end not in vs:
                    raise SpecError("unknown-vertex", f"arrow {a.name!r} uses undeclared vertex {end!r}", f"arrows[{k}]")
        if len(self.vertices) > MAX_SIZE or len(self.arrows) > MAX_SIZE:
            raise SpecError("too-large", f"at most {MAX_SIZE} vertices and arrows are supported")

    def arrow(self, name: str) -> Arrow:
        return self._arrow_map[name]

    @property
    def _arrow_map(self) -> dict[str, Arrow]:
        # frozen dataclass: stash the cache in __dict__ directly
        try:
            return self.__dict__["_amap"]
        except KeyError:
            m = {a.name: a for a in self.arrows}
            object.__setattr__(self, "_amap", m)
            return m

    def has_arrow(self, name: str) -> bool:
        return name in self._arrow_map

    def index(self, vertex: str) -> int:
        return self.vertices.index(vertex)

    def incoming(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == vertex]

    def outgoing(self, vertex: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        todo = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while todo:
            v = todo.pop()
            seen += 1
            for a in self.outgoing(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    todo.append(a.target)
        return seen == len(self.vertices)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, each of length at least 2."""

    terms: tuple[tuple[int, tuple[str, ...]], ...]

    @classmethod
    def monomial(cls, path: Sequence[str], coeff: int = 1) -> "Relation":
        return cls(((coeff, tuple(path)),))

    @classmethod
    def of(cls, *terms: tuple[int, Sequence[str]]) -> "Relation":
        return cls(tuple((c, tuple(path)) for c, path in terms))

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def arrows_used(self) -> set[str]:
        return {a for _, path in self.terms for a in path}


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: tuple[Relation, ...]
    p: int

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def __str__(self) -> str:
        return (f"AlgebraPresentation(GF({self.p}), {len(self.vertices)} vertices, "
                f"{len(self.arrows)} arrows, {len(self.relations)} relations)")


def _check_path(quiver: Quiver, path: Sequence[str], where: str) -> tuple[str, str]:
    if len(path) < 2:
        raise SpecError("short-path", "relation paths must have length >= 2", where)
    for name in path:
        if not quiver.has_arrow(name):
            raise SpecError("unknown-arrow", f"unknown arrow {name!r}", where)
    for a, b in zip(path, path[1:]):
        if quiver.arrow(a).target != quiver.arrow(b).source:
            raise SpecError("non-composable", f"non-composable path: {a!r} then {b!r}", where)
    return quiver.arrow(path[0]).source, quiver.arrow(path[-1]).target


def normalize_relation(quiver: Quiver, rel: Relation, p: int, where: str = "relations") -> Relation:
    """Validate a relation against ``quiver``; reduce mod p and drop zero terms."""
    ends = None
    terms = []
    for k, (coeff, path) in enumerate(rel.terms):
        loc = f"{where}[{k}]"
        if isinstance(coeff, bool) or not isinstance(coeff, int):
            raise SpecError("schema", f"coefficient must be an integer, got {coeff!r}", loc)
        e = _check_path(quiver, path, loc)
        if ends is None:
            ends = e
        elif e != ends:
            raise SpecError("non-parallel", f"term runs {e[0]}->{e[1]} but the relation runs {ends[0]}->{ends[1]}", loc)
        c = coeff % p
        if c:
            terms.append((c, tuple(path)))
    return Relation(tuple(terms))


def make_presentation(vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]],
                      relations: Iterable[Relation] = (), p: int = 2) -> AlgebraPresentation:
    """Build and validate a presentation from plain Python data.

    ``arrows`` holds ``(name, source, target)`` triples.
    """
    try:
        p = validate_modulus(p)
    except FieldError as exc:
        raise SpecError("not-prime", str(exc), "field.p") from None
    quiver = Quiver(tuple(vertices), tuple(Arrow(*a) for a in arrows))
    rels = tuple(normalize_relation(quiver, r, p, f"relations[{k}]") for k, r in enumerate(relations))
    return AlgebraPresentation(quiver, rels, p)


def from_dict(data: dict) -> AlgebraPresentation:
    if not isinstance(data, dict):
        raise SpecError("schema", "top level must be an object")
    try:
        p = data["field"]["p"]
        vertices = data["vertices"]
        arrows = data.get("arrows", [])
        relations = data.get("relations", [])
    except (KeyError, TypeError) as exc:
        raise SpecError("schema", f"missing or malformed key {exc}") from None
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise SpecError("schema", "vertices must be a list of strings", "vertices")
    arr = []
    for k, a in enumerate(arrows):
        try:
            arr.append((str(a["name"]), str(a["from"]), str(a["to"])))
        except (KeyError, TypeError):
            raise SpecError("schema", "arrow needs name/from/to", f"arrows[{k}]") from None
    rels = []
    for k, r in enumerate(relations):
        if not isinstance(r, list):
            raise SpecError("schema", "a relation is a list of terms", f"relations[{k}]")
        terms = []
        for t, term in enumerate(r):
            try:
                terms.append((term["coeff"], tuple(term["path"])))
            except (KeyError, TypeError):
                raise SpecError("schema", "term needs coeff/path", f"relations[{k}][{t}]") from None
        rels.append(Relation(tuple(terms)))
    return make_presentation(vertices, arr, rels, p)


def parse_spec(text: str) -> AlgebraPresentation:
    """Parse the JSON algebra-spec format."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("malformed-json", exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return from_dict(data)


def load_spec(path) -> AlgebraPresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def to_dict(A: AlgebraPresentation) -> dict:
    return {
        "field": {"p": A.p},
        "vertices": list(A.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in A.arrows],
        "relations": [[{"coeff": c, "path": list(path)} for c, path in r.terms] for r in A.relations],
    }


def serialize(A: AlgebraPresentation) -> str:
    """Canonical JSON text: keys in format order, arrays in declaration order."""
    return json.dumps(to_dict(A), ensure_ascii=False, indent=2) + "\n"


# ---------------------------------------------------------------------------
# structural queries

def path_nilpotency_bound(A: AlgebraPresentation, N: int) -> int | None:
    """Smallest L <= N such that every path of length L lies in the monomial ideal.

    Only single-term relations take part; ``None`` stands for "exceeds N".
    Paths are grown breadth first and pruned as soon as they contain a
    monomial relation as a contiguous subpath.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    killers = {path for r in A.relations if r.is_monomial for _, path in r.terms}
    maxlen = max((len(k) for k in killers), default=0)

    def dead(path: tuple[str, ...]) -> bool:
        # only suffixes can be new: the prefix already survived
        return any(path[-k:] in killers for k in range(2, min(len(path), maxlen) + 1))

    alive = [(a.name,) for a in A.arrows]
    length = 1
    while alive:
        if length >= N:
            return None
        nxt = []
        for path in alive:
            last = A.quiver.arrow(path[-1])
            for b in A.quiver.outgoing(last.target):
                q = path + (b.name,)
                if not dead(q):
                    nxt.append(q)
        alive = nxt
        length += 1
    return length


def is_radical_square_zero(A: AlgebraPresentation) -> bool:
    """True iff every path of length 2 is killed by a monomial relation."""
    bound = path_nilpotency_bound(A, 2)
    return bound is not None and bound <= 2


def is_admissible(A: AlgebraPresentation, bound: int) -> bool:
    """Whether representations up to ``bound`` are nilpotent by construction."""
    if A.quiver.is_acyclic():
        return True
    L = path_nilpotency_bound(A, bound)
    return L is not None and L <= bound


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += RENAME_SUFFIX
    return name


def disjoint_union(A: AlgebraPresentation, B: AlgebraPresentation) -> AlgebraPresentation:
    """Presentation of the product algebra A x B as a disconnected quiver.

    Names of B that clash with A get the suffix ``#2``.
    """
    if A.p != B.p:
        raise SpecError("field-mismatch", f"cannot join GF({A.p}) with GF({B.p})")
    vtaken = set(A.vertices)
    vmap = {}
    for v in B.vertices:
        vmap[v] = _fresh(v, vtaken)
        vtaken.add(vmap[v])
    ataken = {a.name for a in A.arrows}
    amap = {}
    for a in B.arrows:
        amap[a.name] = _fresh(a.name, ataken)
        ataken.add(amap[a.name])
    vertices = list(A.vertices) + [vmap[v] for v in B.vertices]
    arrows = [(a.name, a.source, a.target) for a in A.arrows]
    arrows += [(amap[a.name], vmap[a.source], vmap[a.target]) for a in B.arrows]
    rels = list(A.relations)
    rels += [Relation(tuple((c, tuple(amap[x] for x in path)) for c, path in r.terms)) for r in B.relations]
    return make_presentation(vertices, arrows, rels, A.p)


def add_relations(A: AlgebraPresentation, extra: Iterable[Relation]) -> AlgebraPresentation:
    """Quotient presentation with ``extra`` appended to the relation list."""
    base = len(A.relations)
    new = tuple(normalize_relation(A.quiver, r, A.p, f"relations[{base + k}]") for k, r in enumerate(extra))
    return AlgebraPresentation(A.quiver, A.relations + new, A.p)


# ---------------------------------------------------------------------------
# stock algebras

def semisimple(n: int = 1, p: int = 2) -> AlgebraPresentation:
    return make_presentation([str(i + 1) for i in range(n)], [], [], p)


def truncated_loop(k: int | None, p: int = 2) -> AlgebraPresentation:
    """One vertex, one loop ``x``, relation x^k = 0 (no relation if k is None)."""
    rels = [] if k is None else [Relation.monomial(["x"] * k)]
    return make_presentation(["1"], [("x", "1", "1")], rels, p)


def truncated_cycle(n: int, length: int | None, p: int = 2) -> AlgebraPresentation:
    """Oriented n-cycle 1 -> 2 -> ... -> n -> 1 with every path of ``length`` killed.

    Arrows are named ``a1 .. an`` with ``ai: i -> i+1``.
    """
    vs = [str(i + 1) for i in range(n)]
    arrows = [(f"a{i + 1}", vs[i], vs[(i + 1) % n]) for i in range(n)]
    rels = []
    if length is not None:
        for i in range(n):
            rels.append(Relation.monomial([f"a{(i + j) % n + 1}" for j in range(length)]))
    return make_presentation(vs, arrows, rels, p)


def two_cycle(p: int = 2) -> AlgebraPresentation:
    """Arrows alpha: 1 -> 2, beta: 2 -> 1 with alpha.beta = beta.alpha = 0."""
    return make_presentation(
        ["1", "2"],
        [("alpha", "1", "2"), ("beta", "2", "1")],
        [Relation.monomial(["alpha", "beta"]), Relation.monomial(["beta", "alpha"])],
        p,
    )


def kronecker(p: int = 2, arrows: int = 2) -> AlgebraPresentation:
    return make_presentation(["1", "2"], [(f"a{k + 1}", "1", "2") for k in range(arrows)], [], p)


def linear_quiver(n: int, p: int = 2) -> AlgebraPresentation:
    """A_n with arrows ``ai: i -> i+1`` and no relations."""
    vs = [str(i + 1) for i in range(n)]
    return make_presentation(vs, [(f"a{i + 1}", vs[i], vs[i + 1]) for i in range(n - 1)], [], p)
