"""Bound quiver algebras kQ/I with monomial admissible relations.

A path is a composable sequence of arrows stored in application order:
``("a", "b")`` is the path that applies arrow ``a`` first, then ``b``.
Written multiplicatively this is the product ``b a`` (function-composition
order), which is also the order the relation file format uses.

The algebra basis consists of the surviving paths: those containing no
relation as a contiguous subpath.  Modules over the algebra are
representations (see :mod:`quivergp.modules`); a path ``p : u -> v`` acts
on a representation as a linear map from the space at ``u`` to the space
at ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .linalg import Field, GF2, Mat


class QuiverError(ValueError):
    pass


class RelationError(ValueError):
    pass


class InfiniteDimensionError(ValueError):
    """The surviving-path basis exceeded the admissibility cap."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """A finite directed multigraph with named vertices and arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[tuple[str, str, str]]):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        self.arrows = tuple(Arrow(str(n), str(s), str(t)) for n, s, t in arrows)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow ids")
        if set(names) & set(self.vertices):
            raise QuiverError("arrow ids must not clash with vertex ids")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise QuiverError(f"arrow {a.name}: undeclared endpoint")
        self.arrow_by_name = {a.name: a for a in self.arrows}
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_into(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for a in self.arrows_from(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        return seen == len(self.vertices)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(a.name, a.target, a.source) for a in self.arrows])


@dataclass(frozen=True)
class Path:
    """A basis path: arrows in application order, endpoints cached."""

    source: str
    target: str
    arrows: tuple[str, ...]

    def __len__(self):
        return len(self.arrows)

    def is_trivial(self) -> bool:
        return not self.arrows

    def __repr__(self):
        if not self.arrows:
            return f"e({self.source})"
        return " ".join(reversed(self.arrows)) + f" [{self.source}->{self.target}]"


def _contains_relation(arrows: tuple[str, ...], relations: list[tuple[str, ...]]) -> bool:
    for rel in relations:
        k = len(rel)
        if k > len(arrows):
            continue
        for i in range(len(arrows) - k + 1):
            if arrows[i:i + k] == rel:
                return True
    return False


class BoundQuiverAlgebra:
    """kQ/I for monomial admissible I, with its surviving-path basis.

    The basis is ordered by (length, lexicographic in arrow declaration
    order), which makes every derived module matrix reproducible.
    """

    DEFAULT_BASIS_CAP = 10_000

    def __init__(self, quiver: Quiver, relations: Sequence[Sequence[str]],
                 field: Field = GF2, basis_cap: int = DEFAULT_BASIS_CAP):
        self.quiver = quiver
        self.field = field
        self.relations = tuple(tuple(r) for r in relations)
        for rel in self.relations:
            if len(rel) < 2:
                raise RelationError(f"relation {rel} shorter than 2 arrows")
            for name in rel:
                if name not in quiver.arrow_by_name:
                    raise RelationError(f"relation uses unknown arrow {name!r}")
            for x, y in zip(rel, rel[1:]):
                if quiver.arrow_by_name[x].target != quiver.arrow_by_name[y].source:
                    raise RelationError(f"relation {rel} is not composable at {x!r}->{y!r}")
        self.path_basis = self._build_basis(basis_cap)
        self._index = {(p.source, p.arrows): i for i, p in enumerate(self.path_basis)}
        self._opposite: Optional["BoundQuiverAlgebra"] = None
        self._projectives: dict[str, object] = {}
        self._injectives: dict[str, object] = {}
        self._caches: dict = {}

    # -- basis ----------------------------------------------------------

    def _build_basis(self, cap: int) -> tuple[Path, ...]:
        rels = list(self.relations)
        order = self.quiver.arrow_index
        basis: list[Path] = [Path(v, v, ()) for v in self.quiver.vertices]
        frontier = list(basis)
        while frontier:
            new = []
            for p in frontier:
                for a in self.quiver.arrows_from(p.target):
                    ext = p.arrows + (a.name,)
                    if not _contains_relation(ext, rels):
                        new.append(Path(p.source, a.target, ext))
            new.sort(key=lambda p: tuple(order[x] for x in p.arrows))
            basis.extend(new)
            if len(basis) > cap:
                raise InfiniteDimensionError(
                    f"surviving-path basis exceeds cap {cap}; "
                    "the relations are not admissible for a finite-dimensional algebra")
            frontier = new
        basis.sort(key=lambda p: (len(p.arrows),
                                  tuple(order[x] for x in p.arrows),
                                  self.quiver.vertex_index[p.source]))
        return tuple(basis)

    def dim(self) -> int:
        return len(self.path_basis)

    def path_index(self, p: Path) -> int:
        return self._index[(p.source, p.arrows)]

    def has_path(self, source: str, arrows: tuple[str, ...]) -> bool:
        return (source, arrows) in self._index

    def paths_from(self, v: str) -> list[Path]:
        return [p for p in self.path_basis if p.source == v]

    def paths_between(self, src: str, tgt: str) -> list[Path]:
        return [p for p in self.path_basis if p.source == src and p.target == tgt]

    def extend(self, p: Path, arrow_name: str) -> Optional[Path]:
        """Post-compose with an arrow; None if the product dies."""
        a = self.quiver.arrow_by_name[arrow_name]
        if a.source != p.target:
            return None
        ext = p.arrows + (a.name,)
        if (p.source, ext) in self._index:
            return Path(p.source, a.target, ext)
        return None

    def mult(self, p: Path, q: Path) -> Optional[Path]:
        """Product p*q (apply q first); None when zero in the algebra."""
        if q.target != p.source:
            return None
        arrows = q.arrows + p.arrows
        if (q.source, arrows) in self._index:
            return Path(q.source, p.target, arrows)
        return None

    # -- canonical modules -----------------------------------------------

    def projective(self, v: str):
        """The indecomposable projective with top at ``v``."""
        from .modules import Module
        if v not in self.quiver.vertex_index:
            raise QuiverError(f"unknown vertex {v!r}")
        if v in self._projectives:
            return self._projectives[v]
        paths = self.paths_from(v)
        by_vertex = {u: [p for p in paths if p.target == u] for u in self.quiver.vertices}
        index = {u: {p.arrows: i for i, p in enumerate(by_vertex[u])} for u in self.quiver.vertices}
        dims = {u: len(by_vertex[u]) for u in self.quiver.vertices}
        f = self.field
        maps = {}
        for a in self.quiver.arrows:
            rows, cols = dims[a.target], dims[a.source]
            grid = [[f.zero] * cols for _ in range(rows)]
            for j, p in enumerate(by_vertex[a.source]):
                ext = self.extend(p, a.name)
                if ext is not None:
                    grid[index[a.target][ext.arrows]][j] = f.one
            maps[a.name] = Mat(f, rows, cols, grid)
        mod = Module(self, dims, maps)
        self._projectives[v] = mod
        return mod

    def simple(self, v: str):
        from .modules import Module
        if v not in self.quiver.vertex_index:
            raise QuiverError(f"unknown vertex {v!r}")
        dims = {u: (1 if u == v else 0) for u in self.quiver.vertices}
        maps = {a.name: Mat.zeros(self.field, dims[a.target], dims[a.source])
                for a in self.quiver.arrows}
        return Module(self, dims, maps)

    def injective(self, v: str):
        """The indecomposable injective with socle at ``v`` (dual of the
        opposite projective)."""
        from .modules import dual_module
        if v in self._injectives:
            return self._injectives[v]
        mod = dual_module(self.opposite().projective(v))
        self._injectives[v] = mod
        return mod

    def regular_module(self):
        """The algebra as a left module over itself, one projective per vertex."""
        from .modules import direct_sum
        if "regular" not in self._caches:
            summands = [self.projective(v) for v in self.quiver.vertices]
            self._caches["regular"] = direct_sum(self, summands)[0]
        return self._caches["regular"]

    def zero_module(self):
        from .modules import Module
        dims = {u: 0 for u in self.quiver.vertices}
        maps = {a.name: Mat.zeros(self.field, 0, 0) for a in self.quiver.arrows}
        return Module(self, dims, maps)

    # -- opposite and predicates ------------------------------------------

    def opposite(self) -> "BoundQuiverAlgebra":
        """Arrows reversed, relation words reversed; an involution."""
        if self._opposite is None:
            op = BoundQuiverAlgebra(self.quiver.opposite(),
                                    [tuple(reversed(r)) for r in self.relations],
                                    self.field)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def is_hereditary(self) -> bool:
        return not self.relations and self.quiver.is_acyclic()

    def is_selfinjective(self) -> bool:
        """Projectives and injectives agree as multisets up to isomorphism."""
        if "selfinj" in self._caches:
            return self._caches["selfinj"]
        from .modules import is_isomorphic
        projs = [self.projective(v) for v in self.quiver.vertices]
        injs = [self.injective(v) for v in self.quiver.vertices]
        unmatched = list(range(len(injs)))
        ok = True
        for p in projs:
            hit = next((k for k in unmatched if is_isomorphic(p, injs[k])), None)
            if hit is None:
                ok = False
                break
            unmatched.remove(hit)
        self._caches["selfinj"] = ok
        return ok


def build_algebra(quiver: Quiver, relations: Sequence[Sequence[str]],
                  field: Field = GF2, basis_cap: int = BoundQuiverAlgebra.DEFAULT_BASIS_CAP
                  ) -> BoundQuiverAlgebra:
    return BoundQuiverAlgebra(quiver, relations, field, basis_cap)
