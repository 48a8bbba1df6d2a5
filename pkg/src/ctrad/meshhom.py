"""Morphism spaces of the derived window, exactly, over the rationals.

A morphism space between window vertices is the span of directed paths
modulo the mesh relations.  Spaces are computed by a single forward sweep
per source vertex: the space at a mesh vertex is presented as the cokernel
of the mesh legs out of its translate, and every chosen basis vector is the
class of a single path.  Post-composition with an arrow is then an explicit
small matrix, so arbitrary composites reduce to exact matrix-vector work
with no global path enumeration.

The literal model (enumerate every path, span every relation instance,
eliminate) is also provided; it is exponential in the distance and is used
as an independent cross-check at small rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import linalg
from .linalg import RrefBasis, Vec
from .window import ARVertex, ARWindow, WindowExitError

Arrow = tuple[ARVertex, ARVertex]
Path = tuple[Arrow, ...]

# post-composition matrices are stored sparsely: one tuple of (column, coeff)
# per row; coefficients are ints whenever exact reduction allows it
SparseMat = tuple[tuple[tuple[int, object], ...], ...]


def _sparsify(rows: Sequence[Sequence]) -> SparseMat:
    out = []
    for row in rows:
        entries = []
        for j, c in enumerate(row):
            if c:
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = int(c)
                entries.append((j, c))
        out.append(tuple(entries))
    return tuple(out)


def _sparse_apply(mat: SparseMat, v: Sequence) -> Vec:
    return tuple(sum(c * v[j] for j, c in row) for row in mat)


class DMorphism(NamedTuple):
    """A morphism between window vertices, in the basis of its source functor."""

    source: ARVertex
    target: ARVertex
    coords: Vec

    def is_zero(self) -> bool:
        return linalg.is_zero(self.coords)


@dataclass(frozen=True)
class MorphSpace:
    source: ARVertex
    target: ARVertex
    dim: int
    basis_paths: tuple[Path, ...]
    path_count: int

    @property
    def relation_rank(self) -> int:
        return self.path_count - self.dim

    def basis(self) -> list[DMorphism]:
        return [
            DMorphism(self.source, self.target, linalg.unit(self.dim, i))
            for i in range(self.dim)
        ]


class HomFunctor:
    """All morphism spaces out of one fixed source vertex.

    Functors of translated sources are derived by relabeling, so their
    coordinate systems agree with the base functor's and matrix objects are
    shared, never recomputed.
    """

    __slots__ = ("source", "dims", "paths", "maps")

    def __init__(self, source: ARVertex):
        self.source = source
        self.dims: dict[ARVertex, int] = {source: 1}
        self.paths: dict[ARVertex, tuple[Path, ...]] = {source: ((),)}
        self.maps: dict[Arrow, SparseMat] = {}

    def dim(self, target: ARVertex) -> int:
        return self.dims.get(target, 0)


class HomEngine:
    """Computes, composes and translates morphisms of one window."""

    def __init__(self, window: ARWindow):
        self.window = window
        self._functors: dict[ARVertex, HomFunctor] = {}
        self._spaces: dict[tuple[ARVertex, ARVertex], MorphSpace] = {}
        self._counts: dict[ARVertex, dict[ARVertex, int]] = {}

    # -- functor knitting ---------------------------------------------------

    def functor(self, source: ARVertex) -> HomFunctor:
        fx = self._functors.get(source)
        if fx is None:
            w = self.window
            if source.copy == 0 or (source.copy == 1 and w.is_projective(source)):
                fx = self._knit_functor(source)
            else:
                fx = self._derive_functor(source)
            self._functors[source] = fx
        return fx

    def _derive_functor(self, source: ARVertex) -> HomFunctor:
        """Relabel the functor of the orbit representative one step closer."""
        w = self.window
        if source.copy >= 1:
            parent_src = w.f_apply(source, -1)
            vmap = w.f_plus  # parent target -> our target is one orbit step up
        else:
            parent_src = w.f_apply(source, 1)
            vmap = w.f_minus
        parent = self.functor(parent_src)
        fx = HomFunctor(source)
        keymap: dict[ARVertex, ARVertex] = {}
        for tgt, d in parent.dims.items():
            image = vmap.get(tgt)
            if image is None:
                continue
            keymap[tgt] = image
            fx.dims[image] = d
        for tgt, paths in parent.paths.items():
            image = keymap.get(tgt)
            if image is None:
                continue
            fx.paths[image] = tuple(
                tuple((vmap[a], vmap[b]) for a, b in path) for path in paths
            )
        for (a, b), mat in parent.maps.items():
            ia, ib = vmap.get(a), vmap.get(b)
            if ia is not None and ib is not None:
                fx.maps[(ia, ib)] = mat
        fx.dims[source] = 1
        fx.paths[source] = ((),)
        return fx

    def _knit_functor(self, source: ARVertex) -> HomFunctor:
        w = self.window
        if not w.contains(source):
            raise WindowExitError(f"{source} outside window")
        fx = HomFunctor(source)
        order = w.vertices
        start = w.vertex_index[source] + 1
        for pos in range(start, len(order)):
            y = order[pos]
            middles = [e for e in w.in_nbrs[y] if fx.dim(e) > 0]
            total = sum(fx.dims[e] for e in middles)
            if total == 0:
                continue
            offsets: dict[ARVertex, int] = {}
            acc = 0
            for e in middles:
                offsets[e] = acc
                acc += fx.dims[e]
            if w.tau_defined(y):
                ty = w.tau(y)
                rel = RrefBasis(total)
                for c in range(fx.dim(ty)):
                    col = [linalg.ZERO] * total
                    for e in middles:
                        leg = fx.maps.get((ty, e))
                        if leg is not None:
                            for r in range(fx.dims[e]):
                                col[offsets[e] + r] = leg[r][c]
                    rel.add(col)
                keep = rel.nonpivot_coords()
            else:
                # a projective at the bottom copy: its mesh lies below the
                # window, and no relation through it can start at the source
                rel = RrefBasis(total)
                keep = list(range(total))
            dim_y = len(keep)
            if dim_y == 0:
                continue
            fx.dims[y] = dim_y
            new_paths = []
            block_of = []
            for e in middles:
                for r in range(fx.dims[e]):
                    block_of.append((e, r))
            for coord in keep:
                e, r = block_of[coord]
                new_paths.append(fx.paths[e][r] + ((e, y),))
            fx.paths[y] = tuple(new_paths)
            for e in middles:
                cols = []
                for r in range(fx.dims[e]):
                    stacked = [linalg.ZERO] * total
                    stacked[offsets[e] + r] = linalg.ONE
                    cols.append(rel.quotient_coords(stacked))
                fx.maps[(e, y)] = _sparsify(
                    tuple(cols[c][r] for c in range(fx.dims[e])) for r in range(dim_y)
                )
        return fx

    # -- spaces and morphisms -----------------------------------------------

    def hom(self, source: ARVertex, target: ARVertex) -> MorphSpace:
        key = (source, target)
        sp = self._spaces.get(key)
        if sp is None:
            fx = self.functor(source)
            sp = MorphSpace(
                source=source,
                target=target,
                dim=fx.dim(target),
                basis_paths=fx.paths.get(target, ()),
                path_count=self.path_count(source, target),
            )
            self._spaces[key] = sp
        return sp

    def path_count(self, source: ARVertex, target: ARVertex) -> int:
        counts = self._counts.get(source)
        if counts is None:
            w = self.window
            counts = {source: 1}
            for v in w.vertices[w.vertex_index[source]:]:
                c = counts.get(v)
                if not c:
                    continue
                for nxt in w.out_nbrs[v]:
                    counts[nxt] = counts.get(nxt, 0) + c
            self._counts[source] = counts
        return counts.get(target, 0)

    def morphism(self, source: ARVertex, target: ARVertex, coords: Sequence) -> DMorphism:
        dim = self.functor(source).dim(target)
        v = linalg.vec(coords)
        if len(v) != dim:
            raise ValueError(f"expected {dim} coordinates for {source} -> {target}")
        return DMorphism(source, target, v)

    def zero(self, source: ARVertex, target: ARVertex) -> DMorphism:
        return DMorphism(source, target, linalg.zeros(self.functor(source).dim(target)))

    def identity(self, v: ARVertex) -> DMorphism:
        return DMorphism(v, v, (linalg.ONE,))

    def transport(self, fx: HomFunctor, coords: Vec, path: Path) -> Vec:
        cur = coords
        for arrow in path:
            m = fx.maps.get(arrow)
            if m is None:
                return (0,) * fx.dim(path[-1][1])
            cur = _sparse_apply(m, cur)
        return cur

    def eval_path(self, source: ARVertex, path: Path) -> DMorphism:
        """The class of one concrete path as a morphism from source."""
        fx = self.functor(source)
        target = path[-1][1] if path else source
        return DMorphism(source, target, self.transport(fx, (linalg.ONE,), path))

    def compose(self, g: DMorphism, f: DMorphism) -> DMorphism:
        """g after f."""
        if f.target != g.source:
            raise ValueError(f"cannot compose {g.source}->{g.target} after {f.source}->{f.target}")
        fx = self.functor(f.source)
        out_dim = fx.dim(g.target)
        acc = linalg.zeros(out_dim)
        basis_paths = self.functor(g.source).paths.get(g.target, ())
        for coeff, path in zip(g.coords, basis_paths):
            if coeff:
                acc = linalg.add(acc, linalg.scale(self.transport(fx, f.coords, path), coeff))
        return DMorphism(f.source, g.target, acc)

    def add(self, f: DMorphism, g: DMorphism) -> DMorphism:
        if (f.source, f.target) != (g.source, g.target):
            raise ValueError("cannot add morphisms with different endpoints")
        return DMorphism(f.source, f.target, linalg.add(f.coords, g.coords))

    def translate_f(self, f: DMorphism, power: int) -> DMorphism:
        """Apply the orbit automorphism to a morphism."""
        return self._remap(f, lambda v: self.window.f_apply(v, power))

    def shift(self, f: DMorphism, amount: int = 1) -> DMorphism:
        """Apply the suspension (copy shift) to a morphism."""
        return self._remap(f, lambda v: self.window.shift(v, amount))

    def _remap(self, f: DMorphism, vmap) -> DMorphism:
        new_source = vmap(f.source)
        new_target = vmap(f.target)
        fx_old = self.functor(f.source)
        fx_new = self.functor(new_source)
        acc = linalg.zeros(fx_new.dim(new_target))
        for coeff, path in zip(f.coords, fx_old.paths.get(f.target, ())):
            if coeff:
                image = tuple((vmap(s), vmap(d)) for s, d in path)
                acc = linalg.add(
                    acc, linalg.scale(self.transport(fx_new, (linalg.ONE,), image), coeff)
                )
        return DMorphism(new_source, new_target, acc)


# -- literal path/relation model (small ranks; cross-check only) ------------


def enumerate_paths(window: ARWindow, source: ARVertex, target: ARVertex) -> list[Path]:
    """All directed paths from source to target, in lexicographic arrow order."""
    memo: dict[ARVertex, list[Path]] = {target: [()]}

    def rec(v: ARVertex) -> list[Path]:
        got = memo.get(v)
        if got is not None:
            return got
        acc: list[Path] = []
        for w in window.out_nbrs[v]:
            if window.vertex_index[w] <= window.vertex_index[target]:
                for tail in rec(w):
                    acc.append(((v, w),) + tail)
        memo[v] = acc
        return acc

    return rec(source)


def relation_instances(
    window: ARWindow, source: ARVertex, target: ARVertex
) -> tuple[list[Path], list[Vec]]:
    """Every mesh relation padded by all pre/post paths, as path-coefficient rows."""
    paths = enumerate_paths(window, source, target)
    index = {p: i for i, p in enumerate(paths)}
    rows: list[Vec] = []
    lo = window.vertex_index[source]
    hi = window.vertex_index[target]
    for z in window.vertices[lo : hi + 1]:
        if not window.tau_defined(z):
            continue
        tz = window.tau(z)
        if not (lo <= window.vertex_index[tz] <= hi):
            continue
        pres = enumerate_paths(window, source, tz)
        posts = enumerate_paths(window, z, target)
        if not pres or not posts:
            continue
        middles = window.in_nbrs[z]
        for q in pres:
            for p in posts:
                row = [0] * len(paths)
                for e in middles:
                    composite = q + ((tz, e), (e, z)) + p
                    row[index[composite]] += 1
                rows.append(linalg.vec(row))
    return paths, rows


def hom_by_enumeration(window: ARWindow, source: ARVertex, target: ARVertex) -> tuple[int, int, int]:
    """(dim, relation rank, path count) from the literal model."""
    if source == target:
        return 1, 0, 1
    paths, rows = relation_instances(window, source, target)
    rank = linalg.span(rows, len(paths)).rank if paths else 0
    return len(paths) - rank, rank, len(paths)


def dim_table_csv_rows(engine: HomEngine, pairs: Sequence[tuple[ARVertex, ARVertex]]) -> list[tuple]:
    """Diagnostic dim table rows: (source, target, dim)."""
    return [
        (f"{x.module}@{x.copy}", f"{y.module}@{y.copy}", engine.hom(x, y).dim)
        for x, y in pairs
    ]
