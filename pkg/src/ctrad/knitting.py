"""Knitting the Auslander-Reiten quiver of the path algebra of a Dynkin orientation.

Starting from the indecomposable projectives, meshes are completed left to
right using additivity of dimension vectors: the module following M in its
translation orbit has dimension (sum over the mesh middles) minus dim M.
Orbits end exactly at the injectives, which are recognized by their
dimension vectors (dimension vectors of indecomposables are the positive
roots and therefore pairwise distinct).
"""

from __future__ import annotations

from dataclasses import dataclass

from .dynkin import DynkinType, Quiver, classify_dynkin


class KnittingError(RuntimeError):
    """Inconsistent mesh data while knitting (bad orientation encoding)."""


@dataclass(frozen=True)
class BaseModule:
    """An indecomposable module discovered by knitting.

    vertex/level locate the module in the translation grid: the module is
    the level-th inverse-translate of the projective at that vertex.
    """

    index: int
    vertex: int
    level: int
    dim: tuple[int, ...]
    projective: bool
    injective: bool


class BaseARQuiver:
    """The AR quiver of the module category of a Dynkin orientation."""

    def __init__(
        self,
        orientation: Quiver,
        dtype: DynkinType,
        modules: list[BaseModule],
        arrows: list[tuple[int, int]],
        tau: dict[int, int],
        proj_at: dict[int, int],
        inj_at: dict[int, int],
    ):
        self.orientation = orientation
        self.dtype = dtype
        self.modules = tuple(modules)
        self.arrows = tuple(sorted(arrows))
        self.tau = dict(tau)
        self.tau_inv = {v: k for k, v in tau.items()}
        self.proj_at = dict(proj_at)  # quiver vertex -> module index of P_vertex
        self.inj_at = dict(inj_at)
        n = len(self.modules)
        self.out_nbrs: list[tuple[int, ...]] = [() for _ in range(n)]
        self.in_nbrs: list[tuple[int, ...]] = [() for _ in range(n)]
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        for s, d in self.arrows:
            out[s].append(d)
            inn[d].append(s)
        self.out_nbrs = [tuple(sorted(x)) for x in out]
        self.in_nbrs = [tuple(sorted(x)) for x in inn]
        self.simple_at = {}
        for m in self.modules:
            if sum(m.dim) == 1:
                self.simple_at[m.dim.index(1)] = m.index

    def module_count(self) -> int:
        return len(self.modules)

    def dim_of(self, index: int) -> tuple[int, ...]:
        return self.modules[index].dim


def _topological_order_sinks_first(q: Quiver) -> list[int]:
    """Vertices ordered so every arrow target precedes its source."""
    n = q.n
    out_deg = [sum(1 for v in range(n) if q.b[u][v] > 0) for u in range(n)]
    remaining = out_deg[:]
    order = []
    ready = sorted(u for u in range(n) if remaining[u] == 0)
    while ready:
        u = ready.pop(0)
        order.append(u)
        for w in range(n):
            if q.b[w][u] > 0:  # arrow w -> u
                remaining[w] -= 1
                if remaining[w] == 0:
                    ready.append(w)
        ready.sort()
    if len(order) != n:
        raise KnittingError("orientation has an oriented cycle")
    return order


def knit_ar_quiver(orientation: Quiver) -> BaseARQuiver:
    """Knit the full AR quiver of the given acyclic Dynkin orientation."""
    dtype = classify_dynkin(orientation)
    n = orientation.n
    if any(m != 1 for _, _, m in orientation.arrows()):
        raise KnittingError("Dynkin orientations have simple arrows only")
    out_nbrs = [[v for v in range(n) if orientation.b[u][v] > 0] for u in range(n)]
    in_nbrs = [[v for v in range(n) if orientation.b[v][u] > 0] for u in range(n)]
    order = _topological_order_sinks_first(orientation)

    # dim P_i counts paths starting at i, dim I_i counts paths ending at i
    dim_p: dict[int, list[int]] = {}
    for i in order:  # targets first, so out-neighbours are ready
        d = [0] * n
        d[i] = 1
        for j in out_nbrs[i]:
            for t in range(n):
                d[t] += dim_p[j][t]
        dim_p[i] = d
    dim_i: dict[int, list[int]] = {}
    for i in reversed(order):
        d = [0] * n
        d[i] = 1
        for j in in_nbrs[i]:
            for t in range(n):
                d[t] += dim_i[j][t]
        dim_i[i] = d
    inj_dim_lookup = {tuple(dim_i[i]): i for i in range(n)}
    if len(inj_dim_lookup) != n:
        raise KnittingError("injective dimension vectors are not distinct")

    modules: list[BaseModule] = []
    grid: dict[tuple[int, int], int] = {}
    proj_at: dict[int, int] = {}
    inj_at: dict[int, int] = {}

    def create(vertex: int, level: int, dim: tuple[int, ...]) -> int:
        idx = len(modules)
        inj_vertex = inj_dim_lookup.get(dim)
        modules.append(
            BaseModule(
                index=idx,
                vertex=vertex,
                level=level,
                dim=dim,
                projective=(level == 0),
                injective=(inj_vertex is not None),
            )
        )
        grid[(vertex, level)] = idx
        if level == 0:
            proj_at[vertex] = idx
        if inj_vertex is not None:
            if inj_vertex in inj_at:
                raise KnittingError(f"injective at vertex {inj_vertex} produced twice")
            inj_at[inj_vertex] = idx
        return idx

    for i in order:
        create(i, 0, tuple(dim_p[i]))

    level = 0
    while True:
        created = 0
        for i in order:
            prev = grid.get((i, level))
            if prev is None or modules[prev].injective:
                continue
            # mesh middles: same-level in-neighbour orbits and next-level
            # out-neighbour orbits; all must exist when the translate does
            dim = [-x for x in modules[prev].dim]
            for u in in_nbrs[i]:
                mid = grid.get((u, level))
                if mid is None:
                    raise KnittingError(
                        f"mesh middle ({u}, {level}) missing while extending ({i}, {level})"
                    )
                for t in range(n):
                    dim[t] += modules[mid].dim[t]
            for v in out_nbrs[i]:
                mid = grid.get((v, level + 1))
                if mid is None:
                    raise KnittingError(
                        f"mesh middle ({v}, {level + 1}) missing while extending ({i}, {level})"
                    )
                for t in range(n):
                    dim[t] += modules[mid].dim[t]
            if any(x < 0 for x in dim) or all(x == 0 for x in dim):
                raise KnittingError(f"negative or zero dimension vector at ({i}, {level + 1})")
            create(i, level + 1, tuple(dim))
            created += 1
        if created == 0:
            break
        level += 1

    if len(modules) != dtype.positive_root_count:
        raise KnittingError(
            f"knitted {len(modules)} modules, expected {dtype.positive_root_count} "
            f"positive roots for {dtype}"
        )
    if len({m.dim for m in modules}) != len(modules):
        raise KnittingError("dimension vectors are not pairwise distinct")
    if len(inj_at) != n:
        raise KnittingError("not every injective was produced")

    # arrows of the translation grid: per orientation arrow u -> v there are
    # arrows (v, k) -> (u, k) and (u, k) -> (v, k + 1) wherever both ends exist
    arrows = []
    for u in range(n):
        for v in out_nbrs[u]:
            for k in range(level + 2):
                a, b = grid.get((v, k)), grid.get((u, k))
                if a is not None and b is not None:
                    arrows.append((a, b))
                a, b = grid.get((u, k)), grid.get((v, k + 1))
                if a is not None and b is not None:
                    arrows.append((a, b))
    if len(set(arrows)) != len(arrows):
        raise KnittingError("duplicate arrows (multiplicity > 1 cannot occur)")

    tau = {grid[(i, k)]: grid[(i, k - 1)] for (i, k) in grid if k > 0}

    base = BaseARQuiver(orientation, dtype, modules, arrows, tau, proj_at, inj_at)
    _check_meshes(base)
    return base


def _check_meshes(base: BaseARQuiver) -> None:
    for m in base.modules:
        if m.projective:
            continue
        prev = base.tau[m.index]
        middles_in = sorted(base.in_nbrs[m.index])
        middles_out = sorted(base.out_nbrs[prev])
        if middles_in != middles_out:
            raise KnittingError(f"mesh mismatch at module {m.index}")
        total = [0] * len(m.dim)
        for mid in middles_in:
            for t, x in enumerate(base.modules[mid].dim):
                total[t] += x
        expect = tuple(a - b for a, b in zip(total, base.modules[prev].dim))
        if expect != m.dim:
            raise KnittingError(f"mesh additivity fails at module {m.index}")
