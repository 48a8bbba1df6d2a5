"""A finite window of the bounded derived category as a translation quiver.

Shifted copies of the knitted AR quiver are glued with the translate of a
projective defined as the matching injective one copy down.  The suspension
is the copy index, so the composite automorphism used to form orbit
categories acts as: inverse translate, then copy + 1.
"""

from __future__ import annotations

import json
from typing import Iterable, NamedTuple

from .knitting import BaseARQuiver


class WindowExitError(RuntimeError):
    """An operation left the configured copy range."""


class ARVertex(NamedTuple):
    module: int
    copy: int


class ARWindow:
    def __init__(self, base: BaseARQuiver, copy_range: tuple[int, int] = (-4, 5)):
        jmin, jmax = copy_range
        if jmin > -2 or jmax < 2:
            raise ValueError("copy range must span at least [-2, 2]")
        self.base = base
        self.copy_range = (jmin, jmax)
        self.inj_vertex_of = {idx: p for p, idx in base.inj_at.items()}
        self.vertices: list[ARVertex] = [
            ARVertex(m.index, j)
            for j in range(jmin, jmax + 1)
            for m in base.modules
        ]
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}

        arrows: list[tuple[ARVertex, ARVertex]] = []
        for j in range(jmin, jmax + 1):
            for s, d in base.arrows:
                arrows.append((ARVertex(s, j), ARVertex(d, j)))
        glue = [
            (base.inj_at[q], base.proj_at[p])
            for q, p, _ in base.orientation.arrows()
        ]
        for j in range(jmin, jmax):
            for s, d in glue:
                arrows.append((ARVertex(s, j), ARVertex(d, j + 1)))
        self.arrows = tuple(sorted(arrows, key=lambda a: (self.vertex_index[a[0]], self.vertex_index[a[1]])))
        out: dict[ARVertex, list[ARVertex]] = {v: [] for v in self.vertices}
        inn: dict[ARVertex, list[ARVertex]] = {v: [] for v in self.vertices}
        for s, d in self.arrows:
            out[s].append(d)
            inn[d].append(s)
        key = self.vertex_index.__getitem__
        self.out_nbrs = {v: tuple(sorted(ns, key=key)) for v, ns in out.items()}
        self.in_nbrs = {v: tuple(sorted(ns, key=key)) for v, ns in inn.items()}
        # orbit automorphism as plain lookup tables for the hot paths
        self.f_plus: dict[ARVertex, ARVertex] = {}
        self.f_minus: dict[ARVertex, ARVertex] = {}
        for v in self.vertices:
            try:
                self.f_plus[v] = self.shift(self.tau_inv(v), 1)
            except WindowExitError:
                pass
            try:
                self.f_minus[v] = self.shift(self.tau(v), -1)
            except WindowExitError:
                pass

    # -- navigation ---------------------------------------------------------

    def contains(self, v: ARVertex) -> bool:
        return self.copy_range[0] <= v.copy <= self.copy_range[1] and 0 <= v.module < len(self.base.modules)

    def _require(self, v: ARVertex) -> ARVertex:
        if not self.contains(v):
            raise WindowExitError(f"{v} outside copies {self.copy_range}")
        return v

    def shift(self, v: ARVertex, amount: int = 1) -> ARVertex:
        return self._require(ARVertex(v.module, v.copy + amount))

    def tau(self, v: ARVertex) -> ARVertex:
        m = self.base.modules[v.module]
        if m.projective:
            return self._require(ARVertex(self.base.inj_at[m.vertex], v.copy - 1))
        return self._require(ARVertex(self.base.tau[v.module], v.copy))

    def tau_inv(self, v: ARVertex) -> ARVertex:
        m = self.base.modules[v.module]
        if m.injective:
            p = self.inj_vertex_of[v.module]
            return self._require(ARVertex(self.base.proj_at[p], v.copy + 1))
        return self._require(ARVertex(self.base.tau_inv[v.module], v.copy))

    def tau_defined(self, v: ARVertex) -> bool:
        try:
            self.tau(v)
            return True
        except WindowExitError:
            return False

    def f_apply(self, v: ARVertex, power: int = 1) -> ARVertex:
        """Apply the orbit automorphism (inverse translate then copy + 1)."""
        cur = self._require(v)
        table = self.f_plus if power > 0 else self.f_minus
        for _ in range(abs(power)):
            nxt = table.get(cur)
            if nxt is None:
                raise WindowExitError(f"orbit automorphism leaves the window at {cur}")
            cur = nxt
        return cur

    def is_projective(self, v: ARVertex) -> bool:
        return self.base.modules[v.module].projective

    def is_injective(self, v: ARVertex) -> bool:
        return self.base.modules[v.module].injective

    def dim_vector(self, v: ARVertex) -> tuple[int, ...]:
        return self.base.modules[v.module].dim

    def topological_vertices(self) -> list[ARVertex]:
        """Vertices in an order compatible with all arrows."""
        return list(self.vertices)

    # -- diagnostics --------------------------------------------------------

    def validate(self) -> None:
        """Assert mesh consistency and basic automorphism facts."""
        for v in self.vertices:
            try:
                t = self.tau(v)
            except WindowExitError:
                continue
            if sorted(self.in_nbrs[v]) != sorted(self.out_nbrs[t]):
                raise AssertionError(f"mesh mismatch at {v}")
        for v in self.vertices:
            try:
                fv = self.f_apply(v, 1)
            except WindowExitError:
                continue
            if fv == v:
                raise AssertionError(f"orbit automorphism fixes {v}")
            try:
                a = self.tau(fv)
                b = self.f_apply(self.tau(v), 1)
            except WindowExitError:
                continue
            if a != b:
                raise AssertionError(f"translate does not commute with F at {v}")
        if len(set(self.arrows)) != len(self.arrows):
            raise AssertionError("arrow multiplicities above 1")

    def path_length_extremes(self) -> dict[tuple[ARVertex, ARVertex], tuple[int, int]]:
        """(shortest, longest) path length for every reachable ordered pair."""
        result: dict[tuple[ARVertex, ARVertex], tuple[int, int]] = {}
        order = self.vertices
        for src in order:
            lo: dict[ARVertex, int] = {src: 0}
            hi: dict[ARVertex, int] = {src: 0}
            for v in order:
                if v not in lo:
                    continue
                for w in self.out_nbrs[v]:
                    cand = lo[v] + 1
                    if w not in lo or cand < lo[w]:
                        lo[w] = cand
                    cand = hi[v] + 1
                    if w not in hi or cand > hi[w]:
                        hi[w] = cand
            for v, d in lo.items():
                if v != src:
                    result[(src, v)] = (d, hi[v])
        return result

    def has_equal_parallel_paths(self) -> bool:
        """True when every pair of parallel paths has the same length."""
        return all(lo == hi for lo, hi in self.path_length_extremes().values())

    def orbit_graph(self) -> tuple[list[int], list[tuple[int, int]], dict[ARVertex, int]]:
        """Translation orbits of the window and the edges between them.

        Returns (orbit ids, undirected edges, vertex -> orbit id).
        """
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for v in self.vertices:
            try:
                union(v, self.tau(v))
            except WindowExitError:
                pass
        roots = sorted({find(v) for v in self.vertices}, key=self.vertex_index.__getitem__)
        orbit_id = {root: i for i, root in enumerate(roots)}
        vertex_orbit = {v: orbit_id[find(v)] for v in self.vertices}
        edges = set()
        for s, d in self.arrows:
            a, b = vertex_orbit[s], vertex_orbit[d]
            if a != b:
                edges.add((min(a, b), max(a, b)))
        return list(range(len(roots))), sorted(edges), vertex_orbit

    def dump_json(self) -> str:
        data = {
            "copyRange": list(self.copy_range),
            "vertices": [
                {
                    "id": i,
                    "moduleId": v.module,
                    "copy": v.copy,
                    "dimVector": list(self.dim_vector(v)),
                    "proj": self.is_projective(v),
                    "inj": self.is_injective(v),
                }
                for i, v in enumerate(self.vertices)
            ],
            "arrows": [
                [self.vertex_index[s], self.vertex_index[d]] for s, d in self.arrows
            ],
        }
        return json.dumps(data, sort_keys=True)


def build_derived_window(base: BaseARQuiver, copy_range: tuple[int, int] = (-4, 4)) -> ARWindow:
    window = ARWindow(base, copy_range)
    window.validate()
    return window


def trees_isomorphic(n1: int, edges1: Iterable[tuple[int, int]], n2: int, edges2: Iterable[tuple[int, int]]) -> bool:
    """Isomorphism of two trees via canonical encodings from the centers."""
    e1, e2 = list(edges1), list(edges2)
    if n1 != n2 or len(e1) != len(e2):
        return False
    if n1 == 0:
        return True

    def canon(n: int, edges: list[tuple[int, int]]) -> str:
        adj = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)

        def centers() -> list[int]:
            deg = [len(a) for a in adj]
            leaves = [v for v in range(n) if deg[v] <= 1]
            removed = len(leaves)
            while removed < n:
                nxt = []
                for leaf in leaves:
                    for w in adj[leaf]:
                        deg[w] -= 1
                        if deg[w] == 1:
                            nxt.append(w)
                removed += len(nxt)
                leaves = nxt
            return leaves if leaves else [0]

        def encode(v: int, parent: int) -> str:
            subs = sorted(encode(w, v) for w in adj[v] if w != parent)
            return "(" + "".join(subs) + ")"

        return min(encode(c, -1) for c in centers())

    return canon(n1, e1) == canon(n2, e2)
