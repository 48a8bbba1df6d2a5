"""Simply laced Dynkin diagrams and quivers as skew-symmetric integer matrices.

A quiver on n vertices is stored as the n x n table b with
b[u][v] = (#arrows u->v) - (#arrows v->u).  Mutation is the standard
skew-symmetric exchange-matrix rule; isomorphism is decided by exhaustive
relabeling (n is at most 9 everywhere in this library, so brute force is
both exact and fast once vectorized).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

FAMILIES = ("A", "D", "E")

_EXCEPTIONAL_ROOT_COUNTS = {6: 36, 7: 63, 8: 120}
_EXCEPTIONAL_COXETER = {6: 12, 7: 18, 8: 30}


@dataclass(frozen=True)
class DynkinType:
    """A simply laced Dynkin type: A_n (n>=1), D_n (n>=4) or E_6/E_7/E_8."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if self.family == "A" and self.rank < 1:
            raise ValueError("type A requires rank >= 1")
        if self.family == "D" and self.rank < 4:
            raise ValueError("type D requires rank >= 4")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise ValueError("type E requires rank in {6, 7, 8}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    def edges(self) -> list[tuple[int, int]]:
        """Edges of the underlying graph, each as (u, v) with u < v."""
        n = self.rank
        if self.family == "A":
            return [(i, i + 1) for i in range(n - 1)]
        if self.family == "D":
            # chain 0-...-(n-2) plus the second fork vertex n-1 attached at n-3
            return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        # E types: chain 0-...-(n-2) plus vertex n-1 attached at vertex 2
        return [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]

    def default_orientation(self) -> "Quiver":
        """The orientation with every edge pointing from lower to higher index."""
        return Quiver.from_arrows(self.rank, [(u, v, 1) for u, v in self.edges()])

    @property
    def positive_root_count(self) -> int:
        n = self.rank
        if self.family == "A":
            return n * (n + 1) // 2
        if self.family == "D":
            return n * (n - 1)
        return _EXCEPTIONAL_ROOT_COUNTS[n]

    @property
    def coxeter_number(self) -> int:
        n = self.rank
        if self.family == "A":
            return n + 1
        if self.family == "D":
            return 2 * n - 2
        return _EXCEPTIONAL_COXETER[n]


def coxeter_number(t: DynkinType) -> int:
    return t.coxeter_number


class MutationClassBoundExceeded(RuntimeError):
    """The mutation-class search exceeded its size bound (likely non-Dynkin input)."""


class Quiver:
    """An immutable loop-free quiver given by its skew-symmetric arrow table."""

    __slots__ = ("n", "b", "_hash")

    def __init__(self, b: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in b)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("arrow table must be square")
        for u in range(n):
            if rows[u][u] != 0:
                raise ValueError(f"loop at vertex {u}")
            for v in range(u + 1, n):
                if rows[u][v] != -rows[v][u]:
                    raise ValueError(f"table not skew-symmetric at ({u}, {v})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "b", rows)
        object.__setattr__(self, "_hash", hash(rows))

    def __setattr__(self, *args):
        raise AttributeError("Quiver is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Quiver) and self.b == other.b

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Quiver({self.n}, arrows={self.arrows()})"

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[tuple[int, int, int]]) -> "Quiver":
        """Build from arrow triples (u, v, mult); rejects loops and antiparallel pairs."""
        b = [[0] * n for _ in range(n)]
        for u, v, mult in arrows:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arrow ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if mult < 1:
                raise ValueError("arrow multiplicity must be >= 1")
            if b[v][u] > 0:
                raise ValueError(f"antiparallel arrows between {u} and {v}")
            b[u][v] += mult
            b[v][u] -= mult
        return cls(b)

    def arrows(self) -> list[tuple[int, int, int]]:
        """Arrow triples (u, v, mult) with mult = b[u][v] > 0, sorted."""
        return [
            (u, v, self.b[u][v])
            for u in range(self.n)
            for v in range(self.n)
            if self.b[u][v] > 0
        ]

    def underlying_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if self.b[u][v] != 0]

    def mutate(self, k: int) -> "Quiver":
        """Exchange-matrix mutation at vertex k."""
        if not (0 <= k < self.n):
            raise IndexError(f"mutation vertex {k} out of range for n={self.n}")
        b = self.b
        new = [list(row) for row in b]
        for u in range(self.n):
            for v in range(self.n):
                if u == k or v == k:
                    new[u][v] = -b[u][v]
                elif b[u][k] * b[k][v] > 0:
                    sign = 1 if b[u][k] > 0 else -1
                    new[u][v] = b[u][v] + sign * b[u][k] * b[k][v]
        return Quiver(new)

    def relabel(self, perm: Sequence[int]) -> "Quiver":
        """The quiver with vertex u renamed perm[u]."""
        n = self.n
        new = [[0] * n for _ in range(n)]
        for u in range(n):
            for v in range(n):
                new[perm[u]][perm[v]] = self.b[u][v]
        return Quiver(new)

    def canonical_form(self) -> "Quiver":
        """Canonical representative of the relabeling orbit (exhaustive, exact)."""
        table = _canonical_table(self.n, self.b)
        return Quiver(table)

    def is_isomorphic(self, other: "Quiver") -> bool:
        return self.n == other.n and self.canonical_form() == other.canonical_form()

    def to_json_dict(self) -> dict:
        return {"n": self.n, "arrows": [[u, v, m] for u, v, m in self.arrows()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "Quiver":
        if not isinstance(data, dict) or "n" not in data or "arrows" not in data:
            raise ValueError('quiver JSON must be {"n": int, "arrows": [[u, v, mult], ...]}')
        arrows = [tuple(a) for a in data["arrows"]]
        if any(len(a) != 3 for a in arrows):
            raise ValueError("each arrow must be a [u, v, mult] triple")
        return cls.from_arrows(int(data["n"]), arrows)

    @classmethod
    def loads(cls, text: str) -> "Quiver":
        return cls.from_json_dict(json.loads(text))


_PERM_CACHE: dict[int, np.ndarray] = {}
_PERM_CHUNK = 100_000


def _perm_array(n: int) -> np.ndarray:
    if n > 9:
        raise ValueError("exhaustive relabeling supported for n <= 9 only")
    a = _PERM_CACHE.get(n)
    if a is None:
        a = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
        _PERM_CACHE[n] = a
    return a


def _canonical_table(n: int, b: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    if n == 1:
        return ((0,),)
    B = np.array(b, dtype=np.int64)
    perms = _perm_array(n)
    best = None
    for start in range(0, len(perms), _PERM_CHUNK):
        chunk = perms[start : start + _PERM_CHUNK]
        # entry (p, i, j) is the relabeled table: new[p[u], p[v]] = b[u, v],
        # equivalently new[i, j] = b[inv(p)[i], inv(p)[j]]; permuting by the
        # inverse of every permutation sweeps the same set.
        permuted = B[chunk[:, :, None], chunk[:, None, :]].reshape(len(chunk), n * n)
        flat = min(map(tuple, permuted.tolist()))
        if best is None or flat < best:
            best = flat
    return tuple(tuple(best[i * n : (i + 1) * n]) for i in range(n))


def mutate(q: Quiver, k: int) -> Quiver:
    return q.mutate(k)


def canonical_form(q: Quiver) -> Quiver:
    return q.canonical_form()


def mutation_class(q: Quiver, max_size: int = 100_000) -> frozenset[Quiver]:
    """All quivers reachable by mutation, up to isomorphism.

    Breadth-first closure with canonical forms; aborts with a diagnostic
    once more than max_size classes are seen, which guards against
    accidentally feeding in a quiver of infinite mutation type.
    """
    seen = {q.canonical_form()}
    frontier = list(seen)
    while frontier:
        new_frontier = []
        for cur in frontier:
            for k in range(cur.n):
                nxt = cur.mutate(k).canonical_form()
                if nxt not in seen:
                    seen.add(nxt)
                    new_frontier.append(nxt)
                    if len(seen) > max_size:
                        raise MutationClassBoundExceeded(
                            f"mutation class exceeded {max_size} isomorphism classes; "
                            "input is probably not of Dynkin type"
                        )
        frontier = new_frontier
    return frozenset(seen)


def classify_dynkin(q: Quiver) -> DynkinType:
    """Recognize the Dynkin type of a quiver's underlying graph.

    Raises ValueError when the graph is not a simply laced Dynkin diagram.
    """
    n = q.n
    edges = q.underlying_edges()
    if any(q.b[u][v] not in (-1, 0, 1) for u in range(n) for v in range(n)):
        raise ValueError("multiple edges cannot occur in a Dynkin diagram")
    if len(edges) != n - 1:
        raise ValueError("underlying graph is not a tree")
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    # connectivity
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise ValueError("underlying graph is not connected")
    if any(len(adj[v]) > 3 for v in range(n)):
        raise ValueError("vertex of degree > 3")
    branches = [v for v in range(n) if len(adj[v]) == 3]
    if len(branches) > 1:
        raise ValueError("more than one branch vertex")
    if not branches:
        return DynkinType("A", n)
    c = branches[0]
    arms = []
    for start in adj[c]:
        length = 1
        prev, cur = c, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return DynkinType("D", n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return DynkinType("E", n)
    raise ValueError(f"arm lengths {arms} do not match any Dynkin diagram")
