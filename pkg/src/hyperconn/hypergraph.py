"""k-uniform hypergraphs: data model, .khg file format, generators.

Vertices are the integers 1..n. Edges are stored as ascending tuples and the
edge list is kept in lexicographic order, so two hypergraphs with the same
edge set compare equal.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

KHG_MAGIC = "khg 1"
MAX_CONNECT_RETRIES = 1000


class HypergraphError(ValueError):
    """Invalid hypergraph data. ``lineno`` is set for errors found in a file."""

    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def _edge_problems(n: int, k: int, edge: Sequence[int]) -> list[str]:
    problems = []
    if len(edge) != k:
        problems.append(f"arity error: edge {tuple(edge)} has {len(edge)} vertices, expected {k}")
    if len(set(edge)) != len(edge):
        problems.append(f"duplicate vertex in edge {tuple(edge)}")
    bad = [v for v in edge if not 1 <= v <= n]
    if bad:
        problems.append(f"range error: vertex {bad[0]} of edge {tuple(edge)} not in 1..{n}")
    return problems


@dataclass(frozen=True)
class Hypergraph:
    """Immutable k-uniform hypergraph on vertices 1..n.

    The constructor is strict: every edge must already be an ascending tuple
    and the edge list strictly increasing. Use :meth:`from_edges` to build
    one from unordered input.
    """

    n: int
    k: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        for name in ("n", "k"):
            value = getattr(self, name)
            if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
                object.__setattr__(self, name, int(value))
        object.__setattr__(self, "edges", tuple(tuple(int(v) for v in e) for e in self.edges))
        validate(self)

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """Sort each edge and the edge list; duplicated edges are an error."""
        canon = [tuple(sorted(int(v) for v in e)) for e in edges]
        for e in canon:
            problems = _edge_problems(n, k, e)
            if problems:
                raise HypergraphError(problems[0])
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise HypergraphError(f"duplicate edge {a}")
        return cls(n, k, tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_array(self) -> np.ndarray:
        """Edges as an (m, k) array of 0-based vertex indices."""
        if not self.edges:
            return np.zeros((0, self.k), dtype=np.intp)
        return np.asarray(self.edges, dtype=np.intp) - 1

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        for e in self.edges:
            for v in e:
                d[v - 1] += 1
        return d

    def __str__(self):
        return f"Hypergraph(n={self.n}, k={self.k}, m={self.m})"


def validate(H: Hypergraph) -> None:
    """Raise :class:`HypergraphError` naming every violated invariant."""
    problems = []
    if not isinstance(H.n, int) or H.n < 1:
        problems.append(f"vertex count must be a positive integer, got {H.n!r}")
    if not isinstance(H.k, int) or H.k < 2:
        problems.append(f"uniformity must be an integer >= 2, got {H.k!r}")
    if problems:
        raise HypergraphError("; ".join(problems))
    for e in H.edges:
        problems.extend(_edge_problems(H.n, H.k, e))
        if list(e) != sorted(e):
            problems.append(f"edge {e} is not in ascending order")
    for a, b in zip(H.edges, H.edges[1:]):
        if a == b:
            problems.append(f"duplicate edge {a}")
        elif a > b:
            problems.append(f"edge list not sorted at {a}, {b}")
    if problems:
        raise HypergraphError("; ".join(problems))


# ---------------------------------------------------------------- .khg format


def parse_khg(text: str) -> Hypergraph:
    """Parse the .khg text format.

    Line 1 is ``khg 1``, line 2 is ``<n> <k>``, then one edge per line.
    Lines starting with ``#`` and blank lines are ignored.
    """
    header = None
    nk = None
    edges: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            if line != KHG_MAGIC:
                raise HypergraphError(f"malformed header: expected {KHG_MAGIC!r}, got {line!r}", lineno)
            header = lineno
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise HypergraphError(f"non-integer token in {line!r}", lineno) from None
        if nk is None:
            if len(values) != 2:
                raise HypergraphError(f"malformed header: expected '<n> <k>', got {line!r}", lineno)
            n, k = values
            if n < 1 or k < 2:
                raise HypergraphError(f"malformed header: need n >= 1 and k >= 2, got n={n}, k={k}", lineno)
            nk = (n, k)
            continue
        n, k = nk
        problems = _edge_problems(n, k, values)
        if problems:
            raise HypergraphError(problems[0], lineno)
        e = tuple(sorted(values))
        if e in seen:
            raise HypergraphError(f"duplicate edge {e} (first on line {seen[e]})", lineno)
        seen[e] = lineno
        edges.append(e)
    if header is None:
        raise HypergraphError(f"malformed header: missing {KHG_MAGIC!r}", 1)
    if nk is None:
        raise HypergraphError("malformed header: missing '<n> <k>' line", header + 1)
    return Hypergraph(nk[0], nk[1], tuple(sorted(edges)))


def serialize_khg(H: Hypergraph) -> str:
    lines = [KHG_MAGIC, f"{H.n} {H.k}"]
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def read_khg(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_khg(fh.read())


def write_khg(H: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_khg(H))


# ------------------------------------------------------------- basic structure


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    max_degree: int
    min_degree: int
    average_degree: float


def degree_profile(H: Hypergraph) -> DegreeProfile:
    d = tuple(int(x) for x in H.degrees())
    return DegreeProfile(d, max(d), min(d), sum(d) / H.n)


def components(H: Hypergraph) -> list[list[int]]:
    """Connected components as ascending vertex lists, ordered by smallest member."""
    parent = list(range(H.n + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in H.edges:
        r0 = find(e[0])
        for v in e[1:]:
            r = find(v)
            if r != r0:
                parent[r] = r0
    classes: dict[int, list[int]] = {}
    for v in range(1, H.n + 1):
        classes.setdefault(find(v), []).append(v)
    return sorted(classes.values())


def is_connected(H: Hypergraph) -> bool:
    return len(components(H)) == 1


def _neighbours(H: Hypergraph) -> list[set[int]]:
    nbrs: list[set[int]] = [set() for _ in range(H.n + 1)]
    for e in H.edges:
        for v in e:
            nbrs[v].update(e)
    for v in range(1, H.n + 1):
        nbrs[v].discard(v)
    return nbrs


def diameter(H: Hypergraph) -> float:
    """Largest 2-section distance; ``math.inf`` when disconnected, 0 when n == 1."""
    nbrs = _neighbours(H)
    best = 0
    for s in range(1, H.n + 1):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if len(dist) < H.n:
            return math.inf
        best = max(best, max(dist.values()))
    return best


def remove_vertices(H: Hypergraph, removed: Iterable[int]) -> Hypergraph:
    """Delete vertices and every edge meeting them; survivors are relabeled 1..n'."""
    removed = set(removed)
    if not removed <= set(range(1, H.n + 1)):
        raise HypergraphError(f"vertices {sorted(removed)} not all in 1..{H.n}")
    if len(removed) >= H.n:
        raise HypergraphError("cannot remove every vertex")
    keep = [v for v in range(1, H.n + 1) if v not in removed]
    relabel = {v: i for i, v in enumerate(keep, start=1)}
    edges = [tuple(relabel[v] for v in e) for e in H.edges if removed.isdisjoint(e)]
    return Hypergraph(len(keep), H.k, tuple(edges))


def codegrees(H: Hypergraph) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for e in H.edges:
        for pair in itertools.combinations(e, 2):
            counts[pair] = counts.get(pair, 0) + 1
    return counts


@dataclass(frozen=True)
class DesignParams:
    b: int
    r: int
    lam: int

    def check(self, n: int, k: int) -> None:
        if self.b * k != n * self.r or self.lam * (n - 1) != self.r * (k - 1):
            raise HypergraphError(f"inconsistent design parameters {self} for n={n}, k={k}")


def check_two_design(H: Hypergraph) -> Optional[DesignParams]:
    """Return (b, r, lambda) when H is a simple 2-design, else None."""
    if H.m == 0 or H.n < 2:
        return None
    d = H.degrees()
    if np.any(d != d[0]):
        return None
    cod = codegrees(H)
    if len(cod) != H.n * (H.n - 1) // 2:
        return None
    lams = set(cod.values())
    if len(lams) != 1:
        return None
    params = DesignParams(H.m, int(d[0]), lams.pop())
    params.check(H.n, H.k)
    return params


# ------------------------------------------------------------------ generators


def gen_complete(n: int, k: int) -> Hypergraph:
    if not 2 <= k <= n:
        raise HypergraphError(f"complete k-graph needs 2 <= k <= n, got n={n}, k={k}")
    return Hypergraph(n, k, tuple(itertools.combinations(range(1, n + 1), k)))


FANO_BLOCKS = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def gen_fano() -> Hypergraph:
    return Hypergraph(7, 3, FANO_BLOCKS)


def unrank_subset(rank: int, n: int, k: int) -> tuple[int, ...]:
    """k-subset of 1..n with the given colexicographic rank.

    The colex rank of c_1 < ... < c_k (0-based) is sum C(c_i, i).
    """
    if not 0 <= rank < math.comb(n, k):
        raise ValueError(f"rank {rank} out of range for C({n},{k})")
    out = []
    c = n - 1
    for i in range(k, 0, -1):
        while math.comb(c, i) > rank:
            c -= 1
        out.append(c + 1)
        rank -= math.comb(c, i)
        c -= 1
    return tuple(reversed(out))


def rank_subset(subset: Sequence[int]) -> int:
    return sum(math.comb(v - 1, i) for i, v in enumerate(sorted(subset), start=1))


def gen_random(
    n: int,
    k: int,
    m: int,
    seed: int = 0,
    require_connected: bool = False,
    max_retries: int = MAX_CONNECT_RETRIES,
) -> Hypergraph:
    """m distinct k-subsets of 1..n drawn uniformly without replacement.

    Randomness comes from numpy's PCG64 generator seeded with ``seed``. Edge
    ranks are sampled without replacement from range(C(n, k)) and unranked,
    so there is no rejection of duplicates. With ``require_connected`` the
    draw is repeated from the same stream until the result is connected.
    """
    if not 2 <= k <= n:
        raise HypergraphError(f"need 2 <= k <= n, got n={n}, k={k}")
    total = math.comb(n, k)
    if not 0 <= m <= total:
        raise HypergraphError(f"cannot pick {m} distinct edges out of C({n},{k}) = {total}")
    rng = np.random.default_rng(seed)
    for _ in range(max_retries if require_connected else 1):
        ranks = rng.choice(total, size=m, replace=False)
        H = Hypergraph.from_edges(n, k, (unrank_subset(int(r), n, k) for r in ranks))
        if not require_connected or is_connected(H):
            return H
    raise HypergraphError(
        f"no connected hypergraph with n={n}, k={k}, m={m} found in {max_retries} draws"
    )


def union(H1: Hypergraph, H2: Hypergraph) -> Hypergraph:
    if (H1.n, H1.k) != (H2.n, H2.k):
        raise HypergraphError("union needs equal n and k")
    return Hypergraph.from_edges(H1.n, H1.k, set(H1.edges) | set(H2.edges))


def with_edges(H: Hypergraph, edges: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph.from_edges(H.n, H.k, list(H.edges) + [tuple(e) for e in edges])
