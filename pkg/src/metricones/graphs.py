"""Skeletons, ridge graphs, and the combinatorics read off from them.

The skeleton of a cone has its extreme rays as vertices, adjacent when they
span a two-dimensional face; the ridge graph has facets as vertices, adjacent
when they share a ridge. Both sides are built from the same bipartite
incidence data, so one builder covers them. On top of the graphs sit
diameters, per-orbit adjacency/incidence statistics, representation matrices,
the labeled representation graphs of single rays, a small-catalog graph
classifier, and the conjectured adjacency rules used for cross-validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .cones import Representation, index_scheme
from .dd import dual_description
from .exact import dot, kernel_basis, normalize_ray, rank, solve_lp
from .groups import CoordPermGroup, OrbitSet, apply_perm, orbit_decompose

_LIMIT = 2**62


# ---------------------------------------------------------------------------
# bit-packed incidence


def _pack_bool(mat: np.ndarray) -> np.ndarray:
    """Row-wise bitset packing of a boolean matrix into uint64 words."""
    n, m = mat.shape
    words = (m + 63) // 64
    packed = np.packbits(mat, axis=1, bitorder="little")
    out = np.zeros((n, words * 8), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view(np.uint64)


def _tight_matrix(nodes, other):
    """Boolean tightness of every node against every other-side row, exactly."""
    a = np.array(nodes, dtype=object)
    b = np.array(other, dtype=object)
    amax = max((abs(int(x)) for x in a.flat), default=0)
    bmax = max((abs(int(x)) for x in b.flat), default=0)
    if a.shape[1] * amax * bmax < _LIMIT:
        vals = a.astype(np.int64) @ b.astype(np.int64).T
    else:
        vals = a @ b.T
    return np.asarray(vals == 0, dtype=bool)


def _bit_indices(mask_row: np.ndarray) -> np.ndarray:
    bits = np.unpackbits(mask_row.view(np.uint8), bitorder="little")
    return np.flatnonzero(bits)


def _adjacency_masks(tight: np.ndarray, dim: int) -> np.ndarray:
    """Pairwise adjacency by the combinatorial criterion.

    Nodes i, j are adjacent when no third node's tight set contains
    tight(i) & tight(j). A popcount prefilter keeps only pairs whose common
    tight count reaches dim - 2, the rank any ridge's tight set must have.
    """
    t = _pack_bool(tight)
    n, w = t.shape
    words_out = (n + 63) // 64
    adj = np.zeros((n, words_out), dtype=np.uint64)
    threshold = dim - 2
    block = max(1, min(512, 2**24 // (max(n, 1) * w + 1) + 1))
    cand_i: list[np.ndarray] = []
    cand_j: list[np.ndarray] = []
    for start in range(0, n, block):
        stop = min(start + block, n)
        common = t[start:stop, None, :] & t[None, :, :]
        counts = np.bitwise_count(common).sum(axis=2, dtype=np.int64)
        bi, bj = np.nonzero(counts >= threshold)
        keep = start + bi < bj
        cand_i.append(start + bi[keep])
        cand_j.append(bj[keep])
    ci = np.concatenate(cand_i) if cand_i else np.zeros(0, dtype=np.int64)
    cj = np.concatenate(cand_j) if cand_j else np.zeros(0, dtype=np.int64)

    good_i: list[np.ndarray] = []
    good_j: list[np.ndarray] = []
    for start in range(0, len(ci), 128):
        ii = ci[start : start + 128]
        jj = cj[start : start + 128]
        meets = t[ii] & t[jj]
        acc = np.zeros(len(ii), dtype=np.int64)
        step = max(1, 2**24 // (len(ii) * w + 1))
        for rs in range(0, n, step):
            blockt = t[rs : rs + step]
            sub = (meets[:, None, :] & blockt[None, :, :]) == meets[:, None, :]
            acc += sub.all(axis=2).sum(axis=1, dtype=np.int64)
        ok = acc == 2
        good_i.append(ii[ok])
        good_j.append(jj[ok])
    if good_i:
        gi = np.concatenate(good_i)
        gj = np.concatenate(good_j)
        one = np.uint64(1)
        np.bitwise_or.at(adj, (gi, gj >> 6), one << (gj & 63).astype(np.uint64))
        np.bitwise_or.at(adj, (gj, gi >> 6), one << (gi & 63).astype(np.uint64))
    return adj


def _bfs_eccentricity(adj: np.ndarray, start: int, n: int) -> int:
    words = adj.shape[1]
    visited = np.zeros(words, dtype=np.uint64)
    visited[start >> 6] |= np.uint64(1) << np.uint64(start & 63)
    frontier = np.array([start])
    level = 0
    seen = 1
    while True:
        reach = np.bitwise_or.reduce(adj[frontier], axis=0) & ~visited
        count = int(np.bitwise_count(reach).sum())
        if count == 0:
            break
        level += 1
        seen += count
        visited |= reach
        frontier = _bit_indices(reach)
    if seen != n:
        raise ValueError("graph is disconnected")
    return level


# ---------------------------------------------------------------------------
# face graphs


@dataclass
class FaceGraph:
    """One side of a cone's face lattice as a graph with orbit annotations.

    edges is a bit-packed adjacency matrix (row i holds node i's neighbor
    set); stats entries are aligned with orbits.orbits and hold each orbit
    representative's adjacency and incidence numbers plus the orbit size.
    """

    which: str
    nodes: list[tuple]
    edges: np.ndarray
    orbits: OrbitSet
    orbit_of_node: dict
    diameter: int
    representation_matrix: list[list[int]]
    stats: list[dict]

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.edges[i, j >> 6] >> np.uint64(j & 63) & np.uint64(1))

    def neighbors(self, i: int) -> list[int]:
        return [int(x) for x in _bit_indices(self.edges[i])]

    def degree(self, i: int) -> int:
        return int(np.bitwise_count(self.edges[i]).sum())


def build_face_graph(
    primal: Representation,
    dual: Representation,
    g: CoordPermGroup,
    which: str,
) -> FaceGraph:
    """Skeleton (ray side) or ridge graph (facet side) with full annotations.

    Diameter is the maximum BFS eccentricity over orbit representatives;
    eccentricity is constant on orbits because the group acts on the graph.
    """
    if which not in ("skeleton", "ridge"):
        raise ValueError(f"which must be skeleton or ridge, got {which!r}")
    if primal.kind != "V" or dual.kind != "H":
        raise ValueError("expected a V-representation and an H-representation")
    if primal.scheme != dual.scheme:
        raise ValueError("representations use different index schemes")
    cross = _tight_matrix_values(primal.rows, dual.rows)
    if bool((cross < 0).any()):
        raise ValueError("representations do not describe the same cone")

    nodes = list(primal.rows) if which == "skeleton" else list(dual.rows)
    other = dual.rows if which == "skeleton" else primal.rows
    tight = np.asarray(cross == 0, dtype=bool)
    if which == "ridge":
        tight = tight.T
    dim = primal.dim

    adj = _adjacency_masks(tight, dim)
    orbits = orbit_decompose(nodes, g)
    index = {tuple(v): i for i, v in enumerate(nodes)}
    orbit_of_node = {tuple(v): orbits.index_of[tuple(v)] for v in nodes}

    node_orbit = np.empty(len(nodes), dtype=np.int64)
    for v, i in index.items():
        node_orbit[i] = orbit_of_node[v]

    rep_matrix = []
    stats = []
    diameter = 0
    for k, orb in enumerate(orbits.orbits):
        i = index[orb.rep]
        nbr = _bit_indices(adj[i])
        row = [0] * len(orbits.orbits)
        for j in nbr:
            row[node_orbit[j]] += 1
        rep_matrix.append(row)
        stats.append(
            {
                "size": orb.size,
                "adjacency": int(len(nbr)),
                "incidence": int(tight[i].sum()),
            }
        )
        diameter = max(diameter, _bfs_eccentricity(adj, i, len(nodes)))
    return FaceGraph(
        which=which,
        nodes=nodes,
        edges=adj,
        orbits=orbits,
        orbit_of_node=orbit_of_node,
        diameter=diameter,
        representation_matrix=rep_matrix,
        stats=stats,
    )


def _tight_matrix_values(nodes, other):
    a = np.array(nodes, dtype=object)
    b = np.array(other, dtype=object)
    amax = max((abs(int(x)) for x in a.flat), default=0)
    bmax = max((abs(int(x)) for x in b.flat), default=0)
    if a.shape[1] * amax * bmax < _LIMIT:
        return a.astype(np.int64) @ b.astype(np.int64).T
    return a @ b.T


def is_group_invariant(fg: FaceGraph, g: CoordPermGroup) -> bool:
    """Check that every generator maps edges to edges (test helper)."""
    index = {tuple(v): i for i, v in enumerate(fg.nodes)}
    for p in g.generators:
        img = [index[apply_perm(p, tuple(v))] for v in fg.nodes]
        for i, v in enumerate(fg.nodes):
            for j in fg.neighbors(i):
                if not fg.adjacent(img[i], img[j]):
                    return False
    return True


def incidence_number(x, other_side: Representation) -> int:
    """How many rows of the complete dual description are tight at x."""
    return sum(1 for row in other_side.rows if dot(x, row) == 0)


# ---------------------------------------------------------------------------
# adjacency without both descriptions


def rays_adjacent(h: Representation, r1, r2, mode: str = "rank", all_rays=None) -> bool:
    """Whether two extreme rays span a two-dimensional face.

    rank mode: the rows tight at both must have rank dim - 2. combinatorial
    mode: no third extreme ray may be tight on every common row; the full
    ray list is computed on demand when not supplied.
    """
    if h.kind != "H":
        raise ValueError("rays_adjacent needs an H-representation")
    if mode not in ("rank", "combinatorial"):
        raise ValueError(f"unknown mode {mode!r}")
    d = h.dim
    a = normalize_ray(r1)
    b = normalize_ray(r2)
    if a == b:
        raise ValueError("the two rays coincide")
    for v in (a, b):
        tight = [row for row in h.rows if dot(row, v) == 0]
        if any(dot(row, v) < 0 for row in h.rows) or rank(tight) != d - 1:
            raise ValueError(f"{v} is not an extreme ray of the cone")
    common = [row for row in h.rows if dot(row, a) == 0 and dot(row, b) == 0]
    if mode == "rank":
        return rank(common) == d - 2
    rays = all_rays if all_rays is not None else dual_description(h).rows
    hits = 0
    for r in rays:
        if all(dot(row, r) == 0 for row in common):
            hits += 1
    return hits == 2


def facets_adjacent_lp(h: Representation, f1, f2) -> bool:
    """Whether two facets share a ridge, using LPs instead of the ray list.

    The dimension of the face cut out by both equalities is found by growing
    an exact spanning set: maximize functionals vanishing on the current
    span (capped at 1; homogeneity makes the optimum 0 or 1 exactly) until
    no direction is left. Adjacent means that dimension is dim - 2.
    """
    f1 = tuple(f1)
    f2 = tuple(f2)
    if f1 == f2:
        raise ValueError("the two facets coincide")
    pool = set(h.rows)
    if f1 not in pool or f2 not in pool:
        raise ValueError("both inputs must be rows of the representation")
    d = h.dim
    neg = [tuple(-x for x in f) for f in (f1, f2)]
    constraints = [list(r) for r in h.rows] + [list(neg[0]), list(neg[1])]
    rhs = [0] * len(constraints)

    span: list[tuple] = []
    known = [f1, f2]
    while True:
        if rank(span) == d - 2:
            return True
        grew = False
        for phi in kernel_basis(span, ncols=d):
            if rank(known + [phi]) == rank(known):
                continue
            hit = None
            for cand in (phi, tuple(-x for x in phi)):
                out = solve_lp(
                    constraints + [[-x for x in cand]],
                    rhs + [-1],
                    list(cand),
                    "max",
                )
                if out.value == 1:
                    hit = out.point
                    break
            if hit is not None:
                span.append(normalize_ray(hit))
            else:
                known.append(phi)
            grew = True
            break
        if not grew:
            return rank(span) == d - 2


# ---------------------------------------------------------------------------
# named graphs and the catalog


@dataclass(frozen=True)
class NamedGraph:
    """A small simple graph on vertices 0..vertex_count-1.

    labels, when present, gives each vertex its original identity (a point,
    or a (support set, value) pair for representation graphs).
    """

    name: str
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple | None = None

    def __post_init__(self):
        for a, b in self.edges:
            if not (0 <= a < b < self.vertex_count):
                raise ValueError(f"bad edge ({a}, {b})")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edges")


def _graph(name, n, edges, labels=None):
    return NamedGraph(name, n, tuple(sorted((min(e), max(e)) for e in edges)), labels)


def complete(n: int) -> NamedGraph:
    return _graph(f"K_{n}", n, combinations(range(n), 2))


def cycle(n: int) -> NamedGraph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return _graph(f"C_{n}", n, ((i, (i + 1) % n) for i in range(n)))


def complete_multipartite(parts) -> NamedGraph:
    parts = sorted(parts, reverse=True)
    name = "K_{" + ",".join(str(p) for p in parts) + "}"
    side = []
    for k, p in enumerate(parts):
        side.extend([k] * p)
    n = len(side)
    return _graph(name, n, ((i, j) for i, j in combinations(range(n), 2) if side[i] != side[j]))


def complete_minus_matching(n: int, t: int) -> NamedGraph:
    if not 1 <= t <= n // 2:
        raise ValueError("matching size out of range")
    drop = {(2 * i, 2 * i + 1) for i in range(t)}
    return _graph(
        f"K_{n}-{t}K_2", n, (e for e in combinations(range(n), 2) if e not in drop)
    )


def petersen() -> NamedGraph:
    pairs = list(combinations(range(5), 2))
    edges = [
        (i, j)
        for i, j in combinations(range(10), 2)
        if not set(pairs[i]) & set(pairs[j])
    ]
    return _graph("Petersen", 10, edges)


def cube3() -> NamedGraph:
    edges = [
        (a, b)
        for a, b in combinations(range(8), 2)
        if bin(a ^ b).count("1") == 1
    ]
    return _graph("3-cube", 8, edges)


def prism3() -> NamedGraph:
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    return _graph("Prism_3", 6, edges)


def johnson(a: int, b: int) -> NamedGraph:
    subsets = list(combinations(range(a), b))
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if len(set(subsets[i]) & set(subsets[j])) == b - 1
    ]
    return _graph(f"J({a},{b})", len(subsets), edges)


def nabla(g: NamedGraph) -> NamedGraph:
    edges = list(g.edges) + [(i, g.vertex_count) for i in range(g.vertex_count)]
    return _graph(f"nabla({g.name})", g.vertex_count + 1, edges)


def disjoint_cycles_complement(lengths) -> NamedGraph:
    """Complement of a disjoint union of circuits; C_1 and C_2 are a vertex
    and a single edge."""
    lengths = sorted(lengths, reverse=True)
    inside = set()
    start = 0
    for ln in lengths:
        block = list(range(start, start + ln))
        if ln == 2:
            inside.add((block[0], block[1]))
        elif ln >= 3:
            for i in range(ln):
                inside.add(tuple(sorted((block[i], block[(i + 1) % ln]))))
        start += ln
    n = start
    name = "co-(" + "+".join(f"C_{ln}" for ln in lengths) + ")"
    return _graph(name, n, (e for e in combinations(range(n), 2) if e not in inside))


def _adj_sets(g: NamedGraph) -> list[set[int]]:
    adj = [set() for _ in range(g.vertex_count)]
    for a, b in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _components(adj: list[set[int]]) -> list[list[int]]:
    seen = set()
    comps = []
    for s in range(len(adj)):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = [s]
        while queue:
            u = queue.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def _complement(g: NamedGraph) -> NamedGraph:
    have = set(g.edges)
    return _graph(
        f"co-({g.name})",
        g.vertex_count,
        (e for e in combinations(range(g.vertex_count), 2) if e not in have),
    )


def isomorphic(g1: NamedGraph, g2: NamedGraph) -> bool:
    """Backtracking isomorphism with degree pruning; fine below ~13 vertices."""
    n = g1.vertex_count
    if n != g2.vertex_count or len(g1.edges) != len(g2.edges):
        return False
    a1 = _adj_sets(g1)
    a2 = _adj_sets(g2)
    d1 = sorted(len(s) for s in a1)
    d2 = sorted(len(s) for s in a2)
    if d1 != d2:
        return False
    order = sorted(range(n), key=lambda v: -len(a1[v]))
    image = [-1] * n
    used = [False] * n

    def place(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if used[w] or len(a1[v]) != len(a2[w]):
                continue
            ok = True
            for u in a1[v]:
                if image[u] != -1 and image[u] not in a2[w]:
                    ok = False
                    break
            if ok:
                for u in range(n):
                    if image[u] != -1 and u not in a1[v] and image[u] in a2[w]:
                        ok = False
                        break
            if ok:
                image[v] = w
                used[w] = True
                if place(k + 1):
                    return True
                image[v] = -1
                used[w] = False
        return False

    return place(0)


def _canonical_form(g: NamedGraph) -> tuple:
    """Lex-min adjacency rows over all relabelings (degree-pruned search)."""
    n = g.vertex_count
    adj = _adj_sets(g)
    best: list[tuple[int, ...]] | None = None

    def extend(placed: list[int], rows: list[tuple[int, ...]]):
        nonlocal best
        k = len(placed)
        if best is not None and rows > best[:k]:
            return
        if k == n:
            if best is None or rows < best:
                best = list(rows)
            return
        taken = set(placed)
        cands = []
        for v in range(n):
            if v not in taken:
                row = tuple(1 if placed[i] in adj[v] else 0 for i in range(k))
                cands.append((row, v))
        cands.sort()
        lead = None
        for row, v in cands:
            if lead is not None and row > lead:
                break
            lead = row
            extend(placed + [v], rows + [row])

    extend([], [])
    assert best is not None
    edges = []
    for i, row in enumerate(best):
        for j, bit in enumerate(row):
            if bit:
                edges.append((j, i))
    return tuple(sorted(edges))


def classify_graph(g: NamedGraph) -> str:
    """Catalog name of the graph, or an unknown-certificate string.

    Fixed catalog order: Petersen, 3-cube, Prism_3, cycles, complete graphs,
    complete multipartite, complete minus a matching, complements of disjoint
    circuit unions, nabla over the catalog, Johnson graphs. The first match
    names the graph; unnamed graphs get a canonical certificate.
    """
    n = g.vertex_count
    if n > 13:
        raise ValueError("classification is limited to 13 vertices")
    adj = _adj_sets(g)
    degs = [len(s) for s in adj]
    m = len(g.edges)

    if n == 10 and m == 15 and set(degs) == {3} and isomorphic(g, petersen()):
        return "Petersen"
    if n == 8 and m == 12 and set(degs) == {3} and isomorphic(g, cube3()):
        return "3-cube"
    if n == 6 and m == 9 and set(degs) == {3} and isomorphic(g, prism3()):
        return "Prism_3"
    if n >= 3 and set(degs) == {2} and len(_components(adj)) == 1:
        return f"C_{n}"
    if m == n * (n - 1) // 2:
        return f"K_{n}"

    co = _complement(g)
    co_adj = _adj_sets(co)
    comps = _components(co_adj)
    if len(comps) >= 2 and all(
        all(w in co_adj[v] for v, w in combinations(comp, 2)) for comp in comps
    ):
        parts = sorted((len(c) for c in comps), reverse=True)
        return "K_{" + ",".join(str(p) for p in parts) + "}"
    if len(co.edges) >= 1 and all(len(s) <= 1 for s in co_adj):
        return f"K_{n}-{len(co.edges)}K_2"

    def is_circuit(comp):
        if len(comp) == 1:
            return True
        if len(comp) == 2:
            return len(co_adj[comp[0]]) == 1
        return all(len(co_adj[v]) == 2 for v in comp)

    if co.edges and all(is_circuit(c) for c in comps) and any(len(c) >= 3 for c in comps):
        lengths = sorted((len(c) for c in comps), reverse=True)
        return "co-(" + "+".join(f"C_{ln}" for ln in lengths) + ")"

    for v in range(n):
        if degs[v] == n - 1:
            keep = [u for u in range(n) if u != v]
            pos = {u: i for i, u in enumerate(keep)}
            inner = _graph(
                "", n - 1, ((pos[a], pos[b]) for a, b in g.edges if v not in (a, b))
            )
            inner_name = classify_graph(inner)
            if not inner_name.startswith("unknown"):
                return f"nabla({inner_name})"
            break

    for a in range(2, 10):
        for b in range(2, a // 2 + 1):
            if comb(a, b) == n:
                j = johnson(a, b)
                if sorted(len(s) for s in _adj_sets(j)) == sorted(degs) and isomorphic(g, j):
                    return f"J({a},{b})"

    cert = _canonical_form(g)
    return f"unknown(degrees={tuple(sorted(degs, reverse=True))}, edges={cert})"


# ---------------------------------------------------------------------------
# representation graphs of single rays


def representation_graph_G(v, spec) -> NamedGraph:
    """The Johnson-graph restriction to a vector's support, value-labeled."""
    scheme = index_scheme(spec)
    if scheme.kind not in ("subsets", "unordered_pairs"):
        raise ValueError("the representation graph needs subset coordinates")
    support = [(lab, val) for lab, val in zip(scheme.labels, v) if val != 0]
    if not support:
        raise ValueError("the zero vector has no representation graph")
    k = scheme.k
    edges = [
        (i, j)
        for i, j in combinations(range(len(support)), 2)
        if len(set(support[i][0]) & set(support[j][0])) == k - 1
    ]
    return _graph("", len(support), edges, labels=tuple(support))


def representation_graph_H(v, spec) -> NamedGraph:
    """For n = m+3: edges are the 2-set complements of the support sets.

    Isolated points are dropped, so the vertex labels list exactly the
    points covered by some edge.
    """
    if spec.n != spec.m + 3:
        raise ValueError("the complement graph needs n = m + 3")
    if any(x not in (0, 1) for x in v):
        raise ValueError("the complement graph is defined for 0/1 vectors")
    scheme = index_scheme(spec)
    if scheme.kind not in ("subsets", "unordered_pairs"):
        raise ValueError("the complement graph needs subset coordinates")
    allpts = set(range(1, spec.n + 1))
    edges_pts = [
        tuple(sorted(allpts - set(lab)))
        for lab, val in zip(scheme.labels, v)
        if val == 1
    ]
    if not edges_pts:
        raise ValueError("the zero vector has no representation graph")
    points = sorted({p for e in edges_pts for p in e})
    pos = {p: i for i, p in enumerate(points)}
    return _graph(
        "", len(points), ((pos[a], pos[b]) for a, b in edges_pts), labels=tuple(points)
    )


# ---------------------------------------------------------------------------
# 0/1 statistics and conjectured rules


def zero_one_ray_stats(rays: OrbitSet, g: CoordPermGroup) -> dict:
    """Count 0/1-valued ray orbits and the minimal zero count over all rays.

    Both quantities are orbit-invariant, so representatives suffice.
    """
    zero_one = sum(
        1 for o in rays.orbits if all(x in (0, 1) for x in o.rep)
    )
    min_zero = min(sum(1 for x in o.rep if x == 0) for o in rays.orbits)
    return {"zero_one_orbit_count": zero_one, "min_zero_count": min_zero}


def _parts(partition) -> list[frozenset]:
    parts = [frozenset(p) for p in partition]
    if len(set(parts)) != len(parts):
        raise ValueError("repeated parts in partition")
    flat = [x for p in parts for x in p]
    if len(flat) != len(set(flat)) or any(not p for p in parts):
        raise ValueError("parts must be disjoint and nonempty")
    return parts


def _split_merge_pattern(p1, p2) -> bool:
    """Do the partitions differ exactly by (A u B, C, D) vs (A, B, C u D)?"""
    s1, s2 = set(p1), set(p2)
    only1 = list(s1 - s2)
    only2 = list(s2 - s1)
    if len(only1) != 3 or len(only2) != 3:
        return False
    for big in only1:
        rest1 = [p for p in only1 if p != big]
        for x, y in combinations(only2, 2):
            if x | y != big:
                continue
            z = next(p for p in only2 if p not in (x, y))
            if rest1[0] | rest1[1] == z:
                return True
    return False


def _meet_size(p1, p2) -> int:
    return sum(1 for a in p1 for b in p2 if a & b)


def _join_size(p1, p2) -> int:
    blocks = [set(p) for p in p1]
    for b in p2:
        hit = [blk for blk in blocks if blk & b]
        merged = set(b).union(*hit)
        blocks = [blk for blk in blocks if not blk & b]
        blocks.append(merged)
    return len(blocks)


def _conj5(p1, p2) -> bool:
    a = _parts(p1)
    b = _parts(p2)
    if sorted(a, key=sorted) == sorted(b, key=sorted):
        raise ValueError("partitions must be distinct")
    return not _split_merge_pattern(a, b)


def _conj6(m, p1, p2) -> bool:
    a = _parts(p1)
    b = _parts(p2)
    if len(a) != m + 1 or len(b) != m + 1:
        raise ValueError(f"expected (m+1)-partitions with m = {m}")
    if sorted(a, key=sorted) == sorted(b, key=sorted):
        raise ValueError("partitions must be distinct")
    first = tuple([1] * m)
    second = tuple([1] * (m - 1) + [2])
    t1 = tuple(sorted(len(p) for p in a)[: m])
    t2 = tuple(sorted(len(p) for p in b)[: m])
    if t1 == first and t2 == first:
        return not _split_merge_pattern(a, b)
    if t1 == second and t2 == second:
        if _split_merge_pattern(a, b):
            return False
        excess = _meet_size(a, b) - (m + 1)
        deficit = (m + 1) - _join_size(a, b)
        return not (excess == deficit > 1)
    raise ValueError("partition types outside the two covered orbits")


def _smet_row_kind(tag):
    kind, payload = tag
    if kind == "nonneg":
        return ("nonneg", frozenset(payload))
    if kind == "simplex":
        t, i = payload
        return ("simplex", frozenset(t), i)
    raise ValueError(f"unrecognized facet tag {tag!r}")


def _conj2(spec, tag1, tag2) -> bool:
    if spec.family != "smet":
        raise ValueError("rule covers super-metric facets")
    k1 = _smet_row_kind(tag1)
    k2 = _smet_row_kind(tag2)
    if k1 == k2:
        raise ValueError("facets must be distinct")
    s = spec.s
    m = spec.m
    if k1[0] == "simplex" and k2[0] == "simplex":
        same_support = k1[1] == k2[1]
        return not (s == 1 and same_support)
    if k1[0] == "nonneg" and k2[0] == "nonneg":
        meets = len(k1[1] & k2[1]) == m
        return not (meets and m - 1 <= s < m)
    nn = k1 if k1[0] == "nonneg" else k2
    st = k2 if k1[0] == "nonneg" else k1
    conflicting = nn[1] == st[1] - {st[2]}
    return not conflicting


def _h_v_or_none(v, spec):
    try:
        return representation_graph_H(v, spec)
    except ValueError:
        return None


def _allowed_circuit_lengths(lengths, n) -> bool:
    lengths = sorted(lengths, reverse=True)
    if sum(lengths) != n:
        return False
    if len(lengths) == 1:
        return lengths[0] >= 5
    tail = (lengths[-2], lengths[-1])
    if tail in ((1, 1), (2, 1), (2, 2)):
        return False
    if len(lengths) == 2 and lengths[1] in (1, 2) and lengths[0] <= 4:
        return False
    return True


def _is_circuit_union(co_adj, comps) -> bool:
    for comp in comps:
        if len(comp) == 1:
            continue
        if len(comp) == 2:
            if len(co_adj[comp[0]]) != 1:
                return False
        elif any(len(co_adj[u]) != 2 for u in comp):
            return False
    return True


def _conj8(v, spec) -> bool:
    if spec.family != "smet" or spec.n != spec.m + 3:
        raise ValueError("rule covers smet with n = m + 3")
    n = spec.n
    if spec.s == spec.m:
        hv = _h_v_or_none(v, spec)
        if hv is None:
            return False
        return isomorphic(hv, complete(n - 1)) or isomorphic(
            hv, complete_minus_matching(n, n // 2)
        )
    if spec.s == spec.m - 1:
        hv = _h_v_or_none(v, spec)
        if hv is None or hv.vertex_count != n:
            return False
        co_adj = _adj_sets(_complement(hv))
        comps = _components(co_adj)
        if not _is_circuit_union(co_adj, comps):
            return False
        return _allowed_circuit_lengths([len(c) for c in comps], n)
    raise ValueError("rule covers s = m and s = m - 1")


def _weighted_edges(v, spec):
    """Complement 2-sets of the support with their values, for n = m + 3."""
    if spec.n != spec.m + 3:
        raise ValueError("the complement graph needs n = m + 3")
    scheme = index_scheme(spec)
    if scheme.kind not in ("subsets", "unordered_pairs"):
        raise ValueError("the complement graph needs subset coordinates")
    allpts = set(range(1, spec.n + 1))
    return [
        (tuple(sorted(allpts - set(lab))), val)
        for lab, val in zip(scheme.labels, v)
        if val != 0
    ]


def _conj9(v, spec) -> bool:
    """Membership in the conjectured complete ray list of the hemi-metric
    cone on m + 3 points: single circuits for 0/1 rays, or two circuits
    joined by a path carrying value 2."""
    if spec.family not in ("hmet", "met") or spec.n != spec.m + 3:
        raise ValueError("rule covers hemi-metrics on n = m + 3 points")
    vals = set(v) - {0}
    if not vals:
        return False
    if vals == {1}:
        hv = representation_graph_H(v, spec)
        adj = _adj_sets(hv)
        return (
            3 <= hv.vertex_count <= spec.n
            and all(len(s) == 2 for s in adj)
            and len(_components(adj)) == 1
        )
    if not vals <= {1, 2}:
        return False
    edges = _weighted_edges(v, spec)
    if len({e for e, _ in edges}) != len(edges):
        return False
    path = [e for e, w in edges if w == 2]
    rim = [e for e, w in edges if w == 1]
    deg_p: dict[int, int] = {}
    for a, b in path:
        deg_p[a] = deg_p.get(a, 0) + 1
        deg_p[b] = deg_p.get(b, 0) + 1
    ends = [u for u, d in deg_p.items() if d == 1]
    if len(ends) != 2 or any(d > 2 for d in deg_p.values()):
        return False
    # the weight-2 edges must form one path, not a union of several
    seen = {ends[0]}
    frontier = [ends[0]]
    nbr: dict[int, list[int]] = {}
    for a, b in path:
        nbr.setdefault(a, []).append(b)
        nbr.setdefault(b, []).append(a)
    while frontier:
        u = frontier.pop()
        for w in nbr[u]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    if seen != set(deg_p):
        return False
    deg_r: dict[int, int] = {}
    for a, b in rim:
        deg_r[a] = deg_r.get(a, 0) + 1
        deg_r[b] = deg_r.get(b, 0) + 1
    if any(d != 2 for d in deg_r.values()):
        return False
    adj_r: dict[int, list[int]] = {}
    for a, b in rim:
        adj_r.setdefault(a, []).append(b)
        adj_r.setdefault(b, []).append(a)
    cyc_verts = set(deg_r)
    comps = []
    left = set(cyc_verts)
    while left:
        s = left.pop()
        comp = {s}
        q = [s]
        while q:
            u = q.pop()
            for w in adj_r[u]:
                if w not in comp:
                    comp.add(w)
                    q.append(w)
        left -= comp
        comps.append(comp)
    if len(comps) != 2 or any(len(c) < 3 for c in comps):
        return False
    # path endpoints sit on distinct circuits; interior stays off both
    e0_in = [k for k, c in enumerate(comps) if ends[0] in c]
    e1_in = [k for k, c in enumerate(comps) if ends[1] in c]
    if e0_in == e1_in or len(e0_in) != 1 or len(e1_in) != 1:
        return False
    interior = set(deg_p) - set(ends)
    return not (interior & cyc_verts)


def conjecture_predicates(name: str, *args) -> bool:
    """Evaluate one of the conjectured combinatorial rules.

    conj2 (spec, tag1, tag2): predicted adjacency of two facet rows of a
      super-metric cone, the rows given by their build tags.
    conj5 (partition1, partition2): predicted adjacency of two partition
      hemi-metrics.
    conj6 (m, partition1, partition2): predicted adjacency of two hemi-metric
      partition rays; covers the all-singletons-plus-rest orbit and the
      one-pair orbit.
    conj8 (ray, spec): whether a 0/1 super-metric ray's complement graph
      lies in the expected families (two fixed graphs at s = m, admissible
      disjoint-circuit-union complements at s = m - 1).
    conj9 (ray, spec): whether a hemi-metric ray on m + 3 points matches
      the conjectured complete list (a circuit, or two circuits joined by
      a path of value-2 edges).
    """
    table = {
        "conj2": _conj2,
        "conj5": _conj5,
        "conj6": _conj6,
        "conj8": _conj8,
        "conj9": _conj9,
    }
    if name not in table:
        raise ValueError(f"unknown predicate {name!r}")
    return table[name](*args)


# ---------------------------------------------------------------------------
# text exports


def graph_to_text(fg: FaceGraph) -> str:
    lines = [f"{i}: " + " ".join(str(j) for j in fg.neighbors(i)) for i in range(len(fg.nodes))]
    return "\n".join(lines) + "\n"


def orbit_table_text(fg: FaceGraph) -> str:
    """Orbit table with the representative vector and Adj./Size/Inc. columns."""
    lines = ["representative\tAdj.\tSize\tInc."]
    for orb, st in zip(fg.orbits.orbits, fg.stats):
        vec = " ".join(str(x) for x in orb.rep)
        lines.append(f"{vec}\t{st['adjacency']}\t{st['size']}\t{st['incidence']}")
    return "\n".join(lines) + "\n"
