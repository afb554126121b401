"""Cone families over a finite point set.

H-side families (defined by inequalities):
  met   semi-metrics: triangle inequalities on pairs
  qmet  quasi-semi-metrics: non-negativity plus oriented triangles on ordered pairs
  hmet  m-hemi-metrics: simplex inequalities plus non-negativity on (m+1)-subsets
  smet  (m,s)-super-metrics: hmet with the isolated term weighted by a rational s

V-side families (defined by generators):
  cut   cut semi-metrics delta(S)
  omcut oriented multicuts delta'(S_1,...,S_q)
  hcut  partition hemi-metrics alpha(S_1,...,S_{m+1})
  scut  the 0/1-valued extreme rays of the matching smet cone

All vectors are primitive integer tuples in a fixed lexicographic
coordinate order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from .exact import dot, normalize_ray, rank
from .exact import solve_lp

H_FAMILIES = ("met", "qmet", "hmet", "smet")
V_FAMILIES = ("cut", "omcut", "hcut", "scut")


class IndexScheme:
    """Ordered coordinate labels shared by a cone and its dual.

    kind is one of "unordered_pairs" (sorted 2-tuples), "ordered_pairs"
    ((i,j), i != j) or "subsets" (sorted k-tuples); labels are listed in
    lexicographic order and position maps a label back to its index.
    """

    __slots__ = ("kind", "n", "k", "labels", "position")

    def __init__(self, kind: str, n: int, k: int):
        if kind == "unordered_pairs":
            labels = list(combinations(range(1, n + 1), 2))
            k = 2
        elif kind == "ordered_pairs":
            labels = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
            k = 2
        elif kind == "subsets":
            labels = list(combinations(range(1, n + 1), k))
        else:
            raise ValueError(f"unknown index scheme kind {kind!r}")
        self.kind = kind
        self.n = n
        self.k = k
        self.labels = labels
        self.position = {lab: i for i, lab in enumerate(labels)}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IndexScheme)
            and (self.kind, self.n, self.k) == (other.kind, other.n, other.k)
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.n, self.k))

    def __repr__(self) -> str:
        return f"IndexScheme({self.kind}, n={self.n}, k={self.k}, dim={self.dim})"


@dataclass(frozen=True)
class ConeSpec:
    """Which cone: family name, point count n, arity parameter m, weight s.

    m is fixed to 1 and s to 1 for the families that do not use them.
    For smet/scut any s > 0 is representable; s >= m+1 gives the two
    degenerate regimes (half-line at s = m+1, the zero cone above).
    """

    family: str
    n: int
    m: int = 1
    s: Fraction = Fraction(1)

    def __post_init__(self):
        fam = self.family.lower()
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "s", Fraction(self.s))
        if fam not in H_FAMILIES + V_FAMILIES:
            raise ValueError(f"unknown cone family {self.family!r}")
        if fam in ("met", "qmet", "cut", "omcut"):
            if self.m != 1:
                raise ValueError(f"{fam} takes m=1, got m={self.m}")
            if self.s != 1:
                raise ValueError(f"{fam} takes s=1, got s={self.s}")
            if self.n < 3:
                raise ValueError(f"{fam} needs n >= 3, got n={self.n}")
        else:
            if self.m < 1:
                raise ValueError(f"m must be positive, got {self.m}")
            if self.n < self.m + 2:
                raise ValueError(f"{fam} needs n >= m+2, got n={self.n}, m={self.m}")
            if fam in ("hmet", "hcut") and self.s != 1:
                raise ValueError(f"{fam} takes s=1, got s={self.s}")
            if self.s <= 0:
                raise ValueError(f"s must be positive, got {self.s}")

    @property
    def collapse(self) -> str | None:
        """Degenerate regime marker: "zero", "halfline" or None."""
        if self.family in ("smet", "scut"):
            if self.s > self.m + 1:
                return "zero"
            if self.s == self.m + 1:
                return "halfline"
        return None

    @property
    def dim(self) -> int:
        if self.family in ("met", "cut"):
            return comb(self.n, 2)
        if self.family in ("qmet", "omcut"):
            return self.n * (self.n - 1)
        return comb(self.n, self.m + 1)

    def __str__(self) -> str:
        if self.family in ("met", "qmet", "cut", "omcut"):
            return f"{self.family}_{self.n}"
        if self.family in ("hmet", "hcut"):
            return f"{self.family}^{self.m}_{self.n}"
        return f"{self.family}^{{{self.m},{self.s}}}_{self.n}"


def index_scheme(spec: ConeSpec) -> IndexScheme:
    if spec.family in ("met", "cut"):
        return IndexScheme("unordered_pairs", spec.n, 2)
    if spec.family in ("qmet", "omcut"):
        return IndexScheme("ordered_pairs", spec.n, 2)
    return IndexScheme("subsets", spec.n, spec.m + 1)


@dataclass
class Representation:
    """A cone as inequality rows (kind "H") or generator rows (kind "V")."""

    kind: str
    scheme: IndexScheme
    rows: list[tuple[int, ...]]
    meta: list[tuple] | None = None
    spec: ConeSpec | None = None
    dd: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("H", "V"):
            raise ValueError(f"representation kind must be H or V, got {self.kind!r}")
        d = self.scheme.dim
        for row in self.rows:
            if len(row) != d:
                raise ValueError(f"row of length {len(row)}, scheme dim {d}")
        if len(set(self.rows)) != len(self.rows):
            raise ValueError("duplicate rows in representation")
        if self.meta is not None and len(self.meta) != len(self.rows):
            raise ValueError("meta length does not match row count")

    @property
    def dim(self) -> int:
        return self.scheme.dim


def build_h(spec: ConeSpec) -> Representation:
    """All defining inequalities of an H-family cone.

    Non-negativity rows come first (absent for met), then the
    triangle/simplex block; both blocks in lexicographic order.
    Redundant rows are kept; see redundancy_filter.
    """
    if spec.family not in H_FAMILIES:
        raise ValueError(f"{spec.family} is a V-family; use build_generators")
    scheme = index_scheme(spec)
    pos = scheme.position
    d = scheme.dim
    rows: list[tuple[int, ...]] = []
    meta: list[tuple] = []

    if spec.family == "met":
        for x, y, z in combinations(range(1, spec.n + 1), 3):
            # one row per choice of the negative pair inside the triple
            for neg, others in (((x, y), ((x, z), (y, z))),
                                ((x, z), ((x, y), (y, z))),
                                ((y, z), ((x, y), (x, z)))):
                row = [0] * d
                row[pos[neg]] = -1
                for pr in others:
                    row[pos[pr]] = 1
                rows.append(tuple(row))
                meta.append(("triangle", (neg, (x, y, z))))
    elif spec.family == "qmet":
        for lab in scheme.labels:
            row = [0] * d
            row[pos[lab]] = 1
            rows.append(tuple(row))
            meta.append(("nonneg", lab))
        pts = range(1, spec.n + 1)
        for x in pts:
            for y in pts:
                if y == x:
                    continue
                for z in pts:
                    if z == x or z == y:
                        continue
                    # d(x,z) + d(z,y) - d(x,y) >= 0
                    row = [0] * d
                    row[pos[(x, z)]] += 1
                    row[pos[(z, y)]] += 1
                    row[pos[(x, y)]] -= 1
                    rows.append(tuple(row))
                    meta.append(("oriented_triangle", ((x, y), z)))
    else:
        p, q = spec.s.numerator, spec.s.denominator
        for lab in scheme.labels:
            row = [0] * d
            row[pos[lab]] = 1
            rows.append(tuple(row))
            meta.append(("nonneg", lab))
        for t in combinations(range(1, spec.n + 1), spec.m + 2):
            faces = {i: tuple(x for x in t if x != i) for i in t}
            for i in t:
                row = [0] * d
                for k in t:
                    row[pos[faces[k]]] = q if k != i else -p
                rows.append(tuple(row))
                meta.append(("simplex", (t, i)))
    return Representation(kind="H", scheme=scheme, rows=rows, meta=meta, spec=spec)


def redundancy_filter(rep: Representation) -> Representation:
    """Drop every inequality implied by the others.

    Row r is kept iff some x satisfies the other rows and r.x < 0,
    decided exactly by minimizing r.x under the normalization r.x >= -1.
    Rows are tested in order against all currently surviving rows.
    """
    if rep.kind != "H":
        raise ValueError("redundancy_filter expects an H-representation")
    alive = list(range(len(rep.rows)))
    i = 0
    while i < len(alive):
        idx = alive[i]
        others = [rep.rows[j] for j in alive if j != idx]
        r = rep.rows[idx]
        if not others:
            i += 1
            continue
        out = solve_lp(
            constraints=others + [r],
            rhs=[0] * len(others) + [-1],
            objective=r,
            sense="min",
        )
        if out.status != "optimal":
            raise RuntimeError(f"redundancy probe returned {out.status}")
        if out.value < 0:
            i += 1
        else:
            alive.pop(i)
    return Representation(
        kind="H",
        scheme=rep.scheme,
        rows=[rep.rows[j] for j in alive],
        meta=[rep.meta[j] for j in alive] if rep.meta is not None else None,
        spec=rep.spec,
    )


def set_partitions(elements: tuple[int, ...], parts: int):
    """All partitions of elements into exactly `parts` nonempty blocks.

    Blocks are sorted by minimum element; the partition list is emitted
    in a deterministic order (first element placed into block 0 first).
    """
    n = len(elements)
    if parts < 1 or parts > n:
        return
    blocks: list[list[int]] = []

    def place(i: int):
        if i == n:
            if len(blocks) == parts:
                yield tuple(tuple(b) for b in blocks)
            return
        # remaining elements must be able to open the missing blocks
        if len(blocks) + (n - i) < parts:
            return
        x = elements[i]
        for b in blocks:
            b.append(x)
            yield from place(i + 1)
            b.pop()
        if len(blocks) < parts:
            blocks.append([x])
            yield from place(i + 1)
            blocks.pop()

    yield from place(0)


def _partition_map(parts, n: int) -> dict[int, int]:
    where: dict[int, int] = {}
    for bi, block in enumerate(parts):
        if not block:
            raise ValueError("empty part in partition")
        for x in block:
            if not 1 <= x <= n:
                raise ValueError(f"point {x} outside 1..{n}")
            if x in where:
                raise ValueError(f"point {x} appears in two parts")
            where[x] = bi
    if len(where) != n:
        raise ValueError("parts do not cover the point set")
    return where


def delta_vector(kind: str, parts, spec: ConeSpec) -> tuple[int, ...]:
    """The 0/1 generator vector of a (multi)cut or partition hemi-metric.

    kind "cut"/"oriented_cut" take a single subset S (or the pair
    S, complement); the partition kinds take the full ordered or
    unordered partition.
    """
    scheme = index_scheme(spec)
    n = spec.n
    if kind in ("cut", "oriented_cut"):
        blocks = list(parts)
        if blocks and isinstance(blocks[0], int):
            s = frozenset(blocks)
        elif len(blocks) == 1:
            s = frozenset(blocks[0])
        elif len(blocks) == 2:
            _partition_map(blocks, n)
            s = frozenset(blocks[0])
        else:
            raise ValueError(f"{kind} takes one subset or a 2-part partition")
        if not s or len(s) == n:
            raise ValueError(f"{kind} needs a proper nonempty subset")
        if not all(1 <= x <= n for x in s):
            raise ValueError(f"points outside 1..{n}")
        if kind == "cut":
            if scheme.kind != "unordered_pairs":
                raise ValueError("cut vectors live on unordered pairs")
            return tuple(int((a in s) != (b in s)) for a, b in scheme.labels)
        if scheme.kind != "ordered_pairs":
            raise ValueError("oriented cut vectors live on ordered pairs")
        return tuple(int(a in s and b not in s) for a, b in scheme.labels)

    blocks = [tuple(sorted(b)) for b in parts]
    where = _partition_map(blocks, n)
    if kind == "multicut":
        if scheme.kind != "unordered_pairs" or len(blocks) < 2:
            raise ValueError("multicut needs unordered pairs and at least 2 parts")
        return tuple(int(where[a] != where[b]) for a, b in scheme.labels)
    if kind == "oriented_multicut":
        if scheme.kind != "ordered_pairs" or len(blocks) < 2:
            raise ValueError("oriented multicut needs ordered pairs and at least 2 parts")
        return tuple(int(where[a] < where[b]) for a, b in scheme.labels)
    if kind == "partition_hemimetric":
        if scheme.kind != "subsets" or len(blocks) != scheme.k:
            raise ValueError(
                f"partition hemi-metric needs subsets({n},{scheme.k}) and exactly {scheme.k} parts"
            )
        return tuple(int(len({where[x] for x in lab}) == scheme.k) for lab in scheme.labels)
    raise ValueError(f"unknown delta kind {kind!r}")


def build_generators(spec: ConeSpec, smet_rays: Representation | None = None) -> Representation:
    """All generators of a V-family cone, in a fixed enumeration order."""
    if spec.family not in V_FAMILIES:
        raise ValueError(f"{spec.family} is an H-family; use build_h")
    scheme = index_scheme(spec)
    n = spec.n
    rows: list[tuple[int, ...]] = []
    meta: list[tuple] = []

    if spec.family == "cut":
        # S ranges over subsets containing 1, excluding V_n itself
        for size in range(0, n - 1):
            for rest in combinations(range(2, n + 1), size):
                s = (1,) + rest
                rows.append(delta_vector("cut", [s], spec))
                meta.append(("cut", s))
    elif spec.family == "omcut":
        base = ConeSpec("omcut", n)
        for q in range(2, n + 1):
            for blocks in set_partitions(tuple(range(1, n + 1)), q):
                for ordering in permutations(blocks):
                    rows.append(delta_vector("oriented_multicut", ordering, base))
                    meta.append(("oriented_multicut", ordering))
    elif spec.family == "hcut":
        for blocks in set_partitions(tuple(range(1, n + 1)), spec.m + 1):
            rows.append(delta_vector("partition_hemimetric", blocks, spec))
            meta.append(("partition_hemimetric", blocks))
    else:
        if smet_rays is None or smet_rays.kind != "V":
            raise ValueError(
                "scut generators are the 0/1-valued extreme rays of the matching "
                "smet cone; pass smet_rays as a V-representation"
            )
        if smet_rays.scheme != scheme:
            raise ValueError("smet_rays scheme does not match the scut spec")
        for row in smet_rays.rows:
            if set(row) <= {0, 1}:
                rows.append(row)
                meta.append(("zero_one_ray", tuple(i for i, x in enumerate(row) if x)))
    return Representation(kind="V", scheme=scheme, rows=rows, meta=meta, spec=spec)


def zero_extension(d: tuple, spec: ConeSpec) -> tuple:
    """Lift a vector on subsets(n, k) to subsets(n+1, k+1), zero off the new point."""
    scheme = index_scheme(spec)
    if scheme.kind == "ordered_pairs":
        raise ValueError("zero_extension is defined for subset-indexed families")
    if len(d) != scheme.dim:
        raise ValueError(f"vector length {len(d)}, scheme dim {scheme.dim}")
    pos = scheme.position
    new_pt = spec.n + 1
    out = []
    for s in combinations(range(1, spec.n + 2), scheme.k + 1):
        if new_pt in s:
            out.append(d[pos[tuple(x for x in s if x != new_pt)]])
        else:
            out.append(0)
    return tuple(out)


def vertex_splitting(d: tuple, spec: ConeSpec) -> tuple:
    """Lift a vector on subsets(n, k) to subsets(n+1, k), duplicating point n as n+1."""
    scheme = index_scheme(spec)
    if scheme.kind == "ordered_pairs":
        raise ValueError("vertex_splitting is defined for subset-indexed families")
    if len(d) != scheme.dim:
        raise ValueError(f"vector length {len(d)}, scheme dim {scheme.dim}")
    pos = scheme.position
    old_pt, new_pt = spec.n, spec.n + 1
    out = []
    for s in combinations(range(1, spec.n + 2), scheme.k):
        if old_pt in s and new_pt in s:
            out.append(0)
        elif new_pt not in s:
            out.append(d[pos[s]])
        else:
            out.append(d[pos[tuple(sorted(x if x != new_pt else old_pt for x in s))]])
    return tuple(out)


def is_member(v: tuple, rep: Representation) -> dict:
    """Evaluate v against every inequality row; list the violated ones."""
    if rep.kind != "H":
        raise ValueError("is_member expects an H-representation")
    if len(v) != rep.dim:
        raise ValueError(f"vector length {len(v)}, representation dim {rep.dim}")
    violated = [i for i, row in enumerate(rep.rows) if dot(row, v) < 0]
    return {"inside": not violated, "violated": violated}


def _bfs_diameter(adj: list[set[int]]) -> int:
    n = len(adj)
    best = 0
    for start in range(n):
        dist = {start: 0}
        frontier = [start]
        while frontier:
            step = []
            for u in frontier:
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        step.append(w)
            frontier = step
        if len(dist) != n:
            raise ValueError("graph is disconnected")
        best = max(best, max(dist.values()))
    return best


def smet_closed_form(m: int, s) -> dict:
    """Complete description of the super-metric cone at its smallest size n = m+2.

    Rays and both face graphs are computed exactly from the defining
    system (adjacency by rank tests); the returned kind strings state
    the closed-form identifications that the construction realizes.
    """
    s = Fraction(s)
    if not 0 < s < m + 1:
        raise ValueError(
            f"s={s} outside (0, {m + 1}): the cone is a half-line at s = m+1 "
            "and collapses to the origin above"
        )
    n = m + 2
    spec = ConeSpec("smet", n, m, s)
    scheme = index_scheme(spec)
    labels = scheme.labels
    d = scheme.dim  # equals n: each (m+1)-subset misses one point
    comp = [next(iter(set(range(1, n + 1)) - set(lab))) for lab in labels]
    p, q = s.numerator, s.denominator
    fl = int(s)  # floor, s > 0
    frac_num = p - q * fl

    rays = set()
    ones = fl + 1
    for support in combinations(range(n), ones):
        if s.denominator == 1:
            vec = [0] * d
            for i in support:
                vec[i] = 1
            rays.add(tuple(vec))
        else:
            for extra in range(n):
                if extra in support:
                    continue
                vec = [0] * d
                for i in support:
                    vec[i] = q
                vec[extra] = frac_num
                rays.add(tuple(vec))
    rays = sorted(rays)

    # candidate bounding rows: one simplex row per point, one non-negativity per coordinate
    cand = []
    for i in range(1, n + 1):
        cand.append(tuple(-p if comp[j] == i else q for j in range(d)))
    for j in range(d):
        cand.append(tuple(int(t == j) for t in range(d)))
    incid = []
    for row in cand:
        tight = [r for r in rays if dot(row, r) == 0]
        if any(dot(row, r) < 0 for r in rays):
            raise AssertionError("candidate row invalid on a constructed ray")
        incid.append(tight)
    facets = [i for i, tight in enumerate(incid) if rank(tight) == d - 1]
    facet_rows = [cand[i] for i in facets]
    nn_are_facets = any(i >= n for i in facets)

    ray_tight = []
    for r in rays:
        ray_tight.append([facet_rows[i] for i in range(len(facets)) if dot(facet_rows[i], r) == 0])
    skel = [set() for _ in rays]
    for a in range(len(rays)):
        for b in range(a + 1, len(rays)):
            common = [row for row in ray_tight[a] if dot(row, rays[b]) == 0]
            if rank(common) == d - 2:
                skel[a].add(b)
                skel[b].add(a)
    ridge = [set() for _ in facets]
    for a in range(len(facets)):
        for b in range(a + 1, len(facets)):
            common = [r for r in incid[facets[a]] if r in set(incid[facets[b]])]
            if rank(common) == d - 2:
                ridge[a].add(b)
                ridge[b].add(a)

    if s.denominator == 1:
        description = f"all 0/1 vectors with {ones} ones"
        skeleton_kind = f"J({n},{ones})"
    else:
        description = f"{ones} entries 1 and one entry {s - fl}"
        skeleton_kind = "same support, or fraction moved"
    return {
        "m": m,
        "s": s,
        "n": n,
        "ray_count": len(rays),
        "ray_orbit_count": 1,
        "ray_orbit_description": description,
        "rays": rays,
        "facet_count": len(facets),
        "facet_rows": facet_rows,
        "nn_are_facets": nn_are_facets,
        "skeleton_kind": skeleton_kind,
        "skeleton_edges": [(a, b) for a in range(len(rays)) for b in skel[a] if a < b],
        "skeleton_diameter": _bfs_diameter(skel),
        "ridge_edges": [(a, b) for a in range(len(facets)) for b in ridge[a] if a < b],
        "ridge_diameter": _bfs_diameter(ridge),
    }
