"""Adjacency decomposition: orbit-wise facet enumeration of a V-cone.

Facets are discovered one orbit at a time. Starting from a single facet found
by gift-wrapping, the ridges lying on a treated facet (the facets of the
sub-cone it carves out) are each rotated to the unique second facet through
them, and newly reached orbits join the frontier. For a pointed
full-dimensional cone the facet-ridge graph is connected, so this closure
visits every orbit; the run terminates because orbits are finitely many and
none is expanded twice.

Sub-cone ridge enumeration runs plain dual description by default; a
recursion depth of 2 or more re-enters the decomposition on the sub-cone
itself (under the facet's stabilizer), which is only worthwhile for the very
largest targets.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from fractions import Fraction

from .cones import Representation
from .dd import run_dd
from .exact import dot, kernel_basis, normalize_ray, rank, solve_lp
from .groups import CoordPermGroup, Orbit, OrbitSet, apply_perm, canonical_rep


@dataclass
class AdmRun:
    """Result of a completed decomposition.

    stats maps each treated canonical representative to
    {"size", "incidence", "adjacency"}: orbit size, number of tight
    generators, and number of facets sharing a ridge with it.
    """

    spec: object
    group: CoordPermGroup
    treated: OrbitSet
    frontier: list
    stats: dict


def _tight_generators(rows, f):
    return [g for g in rows if dot(f, g) == 0]


def _valid_start(v: Representation) -> tuple:
    """Some nonzero inequality satisfied by every generator."""
    d = v.dim
    rows = v.rows
    for j in range(d):
        if all(g[j] >= 0 for g in rows):
            e = [0] * d
            e[j] = 1
            return tuple(e)
    # No coordinate bound holds; ask an LP for any functional that is
    # nonnegative on the generators and positive somewhere (the sum of the
    # generators is positive under every nonzero valid functional).
    s = [sum(col) for col in zip(*rows)]
    constraints = [list(g) for g in rows] + [s, [-x for x in s]]
    rhs = [0] * len(rows) + [1, -1]
    out = solve_lp(constraints, rhs, [0] * d, "max")
    if out.status != "optimal":
        raise ValueError("cone is not pointed; it has no facets")
    return normalize_ray(out.point)


def _rotate_to_facet(v: Representation, f: tuple) -> tuple:
    """Gift-wrap: grow the tight set of a valid inequality until it is a facet."""
    d = v.dim
    rows = v.rows
    while True:
        tight = _tight_generators(rows, f)
        if rank(tight) == d - 1:
            return f
        for w in kernel_basis(tight, ncols=d):
            if rank([f, w]) == 2:
                break
        else:
            raise ValueError("no rotation direction; generators do not span")
        if all(dot(w, g) >= 0 for g in rows):
            w = tuple(-x for x in w)
        lam = min(
            (Fraction(dot(f, g), -dot(w, g)) for g in rows if dot(w, g) < 0),
            default=None,
        )
        if lam is None:
            raise ValueError("no rotation direction; generators do not span")
        f = normalize_ray([a + lam * b for a, b in zip(f, w)])


def initial_facet(v: Representation) -> tuple:
    """One facet of a full-dimensional V-cone, found by gift-wrapping.

    Starts from the first valid coordinate bound (or an LP-found valid
    inequality) and rotates deterministically until the tight generators
    have rank dim - 1.
    """
    if v.kind != "V":
        raise ValueError("initial_facet needs a V-representation")
    if rank(v.rows) != v.dim:
        raise ValueError("generators do not span; the cone is not full-dimensional")
    return _rotate_to_facet(v, _valid_start(v))


def subcone(v: Representation, facet, g: CoordPermGroup) -> dict:
    """The sub-cone a facet carves out: its tight generators and stabilizer."""
    f = tuple(facet)
    tight = _tight_generators(v.rows, f)
    r = rank(tight)
    if r != v.dim - 1:
        raise ValueError(f"not a facet: tight-generator rank {r}, expected {v.dim - 1}")
    gens = Representation(kind="V", scheme=v.scheme, rows=tight, spec=v.spec)
    return {"generators": gens, "group": g.stabilizer(f)}


def ridge_rotation(v: Representation, facet, ridge_generators: list) -> tuple:
    """The unique second facet through a ridge of the given facet.

    The ridge pencil (functionals vanishing on the ridge) is
    two-dimensional; the rotation picks the pencil member independent of
    the facet, orients it, and pivots by the smallest exact ratio so the
    first generators hit on the far side are exactly the new facet's.
    """
    f = tuple(facet)
    d = v.dim
    rows = v.rows
    ridge = [tuple(r) for r in ridge_generators]
    pool = set(rows)
    if not ridge or any(r not in pool for r in ridge):
        raise ValueError("ridge generators must be generators of the cone")
    if any(dot(f, r) != 0 for r in ridge):
        raise ValueError("ridge generators must lie on the facet")
    rr = rank(ridge)
    if rr != d - 2:
        raise ValueError(f"ridge generators have rank {rr}, expected {d - 2}")
    tight = _tight_generators(rows, f)
    if rank(tight) != d - 1:
        raise ValueError("the given inequality is not a facet")

    for w in kernel_basis(ridge, ncols=d):
        if rank([f, w]) == 2:
            break
    # Orient w inward: positive on the facet's generators off the ridge.
    lead = next(dot(w, g) for g in tight if dot(w, g) != 0)
    if lead < 0:
        w = tuple(-x for x in w)
    # Force the sweep to exit the facet at finite pivot: subtracting a large
    # multiple of f keeps w's values on the facet while making some outside
    # generator negative.
    if all(dot(w, g) >= 0 for g in rows):
        mu = 1 + max(dot(w, g) // dot(f, g) for g in rows if dot(f, g) > 0)
        w = tuple(a - mu * b for a, b in zip(w, f))
    lam = min(Fraction(dot(f, g), -dot(w, g)) for g in rows if dot(w, g) < 0)
    h = normalize_ray([a + lam * b for a, b in zip(f, w)])
    if h == f or rank(_tight_generators(rows, h)) != d - 1:
        raise ValueError("rotation failed to reach a second facet")
    return h


def _drop_coord(rows, j):
    return [r[:j] + r[j + 1 :] for r in rows]


def _lift_coord(rows, j):
    return [r[:j] + (0,) + r[j:] for r in rows]


def _fixing_subgroup(s: CoordPermGroup, j: int) -> CoordPermGroup:
    """The part of s fixing coordinate j, acting on the remaining coordinates."""
    keep = [i for i in range(s.degree) if i != j]
    new_index = {old: new for new, old in enumerate(keep)}
    elems = []
    for p in s.elements():
        if p[j] == j:
            elems.append(tuple(new_index[p[i]] for i in keep))
    return CoordPermGroup(
        degree=len(keep), generators=elems, order=len(elems), name="induced"
    )


def _subcone_facets(tight, facet, stab, depth):
    """Facets of the sub-cone (ridges of the parent on this facet).

    Returns (functionals lifted back to the full space, total count). The
    sub-cone spans the facet hyperplane, so dropping one coordinate where the
    facet functional is nonzero is a bijection onto a full-dimensional cone
    one dimension down; facet functionals of the image lift back with a zero
    in the dropped slot.
    """
    d = len(facet)
    j = next(i for i, x in enumerate(facet) if x != 0)
    proj = _drop_coord(tight, j)
    if d - 1 == 0:
        return [], 0
    if depth <= 1:
        state = run_dd(proj, d - 1)
        return _lift_coord(state.rays, j), len(state.rays)
    sub_group = _fixing_subgroup(stab, j)
    scheme = _RawScheme(d - 1)
    sub_rep = Representation(kind="V", scheme=scheme, rows=proj)
    run = adjacency_decomposition(sub_rep, sub_group, recursion_depth=depth - 1)
    reps = [o.rep for o in run.treated.orbits]
    return _lift_coord(reps, j), run.treated.total


class _RawScheme:
    """Bare coordinate indexing for recursion below the labeled cone families."""

    def __init__(self, dim):
        self.kind = "raw"
        self.n = dim
        self.k = 1
        self.labels = tuple((i,) for i in range(dim))
        self.position = {lab: i for i, lab in enumerate(self.labels)}
        self.dim = dim

    def __eq__(self, other):
        return isinstance(other, _RawScheme) and self.dim == other.dim

    def __hash__(self):
        return hash(("raw", self.dim))


def _canon_under(vec, elements):
    return min(apply_perm(p, vec) for p in elements)


def _write_checkpoint(path, treated, heap):
    pending = sorted({c for _, c in heap if c not in treated})
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        for c in sorted(treated):
            fh.write("T " + " ".join(str(x) for x in c) + "\n")
        for c in pending:
            fh.write("F " + " ".join(str(x) for x in c) + "\n")
    os.replace(tmp, path)


def _read_checkpoint(path, dim):
    treated, pending = [], []
    with open(path) as fh:
        for k, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if parts[0] not in ("T", "F") or len(parts) != dim + 1:
                raise ValueError(f"checkpoint line {k}: expected 'T|F' and {dim} integers")
            try:
                vec = tuple(int(x) for x in parts[1:])
            except ValueError:
                raise ValueError(f"checkpoint line {k}: non-integer entry") from None
            (treated if parts[0] == "T" else pending).append(vec)
    return treated, pending


def adjacency_decomposition(
    v: Representation,
    g: CoordPermGroup,
    recursion_depth: int = 1,
    checkpoint: str | None = None,
    resume: bool = False,
) -> AdmRun:
    """Complete facet orbits of a full-dimensional V-cone.

    The frontier is a priority queue ordered by incidence (cheap facets
    expand first). Every popped representative is expanded exactly once:
    its sub-cone facets are the ridges, each ridge rotates to the adjacent
    facet, and unseen canonical forms join the frontier. With a checkpoint
    path, progress is dumped after every expansion (lines "T vec" for
    treated, "F vec" for pending) and a resumed run re-derives statistics
    for checkpointed facets without re-walking their neighbors.
    """
    if v.kind != "V":
        raise ValueError("adjacency decomposition needs a V-representation")
    d = v.dim
    rows = [tuple(r) for r in v.rows]
    if rank(rows) != d:
        raise ValueError("generators do not span; the cone is not full-dimensional")

    treated: dict[tuple, dict | None] = {}
    heap: list[tuple[int, tuple]] = []
    queued: set[tuple] = set()

    def push(c):
        if c not in treated and c not in queued:
            inc = len(_tight_generators(rows, c))
            heapq.heappush(heap, (inc, c))
            queued.add(c)

    if resume and checkpoint and os.path.exists(checkpoint):
        done, pending = _read_checkpoint(checkpoint, d)
        for c in done:
            treated[c] = None
        for c in pending:
            push(c)
        if not treated and not heap:
            push(canonical_rep(initial_facet(v), g))
    else:
        push(canonical_rep(initial_facet(v), g))

    while heap:
        _, c = heapq.heappop(heap)
        queued.discard(c)
        if treated.get(c) is not None:
            continue
        tight = _tight_generators(rows, c)
        stab = g.stabilizer(c)
        lifted, total = _subcone_facets(tight, c, stab, recursion_depth)
        treated[c] = {
            "size": g.order // stab.order,
            "incidence": len(tight),
            "adjacency": total,
        }
        elements = stab.elements()
        for w in sorted({_canon_under(w, elements) for w in lifted}):
            ridge_gens = [t for t in tight if dot(w, t) == 0]
            h = ridge_rotation(v, c, ridge_gens)
            push(canonical_rep(h, g))
        if checkpoint:
            _write_checkpoint(checkpoint, treated, heap)

    for c, stats in list(treated.items()):
        if stats is None:
            tight = _tight_generators(rows, c)
            stab = g.stabilizer(c)
            _, total = _subcone_facets(tight, c, stab, recursion_depth)
            treated[c] = {
                "size": g.order // stab.order,
                "incidence": len(tight),
                "adjacency": total,
            }

    reps = sorted(treated)
    orbit_set = OrbitSet(
        orbits=[Orbit(rep=c, size=treated[c]["size"]) for c in reps],
        index_of={c: i for i, c in enumerate(reps)},
    )
    return AdmRun(spec=v.spec, group=g, treated=orbit_set, frontier=[], stats=dict(treated))
