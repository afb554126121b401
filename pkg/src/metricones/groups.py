"""Coordinate permutation groups induced by point relabelings.

A permutation of the points 1..n acts on vectors indexed by pairs,
ordered pairs or k-subsets by permuting coordinate positions.  Families
on ordered pairs get an extra reversal generator (i,j) -> (j,i), giving
Z2 x Sym(n).  Orbits, canonical representatives and stabilizers are
computed by explicit closure; group orders in scope stay below 2*9!.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .cones import ConeSpec, IndexScheme, index_scheme

Perm = tuple[int, ...]


def apply_perm(p: Perm, v: tuple) -> tuple:
    """Image of v under the coordinate permutation p: result[i] = v[p[i]]."""
    return tuple(v[j] for j in p)


def compose(p: Perm, r: Perm) -> Perm:
    """Permutation acting like p followed by r."""
    return tuple(p[j] for j in r)


@dataclass
class CoordPermGroup:
    degree: int
    generators: list[Perm]
    order: int
    name: str = ""
    _elements: list[Perm] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        ident = tuple(range(self.degree))
        for g in self.generators:
            if tuple(sorted(g)) != ident:
                raise ValueError(f"generator {g} is not a permutation of 0..{self.degree - 1}")

    def elements(self) -> list[Perm]:
        """Every group element, enumerated once and cached.

        The closure size is checked against the declared order.
        """
        if self._elements is None:
            ident = tuple(range(self.degree))
            seen = {ident}
            frontier = [ident]
            while frontier:
                step = []
                for e in frontier:
                    for g in self.generators:
                        c = compose(e, g)
                        if c not in seen:
                            seen.add(c)
                            step.append(c)
                frontier = step
            if len(seen) != self.order:
                raise ValueError(
                    f"group closure has {len(seen)} elements, expected order {self.order}"
                )
            self._elements = sorted(seen)
        return self._elements

    def orbit(self, v: tuple) -> set[tuple]:
        """All images of v under the group."""
        seen = {v}
        frontier = [v]
        while frontier:
            step = []
            for u in frontier:
                for g in self.generators:
                    w = apply_perm(g, u)
                    if w not in seen:
                        seen.add(w)
                        step.append(w)
            frontier = step
        return seen

    def stabilizer(self, v: tuple) -> "CoordPermGroup":
        """Subgroup fixing v, listed element by element."""
        fixing = [e for e in self.elements() if apply_perm(e, v) == v]
        return CoordPermGroup(
            degree=self.degree,
            generators=fixing,
            order=len(fixing),
            name=f"stab in {self.name}" if self.name else "stab",
        )


def _coord_perm(scheme: IndexScheme, point_map: dict[int, int]) -> Perm:
    out = []
    for lab in scheme.labels:
        if scheme.kind == "ordered_pairs":
            img = (point_map[lab[0]], point_map[lab[1]])
        else:
            img = tuple(sorted(point_map[x] for x in lab))
        out.append(scheme.position[img])
    return tuple(out)


def group_for(spec: ConeSpec) -> CoordPermGroup:
    """Symmetry group used for orbit counting: Sym(n), oriented families Z2 x Sym(n)."""
    scheme = index_scheme(spec)
    n = spec.n
    points = list(range(1, n + 1))
    swap = {p: p for p in points}
    swap[1], swap[2] = 2, 1
    cycle = {points[i]: points[(i + 1) % n] for i in range(n)}
    gens = [_coord_perm(scheme, swap), _coord_perm(scheme, cycle)]
    order = factorial(n)
    name = f"Sym({n})"
    if scheme.kind == "ordered_pairs":
        reversal = tuple(scheme.position[(j, i)] for (i, j) in scheme.labels)
        gens.append(reversal)
        order *= 2
        name = f"Z2 x Sym({n})"
    return CoordPermGroup(degree=len(scheme.labels), generators=gens, order=order, name=name)


def canonical_rep(v: tuple, g: CoordPermGroup) -> tuple:
    """Lexicographically smallest vector in the orbit of v."""
    return min(g.orbit(v))


@dataclass
class Orbit:
    rep: tuple
    size: int
    members: list[tuple] | None = None


@dataclass
class OrbitSet:
    orbits: list[Orbit]
    index_of: dict[tuple, int]

    @property
    def total(self) -> int:
        return sum(o.size for o in self.orbits)

    def __len__(self) -> int:
        return len(self.orbits)


def orbit_decompose(vectors, g: CoordPermGroup, keep_members: bool = False) -> OrbitSet:
    """Partition duplicate-free vectors into group orbits.

    Orbits are listed sorted by canonical representative; index_of maps
    every input vector to its orbit position.  Inputs not closed under
    the group are fine: sizes count input members only when the orbit is
    not fully contained, which would break Table bookkeeping, so the full
    orbit is required to be present and this is checked.
    """
    vecs = [tuple(v) for v in vectors]
    pool = set(vecs)
    if len(pool) != len(vecs):
        raise ValueError("input vectors contain duplicates")
    found: list[tuple[tuple, list[tuple]]] = []
    while pool:
        v = pool.pop()
        members = g.orbit(v)
        missing = [u for u in members if u != v and u not in pool]
        if missing:
            raise ValueError("input vectors are not closed under the group action")
        pool.difference_update(members)
        found.append((min(members), sorted(members)))
    found.sort(key=lambda t: t[0])
    orbits = []
    index_of: dict[tuple, int] = {}
    for i, (rep, members) in enumerate(found):
        orbits.append(Orbit(rep=rep, size=len(members), members=members if keep_members else None))
        for u in members:
            index_of[u] = i
    return OrbitSet(orbits=orbits, index_of=index_of)
