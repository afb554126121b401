"""Shared fixtures: one cached full pipeline per cone and session."""

from dataclasses import dataclass
from fractions import Fraction

import pytest

from metricones import (
    ConeSpec,
    Representation,
    adjacency_decomposition,
    build_face_graph,
    build_generators,
    build_h,
    dual_description,
    facet_enumeration,
    group_for,
    redundancy_filter,
)

V_FAMILIES = ("cut", "omcut", "hcut", "scut")


@dataclass
class ConeData:
    spec: object
    v: object
    h: object
    group: object
    skeleton: object
    ridge: object


_CACHE = {}


def cone_data(family, n, m=1, s=1, graphs=True):
    """Full exact pipeline for one cone, cached for the whole session."""
    s = Fraction(s)
    # two cones are far faster through adjacency decomposition
    if (family, n, m, s) == ("hcut", 6, 3, Fraction(1)):
        return hcut36_data()
    if (family, n, m, s) == ("hmet", 6, 2, Fraction(1)):
        return hmet26_data()
    key = (family, n, m, s)
    hit = _CACHE.get(key)
    if hit is not None and (hit.skeleton is not None or not graphs):
        return hit
    spec = ConeSpec(family, n, m, s)
    if hit is not None:
        v, h, g = hit.v, hit.h, hit.group
    elif family in V_FAMILIES:
        if family == "scut":
            smet_v = cone_data("smet", n, m, s, graphs=False).v
            v = build_generators(spec, smet_rays=smet_v)
        else:
            v = build_generators(spec)
        h = facet_enumeration(v)
        g = group_for(spec)
    else:
        h = redundancy_filter(build_h(spec))
        v = dual_description(h)
        g = group_for(spec)
    skeleton = ridge = None
    if graphs:
        skeleton = build_face_graph(v, h, g, "skeleton")
        ridge = build_face_graph(v, h, g, "ridge")
    data = ConeData(spec, v, h, g, skeleton, ridge)
    _CACHE[key] = data
    return data


def hcut36_data():
    """hcut^3_6, its facets found by adjacency decomposition.

    Direct facet enumeration of this cone takes orders of magnitude longer
    than decomposing by facet orbit, so the cache entry is built from the
    decomposition and the 16 orbit representatives are expanded under the
    group into the full 4065-row H-description.
    """
    key = ("hcut", 6, 3, Fraction(1))
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    spec = ConeSpec("hcut", 6, 3)
    v = build_generators(spec)
    g = group_for(spec)
    run = adjacency_decomposition(v, g)
    rows = sorted({row for orb in run.treated.orbits for row in g.orbit(orb.rep)})
    h = Representation(kind="H", scheme=v.scheme, rows=rows, spec=spec)
    skeleton = build_face_graph(v, h, g, "skeleton")
    ridge = build_face_graph(v, h, g, "ridge")
    data = ConeData(spec, v, h, g, skeleton, ridge)
    _CACHE[key] = data
    return data


def hmet26_data():
    """hmet^2_6, its rays found by adjacency decomposition of the dual.

    Direct dual description of the 80 facet rows takes about half an hour;
    decomposing the dual cone (facet rows as generators) yields the 41 ray
    orbits in under a minute, and the representatives are expanded under
    the group into the full 12492-ray V-description.
    """
    key = ("hmet", 6, 2, Fraction(1))
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    spec = ConeSpec("hmet", 6, 2)
    h = redundancy_filter(build_h(spec))
    g = group_for(spec)
    run = adjacency_decomposition(Representation("V", h.scheme, h.rows), g)
    rows = sorted({row for orb in run.treated.orbits for row in g.orbit(orb.rep)})
    v = Representation(kind="V", scheme=h.scheme, rows=rows, spec=spec)
    skeleton = build_face_graph(v, h, g, "skeleton")
    ridge = build_face_graph(v, h, g, "ridge")
    data = ConeData(spec, v, h, g, skeleton, ridge)
    _CACHE[key] = data
    return data


@pytest.fixture(scope="session")
def cones():
    return cone_data


@pytest.fixture(scope="session")
def hcut36():
    return hcut36_data()


@pytest.fixture(scope="session")
def hmet26():
    return hmet26_data()
