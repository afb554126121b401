"""Cone specifications, defining systems, generators, and liftings."""

from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metricones import (
    ConeSpec,
    build_generators,
    build_h,
    delta_vector,
    dual_description,
    index_scheme,
    is_member,
    redundancy_filter,
    smet_closed_form,
    vertex_splitting,
    zero_extension,
)
from metricones.cones import set_partitions
from metricones.exact import dot


class TestConeSpec:
    def test_families_with_fixed_parameters_reject_m_s(self):
        with pytest.raises(ValueError):
            ConeSpec("met", 4, m=2)
        with pytest.raises(ValueError):
            ConeSpec("cut", 4, s=2)
        with pytest.raises(ValueError):
            ConeSpec("hmet", 5, 2, s=2)

    def test_minimum_sizes(self):
        with pytest.raises(ValueError):
            ConeSpec("met", 2)
        with pytest.raises(ValueError):
            ConeSpec("smet", 3, 2, 1)  # needs n >= m+2
        ConeSpec("smet", 4, 2, 1)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            ConeSpec("hyp", 7)

    def test_collapse_regimes(self):
        assert ConeSpec("smet", 5, 2, 2).collapse is None
        assert ConeSpec("smet", 5, 2, 3).collapse == "halfline"
        assert ConeSpec("smet", 5, 2, Fraction(7, 2)).collapse == "zero"
        assert ConeSpec("met", 5).collapse is None

    def test_dimensions(self):
        assert ConeSpec("met", 5).dim == 10
        assert ConeSpec("qmet", 5).dim == 20
        assert ConeSpec("hmet", 6, 2).dim == 20
        assert ConeSpec("smet", 6, 3, 2).dim == 15

    def test_str_forms(self):
        assert str(ConeSpec("met", 4)) == "met_4"
        assert str(ConeSpec("hmet", 5, 2)) == "hmet^2_5"
        assert str(ConeSpec("smet", 5, 2, 2)) == "smet^{2,2}_5"

    def test_s_parsed_to_fraction(self):
        assert ConeSpec("smet", 6, 3, "3/2").s == Fraction(3, 2)


class TestIndexScheme:
    def test_pair_scheme(self):
        sch = index_scheme(ConeSpec("met", 4))
        assert sch.labels == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]

    def test_ordered_scheme_dim(self):
        sch = index_scheme(ConeSpec("qmet", 4))
        assert sch.dim == 12
        assert (2, 1) in sch.position

    def test_subset_scheme(self):
        sch = index_scheme(ConeSpec("hmet", 5, 2))
        assert sch.labels == list(combinations(range(1, 6), 3))


class TestBuildH:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_met_row_count(self, n):
        # n(n-1)(n-2)/2 triangle rows: 3 per unordered triple times
        # the choice of apex
        h = build_h(ConeSpec("met", n))
        assert len(h.rows) == 3 * comb(n, 3)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_qmet_row_count(self, n):
        h = build_h(ConeSpec("qmet", n))
        assert len(h.rows) == n * (n - 1) + n * (n - 1) * (n - 2)

    def test_smet_row_count(self):
        # nonnegativity on every coordinate plus one row per
        # ((m+2)-subset, apex) pair
        spec = ConeSpec("smet", 5, 2, 2)
        h = build_h(spec)
        assert len(h.rows) == 10 + 4 * comb(5, 4)

    def test_v_family_rejected(self):
        with pytest.raises(ValueError):
            build_h(ConeSpec("cut", 5))

    def test_met_rows_are_triangle_inequalities(self):
        h = build_h(ConeSpec("met", 3))
        # d(1,2) <= d(1,3) + d(2,3) and friends
        assert sorted(h.rows) == sorted(
            [(-1, 1, 1), (1, -1, 1), (1, 1, -1)]
        )

    def test_meta_tags_align(self):
        h = build_h(ConeSpec("met", 4))
        assert len(h.meta) == len(h.rows)
        assert all(tag[0] == "triangle" for tag in h.meta)


class TestGenerators:
    def test_cut_vectors(self):
        v = build_generators(ConeSpec("cut", 4))
        assert len(v.rows) == 2 ** 3 - 1
        met_h = build_h(ConeSpec("met", 4))
        for row in v.rows:
            assert is_member(row, met_h)["inside"]
            assert set(row) <= {0, 1}

    def test_omcut_count(self):
        # ordered partitions into at least two blocks
        v = build_generators(ConeSpec("omcut", 4))
        assert len(v.rows) == 74  # 14*2! blocks of 2 + ... = Fubini(4) - 1
        assert len(set(v.rows)) == 74

    def test_hcut_count(self):
        v = build_generators(ConeSpec("hcut", 5, 2))
        assert len(v.rows) == 25  # S(5,3) partitions into 3 blocks

    def test_scut_needs_smet_rays(self):
        with pytest.raises(ValueError):
            build_generators(ConeSpec("scut", 5, 2, 2))

    def test_scut_rows_are_zero_one_smet_rays(self, cones):
        smet = cones("smet", 5, 2, 2, graphs=False)
        v = build_generators(ConeSpec("scut", 5, 2, 2), smet_rays=smet.v)
        assert len(v.rows) == 20
        assert all(set(r) <= {0, 1} for r in v.rows)
        assert set(v.rows) <= set(smet.v.rows)

    def test_h_family_rejected(self):
        with pytest.raises(ValueError):
            build_generators(ConeSpec("met", 4))


class TestDeltaVector:
    def test_cut_vector_entries(self):
        spec = ConeSpec("cut", 4)
        vec = delta_vector("cut", [(1, 2)], spec)
        sch = index_scheme(spec)
        for (a, b), x in zip(sch.labels, vec):
            assert x == (1 if ((a in (1, 2)) != (b in (1, 2))) else 0)

    def test_partition_hemimetric_entries(self):
        spec = ConeSpec("hcut", 5, 2)
        blocks = ((1, 2), (3,), (4, 5))
        vec = delta_vector("partition_hemimetric", blocks, spec)
        sch = index_scheme(spec)
        for lab, x in zip(sch.labels, vec):
            crosses = all(
                any(p in block for p in lab) for block in blocks
            ) and not any(sum(p in block for p in lab) > 1 for block in blocks)
            assert x == (1 if crosses else 0)


class TestSetPartitions:
    @pytest.mark.parametrize("n,q,count", [(4, 2, 7), (5, 3, 25), (6, 3, 90)])
    def test_stirling_counts(self, n, q, count):
        parts = list(set_partitions(tuple(range(1, n + 1)), q))
        assert len(parts) == count
        assert len(set(parts)) == count


class TestRedundancyFilter:
    def test_met_system_is_irredundant(self):
        h = build_h(ConeSpec("met", 5))
        assert len(redundancy_filter(h).rows) == 30

    def test_smet_nonnegativity_mostly_redundant(self):
        # the simplex rows force nonnegativity except at the smallest size
        h = redundancy_filter(build_h(ConeSpec("smet", 5, 2, 2)))
        assert len(h.rows) == 20

    def test_filtered_cone_unchanged(self):
        spec = ConeSpec("smet", 5, 2, 2)
        full = build_h(spec)
        filtered = redundancy_filter(full)
        rays_full = set(dual_description(full).rows)
        rays_filtered = set(dual_description(filtered).rows)
        assert rays_full == rays_filtered


class TestLiftings:
    def test_zero_extension_adds_point_with_zero_values(self):
        spec = ConeSpec("smet", 5, 2, 2)
        sch = index_scheme(spec)
        vec = tuple(range(1, sch.dim + 1))
        out = zero_extension(vec, spec)
        big = index_scheme(ConeSpec("smet", 6, 3, 2))
        assert len(out) == big.dim
        for lab, x in zip(big.labels, out):
            if 6 in lab:
                small = tuple(p for p in lab if p != 6)
                assert x == vec[sch.position[small]]
            else:
                assert x == 0

    def test_vertex_splitting_duplicates_last_point(self):
        spec = ConeSpec("hmet", 5, 2)
        sch = index_scheme(spec)
        vec = tuple(range(1, sch.dim + 1))
        out = vertex_splitting(vec, spec)
        big = index_scheme(ConeSpec("hmet", 6, 2))
        assert len(out) == big.dim
        for lab, x in zip(big.labels, out):
            if 5 in lab and 6 in lab:
                assert x == 0
            elif 6 not in lab:
                assert x == vec[sch.position[lab]]
            else:
                folded = tuple(sorted(5 if p == 6 else p for p in lab))
                assert x == vec[sch.position[folded]]

    def test_liftings_reject_ordered_schemes(self):
        with pytest.raises(ValueError):
            zero_extension((0,) * 12, ConeSpec("qmet", 4))

    def test_extension_stays_in_cone(self, cones):
        small = cones("smet", 5, 2, 2, graphs=False)
        big_h = redundancy_filter(build_h(ConeSpec("smet", 6, 3, 2)))
        for ray in small.v.rows[:10]:
            lifted = zero_extension(ray, small.spec)
            assert is_member(lifted, big_h)["inside"]


class TestMembership:
    def test_violated_rows_reported(self):
        h = build_h(ConeSpec("met", 3))
        out = is_member((3, 1, 1), h)
        assert not out["inside"]
        assert len(out["violated"]) == 1

    def test_dimension_checked(self):
        h = build_h(ConeSpec("met", 3))
        with pytest.raises(ValueError):
            is_member((1, 2), h)


def _is_single_cycle(edges, nvertices):
    degree = {v: 0 for v in range(nvertices)}
    neighbors = {v: [] for v in range(nvertices)}
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
        neighbors[a].append(b)
        neighbors[b].append(a)
    if any(d != 2 for d in degree.values()):
        return False
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = [w for u in frontier for w in neighbors[u] if w not in seen]
        seen.update(nxt)
        frontier = nxt
    return len(seen) == nvertices


class TestClosedFormSmallest:
    """The n = m+2 cones have a complete combinatorial description."""

    @pytest.mark.parametrize("m,s", [(m, s) for m in range(1, 7)
                                     for s in range(1, m)])
    def test_integer_s_orbit_and_graphs(self, m, s):
        out = smet_closed_form(m, s)
        n = m + 2
        assert out["ray_count"] == comb(n, s + 1)
        assert out["ray_orbit_count"] == 1
        assert out["skeleton_kind"] == f"J({n},{s + 1})"
        assert out["skeleton_diameter"] == min(s + 1, m - s + 1)
        assert out["facet_count"] == 2 * m + 4
        assert out["nn_are_facets"]

    def test_collapse_at_s_equal_m_plus_one(self):
        with pytest.raises(ValueError):
            smet_closed_form(2, 3)

    def test_collapse_above(self):
        with pytest.raises(ValueError):
            smet_closed_form(2, Fraction(7, 2))

    def test_half_integral_smallest_case_is_a_hexagon(self):
        out = smet_closed_form(1, Fraction(1, 2))
        assert out["ray_count"] == 6
        assert _is_single_cycle(out["skeleton_edges"], 6)
        assert out["skeleton_diameter"] == 3
        assert _is_single_cycle(out["ridge_edges"], 6)
        assert out["ridge_diameter"] == 3

    def test_integer_smallest_case_is_a_triangle(self):
        out = smet_closed_form(1, 1)
        assert out["skeleton_kind"] == "J(3,2)"
        assert out["ray_count"] == 3
        assert out["skeleton_diameter"] == 1
        assert out["ridge_diameter"] == 1
        # the triangle system alone cuts this cone; nonnegativity is implied
        assert out["facet_count"] == 3
        assert not out["nn_are_facets"]


@given(st.integers(3, 6), st.integers(0, 3))
@settings(max_examples=20, deadline=None)
def test_cut_vectors_satisfy_triangle_system(n, seed):
    spec = ConeSpec("cut", n)
    v = build_generators(spec)
    h = build_h(ConeSpec("met", n))
    row = v.rows[seed % len(v.rows)]
    assert all(dot(r, row) >= 0 for r in h.rows)
