"""Lattice scans, classification, components, clusters, and the local probe."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import eigensurface.surface as surface_mod
from eigensurface.errors import ArgumentError
from eigensurface.linalg import BarycentricPoint, ComplexMatrix, MatrixHull
from eigensurface.surface import (
    CLASS_CORE,
    CLASS_EXCEPTIONAL,
    ExceptionalCluster,
    barycentric_grid,
    component_separation,
    exceptional_clusters,
    grid_size,
    k_components,
    local_transitivity_probe,
    scan,
    scan_rows,
)

from support import offdiag


def hull_of(*arrays):
    return MatrixHull(tuple(ComplexMatrix(np.asarray(a, dtype=complex)) for a in arrays))


@pytest.fixture(scope="module")
def quadrant_scan(quadrant_hull):
    return scan(quadrant_hull, 10)


@pytest.fixture(scope="module")
def crossing_scan(crossing_pair_hull):
    return scan(crossing_pair_hull, 10)


class TestGrid:
    @given(st.integers(1, 5), st.integers(1, 12))
    def test_size_matches_enumeration(self, k, N):
        pts = barycentric_grid(k, N)
        assert len(pts) == grid_size(k, N) == math.comb(N + k - 1, k - 1)
        assert len(set(pts)) == len(pts)
        assert all(len(c) == k and sum(c) == N for c in pts)
        assert all(min(c) >= 0 for c in pts)

    def test_first_coordinate_descending(self):
        pts = barycentric_grid(3, 4)
        firsts = [c[0] for c in pts]
        assert firsts == sorted(firsts, reverse=True)
        assert pts[0] == (4, 0, 0)
        assert pts[-1] == (0, 0, 4)

    def test_rejects_empty_lattice(self):
        with pytest.raises(ArgumentError):
            barycentric_grid(3, 0)
        with pytest.raises(ArgumentError):
            list(scan_rows(hull_of([[1.0]]), 0))


class TestQuadrantScan:
    """Co of [[0,1],[c,0]] for c in {1, i, -1, -i}: everything is closed-form.

    A(alpha) keeps the off-diagonal shape with c(alpha) = a1 + i a2 - a3
    - i a4, eigenvalues +-sqrt(c), discriminant 4c. The exceptional set is
    the plane a1 = a3, a2 = a4.
    """

    def test_sample_count_and_regularity(self, quadrant_scan):
        assert len(quadrant_scan.samples) == grid_size(4, 10) == 286
        assert quadrant_scan.regular
        assert quadrant_scan.minimal_list.counts == (0, 2)
        assert quadrant_scan.k == 4 and quadrant_scan.n == 2

    def test_exceptional_exactly_on_zero_plane(self, quadrant_scan):
        bad = [s for s in quadrant_scan.samples if s.cls == CLASS_EXCEPTIONAL]
        assert len(bad) == 6
        for s in quadrant_scan.samples:
            on_plane = s.counts[0] == s.counts[2] and s.counts[1] == s.counts[3]
            assert (s.cls == CLASS_EXCEPTIONAL) == on_plane
            assert s.cls in (CLASS_CORE, CLASS_EXCEPTIONAL)

    def test_disc_matches_closed_form(self, quadrant_scan):
        for s in quadrant_scan.samples:
            a = s.alpha.weights
            c = a[0] + 1j * a[1] - a[2] - 1j * a[3]
            assert s.disc == pytest.approx(4 * c, abs=1e-12)

    def test_no_inconsistencies(self, quadrant_scan):
        assert not any(s.inconsistent for s in quadrant_scan.samples)

    def test_exceptional_fraction(self, quadrant_scan):
        assert quadrant_scan.exceptional_fraction() == pytest.approx(6 / 286)

    def test_index_of_roundtrip(self, quadrant_scan):
        for s in quadrant_scan.samples[::37]:
            assert quadrant_scan.index_of[s.counts] == s.index

    def test_eigen_point(self, quadrant_scan):
        ep = quadrant_scan.eigen_point(0, 1)
        s = quadrant_scan.samples[0]
        assert ep.slot == 1
        assert ep.value == complex(s.eigenvalues[1])
        assert ep.alpha is s.alpha


class TestEigenvalueBound:
    def test_values_inside_generator_norm_ball(self, quadrant_scan):
        bound = max(g.frobenius() for g in quadrant_scan.hull.generators)
        for s in quadrant_scan.samples:
            assert np.max(np.abs(s.eigenvalues)) <= bound + 1e-12

    def test_random_hull_bound(self):
        rng = np.random.default_rng(414)
        gens = [rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(3)]
        result = scan(hull_of(*gens), 6)
        bound = max(g.frobenius() for g in result.hull.generators)
        for s in result.samples:
            assert np.max(np.abs(s.eigenvalues)) <= bound + 1e-12


class TestScalarAndDegenerateHulls:
    def test_one_by_one(self):
        result = scan(hull_of([[2.0]], [[3.0]]), 4)
        assert result.minimal_list.counts == (1,)
        assert result.regular
        for s in result.samples:
            assert s.disc == 1.0 + 0.0j
            assert not s.disc_is_zero
            assert s.cls == CLASS_CORE
        comps = k_components(result)
        assert len(comps) == 1 and comps[0].k == 1

    def test_constant_rank_one_hull_is_not_regular(self):
        # J/3 has spectrum {1, 0, 0} everywhere: minimal list (0, 1, 1)
        j = np.full((3, 3), 1.0 / 3.0)
        result = scan(hull_of(j), 1)
        assert len(result.samples) == 1
        assert result.minimal_list.counts == (0, 1, 1)
        assert not result.regular
        assert result.samples[0].cls == CLASS_CORE
        assert not any(s.inconsistent for s in result.samples)

    def test_same_value_slots_fuse_into_one_component(self):
        j = np.full((4, 4), 0.25)
        comps = k_components(scan(hull_of(j), 1))
        assert sorted(c.k for c in comps) == [1, 3]


class TestComponents:
    def test_two_separated_branches(self, diag_pair_hull):
        result = scan(diag_pair_hull, 10)
        assert len(result.samples) == 11
        comps = k_components(result)
        assert sorted(c.k for c in comps) == [1, 1]
        sep = component_separation(comps, result)
        assert set(sep) == {(comps[0].id, comps[1].id)} or len(sep) == 1
        (dist,) = sep.values()
        assert dist == pytest.approx(1.0, abs=1e-9)

    def test_constant_gap_separation(self):
        result = scan(hull_of(np.diag([0.0, 5.0]), np.diag([1.0, 6.0])), 8)
        comps = k_components(result)
        assert sorted(c.k for c in comps) == [1, 1]
        (dist,) = component_separation(comps, result).values()
        assert dist == pytest.approx(5.0, abs=1e-9)

    def test_crossing_branches_fuse(self, crossing_scan):
        comps = k_components(crossing_scan)
        assert len(comps) == 1
        assert comps[0].k == 2
        assert component_separation(comps, crossing_scan) == {}

    def test_quadrant_single_component(self, quadrant_scan):
        comps = k_components(quadrant_scan)
        assert len(comps) == 1 and comps[0].k == 2

    def test_members_partition_all_eigenpoints(self, quadrant_scan):
        comps = k_components(quadrant_scan)
        seen = set()
        for c in comps:
            assert not (set(c.members) & seen)
            seen.update(c.members)
        want = {
            (s.index, slot)
            for s in quadrant_scan.samples
            for slot in range(quadrant_scan.n)
        }
        assert seen == want
        assert sum(c.k for c in comps) == quadrant_scan.n

    def test_sample_cap_enforced(self, quadrant_hull, monkeypatch):
        monkeypatch.setattr(surface_mod, "SCAN_SAMPLE_CAP", 100)
        with pytest.raises(ArgumentError, match="stream"):
            scan(quadrant_hull, 10)


class TestExceptionalClusters:
    def test_quadrant_single_cluster(self, quadrant_scan):
        clusters = exceptional_clusters(quadrant_scan)
        assert len(clusters) == 1
        cl = clusters[0]
        assert len(cl.sample_indices) == 6
        got = tuple(quadrant_scan.samples[cl.representative_index].counts)
        # centroid is (2.5, 2.5, 2.5, 2.5); the two nearest lattice samples
        # tie, and the lexicographically smaller count vector wins
        assert got == (2, 3, 2, 3)
        assert tuple(cl.representative_alpha.weights) == pytest.approx(
            (0.2, 0.3, 0.2, 0.3)
        )

    def test_quadrant_even_resolution_hits_center(self, quadrant_hull):
        result = scan(quadrant_hull, 8)
        (cl,) = exceptional_clusters(result)
        assert tuple(quadrant_scan_counts(result, cl)) == (2, 2, 2, 2)

    def test_crossing_hull_midpoint_cluster(self, crossing_scan):
        (cl,) = exceptional_clusters(crossing_scan)
        assert cl.sample_indices == (crossing_scan.index_of[(5, 5)],)
        assert tuple(cl.representative_alpha.weights) == pytest.approx((0.5, 0.5))

    def test_core_only_scan_has_no_clusters(self, diag_pair_hull):
        assert exceptional_clusters(scan(diag_pair_hull, 10)) == []


def quadrant_scan_counts(result, cluster):
    return result.samples[cluster.representative_index].counts


class TestProbe:
    def test_quadrant_branch_swap(self, quadrant_scan):
        (cl,) = exceptional_clusters(quadrant_scan)
        res = local_transitivity_probe(quadrant_scan, cl, radius=0.05)
        assert res.applicable
        assert res.locally_nontransitive
        assert res.permutation == (1, 0)
        assert res.colliding_slots == (0, 1)
        assert res.loop_min_disc > 1.0

    def test_accepts_weights_and_index_representatives(self, quadrant_scan):
        via_weights = local_transitivity_probe(
            quadrant_scan,
            BarycentricPoint(np.array([0.2, 0.3, 0.2, 0.3])),
            radius=0.05,
        )
        idx = quadrant_scan.index_of[(2, 3, 2, 3)]
        via_index = local_transitivity_probe(quadrant_scan, idx, radius=0.05)
        assert via_weights.permutation == via_index.permutation == (1, 0)

    def test_not_applicable_below_three_generators(self, crossing_scan):
        (cl,) = exceptional_clusters(crossing_scan)
        res = local_transitivity_probe(crossing_scan, cl, radius=0.05)
        assert not res.applicable
        assert "k >= 3" in res.reason

    def test_rejects_nonpositive_radius(self, quadrant_scan):
        (cl,) = exceptional_clusters(quadrant_scan)
        with pytest.raises(ArgumentError, match="radius"):
            local_transitivity_probe(quadrant_scan, cl, radius=0.0)

    def test_rejects_core_representative(self, quadrant_scan):
        core_idx = next(
            s.index for s in quadrant_scan.samples if s.cls == CLASS_CORE
        )
        with pytest.raises(ArgumentError, match="not exceptional"):
            local_transitivity_probe(quadrant_scan, core_idx, radius=0.05)

    def test_rejects_radius_leaving_simplex(self, quadrant_scan):
        (cl,) = exceptional_clusters(quadrant_scan)
        with pytest.raises(ArgumentError, match="out of the simplex"):
            local_transitivity_probe(quadrant_scan, cl, radius=5.0)

    def test_rejects_offgrid_weights(self, quadrant_scan):
        # counts round to (2, 2, 4, 4), which sums past the resolution
        with pytest.raises(ArgumentError, match="no lattice sample"):
            local_transitivity_probe(
                quadrant_scan,
                BarycentricPoint(np.array([0.15, 0.15, 0.35, 0.35])),
                radius=0.05,
            )

    def test_all_loops_crossing_zero_set(self):
        # c(alpha) = a1 + a2 - a3 is constant along the first tangent
        # direction e1 - e2, so the theta = 0 waypoint of every candidate
        # circle lands exactly on the zero line and the loop is rejected
        h = MatrixHull((offdiag(1.0), offdiag(1.0), offdiag(-1.0)))
        result = scan(h, 4)
        rep = BarycentricPoint(np.array([0.25, 0.25, 0.5]))
        res = local_transitivity_probe(result, rep, radius=0.05)
        assert not res.applicable
        assert "crosses" in res.reason
        assert res.permutation is None


class TestRowsStreaming:
    def test_rows_match_scan(self, quadrant_hull):
        result = scan(quadrant_hull, 5)
        rows = list(scan_rows(quadrant_hull, 5))
        assert len(rows) == len(result.samples)
        for (idx, counts, w, row, disc, disc_zero, mult), s in zip(
            rows, result.samples
        ):
            assert idx == s.index and counts == s.counts
            assert np.allclose(row, s.eigenvalues)
            assert disc == s.disc and disc_zero == s.disc_is_zero
            assert mult.counts == s.mult_list.counts
