"""Statistics, orbit sums via tilings, homomesy and homometry checks."""

from fractions import Fraction

import pytest

import oracles
from treerow import (
    RootedTree,
    Statistic,
    all_orbits,
    check_homometry,
    check_homomesy,
    down_set,
    eval_statistic,
    make_family,
    orbit_sum,
    orbit_sums_from_tiling,
    parse_family,
    parse_statistic,
    parse_tree,
    tiling_of_orbit,
)
from treerow.errors import SpecParseError

STAR_332 = parse_tree("((())(())())")

TREES = [
    RootedTree(parents)
    for n in range(1, 8)
    for parents in oracles.parent_vectors(n)
]


class TestStatisticAlgebra:
    def test_constructors_and_spec(self):
        assert Statistic.chi().spec() == "1*chi"
        assert Statistic.hatchi_x(3).spec() == "1*hatchi_x:3"
        combo = 3 * Statistic.chi_x(4) + Statistic.chi_x(0) - 2 * Statistic.chi()
        assert combo.spec() == "3*chi_x:4+1*chi_x:0-2*chi"

    def test_parse_roundtrip(self):
        for text in (
            "chi",
            "hatchi",
            "chi_x:0",
            "3*chi_x:4+1*chi_x:0-2*chi",
            "-2*hatchi_x:1+5*hatchi",
        ):
            stat = parse_statistic(text)
            assert parse_statistic(stat.spec()) == stat

    def test_parse_accepts_spaces_and_bare_atoms(self):
        assert parse_statistic(" 2*chi + hatchi ") == Statistic(
            ((2, "chi", None), (1, "hatchi", None))
        )

    def test_parse_errors(self):
        for bad in ("", "chi_x", "hatchi:3", "2chi", "chi_y", "chi+", "chi 3"):
            with pytest.raises(SpecParseError):
                parse_statistic(bad)

    def test_domain(self):
        assert Statistic.chi().domain == "antichain"
        assert Statistic.hatchi().domain == "ideal"
        assert (Statistic.hatchi() - Statistic.hatchi_x(0)).domain == "ideal"
        assert (Statistic.hatchi() - Statistic.chi()).domain == "antichain"

    def test_bad_terms_rejected(self):
        with pytest.raises(ValueError):
            Statistic(((1, "size", None),))
        with pytest.raises(ValueError):
            Statistic(((1, "chi", 3),))
        with pytest.raises(ValueError):
            Statistic(((1, "chi_x", None),))


class TestEval:
    def test_hand_values(self):
        members = {1, 3, 5}  # generates the ideal {0, 1, 3, 5}
        assert eval_statistic(STAR_332, Statistic.chi(), members) == 3
        assert eval_statistic(STAR_332, Statistic.chi_x(1), members) == 1
        assert eval_statistic(STAR_332, Statistic.chi_x(2), members) == 0
        # all-hatted statistics take the ideal itself
        assert eval_statistic(STAR_332, Statistic.hatchi(), {0, 1, 3, 5}) == 4
        assert eval_statistic(STAR_332, Statistic.hatchi_x(0), {0, 1, 3, 5}) == 1
        # a mixed statistic takes the antichain and reads hatted atoms
        # through its generated ideal
        combo = 2 * Statistic.hatchi() - 3 * Statistic.chi_x(5)
        assert eval_statistic(STAR_332, combo, members) == 5

    def test_ideal_statistics_accept_ideals(self):
        # all-hatted statistics read their argument as an ideal, so a
        # downward-closed set that is not an antichain is fine
        assert eval_statistic(STAR_332, Statistic.hatchi(), {0, 1, 2}) == 3
        with pytest.raises(ValueError):
            eval_statistic(STAR_332, Statistic.hatchi(), {1, 2})
        with pytest.raises(ValueError):
            eval_statistic(STAR_332, Statistic.chi(), {0, 1})

    def test_unknown_node(self):
        with pytest.raises(ValueError):
            eval_statistic(STAR_332, Statistic.chi_x(6), set())
        with pytest.raises(ValueError):
            eval_statistic(STAR_332, Statistic.hatchi_x(17), set())


class TestOrbitSums:
    def test_star_332_by_hand(self):
        orbits = all_orbits(STAR_332)
        assert [orbit_sum(STAR_332, Statistic.chi(), o) for o in orbits] == [12, 11, 11]
        assert [orbit_sum(STAR_332, Statistic.hatchi(), o) for o in orbits] == [21] * 3
        assert [orbit_sum(STAR_332, Statistic.hatchi_x(0), o) for o in orbits] == [
            6,
            6,
            6,
        ]

    def test_tiling_sums_match_direct_sums(self):
        """The four tile-count identities, on every orbit of every small tree."""
        for tree in TREES:
            for orbit in all_orbits(tree):
                sums = orbit_sums_from_tiling(tree, tiling_of_orbit(tree, orbit))
                assert sums.chi == orbit_sum(tree, Statistic.chi(), orbit)
                assert sums.hatchi == orbit_sum(tree, Statistic.hatchi(), orbit)
                for x in range(tree.n):
                    iv, _ = tree.branch_of[x]
                    assert sums.chi_x[iv] == orbit_sum(
                        tree, Statistic.chi_x(x), orbit
                    )
                    assert sums.hatchi_x[x] == orbit_sum(
                        tree, Statistic.hatchi_x(x), orbit
                    )


class TestHomomesy:
    def test_chi_is_not_homomesic_on_star(self):
        verdict = check_homomesy(STAR_332, Statistic.chi())
        assert not verdict.is_homomesic
        first, second = verdict.witness
        assert Fraction(orbit_sum(STAR_332, Statistic.chi(), first), first.size) == (
            Fraction(12, 7)
        )
        assert Fraction(orbit_sum(STAR_332, Statistic.chi(), second), second.size) == (
            Fraction(11, 6)
        )

    def test_same_branch_difference_is_zero_mesic(self):
        stat = Statistic.chi_x(2) - Statistic.chi_x(1)
        verdict = check_homomesy(STAR_332, stat)
        assert verdict.is_homomesic and verdict.constant == 0

    def test_weighted_combinations_on_star(self):
        # per-branch weight alpha_i makes chi_x + root membership 1-mesic,
        # and matched-depth hatted differences 0-mesic
        cases = [
            (3 * Statistic.chi_x(1) + Statistic.chi_x(0), 1),
            (3 * Statistic.chi_x(2) + Statistic.chi_x(0), 1),
            (2 * Statistic.chi_x(5) + Statistic.chi_x(0), 1),
            (3 * Statistic.chi_x(1) - 2 * Statistic.chi_x(5), 0),
            (3 * Statistic.hatchi_x(2) - Statistic.hatchi_x(0), 0),
            (3 * Statistic.hatchi_x(1) - 2 * Statistic.hatchi_x(0), 0),
            (3 * Statistic.hatchi_x(2) - 2 * Statistic.hatchi_x(5), 0),
        ]
        for stat, constant in cases:
            verdict = check_homomesy(STAR_332, stat)
            assert verdict.is_homomesic, stat.spec()
            assert verdict.constant == constant, stat.spec()

    def test_depth_mismatch_breaks_homomesy(self):
        # node 1 sits one step higher than node 5, so the matched-depth
        # combination above fails when the depths differ
        verdict = check_homomesy(STAR_332, 3 * Statistic.hatchi_x(1) - 2 * Statistic.hatchi_x(5))
        assert not verdict.is_homomesic


class TestHomometry:
    def test_star_332_tables(self):
        chi = check_homometry(STAR_332, Statistic.chi())
        assert chi.is_homometric and chi.class_table == {6: 11, 7: 12}
        hatchi = check_homometry(STAR_332, Statistic.hatchi())
        assert hatchi.is_homometric and hatchi.class_table == {6: 21, 7: 21}

    def test_comb_3_hatchi_table(self):
        tree = make_family(parse_family("comb:3"))
        verdict = check_homometry(tree, Statistic.hatchi())
        assert verdict.is_homometric
        assert verdict.class_table == {2: 10, 15: 55}

    def test_complete_binary_counterexample(self):
        tree = make_family(parse_family("cbt:3"))
        chi = check_homometry(tree, Statistic.chi())
        assert not chi.is_homometric
        a, b = chi.witness
        assert a.size == b.size == 4
        assert {orbit_sum(tree, Statistic.chi(), o) for o in (a, b)} == {14, 15}

        hatchi = check_homometry(tree, Statistic.hatchi())
        assert not hatchi.is_homometric
        a, b = hatchi.witness
        assert a.size == b.size == 4
        assert {orbit_sum(tree, Statistic.hatchi(), o) for o in (a, b)} == {26, 35}

    def test_homomesy_implies_homometry(self):
        """Equal orbit averages force equal sums within a size class, so a
        homomesic verdict must come with a homometric one.  Checked on every
        verdict pair this sweep computes."""
        stats = [
            Statistic.chi(),
            Statistic.hatchi(),
            Statistic.chi_x(0),
            Statistic.hatchi_x(0),
            Statistic.hatchi() - 2 * Statistic.chi(),
        ]
        checked = 0
        for tree in TREES:
            if tree.n < 2:
                continue
            for stat in stats:
                mesy = check_homomesy(tree, stat)
                metry = check_homometry(tree, stat)
                if mesy.is_homomesic:
                    assert metry.is_homometric, (tree.to_spec(), stat.spec())
                    checked += 1
        assert checked > 100

    def test_witness_is_canonical(self):
        tree = make_family(parse_family("cbt:3"))
        orbits = all_orbits(tree)
        verdict = check_homometry(tree, Statistic.chi())
        first, second = verdict.witness
        assert first == next(o for o in orbits if o.size == 4)
        sums = {
            o: orbit_sum(tree, Statistic.chi(), o) for o in orbits if o.size == 4
        }
        expected = next(o for o in orbits if o.size == 4 and sums[o] != sums[first])
        assert second == expected


class TestIdealStatisticsUseGeneratedIdeal:
    def test_orbit_sum_reads_down_sets(self):
        orbit = all_orbits(STAR_332)[0]
        total = sum(
            len(down_set(STAR_332, a)) for a in orbit.antichains
        )
        assert orbit_sum(STAR_332, Statistic.hatchi(), orbit) == total == 21
