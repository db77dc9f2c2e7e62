import pytest

from cyclic_tutte import corpus
from cyclic_tutte.cloudflock import rgp_from_configuration
from cyclic_tutte.condensation import (
    Condensation,
    CondensedConfiguration,
    avg_cloud_flock,
    coarsest_condensation,
    orbits_from_generators,
    rgp_from_condensed,
    trivial_condensation,
    validate_condensation,
)
from cyclic_tutte.configuration import extract_configuration
from cyclic_tutte.errors import CondensationError
from cyclic_tutte.matroid import Matroid
from cyclic_tutte.oracle import cloud_direct, flock_direct, rgp_bruteforce
from cyclic_tutte.poly import UnivarPoly, bx, by, delta_x, delta_y, parse_poly, tutte_from_rgp

M1_RGP = parse_poly("x^3 + 6x^2 + 15x + 18 + 2xy + 15y + 6y^2 + y^3")
LINES_MATRIX = ((1, 1, 1), (0, 1, 2), (0, 0, 1))


def label_partition(c):
    return [[node for node, label in enumerate(c.labels) if label == lab] for lab in sorted(set(c.labels))]


def assert_block_sums(m, cond):
    """Averaged polynomials equal the direct sums over every representative of the upper block."""
    c = cond.configuration
    table = avg_cloud_flock(cond.condensed)
    for b, c_block in cond.condensed.comparable_pairs():
        for y in cond.blocks[c_block]:
            ym = c.members[y]
            restricted = m.restrict(ym)
            clouds = UnivarPoly()
            flocks = UnivarPoly()
            for x in cond.blocks[b]:
                if not c.le(x, y):
                    continue
                xm = c.members[x]
                contracted = m.contract(xm)
                clouds = clouds + cloud_direct(restricted, restricted.from_parent(xm))
                flocks = flocks + flock_direct(contracted, contracted.from_parent(ym & ~xm))
            assert table.cloud(b, c_block) == clouds
            assert table.flock(b, c_block) == flocks


class TestCondensedConfiguration:

    def test_build_sorts_blocks(self):
        cc = CondensedConfiguration.build([(6, 3), (0, 0), (3, 2)], [[1, 0, 0], [1, 1, 1], [2, 0, 1]])
        assert cc.labels == ((0, 0), (3, 2), (6, 3))
        assert cc.a == LINES_MATRIX
        assert (cc.bottom, cc.top) == (0, 2)

    def test_order_from_counts(self):
        cc = CondensedConfiguration.build([(0, 0), (3, 2), (6, 3)], LINES_MATRIX)
        assert cc.le(1, 2)
        assert not cc.le(2, 1)
        assert cc.open_interval(0, 2) == [1]
        assert len(cc.comparable_pairs()) == 6

    def test_diagonal(self):
        with pytest.raises(CondensationError, match="must be 1"):
            CondensedConfiguration.build([(0, 0), (3, 2)], [[1, 1], [0, 2]])

    def test_negative_entry(self):
        with pytest.raises(CondensationError, match="nonnegative"):
            CondensedConfiguration.build([(0, 0), (3, 2)], [[1, -1], [0, 1]])

    def test_shape(self):
        with pytest.raises(CondensationError, match="matrix"):
            CondensedConfiguration.build([(0, 0), (3, 2)], [[1, 1]])

    def test_bottom_label(self):
        with pytest.raises(CondensationError, match="Bottom block"):
            CondensedConfiguration.build([(1, 0), (4, 2)], [[1, 1], [0, 1]])

    def test_not_transitive(self):
        with pytest.raises(CondensationError, match="not transitive"):
            CondensedConfiguration.build([(0, 0), (3, 2), (6, 3)], [[1, 1, 0], [0, 1, 1], [0, 0, 1]])

    def test_chain_gap(self):
        with pytest.raises(CondensationError, match="rank gap"):
            CondensedConfiguration.build([(0, 0), (2, 2)], [[1, 1], [0, 1]])


class TestValidateCondensation:

    def test_lines_block(self):
        c = extract_configuration(corpus.m1())
        assert validate_condensation(c, [[0], [1, 2], [3]]) is None

    def test_mixed_labels(self):
        c = extract_configuration(corpus.m1())
        violation = validate_condensation(c, [[0, 3], [1, 2]])
        assert violation.condition == "label"

    def test_not_a_partition(self):
        c = extract_configuration(corpus.m1())
        assert validate_condensation(c, [[0], [1], [3]]).condition == "partition"
        assert validate_condensation(c, [[0], [1, 2], [3], []]).condition == "partition"

    def test_unequal_counts(self):
        c = extract_configuration(corpus.split_planes_10())
        violation = validate_condensation(c, label_partition(c))
        assert violation.condition == "count"
        assert len(violation.witnesses) == 4

    def test_from_partition_raises(self):
        c = extract_configuration(corpus.split_planes_10())
        with pytest.raises(CondensationError, match="count"):
            Condensation.from_partition(c, label_partition(c))


class TestOrbits:

    def test_m2_swap(self):
        cond = orbits_from_generators(corpus.m2(), [corpus.M2_SWAP])
        assert cond.condensed.labels == ((0, 0), (3, 2), (6, 3))
        assert cond.condensed.a == LINES_MATRIX
        assert [len(block) for block in cond.blocks] == [1, 2, 1]

    def test_identity_gives_trivial(self):
        cond = orbits_from_generators(corpus.m1(), [list(range(6))])
        assert cond.is_trivial()
        assert cond.condensed.a == ((1, 1, 1, 1), (0, 1, 0, 1), (0, 0, 1, 1), (0, 0, 0, 1))

    def test_no_generators(self):
        assert orbits_from_generators(corpus.fano(), []).is_trivial()

    def test_fano_rotation(self):
        rotation = [(e + 1) % 7 for e in range(7)]
        cond = orbits_from_generators(corpus.fano(), [rotation])
        assert cond.condensed.labels == ((0, 0), (3, 2), (7, 3))
        assert cond.condensed.a == ((1, 1, 1), (0, 1, 7), (0, 0, 1))

    def test_not_an_automorphism(self):
        with pytest.raises(CondensationError, match="not an automorphism"):
            orbits_from_generators(corpus.m1(), [corpus.M2_SWAP])

    def test_strips_loops(self):
        m = Matroid.from_bases(4, [[0, 1], [0, 2], [1, 2]])
        cond = orbits_from_generators(m, [[1, 2, 0, 3]])
        assert cond.condensed.labels == ((0, 0), (3, 2))

    def test_representative_is_smallest(self):
        cond = orbits_from_generators(corpus.m2(), [corpus.M2_SWAP])
        c = cond.configuration
        assert c.members[cond.representative(1)] == 0b000111
        assert cond.block_of(cond.representative(1)) == 1


class TestCoarsest:

    def test_m1(self):
        cond = coarsest_condensation(corpus.m1())
        assert [len(block) for block in cond.blocks] == [1, 2, 1]
        assert cond.condensed.a == LINES_MATRIX

    def test_split_planes_stay_apart(self):
        assert coarsest_condensation(corpus.split_planes_10()).is_trivial()

    def test_accepts_configuration(self):
        c = extract_configuration(corpus.fano())
        assert len(coarsest_condensation(c).blocks) == 3

    def test_orbits_refine_coarsest(self):
        orbits = orbits_from_generators(corpus.m2(), [corpus.M2_SWAP])
        coarsest = coarsest_condensation(orbits.configuration)
        assert orbits.refines(coarsest)
        assert trivial_condensation(orbits.configuration).refines(coarsest)
        assert not coarsest.refines(trivial_condensation(orbits.configuration))


class TestAveragedPolynomials:

    def test_m1_values(self):
        table = avg_cloud_flock(coarsest_condensation(corpus.m1()).condensed)
        assert table.cloud(1, 2) == UnivarPoly({1: 2})
        assert table.flock(0, 1) == UnivarPoly({0: 3, 1: 1})
        assert table.cloud(0, 2) == UnivarPoly({3: 1, 2: 6, 1: 9})
        assert table.rgp() == M1_RGP

    def test_trivial_condensation_matches_configuration(self):
        c = extract_configuration(corpus.mixed_lines_8())
        assert rgp_from_condensed(trivial_condensation(c).condensed) == rgp_from_configuration(c)

    @pytest.mark.parametrize("name", sorted(corpus.NAMED))
    def test_coarsest_against_oracle(self, name):
        m = corpus.NAMED[name]()
        assert rgp_from_condensed(coarsest_condensation(m).condensed) == rgp_bruteforce(m)

    @pytest.mark.parametrize("name", ["m1", "m2", "fano", "ag23", "concurrent8", "split10"])
    def test_sums_over_any_representative(self, name):
        m = corpus.NAMED[name]()
        assert_block_sums(m, coarsest_condensation(m))

    @pytest.mark.parametrize("name,generator", [
        ("m2", list(corpus.M2_SWAP)),
        ("fano", [(e + 1) % 7 for e in range(7)]),
        ("concurrent8", [0, 3, 4, 5, 6, 1, 2, 7]),
    ])
    def test_orbit_sums_over_any_representative(self, name, generator):
        m = corpus.NAMED[name]()
        assert_block_sums(m, orbits_from_generators(m, [generator]))

    @pytest.mark.parametrize("name", ["m1", "fano", "mixed8", "split10"])
    def test_trivial_sums_over_any_representative(self, name):
        m = corpus.NAMED[name]()
        assert_block_sums(m, trivial_condensation(extract_configuration(m)))

    def test_collecting_mode(self):
        cc = CondensedConfiguration.build([(0, 0), (3, 2), (5, 3)], [[1, 1, 1], [0, 1, 4], [0, 0, 1]])
        table = avg_cloud_flock(cc, strict=False)
        assert [(p.interval, p.which) for p in table.problems] == [((0, 2), "cloud")]


class TestGolay:

    def test_blocks(self):
        cc = corpus.golay()
        assert cc.labels == ((0, 0), (8, 7), (12, 10), (12, 11), (16, 11), (24, 12))
        assert cc.a[1][5] == 759

    def test_subset_count(self):
        assert rgp_from_condensed(corpus.golay()).evaluate(1, 1) == 2 ** 24

    def test_no_negative_coefficients(self):
        table = avg_cloud_flock(corpus.golay(), strict=False)
        assert table.problems == ()
        assert table.rgp().min_coefficient() >= 0

    def test_self_dual(self):
        t = tutte_from_rgp(rgp_from_condensed(corpus.golay()))
        assert t == t.swap()

    def test_delta_maps_recover_uniform_parts(self):
        s = rgp_from_condensed(corpus.golay())
        assert delta_x(s) == bx(24, 12)
        assert delta_y(s) == by(24, 12)

    def test_tutte_coefficients_nonnegative(self):
        assert tutte_from_rgp(rgp_from_condensed(corpus.golay())).min_coefficient() >= 0

    def test_bases_counted(self):
        assert rgp_from_condensed(corpus.golay()).evaluate(0, 0) > 0

    def test_isolated_blocks(self):
        cc = corpus.golay()
        assert cc.is_isolated(3)
        assert not cc.is_isolated(1)

    def test_remove_dodecads(self):
        smaller = corpus.golay().remove_block(3)
        assert len(smaller) == 5
        assert (12, 11) not in smaller.labels
        s = rgp_from_condensed(smaller)
        assert s.evaluate(1, 1) == 2 ** 24
        assert s.min_coefficient() >= 0

    def test_remove_comparable_block(self):
        with pytest.raises(CondensationError, match="comparable"):
            corpus.golay().remove_block(1)

    def test_remove_bottom(self):
        with pytest.raises(CondensationError, match="interior"):
            corpus.golay().remove_block(0)
