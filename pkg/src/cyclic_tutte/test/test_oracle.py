import logging

import pytest

from cyclic_tutte import bitset, corpus, oracle
from cyclic_tutte.errors import EnumerationLimitError, MatroidError
from cyclic_tutte.matroid import Matroid
from cyclic_tutte.oracle import cloud_direct, flock_direct, rgp_bruteforce
from cyclic_tutte.poly import BivarPoly, UnivarPoly, bx, by, cross, delta_x, delta_y, parse_poly, rgp_from_tutte

M1_RGP = parse_poly("x^3 + 6x^2 + 15x + 18 + 2xy + 15y + 6y^2 + y^3")
FANO_TUTTE = parse_poly("x^3 + 4x^2 + 3x + 7xy + 3y + 6y^2 + 3y^3 + y^4")


class TestRgpBruteforce:

    def test_uniform_2_3(self):
        assert rgp_bruteforce(Matroid.uniform(2, 3)) == parse_poly("x^2 + 3x + 3 + y")

    def test_m1(self):
        assert rgp_bruteforce(corpus.m1()) == M1_RGP

    def test_m1_and_m2_agree(self):
        assert rgp_bruteforce(corpus.m2()) == M1_RGP

    def test_fano_against_known_tutte(self):
        assert rgp_bruteforce(corpus.fano()) == rgp_from_tutte(FANO_TUTTE)

    def test_counts(self):
        s = rgp_bruteforce(corpus.fano())
        assert s.evaluate(1, 1) == 128
        assert s.evaluate(0, 0) == 28

    def test_loops_and_coloops(self):
        s = rgp_bruteforce(Matroid.from_bases(3, [[0, 1]]))
        x, y = BivarPoly.x(), BivarPoly.y()
        assert s == (x + 1) ** 2 * (y + 1)

    def test_empty(self):
        assert rgp_bruteforce(Matroid.empty()) == BivarPoly.one()

    def test_limit(self):
        with pytest.raises(EnumerationLimitError):
            rgp_bruteforce(corpus.fano(), limit=6)

    def test_parallel_matches_serial(self, monkeypatch):
        monkeypatch.setattr(oracle, "_PARALLEL_THRESHOLD", 1)
        m = corpus.m1()
        assert rgp_bruteforce(m, jobs=3) == rgp_bruteforce(m, jobs=1)

    def test_jobs_ignored_on_small_input(self, caplog):
        with caplog.at_level(logging.WARNING, logger="cyclic_tutte.oracle"):
            s = rgp_bruteforce(Matroid.uniform(2, 3), jobs=4)
        assert s == parse_poly("x^2 + 3x + 3 + y")
        assert "jobs=4 ignored" in caplog.text


class TestCloudAndFlock:

    def test_uniform_2_3(self):
        m = Matroid.uniform(2, 3)
        assert cloud_direct(m, 0) == bx(3, 2)
        assert flock_direct(m, m.ground) == by(3, 2)

    def test_trivial_ends(self):
        m = corpus.m1()
        assert cloud_direct(m, m.ground) == 1
        assert flock_direct(m, 0) == 1

    def test_m1_line(self):
        m = corpus.m1()
        line = bitset.from_elements([0, 1, 2])
        assert cloud_direct(m, line) == UnivarPoly({1: 1})
        assert flock_direct(m, line) == UnivarPoly({0: 3, 1: 1})

    def test_not_a_cyclic_flat(self):
        m = corpus.m1()
        with pytest.raises(MatroidError, match="not a cyclic flat"):
            cloud_direct(m, bitset.from_elements([1, 3]))
        with pytest.raises(MatroidError, match="not a cyclic flat"):
            flock_direct(m, bitset.from_elements([1, 2]))

    @pytest.mark.parametrize("name", ["m1", "m2", "fano", "concurrent8", "mixed8", "split10"])
    def test_sum_over_cyclic_flats(self, name):
        m = corpus.NAMED[name]()
        total = BivarPoly.zero()
        for rec in m.cyclic_flats():
            total = total + cross(cloud_direct(m, rec.members), flock_direct(m, rec.members))
        assert total == rgp_bruteforce(m)

    @pytest.mark.parametrize("name", ["m1", "fano", "ag23", "split10"])
    def test_ends_from_inner_flats(self, name):
        m = corpus.NAMED[name]()
        n, r = m.n, m.rank_of_matroid
        inner = BivarPoly.zero()
        for rec in m.cyclic_flats():
            if rec.members not in (0, m.ground):
                inner = inner + cross(cloud_direct(m, rec.members), flock_direct(m, rec.members))
        assert cloud_direct(m, 0) == bx(n, r) - delta_x(inner)
        assert flock_direct(m, m.ground) == by(n, r) - delta_y(inner)
