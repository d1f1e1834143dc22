import math

import pytest

from onefact.autotypes import admissible_types
from onefact.census import (PUBLISHED_LF_KN, PUBLISHED_TALLIES, CensusError, CensusInput, double_count_check,
                            omega_from_tallies, solve_census)


class ToyInput(CensusInput):
    """A constructed action with |Gamma| = 12 and |Omega| = 52."""

    def group_order(self):
        return 12

    def omega(self):
        return 52


def test_published_n14_census():
    n1, total = solve_census(CensusInput(14, PUBLISHED_LF_KN[14], PUBLISHED_TALLIES[14]))
    assert n1 == 1132835411296799774
    assert total == 1132835421602062347


def test_round_trip_is_exact():
    n1, _ = solve_census(CensusInput(14, PUBLISHED_LF_KN[14], PUBLISHED_TALLIES[14]))
    tallies = {**PUBLISHED_TALLIES[14], 1: n1}
    assert omega_from_tallies(14, tallies) == math.factorial(13) * PUBLISHED_LF_KN[14]


def test_toy():
    assert solve_census(ToyInput(4, 0, {2: 2, 3: 1})) == (3, 6)


def test_k8_from_known_values():
    # LF(K_8) = 6240 and the six classes have groups 16, 24, 42, 64, 96, 1344: no asymmetric class
    tallies = {16: 1, 24: 1, 42: 1, 64: 1, 96: 1, 1344: 1}
    assert solve_census(CensusInput(8, 6240, tallies)) == (0, 6)


def test_negative_n1_rejected():
    with pytest.raises(CensusError):
        solve_census(CensusInput(8, 6240, {2: 10 ** 6}))


def test_non_integral_rejected():
    with pytest.raises(CensusError):
        solve_census(CensusInput(8, 6241, {16: 1}))


def test_bad_tally_rejected():
    with pytest.raises(CensusError):
        solve_census(CensusInput(8, 6240, {11: 1}))  # 11 does not divide 7! 8!
    with pytest.raises(CensusError):
        solve_census(CensusInput(8, 6240, {1: 1}))


def test_double_count_arithmetic():
    t = next(t for t in admissible_types(8) if t.triple == (7, 0, 1))
    g = math.factorial(7) * math.factorial(8)
    # one class with |Aut| = 42 and one subgroup of the type; m = 7 anchors
    lhs, rhs, ok = double_count_check(t, 8, [(7, 6)], [(42, 1)])
    assert lhs == g // 42 * 7 and rhs == g // 7 * 6
    assert ok == (lhs == rhs)
