"""Orbit counting: trivial-group classes from the labeled total.

Gamma = Sym(U) x Sym(V) acts on the set Omega of labeled
one-factorizations, |Omega| = (n-1)! LF(K_n).  Summing orbit sizes,
|Omega| = |Gamma| * sum_i N_i / i, where N_i counts classes with
|Aut| = i.  Knowing every N_i for i >= 2 leaves N_1 as the only unknown.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Tuple

from .autotypes import AutType, m_value

PUBLISHED_TALLIES = {
    14: {2: 10300646080, 3: 4497762, 4: 104560, 5: 2742, 6: 9247, 8: 1790, 10: 168, 12: 76,
         13: 10, 16: 109, 21: 1, 24: 3, 32: 13, 39: 3, 42: 2, 48: 1, 64: 3, 84: 1, 156: 1, 192: 1},
}
PUBLISHED_LF_KN = {14: 98758655816833727741338583040}
PUBLISHED_TOTALS = {8: 6, 10: 396, 12: 526915620, 14: 1132835421602062347}


class CensusError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CensusInput:
    n: int
    lf_kn: int
    nontrivial_tally: Mapping[int, int]

    def group_order(self) -> int:
        return math.factorial(self.n - 1) * math.factorial(self.n)

    def omega(self) -> int:
        return math.factorial(self.n - 1) * self.lf_kn

    def check(self) -> None:
        g = self.group_order()
        for i, c in self.nontrivial_tally.items():
            if i < 2 or c < 0:
                raise CensusError(f"bad tally entry N_{i} = {c}")
            if c and g % i:
                raise CensusError(f"group order {i} does not divide |Gamma|")


def _lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def solve_census(c: CensusInput) -> Tuple[int, int]:
    """(N_1, total number of classes), exactly."""
    c.check()
    g, omega = c.group_order(), c.omega()
    L = _lcm(c.nontrivial_tally)
    # L * |Omega| / |Gamma| = L * N_1 + sum L/i * N_i
    num = L * omega
    if num % g:
        raise CensusError("|Omega| * lcm is not a multiple of |Gamma|")
    rest = num // g - sum(L // i * k for i, k in c.nontrivial_tally.items())
    n1, r = divmod(rest, L)
    if r or n1 < 0:
        raise CensusError(f"N_1 is not a nonnegative integer ({rest}/{L})")
    return n1, n1 + sum(c.nontrivial_tally.values())


def omega_from_tallies(n: int, tallies: Mapping[int, int]) -> int:
    """|Gamma| * sum_i N_i / i, which must be an integer."""
    g = math.factorial(n - 1) * math.factorial(n)
    total = 0
    for i, k in tallies.items():
        q, r = divmod(g * k, i)
        if r:
            raise CensusError(f"|Gamma| * N_{i} not divisible by {i}")
        total += q
    return total


def double_count_check(t: AutType, n: int, seed_data: Iterable[Tuple[int, int]],
                       class_data: Iterable[Tuple[int, int]]) -> Tuple[int, int, bool]:
    """Both sides of the seed double count for one type.

    seed_data: (|Aut(seed)|, ext) per seed class.
    class_data: (|Aut(X)|, number of prime subgroups of Aut(X) of type t)
    per accepted class.
    """
    g = math.factorial(n - 1) * math.factorial(n)
    m = m_value(t, n)
    rhs = 0
    for aut, ext in seed_data:
        if g % aut:
            raise CensusError(f"seed automorphism order {aut} does not divide |Gamma|")
        rhs += g // aut * ext
    lhs = 0
    for aut, subgroups in class_data:
        if g % aut:
            raise CensusError(f"automorphism order {aut} does not divide |Gamma|")
        lhs += g // aut * subgroups * m
    return lhs, rhs, lhs == rhs


def census_report(n: int, n1: int, total: int, tallies: Mapping[int, int]) -> List[str]:
    lines = [f"n = {n}", "i N_i"]
    lines.append(f"1 {n1}")
    lines += [f"{i} {k}" for i, k in sorted(tallies.items())]
    lines.append(f"total {total}")
    return lines


def double_count_report(rows: Iterable[Tuple[AutType, int, int, bool]], n: int) -> List[str]:
    out = ["p f_U f_V m count ok"]
    for t, lhs, rhs, ok in rows:
        out.append(f"{t.p} {t.f_U} {t.f_V} {m_value(t, n)} {rhs} {'yes' if ok else 'NO ' + str(lhs)}")
    return out


def tallies_from(accepted_orders: Iterable[int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for a in accepted_orders:
        out[a] = out.get(a, 0) + 1
    return dict(sorted(out.items()))
