"""Prime-order automorphism types (p, f_U, f_V) that can occur in a
one-factorization of K_n, and the anchor layout used to build seeds.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import List, Optional, Tuple

ABSENT, FIXED, MOVED = "-", "F", "M"


@dataclass(frozen=True)
class AutType:
    p: int
    f_U: int
    f_V: int
    anchor_schema: Tuple[str, str, str]

    @property
    def triple(self) -> Tuple[int, int, int]:
        return (self.p, self.f_U, self.f_V)

    def __str__(self):
        return f"{self.p},{self.f_U},{self.f_V}"


def primes_upto(k: int) -> List[int]:
    return [p for p in range(2, k + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


# Each rule returns True when the candidate is ruled out.

def lemma4(n, p, fu, fv) -> bool:
    """Both fixed sets nonempty: fixed points form a smaller one-factorization."""
    return fu >= 1 and fv >= 1 and not (fu == fv - 1 and fv % 2 == 0)


def lemma5(n, p, fu, fv) -> bool:
    """At most half the vertices fixed, and exactly half only for involutions."""
    return fv > n // 2 or (fv == n // 2 and p != 2)


def lemma6(n, p, fu, fv) -> bool:
    """n = 2 mod 4, fixed-point-free involution on V: at most n/2 fixed factors."""
    return n % 4 == 2 and p == 2 and fv == 0 and fu > n // 2


def lemma7(n, p, fu, fv) -> bool:
    """n = 4, 6 mod 8, fixed-point-free involution on V: not exactly one fixed factor."""
    return n % 8 in (4, 6) and p == 2 and fv == 0 and fu == 1


def odd_cycle_rule(n, p, fu, fv) -> bool:
    """Odd p with every factor fixed is impossible.

    A V-pair inside one p-cycle has an orbit of p edges meeting each cycle
    point twice, so it cannot lie in a fixed factor's perfect matching.
    """
    return p % 2 == 1 and fu == n - 1 and fv < n


RULES = (("lemma4", lemma4), ("lemma5", lemma5), ("lemma6", lemma6), ("lemma7", lemma7),
         ("odd-cycle", odd_cycle_rule))


def divisible(n, p, fu, fv) -> bool:
    return (n - 1 - fu) % p == 0 and (n - fv) % p == 0


def exclusion_reason(n: int, p: int, fu: int, fv: int) -> Optional[str]:
    """Name of the first rule rejecting the candidate, or None if admissible."""
    if not divisible(n, p, fu, fv):
        return "divisibility"
    if fu == n - 1 and fv == n:
        return "identity"
    for name, rule in RULES:
        if rule(n, p, fu, fv):
            return name
    return None


def candidates(n: int):
    for p in primes_upto(n):
        for fu in range(n):
            for fv in range(n + 1):
                if divisible(n, p, fu, fv) and not (fu == n - 1 and fv == n):
                    yield p, fu, fv


def anchor_schema_for(p: int, fu: int, fv: int, n: int) -> Tuple[str, str, str]:
    """Slots (one-factor, first vertex, second vertex)."""
    if fu >= 1 and fv >= 1:
        return (ABSENT, FIXED, MOVED) if p == 2 else (FIXED, FIXED, FIXED)
    if p == 2 and fv == 0:
        return (FIXED, MOVED, ABSENT)
    if fu == 0:
        return (MOVED, FIXED if fv >= 1 else MOVED, MOVED)
    return (MOVED, MOVED, MOVED)


def admissible_types(n: int) -> List[AutType]:
    if n % 2 or not 4 <= n <= 14:
        raise ValueError("n must be even with 4 <= n <= 14")
    out = []
    for p, fu, fv in candidates(n):
        if exclusion_reason(n, p, fu, fv) is None:
            out.append(AutType(p, fu, fv, anchor_schema_for(p, fu, fv, n)))
    return out


def m_value(t: AutType, n: int) -> int:
    """Number of anchor sets of the schema inside a factorization admitting the group."""
    p, fu, fv = t.triple
    s = t.anchor_schema
    if s == (ABSENT, FIXED, MOVED):
        return fv * (n - fv)
    if s == (FIXED, MOVED, ABSENT):
        return fu * (n - fv)
    if s == (FIXED, FIXED, FIXED):
        return comb(fv, 2)
    if s == (MOVED, FIXED, MOVED):
        return fv * (n - 1 - fu)
    if s == (MOVED, MOVED, MOVED):
        return (n - 1 - fu) * n // 2
    raise ValueError(f"no count rule for schema {s}")
